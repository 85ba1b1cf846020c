import json

from marshmallow import Schema, fields

from .bounds import Provenance
from .lemmas import Status


class BoundRecordSchema(Schema):
    d = fields.Integer()
    k = fields.Integer()
    lower = fields.Integer()
    lower_provenance = fields.Enum(Provenance, by_value=True)
    upper = fields.Integer()
    upper_provenance = fields.Enum(Provenance, by_value=True)
    exact = fields.Integer(allow_none=True)
    settled = fields.Boolean()


class FormulaValuesSchema(Schema):
    d = fields.Integer()
    k = fields.Integer()
    formulas = fields.Dict(keys=fields.String(), values=fields.Integer())
    exact = fields.Integer(allow_none=True)
    conjecture_compatible = fields.Boolean()
    recursion = fields.Integer(allow_none=True)


class LemmaReportSchema(Schema):
    lemma = fields.String()
    instance_digest = fields.String()
    lhs = fields.Integer(allow_none=True)
    rhs = fields.Integer(allow_none=True)
    status = fields.Enum(Status, by_value=True)


class SuiteSummarySchema(Schema):
    suite = fields.String()
    seed = fields.Integer()
    instances = fields.Integer()
    holds = fields.Integer()
    violated = fields.Integer()
    skipped = fields.Integer()
    violations = fields.List(fields.Nested(LemmaReportSchema))


def dumps(schema, obj, many=False):
    """Stable JSON text: declaration-ordered keys, integers unquoted."""
    return json.dumps(schema.dump(obj, many=many), indent=2) + '\n'
