from lattice.bounds import bounds_report, conjecture_compatible, formula_values
from lattice.lemmas import Status, check_theorem1_recursion
from lattice.management.base import LatticeCommand
from lattice.schemas import BoundRecordSchema, FormulaValuesSchema, dumps


def formula_row(record):
    recursion = check_theorem1_recursion(record.d, record.k)
    return {
        'd': record.d,
        'k': record.k,
        'formulas': dict(formula_values(record.d, record.k)),
        'exact': record.exact,
        'conjecture_compatible': conjecture_compatible(record.d, record.k),
        'recursion': None if recursion.status is Status.NOT_APPLICABLE else recursion.lhs,
    }


class Command(LatticeCommand):
    help = 'JSON report of the best known lower and upper bounds on delta(d,k)'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dmax', type=int, required=True)
        parser.add_argument('--kmax', type=int, required=True)
        parser.add_argument('--formulas', action='store_true', help='list every applicable formula instead of the best bounds')

    def handle(self, *args, **options):
        records = bounds_report(options['dmax'], options['kmax'])
        if options['formulas']:
            self.emit(dumps(FormulaValuesSchema(), [formula_row(r) for r in records], many=True), options)
        else:
            self.emit(dumps(BoundRecordSchema(), records, many=True), options)
        open_cases = [r for r in records if not r.settled]
        if open_cases:
            self.stderr.write(self.style.WARNING(f'{len(open_cases)} open: ' + ', '.join(str(r) for r in open_cases)))
