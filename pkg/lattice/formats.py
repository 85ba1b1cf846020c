"""
Plain-text formats shared by the subcommands.

Polytope:     line "d k", then one vertex per line as d integers.
Generators:   line "d m", then m lines of d integers.
Certificates: per record a line "diameter N digest HEX" followed by a polytope block.
Resume file:  a line "d k target", then one canonical digest per line.

Lines starting with '#' and blank lines are ignored everywhere.
"""

from dataclasses import dataclass
from pathlib import Path

from .exceptions import FormatError, LatticeError
from .geometry import convex_hull
from .zonotopes import GeneratorSet


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            yield number, line


def _integers(line, number, count=None):
    try:
        values = tuple(int(token) for token in line.split())
    except ValueError:
        raise FormatError(f'expected integers, got {line!r}', line=number) from None
    if count is not None and len(values) != count:
        raise FormatError(f'expected {count} integers, got {len(values)}', line=number)
    return values


def _header(lines, what):
    try:
        number, line = next(lines)
    except StopIteration:
        raise FormatError(f'empty {what} input') from None
    first, second = _integers(line, number, count=2)
    if first < 1:
        raise FormatError(f'dimension must be positive, got {first}', line=number)
    return number, first, second


def parse_points(text):
    """(d, k, points) of a polytope or point file, validating the shape of every line."""
    lines = _content_lines(text)
    number, d, k = _header(lines, 'polytope')
    if k < 1:
        raise FormatError(f'k must be positive, got {k}', line=number)
    points = []
    for number, line in lines:
        point = _integers(line, number, count=d)
        if min(point) < 0 or max(point) > k:
            raise FormatError(f'point {point} lies outside [0,{k}]^{d}', line=number)
        points.append(point)
    if not points:
        raise FormatError('no points given', line=number)
    return d, k, points


def read_polytope(text, embed=False):
    d, k, points = parse_points(text)
    try:
        return convex_hull(points, d, k=k, embed=embed)
    except FormatError:
        raise
    except LatticeError as exc:
        raise FormatError(str(exc)) from exc


def polytope_text(polytope, comment=None):
    lines = [f'# {comment}'] if comment else []
    lines.append(f'{polytope.d} {polytope.k}')
    lines.extend(' '.join(str(c) for c in v) for v in polytope.vertices)
    return '\n'.join(lines) + '\n'


def read_generators(text):
    lines = _content_lines(text)
    number, d, m = _header(lines, 'generator')
    vectors = [_integers(line, n, count=d) for n, line in lines]
    if len(vectors) != m:
        raise FormatError(f'header announces {m} generators, found {len(vectors)}', line=number)
    try:
        return GeneratorSet(d=d, vectors=tuple(vectors))
    except LatticeError as exc:
        raise FormatError(str(exc), line=number) from exc


def generators_text(gens):
    lines = [f'{gens.d} {len(gens)}']
    lines.extend(' '.join(str(c) for c in v) for v in gens.vectors)
    return '\n'.join(lines) + '\n'


def certificates_text(certificates):
    blocks = [f'diameter {c.diameter} digest {c.canonical_digest}\n' + polytope_text(c.polytope) for c in certificates]
    return ''.join(blocks)


@dataclass(frozen=True)
class CertificateRecord:
    """One stored certificate exactly as listed: the points are not hulled."""

    diameter: int
    digest: str
    d: int
    k: int
    points: tuple
    line: int


def read_certificates(text):
    records = []
    current = None
    for number, line in _content_lines(text):
        if line.startswith('diameter'):
            tokens = line.split()
            if len(tokens) != 4 or tokens[2] != 'digest':
                raise FormatError(f'malformed certificate header {line!r}', line=number)
            current = (_integers(tokens[1], number)[0], tokens[3], number, [])
            records.append(current)
        elif current is None:
            raise FormatError('polytope data before the first certificate header', line=number)
        else:
            current[3].append(line)
    result = []
    for value, digest, number, block in records:
        try:
            d, k, points = parse_points('\n'.join(block))
        except FormatError as exc:
            raise FormatError(f'certificate {digest[:12]}: {exc}', line=number) from exc
        result.append(CertificateRecord(value, digest, d, k, tuple(points), number))
    return result


def read_resume(path, d, k, target):
    """Digests recorded by an earlier search for the same (d, k, target); empty when the file is new."""
    path = Path(path)
    if not path.exists():
        return set()
    lines = _content_lines(path.read_text())
    try:
        number, line = next(lines)
    except StopIteration:
        return set()
    header = _integers(line, number, count=3)
    if header != (d, k, target):
        raise FormatError(f'recorded d k target = {" ".join(map(str, header))}, not {d} {k} {target}', line=number)
    return {line for _, line in lines}


def append_resume(path, d, k, target, digests):
    path = Path(path)
    fresh = not path.exists() or next(_content_lines(path.read_text()), None) is None
    with path.open('a') as handle:
        if fresh:
            handle.write(f'# d k target\n{d} {k} {target}\n')
        for digest in digests:
            handle.write(f'{digest}\n')
