"""
Text formats for groups, S-rings, sequences, permutations and color matrices.

Element syntax: ``e`` for the identity, otherwise ``a^i``, ``b^j``, ``c^k``
factors joined by ``*`` with zero exponents omitted. Group header:
``group=h1 p=7``. S-ring files hold the header, ``#`` comments and one
comma-separated class per line.
"""

import logging
import re
from typing import Iterable, List, Tuple

from .exceptions import ParseError
from .pgroup import Family, Group, GroupSpec, InvalidPrime, build_group
from .scheme import CayleyScheme
from .sequences import SuitableSequence
from .sring import Partition, SRing, validate_sring

logger = logging.getLogger(__name__)

FACTOR_RE = re.compile(r'^([abc])(?:\^(-?\d+))?$')
HEADER_RE = re.compile(r'^group=(h1|h2)\s+p=(\d+)$')


class ElementSyntaxError(ParseError):
    def __init__(self, text, reason):
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse element {text!r}: {reason}")


class HeaderSyntaxError(ParseError):
    def __init__(self, line):
        self.line = line
        super().__init__(f"Expected a header like 'group=h1 p=7', got {line!r}")


class ClassFileError(ParseError):
    def __init__(self, line_number, reason):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"Line {line_number}: {reason}")


class SequenceSyntaxError(ParseError):
    def __init__(self, text):
        self.text = text
        super().__init__(f"Expected comma-separated residues like '0,4,2,5,6,1', got {text!r}")


def format_element(group: Group, x: int) -> str:
    factors = []
    for name, exponent in zip('abc', group.elements[x]):
        if exponent:
            factors.append(f"{name}^{exponent}")
    return '*'.join(factors) if factors else 'e'


def parse_element(group: Group, text: str) -> int:
    """
    Parse an element; factors are multiplied left to right, so non-normal
    products such as ``b*a`` are accepted too.

    Raises:
        ElementSyntaxError: On unknown generators or malformed factors
    """
    text = text.strip()
    if text == 'e':
        return group.identity
    if not text:
        raise ElementSyntaxError(text, 'empty')
    result = group.identity
    for factor in text.split('*'):
        match = FACTOR_RE.match(factor.strip())
        if not match:
            raise ElementSyntaxError(text, f"bad factor {factor!r}")
        name, exponent = match.group(1), int(match.group(2) or 1)
        try:
            generator = group.generator(name)
        except KeyError:
            raise ElementSyntaxError(text, f"{group.family.value} has no generator {name}")
        exponent %= group.element_order(generator)
        result = int(group.mul[result, group.power(generator, exponent)])
    return result


def parse_header(line: str) -> GroupSpec:
    match = HEADER_RE.match(line.strip())
    if not match:
        raise HeaderSyntaxError(line)
    try:
        return GroupSpec(Family(match.group(1)), int(match.group(2)))
    except InvalidPrime:
        raise HeaderSyntaxError(line)


def format_header(spec: GroupSpec) -> str:
    return spec.header


def parse_sequence(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.strip().split(','))
    except ValueError:
        raise SequenceSyntaxError(text)


def format_sequence(seq: SuitableSequence) -> str:
    return str(seq)


def write_sring(sr: SRing, comments: Iterable[str] = ()) -> str:
    group = sr.group
    lines = [group.spec.header]
    lines.extend(f"# {comment}" for comment in comments)
    for members in sr.classes:
        lines.append(','.join(format_element(group, x) for x in members))
    return '\n'.join(lines) + '\n'


def read_partition(text: str) -> Partition:
    """
    Read a class file into a Partition without checking the S-ring axioms.

    Raises:
        HeaderSyntaxError: If the first meaningful line is not a header
        ClassFileError: If a class line cannot be parsed
    """
    lines = [(number, line.strip()) for number, line in enumerate(text.splitlines(), start=1)]
    lines = [(number, line) for number, line in lines if line and not line.startswith('#')]
    if not lines:
        raise ClassFileError(0, 'file is empty')
    spec = parse_header(lines[0][1])
    group = build_group(spec)
    classes: List[List[int]] = []
    for number, line in lines[1:]:
        try:
            classes.append([parse_element(group, item) for item in line.split(',')])
        except ElementSyntaxError as exc:
            raise ClassFileError(number, str(exc))
    return Partition.from_classes(group, classes)


def read_sring(text: str) -> SRing:
    return validate_sring(read_partition(text))


def format_permutation(images: Iterable[int]) -> str:
    return '[' + ','.join(str(int(v)) for v in images) + ']'


def export_color_matrix(cs: CayleyScheme) -> str:
    lines = [f"{cs.group.spec.header} classes={cs.rank}"]
    for row in cs.color:
        lines.append(','.join(str(int(v)) for v in row))
    return '\n'.join(lines) + '\n'
