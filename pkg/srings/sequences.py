"""
Suitable sequences over Z_p and the S-rings they define over H1 and H2.

A sequence (x_1, ..., x_{p-1}) is suitable when x_1 = 0, its entries are
distinct and x_i + i = x_{p-i} (mod p) for 1 <= i <= (p-1)/2. Sequences are
stored 0-based in Python but documented 1-based.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .conf import get_setting
from .exceptions import ValidationFailure
from .pgroup import Family, Group, GroupSpec, InvalidPrime, build_group, is_odd_prime
from .sring import Partition, SRing, is_p_sring, validate_sring

logger = logging.getLogger(__name__)


class BadLength(ValidationFailure):
    def __init__(self, length, expected):
        self.length = length
        self.expected = expected
        super().__init__(f"Sequence has {length} entries, expected {expected}")


class OutOfRange(ValidationFailure):
    def __init__(self, position, value, p):
        self.position = position
        self.value = value
        super().__init__(f"Entry x_{position} = {value} is outside [0, {p})")


class NotSuitable(ValidationFailure):
    def __init__(self, x, p):
        self.x = tuple(x)
        self.p = p
        super().__init__(f"Sequence {self.x} is not suitable for p={p}")


class WrongResidueClass(ValidationFailure):
    def __init__(self, p):
        self.p = p
        super().__init__(f"p={p} is not congruent to 3 mod 4")


class NoSuchSequence(ValidationFailure):
    def __init__(self, p, reason):
        self.p = p
        self.reason = reason
        super().__init__(f"No suitable sequence for p={p}: {reason}")


class CapExceeded(ValidationFailure):
    def __init__(self, p, cap):
        self.p = p
        self.cap = cap
        super().__init__(f"Enumeration is limited to p <= {cap}, got p={p}")


def is_suitable(x: Sequence[int], p: int) -> bool:
    """
    Check the suitability conditions.

    Raises:
        BadLength: If the sequence does not have p - 1 entries
        OutOfRange: If an entry is not a residue in [0, p)
    """
    if len(x) != p - 1:
        raise BadLength(len(x), p - 1)
    for position, value in enumerate(x, start=1):
        if not 0 <= value < p:
            raise OutOfRange(position, value, p)
    if x[0] != 0 or len(set(x)) != p - 1:
        return False
    # x[i - 1] is x_i
    return all((x[i - 1] + i) % p == x[p - i - 1] for i in range(1, (p - 1) // 2 + 1))


@dataclass(frozen=True)
class SuitableSequence:
    p: int
    x: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'x', tuple(int(v) for v in self.x))
        if not is_odd_prime(self.p):
            raise InvalidPrime(self.p)
        if not is_suitable(self.x, self.p):
            raise NotSuitable(self.x, self.p)

    @property
    def missing(self) -> int:
        return next(v for v in range(self.p) if v not in self.x)

    def value(self, i: int) -> int:
        """x_i, 1-based"""
        return self.x[i - 1]

    def __str__(self):
        return ','.join(str(v) for v in self.x)


def canonical_sequence(p: int) -> SuitableSequence:
    """x_i = ((p - 1) / 2)(i - 1) mod p"""
    if not is_odd_prime(p):
        raise InvalidPrime(p)
    half = (p - 1) // 2
    return SuitableSequence(p, tuple((half * (i - 1)) % p for i in range(1, p)))


def mod4_3_sequence(p: int) -> SuitableSequence:
    """
    A suitable sequence with x_2 = (p + 1) / 2 for p = 4k + 3.

    Rearranges the canonical sequence at the positions 2l and p - 2l,
    1 <= l <= k + 1; every other entry is kept.

    Raises:
        WrongResidueClass: If p is not 3 mod 4
        NoSuchSequence: For p = 3, where x_2 is forced to be 1
    """
    if not is_odd_prime(p):
        raise InvalidPrime(p)
    if p % 4 != 3:
        raise WrongResidueClass(p)
    if p == 3:
        raise NoSuchSequence(p, 'x_2 = (p + 1) / 2 = 2 is incompatible with x_2 = x_1 + 1 = 1')
    k = (p - 3) // 4
    x = canonical_sequence(p).x
    y = list(x)

    def put(position, value):
        y[position - 1] = value

    def old(position):
        return x[position - 1]

    put(2, (p + 1) // 2)
    put(p - 2, old(p - 4))
    if k % 2 == 0:
        put(2 * k + 2, old(p - 2 * k - 2))
        put(p - 2 * k - 2, old(2 * k))
    else:
        put(2 * k + 2, old(p - 2 * k))
        put(p - 2 * k - 2, old(2 * k + 2))
    for l in range(2, k + 1):
        if l % 2 == 0:
            put(p - 2 * l, old(p - 2 * (l - 1)))
            put(2 * l, old(2 * (l + 1)))
        else:
            put(p - 2 * l, old(p - 2 * (l + 1)))
            put(2 * l, old(2 * (l - 1)))
    sequence = SuitableSequence(p, tuple(y))
    assert sequence.value(2) == (p + 1) // 2
    return sequence


def enumerate_suitable(p: int) -> List[SuitableSequence]:
    """
    Every suitable sequence for p, in lexicographic order.

    x_{p-i} is forced by x_i, so only x_2, ..., x_{(p-1)/2} are chosen.

    Raises:
        CapExceeded: If p is above the ENUMERATION_MAX_PRIME setting
    """
    if not is_odd_prime(p):
        raise InvalidPrime(p)
    cap = get_setting('ENUMERATION_MAX_PRIME')
    if p > cap:
        raise CapExceeded(p, cap)
    half = (p - 1) // 2
    x = [None] * (p - 1)
    x[0], x[p - 2] = 0, 1
    used = {0, 1}
    found = []

    def place(i):
        if i > half:
            found.append(tuple(x))
            return
        for value in range(p):
            partner = (value + i) % p
            if value in used or partner in used:
                continue
            x[i - 1], x[p - i - 1] = value, partner
            used.update((value, partner))
            place(i + 1)
            used.difference_update((value, partner))
        x[i - 1] = x[p - i - 1] = None

    place(2)
    found.sort()
    logger.info(f"Enumerated {len(found)} suitable sequences for p={p}")
    return [SuitableSequence(p, values) for values in found]


def shift_element(group: Group) -> int:
    """z used for class shifts: a^p in H1, c in H2"""
    return group.central_element()


def class_generator(group: Group, seq: SuitableSequence, i: int) -> int:
    """t_i = b a^(p x_i) in H1, b c^(x_i) in H2"""
    p = group.prime
    if group.family == Family.H1:
        return group.index((p * seq.value(i), 1))
    return group.index((0, 1, seq.value(i)))


def base_class(group: Group, seq: SuitableSequence, i: int) -> Tuple[int, ...]:
    """(a^i, a^i t_i, ..., a^i t_i^(p-1)) in that order"""
    a_i = group.power(group.generator('a'), i)
    t = class_generator(group, seq, i)
    members = [a_i]
    for _ in range(group.prime - 1):
        members.append(int(group.mul[members[-1], t]))
    return tuple(members)


def thin_subgroup(group: Group) -> Tuple[int, ...]:
    """L = <a^p, b> in H1, <b, c> in H2"""
    p = group.prime
    if group.family == Family.H1:
        return tuple(group.index((p * i, j)) for i in range(p) for j in range(p))
    return tuple(group.index((0, j, k)) for j in range(p) for k in range(p))


def sequence_classes(group: Group, seq: SuitableSequence) -> List[Tuple[int, ...]]:
    p = group.prime
    if seq.p != p:
        raise ValueError(f"Sequence is for p={seq.p}, group for p={p}")
    z = shift_element(group)
    classes = [(x,) for x in thin_subgroup(group)]
    for i in range(1, p):
        members = np.array(base_class(group, seq, i))
        for _ in range(p):
            classes.append(tuple(int(v) for v in members))
            members = group.mul[members, z]
    return classes


def _sring_from_sequence(family: Family, seq: SuitableSequence) -> SRing:
    group = build_group(GroupSpec(family, seq.p))
    sr = validate_sring(Partition.from_classes(group, sequence_classes(group, seq)))
    assert is_p_sring(sr)
    return sr


def sring_h1_from_sequence(seq: SuitableSequence) -> SRing:
    return _sring_from_sequence(Family.H1, seq)


def sring_h2_from_sequence(seq: SuitableSequence) -> SRing:
    return _sring_from_sequence(Family.H2, seq)


def sring_from_sequence(family, seq: SuitableSequence) -> SRing:
    return _sring_from_sequence(Family(family), seq)


def _set_product(group: Group, left, right) -> frozenset:
    return frozenset(int(v) for v in np.unique(group.mul[np.ix_(list(left), list(right))]))


def inverse_identity_holds(group: Group, seq: SuitableSequence) -> bool:
    """T_i^-1 = T_{p-i} (a^p)^-1 for every i"""
    p = group.prime
    shift = int(group.inv[group.power(group.generator('a'), p)])
    for i in range(1, p):
        inverse = frozenset(int(group.inv[x]) for x in base_class(group, seq, i))
        shifted = frozenset(int(group.mul[x, shift]) for x in base_class(group, seq, p - i))
        if inverse != shifted:
            return False
    return True


def product_dichotomy_holds(group: Group, seq: SuitableSequence) -> bool:
    """
    T_i T_{p-i} = a^p <t_{p-i}> and T_i T_j = a^(i+j) L otherwise.
    """
    p = group.prime
    a = group.generator('a')
    L = thin_subgroup(group)
    classes: Dict[int, Tuple[int, ...]] = {i: base_class(group, seq, i) for i in range(1, p)}
    for i in range(1, p):
        for j in range(1, p):
            product = _set_product(group, classes[i], classes[j])
            if j == p - i:
                t = class_generator(group, seq, j)
                cyclic = [group.power(t, m) for m in range(p)]
                expected = _set_product(group, [group.power(a, p)], cyclic)
            else:
                expected = _set_product(group, [group.power(a, i + j)], L)
            if product != expected:
                return False
    return True
