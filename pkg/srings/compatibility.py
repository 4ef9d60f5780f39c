"""
Schurity through compatible cyclic permutations.

For a p-S-ring over H1 or H2 with conditions (A) and (B), classes outside
L = O_t are p-cycles' worth of elements: T_i = a^i <t_i> shifted by powers
of the central element z. A permutation in Gamma_1 fixes L pointwise and
rotates each such class while keeping its internal colors. The S-ring is
Schurian exactly when one such permutation keeps the colors between every
pair of representatives T_1, ..., T_{p-1}.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .automorphism import ConditionsABRequired, is_color_automorphism, is_schurian
from .exceptions import ValidationFailure
from .pgroup import Family
from .scheme import CayleyScheme, block_matrix, scheme_from_sring
from .sequences import mod4_3_sequence, sring_h1_from_sequence
from .sring import SRing, check_conditions_AB, right_stabilizer, thin_radical, translate_class

logger = logging.getLogger(__name__)


class EmptyIntersection(ValidationFailure):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"R(T_{k}) does not meet T_{i} x T_{j}: {k} + {i} is not {j} mod p")


class Inapplicable(ValidationFailure):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"Walkthrough does not apply: {reason}")


class UnsupportedLayout(ValidationFailure):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"Classes do not have the a^i <t_i> z^l layout: {reason}")


class NotInGamma1(ValidationFailure):
    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"Permutation is not in Gamma_1: {reason} (witness {witness})")


@dataclass(frozen=True)
class OrderedBasis:
    """
    Fixed orderings: L ascending, then each T_i z^l listed as
    (a^i z^l, a^i t_i z^l, ..., a^i t_i^(p-1) z^l).
    """
    L: Tuple[int, ...]
    representatives: Tuple[int, ...]
    generators: Tuple[int, ...]
    values: Tuple[int, ...]
    shifts: Dict[Tuple[int, int], int] = field(repr=False)
    orders: Dict[int, Tuple[int, ...]] = field(repr=False)
    block_order: Tuple[int, ...] = ()

    def representative(self, i: int) -> int:
        """Class index of T_i, 1-based"""
        return self.representatives[i - 1]

    def shifted(self, i: int, l: int) -> int:
        """Class index of T_i z^l"""
        return self.shifts[i, l % (len(self.representatives) + 1)]

    def flat_order(self) -> Tuple[int, ...]:
        elements = list(self.L)
        for k in self.block_order:
            elements.extend(self.orders[k])
        return tuple(elements)


@dataclass(frozen=True)
class CongruenceLine:
    """A n + offset = B l (mod p) between ordinals n in T_i and l in T_j"""
    A: int
    B: int
    p: int
    source: Tuple[int, int, int]
    offset: int = 0

    def holds(self, n: int, l: int) -> bool:
        return (self.A * n + self.offset - self.B * l) % self.p == 0

    def equivalent(self, other: 'CongruenceLine') -> bool:
        if self.offset % self.p or other.offset % self.p:
            return all(self.holds(n, l) == other.holds(n, l)
                       for n in range(self.p) for l in range(self.p))
        return (self.A * other.B - other.A * self.B) % self.p == 0

    def compose(self, other: 'CongruenceLine') -> 'CongruenceLine':
        """Eliminate the shared ordinal of self (n, m) and other (m, l)"""
        if self.offset or other.offset:
            raise ValueError('only homogeneous lines compose')
        return CongruenceLine(
            A=(self.A * other.A) % self.p,
            B=(self.B * other.B) % self.p,
            p=self.p,
            source=(self.source[0], other.source[1], -1),
        )

    def __str__(self):
        offset = f" + {self.offset}" if self.offset else ''
        return f"{self.A}n{offset} = {self.B}l (mod {self.p})"


@dataclass(frozen=True)
class CompatibilityVerdict:
    schurian: bool
    witness: Optional[Tuple[int, ...]]
    restrictions: Tuple[Tuple[int, ...], ...]
    branches: int
    basis: OrderedBasis = field(repr=False)


@dataclass
class CongruenceReport:
    p: int
    sequence: Tuple[int, ...]
    cases: Tuple[CongruenceLine, CongruenceLine, CongruenceLine]
    templates_match: Tuple[bool, bool, bool]
    composed: CongruenceLine
    witness: Tuple[int, int]
    third_case_holds: bool
    composition_holds: bool
    zero_pairs_ok: bool
    lines_match_blocks: bool
    compatibility_schurian: bool
    automorphism_schurian: Optional[bool] = None

    @property
    def non_schurian(self) -> bool:
        return self.third_case_holds and not self.composition_holds


def ordered_basis(sr: SRing) -> OrderedBasis:
    """
    Build the fixed orderings from the classes containing a, ..., a^(p-1).

    Raises:
        UnsupportedLayout: If a class is not a^i <t> with t of b-exponent 1,
            or the shifted classes do not cover the group
    """
    group = sr.group
    p = group.prime
    z = group.central_element()
    L = tuple(sorted(thin_radical(sr)))
    if len(L) != p * p or z not in L:
        raise UnsupportedLayout(f"thin radical has {len(L)} elements")
    a = group.generator('a')
    representatives, generators, values = [], [], []
    shifts: Dict[Tuple[int, int], int] = {}
    orders: Dict[int, Tuple[int, ...]] = {}
    block_order = []
    for i in range(1, p):
        a_i = group.power(a, i)
        k = sr.class_containing(a_i)
        if len(sr.classes[k]) != p:
            raise UnsupportedLayout(f"class of a^{i} has {len(sr.classes[k])} elements")
        candidates = [t for t in sorted(right_stabilizer(sr, k)) if group.elements[t][1] == 1]
        if not candidates:
            raise UnsupportedLayout(f"stabilizer of the class of a^{i} has no element with b-exponent 1")
        t = candidates[0]
        if group.family == Family.H1:
            if group.elements[t][0] % p:
                raise UnsupportedLayout(f"t_{i} is not b a^(p x)")
            values.append(group.elements[t][0] // p)
        else:
            if group.elements[t][0]:
                raise UnsupportedLayout(f"t_{i} is not b c^x")
            values.append(group.elements[t][2])
        members = [a_i]
        for _ in range(p - 1):
            members.append(int(group.mul[members[-1], t]))
        if sorted(members) != list(sr.classes[k]):
            raise UnsupportedLayout(f"class of a^{i} is not a^{i} <t_{i}>")
        representatives.append(k)
        generators.append(t)
        current = k
        ordered = np.array(members)
        for l in range(p):
            shifts[i, l] = current
            orders[current] = tuple(int(v) for v in ordered)
            block_order.append(current)
            ordered = group.mul[ordered, z]
            current = translate_class(sr, current, z)
    basis = OrderedBasis(
        L=L,
        representatives=tuple(representatives),
        generators=tuple(generators),
        values=tuple(values),
        shifts=shifts,
        orders=orders,
        block_order=tuple(block_order),
    )
    flat = basis.flat_order()
    if len(flat) != group.order or len(set(flat)) != group.order:
        raise UnsupportedLayout('shifted classes do not partition H minus L')
    return basis


def _assignments(color: np.ndarray, domain: Sequence[int], fixed: Dict[int, int]) -> List[Tuple[int, ...]]:
    """
    Every bijection of ``domain`` onto itself keeping colors inside the
    domain and towards the already fixed points, in lexicographic order.
    """
    domain = list(domain)
    fixed_points = np.array(list(fixed.keys()), dtype=np.int64)
    fixed_images = np.array(list(fixed.values()), dtype=np.int64)
    images: List[int] = []
    found = []

    def go(m):
        if m == len(domain):
            found.append(tuple(images))
            return
        w = domain[m]
        points = np.concatenate([fixed_points, np.array(domain[:m], dtype=np.int64)])
        targets = np.concatenate([fixed_images, np.array(images, dtype=np.int64)])
        for candidate in domain:
            if candidate in images:
                continue
            if len(points) and not (
                np.array_equal(color[points, w], color[targets, candidate])
                and np.array_equal(color[w, points], color[candidate, targets])
            ):
                continue
            images.append(candidate)
            go(m + 1)
            images.pop()

    go(0)
    return found


def _is_full_cycle(domain: Sequence[int], images: Sequence[int]) -> bool:
    mapping = dict(zip(domain, images))
    start = domain[0]
    x, length = mapping[start], 1
    while x != start:
        x = mapping[x]
        length += 1
    return length == len(domain)


def gamma1_restrictions(sr: SRing, class_index: int, cs: Optional[CayleyScheme] = None,
                        order: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """
    Color-preserving p-cycles on one class.

    Returns:
        Image tuples aligned with ``order`` (the sorted class by default)
    """
    cs = scheme_from_sring(sr) if cs is None else cs
    domain = list(sr.classes[class_index]) if order is None else list(order)
    restrictions = [images for images in _assignments(cs.color, domain, {})
                    if _is_full_cycle(domain, images)]
    if not restrictions:
        logger.warning(f"Class {class_index} admits no color-preserving p-cycle")
    return restrictions


def validate_gamma1(sr: SRing, images, cs: Optional[CayleyScheme] = None) -> np.ndarray:
    """
    Check that a permutation of H belongs to Gamma_1.

    Raises:
        NotInGamma1: With the first failing condition
    """
    cs = scheme_from_sring(sr) if cs is None else cs
    images = np.asarray(images, dtype=np.int64)
    if images.shape != (sr.group.order,) or len(np.unique(images)) != sr.group.order:
        raise NotInGamma1('not a permutation of H')
    L = thin_radical(sr)
    fixed = frozenset(int(x) for x in np.flatnonzero(images == np.arange(sr.group.order)))
    if fixed != L:
        raise NotInGamma1('fixed points differ from L', sorted(fixed ^ L)[0])
    p = sr.group.prime
    for k, members in enumerate(sr.classes):
        if members[0] in L:
            continue
        if len(members) != p:
            raise NotInGamma1('class outside L is not of size p', k)
        domain = list(members)
        moved = [int(images[x]) for x in domain]
        if sorted(moved) != domain:
            raise NotInGamma1('class is not mapped onto itself', k)
        if not _is_full_cycle(domain, moved):
            raise NotInGamma1('not a p-cycle on the class', k)
        if not np.array_equal(cs.color[np.ix_(domain, domain)], cs.color[np.ix_(moved, moved)]):
            raise NotInGamma1('internal colors not preserved', k)
    return images


def are_compatible(sr: SRing, images, T: int, T_prime: int, cs: Optional[CayleyScheme] = None) -> bool:
    """r(beta, gamma) = r(sigma beta, sigma gamma) for every beta in T, gamma in T'"""
    cs = scheme_from_sring(sr) if cs is None else cs
    images = np.asarray(images)
    rows = np.array(sr.classes[T])
    cols = np.array(sr.classes[T_prime])
    return bool(np.array_equal(cs.color[np.ix_(rows, cols)], cs.color[np.ix_(images[rows], images[cols])]))


def extend_by_center(sr: SRing, basis: OrderedBasis, restrictions: Dict[int, Dict[int, int]]) -> np.ndarray:
    """
    sigma'(h z^l) = sigma(h) z^l on the shifted classes, identity on L.

    Args:
        restrictions: For each representative class index, a map from its
            elements to their images
    """
    group = sr.group
    p = group.prime
    z = group.central_element()
    images = np.arange(group.order, dtype=np.int64)
    for i in range(1, p):
        mapping = restrictions[basis.representative(i)]
        shift = group.identity
        for _ in range(p):
            for h, target in mapping.items():
                images[group.mul[h, shift]] = group.mul[target, shift]
            shift = int(group.mul[shift, z])
    return images


def schurity_by_compatibility(sr: SRing, cs: Optional[CayleyScheme] = None) -> CompatibilityVerdict:
    """
    Search for a Gamma_1 permutation compatible on all representative pairs.

    Candidates on T_1 are taken in lexicographic order; the images on each
    further T_j are forced by the colors towards the classes already mapped.
    Every compatible chain is tried in turn; the first whose extension by z
    is a scheme automorphism is the witness.

    Raises:
        ConditionsABRequired: If (A) or (B) fails
        UnsupportedLayout: If the classes cannot be put in the fixed orderings
    """
    conditions = check_conditions_AB(sr)
    if not (conditions.holds_A and conditions.holds_B):
        raise ConditionsABRequired(conditions.holds_A, conditions.holds_B)
    cs = scheme_from_sring(sr) if cs is None else cs
    basis = ordered_basis(sr)
    p = sr.group.prime
    reps = [basis.representative(i) for i in range(1, p)]
    branches = 0

    def chains(position: int, fixed: Dict[int, int], chosen: List[Tuple[int, ...]]):
        nonlocal branches
        if position == len(reps):
            yield chosen
            return
        domain = list(basis.orders[reps[position]])
        for images in _assignments(cs.color, domain, fixed):
            if not _is_full_cycle(domain, images):
                continue
            branches += 1
            extended = dict(fixed)
            extended.update(zip(domain, images))
            yield from chains(position + 1, extended, chosen + [images])

    first_domain = list(basis.orders[reps[0]])
    for first in gamma1_restrictions(sr, reps[0], cs=cs, order=first_domain):
        for chosen in chains(1, dict(zip(first_domain, first)), [first]):
            restrictions = {
                k: dict(zip(basis.orders[k], images)) for k, images in zip(reps, chosen)
            }
            sigma = extend_by_center(sr, basis, restrictions)
            if is_color_automorphism(cs, sigma):
                validate_gamma1(sr, sigma, cs)
                logger.info(f"Compatible permutation found after {branches} branches")
                return CompatibilityVerdict(
                    schurian=True,
                    witness=tuple(int(v) for v in sigma),
                    restrictions=tuple(chosen),
                    branches=branches,
                    basis=basis,
                )
            logger.warning('Compatible representatives whose extension is not an automorphism')
    logger.info(f"No compatible permutation; {branches} branches explored")
    return CompatibilityVerdict(schurian=False, witness=None, restrictions=(), branches=branches, basis=basis)


def triple_congruence(sr: SRing, i: int, j: int, k: int,
                      basis: Optional[OrderedBasis] = None) -> CongruenceLine:
    """
    The line relating the ordinal n of a T_i element to the ordinal l of a
    T_j element when the pair lies in R(T_k).

    Raises:
        EmptyIntersection: If k + i is not j mod p
    """
    basis = ordered_basis(sr) if basis is None else basis
    p = sr.group.prime
    if (i + k - j) % p:
        raise EmptyIntersection(i, j, k)
    x = {m: basis.values[m - 1] for m in range(1, p)}
    offset = 1 if sr.group.family == Family.H1 and i + k > p else 0
    return CongruenceLine(
        A=(x[i] + i - x[k]) % p,
        B=(x[j] + i - x[k]) % p,
        p=p,
        source=(i, j, k),
        offset=offset,
    )


def line_matches_block(sr: SRing, line: CongruenceLine, cs: Optional[CayleyScheme] = None,
                       basis: Optional[OrderedBasis] = None) -> bool:
    """Compare the line with the ordered block of R(T_k) on T_i x T_j"""
    cs = scheme_from_sring(sr) if cs is None else cs
    basis = ordered_basis(sr) if basis is None else basis
    i, j, k = line.source
    d, e, f = basis.representative(i), basis.representative(k), basis.representative(j)
    matrix = block_matrix(cs, d, e, f, rows=basis.orders[d], cols=basis.orders[f],
                          require_permutation=True)
    p = sr.group.prime
    predicted = np.array([[line.holds(n, l) for l in range(p)] for n in range(p)], dtype=np.int8)
    return bool(np.array_equal(matrix, predicted))


def congruence_walkthrough(p: int, confirm_with_automorphisms: bool = False) -> CongruenceReport:
    """
    Replay the congruence argument against the x_2 = (p + 1)/2 sequence.

    Three triples give lines 2n = 3l, 5n = 2l and (p - 1)n = l; the first
    two compose to 5n = 3l, which (n, l) = (p - 1, 1) violates although it
    satisfies the third.

    Raises:
        Inapplicable: If p is not 3 mod 4 or the sequence has x_3 != p - 1
    """
    if p % 4 != 3 or p < 7:
        raise Inapplicable(f"p={p} is not a prime >= 7 congruent to 3 mod 4")
    seq = mod4_3_sequence(p)
    if seq.value(3) != p - 1:
        raise Inapplicable(f"x_3 = {seq.value(3)} is not p - 1")
    sr = sring_h1_from_sequence(seq)
    cs = scheme_from_sring(sr)
    basis = ordered_basis(sr)
    cases = (
        triple_congruence(sr, 1, 2, 1, basis),
        triple_congruence(sr, 2, 3, 1, basis),
        triple_congruence(sr, 1, 3, 2, basis),
    )
    templates = (
        CongruenceLine(2, 3, p, (1, 2, 1)),
        CongruenceLine(5, 2, p, (2, 3, 1)),
        CongruenceLine(p - 1, 1, p, (1, 3, 2)),
    )
    composed = cases[0].compose(cases[1])
    witness = (p - 1, 1)
    group = sr.group
    a = group.generator('a')
    a2, a3 = group.power(a, 2), group.power(a, 3)
    zero_pairs_ok = (
        int(cs.color[a, a2]) == basis.representative(1)
        and int(cs.color[a2, a3]) == basis.representative(1)
        and int(cs.color[a, a3]) == basis.representative(2)
    )
    verdict = schurity_by_compatibility(sr, cs)
    report = CongruenceReport(
        p=p,
        sequence=seq.x,
        cases=cases,
        templates_match=tuple(case.equivalent(t) for case, t in zip(cases, templates)),
        composed=composed,
        witness=witness,
        third_case_holds=cases[2].holds(*witness),
        composition_holds=composed.holds(*witness),
        zero_pairs_ok=zero_pairs_ok,
        lines_match_blocks=all(line_matches_block(sr, case, cs, basis) for case in cases),
        compatibility_schurian=verdict.schurian,
    )
    if confirm_with_automorphisms:
        report.automorphism_schurian = is_schurian(sr, cs=cs).schurian
    return report
