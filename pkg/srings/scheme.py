"""
Cayley association schemes of S-rings.

The color matrix holds, for every pair (x, y), the index of the class
containing y x^-1, so (x, y) lies in R(T) exactly when y = t x for some
t in T. Intersection numbers follow the relational definition
a[s, t, u] = |{z : (x, z) in s, (z, y) in t}| for any (x, y) in u.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence

import numpy as np

from .conf import get_setting
from .exceptions import ValidationFailure
from .pgroup import Family, Group
from .sring import SRing, a_subgroups

logger = logging.getLogger(__name__)


class InconsistentConstant(ValidationFailure):
    """The color map is not an association scheme"""

    def __init__(self, s, t, u, witnesses):
        self.s, self.t, self.u = s, t, u
        self.witnesses = witnesses
        super().__init__(
            f"a[{s}, {t}, {u}] is not constant: pairs {witnesses[0]} and {witnesses[1]} disagree"
        )


class EmptyBlock(ValidationFailure):
    def __init__(self, d, e, f, x):
        self.d, self.e, self.f, self.x = d, e, f, x
        super().__init__(f"Relation {e} does not meet {x}{d} x {x}{f}")


@dataclass(frozen=True, eq=False)
class CayleyScheme:
    group: Group
    color: np.ndarray = field(repr=False)
    rank: int
    sring: Optional[SRing] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.color.shape[0]

    def relation_members(self, s: int, x: int = 0) -> np.ndarray:
        """The neighbourhood xs = {y : (x, y) in s}"""
        return np.flatnonzero(self.color[x] == s)

    def valencies(self) -> np.ndarray:
        return np.bincount(self.color[0], minlength=self.rank).astype(np.int64)

    def converse(self) -> np.ndarray:
        """star[s] is the index of the converse relation s*"""
        star = np.empty(self.rank, dtype=np.int64)
        y_of = [int(self.relation_members(s)[0]) for s in range(self.rank)]
        for s, y in enumerate(y_of):
            star[s] = self.color[y, 0]
        return star


@dataclass(frozen=True, eq=False)
class IntersectionNumbers:
    a: np.ndarray = field(repr=False)
    n: np.ndarray
    star: np.ndarray

    @property
    def total(self) -> int:
        return int(self.n.sum())


@dataclass
class LemmaReport:
    base_points: int
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def scheme_from_sring(sr: SRing) -> CayleyScheme:
    """
    Materialize the color matrix of the Cayley scheme of ``sr``.

    The classes recovered from the row of the identity must be the classes
    of ``sr``.
    """
    group = sr.group
    if len(sr.partition.support) != group.order:
        raise ValueError('Cayley schemes are built over the whole group')
    # M[y, x] = y x^-1
    color = sr.class_of[group.mul[:, group.inv]].T.astype(np.int16)
    color = np.ascontiguousarray(color)
    color.setflags(write=False)
    for k, members in enumerate(sr.classes):
        recovered = tuple(int(y) for y in np.flatnonzero(color[group.identity] == k))
        assert recovered == members, f"class {k} not recovered from the identity row"
    logger.info(f"Built Cayley scheme with {sr.rank} relations on {group.order} points")
    return CayleyScheme(group=group, color=color, rank=sr.rank, sring=sr)


def _generators(group: Group) -> List[int]:
    names = ('a', 'b') if group.family == Family.H1 else ('a', 'b', 'c')
    return [group.generator(name) for name in names]


def is_translation_invariant(cs: CayleyScheme) -> bool:
    for g in _generators(cs.group):
        moved = cs.group.mul[:, g]
        if not np.array_equal(cs.color[np.ix_(moved, moved)], cs.color):
            return False
    return True


COUNT_CHUNK_ENTRIES = 4_000_000


def _first_count_mismatch(cs: CayleyScheme, a: np.ndarray, x: int):
    """
    First (y, s, t) where |{z : (x, z) in s, (z, y) in t}| differs from
    a[s, t, color(x, y)], or None. Columns y are processed in chunks.
    """
    r = cs.rank
    n = cs.order
    chunk = max(1, COUNT_CHUNK_ENTRIES // (r * r))
    row = cs.color[x].astype(np.int64)[:, None] * r
    for start in range(0, n, chunk):
        ys = np.arange(start, min(n, start + chunk))
        keys = np.arange(len(ys))[None, :] * (r * r) + row + cs.color[:, ys].astype(np.int64)
        counts = np.bincount(keys.ravel(), minlength=len(ys) * r * r).reshape(len(ys), r, r)
        expected = np.moveaxis(a[:, :, cs.color[x, ys]], 2, 0)
        bad = np.argwhere(counts != expected)
        if bad.size:
            y, s, t = (int(v) for v in bad[0])
            return start + y, s, t
    return None


def _check_constancy(cs: CayleyScheme, a: np.ndarray, x: int) -> None:
    mismatch = _first_count_mismatch(cs, a, x)
    if mismatch is not None:
        y, s, t = mismatch
        u = int(cs.color[x, y])
        first = int(np.flatnonzero(cs.color[x] == u)[0])
        raise InconsistentConstant(s, t, u, ((x, first), (x, y)))


def intersection_numbers(cs: CayleyScheme) -> IntersectionNumbers:
    """
    Intersection numbers read off at the identity, checked for constancy.

    Raises:
        InconsistentConstant: If some a[s, t, u] depends on the pair chosen in u
    """
    r = cs.rank
    base = cs.group.identity
    row = cs.color[base].astype(np.int64)
    a = np.zeros((r, r, r), dtype=np.int64)
    for u in range(r):
        y = int(np.flatnonzero(row == u)[0])
        keys = row * r + cs.color[:, y].astype(np.int64)
        a[:, :, u] = np.bincount(keys, minlength=r * r).reshape(r, r)
    _check_constancy(cs, a, base)
    if not is_translation_invariant(cs):
        for x in range(cs.order):
            _check_constancy(cs, a, x)
    a.setflags(write=False)
    numbers = IntersectionNumbers(a=a, n=cs.valencies(), star=cs.converse())
    if not np.array_equal(numbers.n, a[np.arange(r), numbers.star, base_relation(cs)]):
        raise InconsistentConstant(0, 0, 0, ('valency', 'a[s, s*, 1]'))
    return numbers


def base_relation(cs: CayleyScheme) -> int:
    """Index of the diagonal relation 1_X"""
    return int(cs.color[0, 0])


def group_algebra_constants_match(cs: CayleyScheme, numbers: IntersectionNumbers) -> bool:
    """
    Compare relational intersection numbers with the group-algebra constants.

    With R(T) = {(h, th)}, the relational product R(T1) R(T2) is R(T2 T1),
    so a[T1, T2, T] is the coefficient of T in T2 T1.
    """
    if cs.sring is None:
        raise ValueError('scheme was not built from an S-ring')
    return bool(np.array_equal(numbers.a, cs.sring.constants.transpose(1, 0, 2)))


def _valency_identities(numbers: IntersectionNumbers, report: LemmaReport) -> None:
    a, n, star = numbers.a, numbers.n, numbers.star
    # indices are (u, v, w)
    first = a.transpose(0, 2, 1) * n[None, :, None]
    second = a[star] * n[None, None, :]
    third = a[:, star, :].transpose(2, 0, 1) * n[:, None, None]
    for name, lhs, rhs in (('a_uwv n_v = a_u*vw n_w', first, second),
                           ('a_u*vw n_w = a_vw*u n_u', second, third)):
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            report.violations.append(f"valency identity {name} fails at {tuple(int(v) for v in bad[0])}")
    products = (a * n[None, None, :]).sum(axis=2)
    bad = np.argwhere(products != np.outer(n, n))
    if bad.size:
        report.violations.append(f"n_u n_v = sum_s a_uvs n_s fails at {tuple(int(v) for v in bad[0])}")


def _diagonal_meet_criterion(numbers: IntersectionNumbers, report: LemmaReport) -> None:
    a, star = numbers.a, numbers.star
    r = len(star)
    in_rr_star = (a[np.arange(r), star, :] > 0).astype(np.int64)
    meets_only_diagonal = (in_rr_star @ in_rr_star.T) == 1
    at_most_one = (a[star] <= 1).all(axis=2)
    bad = np.argwhere(meets_only_diagonal != at_most_one)
    if bad.size:
        rr, ss = (int(v) for v in bad[0])
        report.violations.append(f"rr* meets ss* only in 1_X iff a_r*st <= 1 fails for r={rr}, s={ss}")


def _base_point_checks(cs: CayleyScheme, numbers: IntersectionNumbers, x: int,
                       report: LemmaReport) -> None:
    a, star = numbers.a, numbers.star
    r = cs.rank
    # column w of e restricted to (xd, xf) has a[d, e, f] ones, f = color(x, w)
    mismatch = _first_count_mismatch(cs, a, x)
    if mismatch is not None:
        w, d, e = mismatch
        report.violations.append(f"column sums of block (d={d}, e={e}) at x={x} column {w} differ from a_def")

    row = cs.color[x].astype(np.int64)
    keys = row[:, None] * (r * r) + row[None, :] * r + cs.color.astype(np.int64)
    occurring = np.bincount(keys.ravel(), minlength=r ** 3).reshape(r, r, r) > 0
    predicted = a[star] > 0
    bad = np.argwhere(occurring != predicted)
    if bad.size:
        d, f, s = (int(v) for v in bad[0])
        report.violations.append(f"relations between xd and xf differ from d*f at x={x}, d={d}, f={f}, s={s}")


def lemma_suite(cs: CayleyScheme, all_base_points: Optional[bool] = None) -> LemmaReport:
    """
    Check the valency identities, the rr* / ss* criterion, the block
    column sums and the d*f description of the relations between two
    neighbourhoods.

    Args:
        cs: Scheme to check
        all_base_points: Run the base-point checks at every point; defaults
            to True up to the LEMMA_ALL_BASE_POINTS_MAX_ORDER setting

    Returns:
        LemmaReport; an empty violation list means every check passed
    """
    if all_base_points is None:
        all_base_points = cs.order <= get_setting('LEMMA_ALL_BASE_POINTS_MAX_ORDER')
    numbers = intersection_numbers(cs)
    points = range(cs.order) if all_base_points else [cs.group.identity]
    report = LemmaReport(base_points=len(points))
    _valency_identities(numbers, report)
    _diagonal_meet_criterion(numbers, report)
    for x in points:
        _base_point_checks(cs, numbers, x, report)
    if report.violations:
        logger.warning(f"Lemma suite found {len(report.violations)} violations")
    return report


def complex_product(numbers: IntersectionNumbers, P: Iterable[int], Q: Iterable[int]) -> FrozenSet[int]:
    P, Q = list(P), list(Q)
    if not P or not Q:
        raise ValueError('complex product needs nonempty relation sets')
    hit = (numbers.a[np.ix_(P, Q)] > 0).any(axis=(0, 1))
    return frozenset(int(s) for s in np.flatnonzero(hit))


def is_closed(numbers: IntersectionNumbers, T: Iterable[int]) -> bool:
    T = frozenset(T)
    return complex_product(numbers, T, T) <= T


def is_strongly_normal(numbers: IntersectionNumbers, T: Iterable[int]) -> bool:
    T = frozenset(T)
    for s in range(len(numbers.star)):
        conjugated = complex_product(numbers, complex_product(numbers, [numbers.star[s]], T), [s])
        if not conjugated <= T:
            return False
    return True


def _closure(numbers: IntersectionNumbers, seed: Iterable[int]) -> FrozenSet[int]:
    closed = frozenset(seed)
    while True:
        grown = closed | complex_product(numbers, closed, closed)
        if grown == closed:
            return closed
        closed = grown


def thin_residue_relations(cs: CayleyScheme, numbers: IntersectionNumbers,
                           method: str = 'generated') -> FrozenSet[int]:
    """
    Thin residue of the scheme.

    ``'generated'`` closes the union of all s*s; ``'lattice'`` intersects
    every strongly normal closed subset, taken from the A-subgroups.
    """
    r = cs.rank
    if method == 'generated':
        seed = set()
        for s in range(r):
            seed |= complex_product(numbers, [numbers.star[s]], [s])
        return _closure(numbers, seed)
    if method == 'lattice':
        if cs.sring is None:
            raise ValueError('lattice method needs the S-ring')
        residue = frozenset(range(r))
        for subgroup in a_subgroups(cs.sring):
            relations = frozenset(int(cs.sring.class_of[x]) for x in subgroup)
            if is_strongly_normal(numbers, relations):
                residue &= relations
        return residue
    raise ValueError(f"Unknown method {method!r}")


def thin_radical_relations(numbers: IntersectionNumbers) -> FrozenSet[int]:
    return frozenset(int(s) for s in np.flatnonzero(numbers.n == 1))


def _is_power_of(value: int, p: int) -> bool:
    while value % p == 0:
        value //= p
    return value == 1


def is_p_valenced(cs: CayleyScheme, numbers: IntersectionNumbers) -> bool:
    return all(_is_power_of(int(v), cs.group.prime) for v in numbers.n)


def is_p_scheme(cs: CayleyScheme, numbers: IntersectionNumbers) -> bool:
    return is_p_valenced(cs, numbers) and _is_power_of(numbers.total, cs.group.prime)


def check_thin_residue_structure(cs: CayleyScheme, numbers: IntersectionNumbers) -> bool:
    """
    True when the thin residue is thin, closed and isomorphic to C_p x C_p.

    The group law is rebuilt on the valency-one relations from the
    intersection numbers.
    """
    p = cs.group.prime
    residue = sorted(thin_residue_relations(cs, numbers))
    if len(residue) != p * p or any(numbers.n[s] != 1 for s in residue):
        return False
    if not is_closed(numbers, residue):
        return False
    law = {}
    for s in residue:
        for t in residue:
            product = complex_product(numbers, [s], [t])
            if len(product) != 1:
                return False
            law[s, t] = next(iter(product))
    if any(law[s, t] != law[t, s] for s in residue for t in residue):
        return False
    one = base_relation(cs)
    for s in residue:
        power = s
        for _ in range(p - 1):
            power = law[power, s]
        if power != one:
            return False
    return True


def block_matrix(cs: CayleyScheme, d: int, e: int, f: int, x: int = 0,
                 rows: Optional[Sequence[int]] = None,
                 cols: Optional[Sequence[int]] = None,
                 require_permutation: bool = False) -> np.ndarray:
    """
    Adjacency matrix of e restricted to (xd) x (xf).

    Args:
        rows, cols: Explicit orderings of xd and xf; ascending by default
        require_permutation: Raise EmptyBlock when the block has no entries

    Returns:
        0/1 matrix with rows indexed by xd and columns by xf
    """
    default_rows = cs.relation_members(d, x)
    default_cols = cs.relation_members(f, x)
    rows = default_rows if rows is None else np.asarray(rows)
    cols = default_cols if cols is None else np.asarray(cols)
    assert sorted(rows.tolist()) == default_rows.tolist(), 'row ordering must list xd'
    assert sorted(cols.tolist()) == default_cols.tolist(), 'column ordering must list xf'
    matrix = (cs.color[np.ix_(rows, cols)] == e).astype(np.int8)
    if require_permutation and not matrix.any():
        raise EmptyBlock(d, e, f, x)
    return matrix


def is_permutation_matrix(matrix: np.ndarray) -> bool:
    return (matrix.shape[0] == matrix.shape[1]
            and bool((matrix.sum(axis=0) == 1).all())
            and bool((matrix.sum(axis=1) == 1).all()))


def column_sums_match(matrix: np.ndarray, numbers: IntersectionNumbers, d: int, e: int, f: int) -> bool:
    return bool((matrix.sum(axis=0) == numbers.a[d, e, f]).all())
