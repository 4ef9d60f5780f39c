"""
Color-preserving automorphisms of Cayley schemes.

The point stabilizer of the identity is computed by individualization and
refinement: one fixed first path of individualized points gives the base,
and for every base point, deepest first, each candidate image is either
already in the orbit of the generators found so far or is tested by a
backtracking search for an extending automorphism.
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import List, Optional, Tuple

import numpy as np

from .conf import get_setting
from .exceptions import ValidationFailure
from .scheme import CayleyScheme, scheme_from_sring
from .sring import SRing, check_conditions_AB

logger = logging.getLogger(__name__)


class StabilizerOrbitNotInClass(ValidationFailure):
    """An orbit of the stabilizer meets two classes; the search is broken"""

    def __init__(self, orbit, classes):
        self.orbit = orbit
        self.classes = classes
        super().__init__(f"Stabilizer orbit {orbit} meets classes {classes}")


class ConditionsABRequired(ValidationFailure):
    def __init__(self, holds_A, holds_B):
        self.holds_A = holds_A
        self.holds_B = holds_B
        super().__init__(
            f"S-ring must satisfy conditions (A) and (B) (A={holds_A}, B={holds_B})"
        )


class Precheck(enum.Enum):
    MAYBE_SCHURIAN = 'MaybeSchurian'
    CERTAINLY_NOT = 'CertainlyNot'


@dataclass(frozen=True)
class AutResult:
    stabilizer_order: int
    generators: Tuple[Tuple[int, ...], ...]
    base: Tuple[int, ...]
    orbits: Tuple[Tuple[int, ...], ...]
    stabilizer_elements: Tuple[Tuple[int, ...], ...] = field(repr=False)
    elements_enumerated: bool
    order: int
    nodes: int = 0

    @property
    def full_aut_order(self) -> int:
        return self.stabilizer_order * self.order


@dataclass(frozen=True)
class SchurityCertificate:
    schurian: bool
    aut: AutResult
    split_class: Optional[int] = None
    split_orbits: Tuple[Tuple[int, ...], ...] = ()

    @property
    def generators(self):
        return self.aut.generators if self.schurian else ()


def is_color_automorphism(cs: CayleyScheme, images) -> bool:
    """True if color(x, y) == color(images[x], images[y]) for every pair"""
    images = np.asarray(images)
    if images.shape != (cs.order,) or len(np.unique(images)) != cs.order:
        return False
    return bool(np.array_equal(cs.color[np.ix_(images, images)], cs.color))


class _Search:
    def __init__(self, cs: CayleyScheme, threads: int):
        self.color = cs.color.astype(np.int64)
        self.n = cs.order
        self.cs = cs
        self.threads = max(1, threads)
        self.multiplier = 2 * self.n + 1
        self.nodes = 0
        self._prefix_states = {}

    def refine(self, left: np.ndarray, right: np.ndarray):
        """
        Refine both colorings together so equal labels mean matching cells.
        Returns None when the cell sizes stop matching.
        """
        n = self.n
        distinct = len(np.unique(np.concatenate([left, right])))
        while True:
            self.nodes += 1
            sig_left = np.sort(self.color * self.multiplier + left[None, :], axis=1)
            sig_right = np.sort(self.color * self.multiplier + right[None, :], axis=1)
            stacked = np.vstack([
                np.column_stack([left, sig_left]),
                np.column_stack([right, sig_right]),
            ])
            _, labels = np.unique(stacked, axis=0, return_inverse=True)
            labels = labels.reshape(-1)
            left, right = labels[:n], labels[n:]
            k = int(labels.max()) + 1
            if not np.array_equal(np.bincount(left, minlength=k), np.bincount(right, minlength=k)):
                return None
            if k == distinct:
                return left, right
            distinct = k

    def individualize(self, left, right, x, y):
        fresh = max(int(left.max()), int(right.max())) + 1
        left = left.copy()
        right = right.copy()
        left[x] = fresh
        right[y] = fresh
        return self.refine(left, right)

    def root(self):
        zeros = np.zeros(self.n, dtype=np.int64)
        return self.individualize(zeros, zeros, 0, 0)

    def first_path(self) -> List[int]:
        base = [0]
        left, right = self.root()
        while len(np.unique(left)) < self.n:
            sizes = np.bincount(left)
            beta = int(np.flatnonzero(sizes[left] > 1)[0])
            base.append(beta)
            left, right = self.individualize(left, right, beta, beta)
        return base

    def state_after(self, prefix: List[int]):
        key = tuple(prefix)
        if key not in self._prefix_states:
            state = self.root()
            for beta in prefix[1:]:
                state = self.individualize(*state, beta, beta)
            self._prefix_states[key] = state
        return self._prefix_states[key]

    def extend(self, state, base: List[int], depth: int) -> Optional[np.ndarray]:
        left, right = state
        if depth == len(base):
            images = np.empty(self.n, dtype=np.int64)
            images[np.argsort(left)] = np.argsort(right)
            return images if is_color_automorphism(self.cs, images) else None
        beta = base[depth]
        for delta in np.flatnonzero(right == left[beta]):
            refined = self.individualize(left, right, beta, int(delta))
            if refined is None:
                continue
            found = self.extend(refined, base, depth + 1)
            if found is not None:
                return found
        return None

    def map_base_point(self, base: List[int], level: int, gamma: int) -> Optional[np.ndarray]:
        """An automorphism fixing base[:level] and sending base[level] to gamma"""
        prefix_state = self.state_after(base[:level])
        refined = self.individualize(*prefix_state, base[level], gamma)
        if refined is None:
            return None
        return self.extend(refined, base, level + 1)


def _orbit(point: int, generators: List[np.ndarray]) -> set:
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for images in generators:
            y = int(images[x])
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _orbit_partition(n: int, generators: List[np.ndarray]) -> Tuple[Tuple[int, ...], ...]:
    seen = np.zeros(n, dtype=bool)
    orbits = []
    for x in range(n):
        if not seen[x]:
            orbit = sorted(_orbit(x, generators))
            seen[orbit] = True
            orbits.append(tuple(orbit))
    return tuple(orbits)


def _enumerate(n: int, generators: List[np.ndarray]) -> List[Tuple[int, ...]]:
    identity = tuple(range(n))
    elements = {identity}
    frontier = [np.arange(n)]
    while frontier:
        current = frontier.pop()
        for images in generators:
            composed = images[current]
            key = tuple(int(v) for v in composed)
            if key not in elements:
                elements.add(key)
                frontier.append(composed)
    return sorted(elements)


def stabilizer_automorphisms(cs: CayleyScheme, threads: Optional[int] = None) -> AutResult:
    """
    Compute the stabilizer of the identity in the automorphism group of ``cs``.

    Args:
        cs: Cayley scheme
        threads: Worker count for candidate tests within one level

    Returns:
        AutResult with order, generators, base, orbits and, when the order
        is at most AUT_ENUMERATION_CAP, the sorted element list
    """
    threads = get_setting('THREADS') if threads is None else threads
    search = _Search(cs, threads)
    base = search.first_path()
    generators: List[np.ndarray] = []
    orbit_sizes = []
    for level in range(len(base) - 1, 0, -1):
        beta = base[level]
        left, _ = search.state_after(base[:level])
        candidates = [int(g) for g in np.flatnonzero(left == left[beta]) if g != beta]
        known = _orbit(beta, generators)
        pending = [g for g in candidates if g not in known]
        if search.threads > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=search.threads) as pool:
                found = dict(zip(pending, pool.map(
                    lambda g: search.map_base_point(base, level, g), pending)))
            for gamma in pending:
                if gamma not in known and found[gamma] is not None:
                    generators.append(found[gamma])
                    known = _orbit(beta, generators)
        else:
            for gamma in pending:
                if gamma in known:
                    continue
                images = search.map_base_point(base, level, gamma)
                if images is not None:
                    generators.append(images)
                    known = _orbit(beta, generators)
        orbit_sizes.append(len(known))
        logger.debug(f"Level {level}: base point {beta}, orbit size {len(known)}, "
                     f"{len(generators)} generators so far")

    order = prod(orbit_sizes)
    cap = get_setting('AUT_ENUMERATION_CAP')
    enumerated = order <= cap
    elements = tuple(_enumerate(cs.order, generators)) if enumerated else ()
    if enumerated:
        assert len(elements) == order, 'enumerated stabilizer disagrees with the orbit product'
    logger.info(f"Automorphism search finished: stabilizer order {order}, "
                f"base length {len(base)}, {search.nodes} refinement rounds")
    return AutResult(
        stabilizer_order=order,
        generators=tuple(tuple(int(v) for v in images) for images in generators),
        base=tuple(base),
        orbits=_orbit_partition(cs.order, generators),
        stabilizer_elements=elements,
        elements_enumerated=enumerated,
        order=cs.order,
        nodes=search.nodes,
    )


def is_schurian(sr: SRing, threads: Optional[int] = None,
                cs: Optional[CayleyScheme] = None) -> SchurityCertificate:
    """
    Decide Schurity by comparing stabilizer orbits with the classes.

    Raises:
        StabilizerOrbitNotInClass: If an orbit meets two classes
    """
    cs = scheme_from_sring(sr) if cs is None else cs
    aut = stabilizer_automorphisms(cs, threads=threads)
    orbits_in_class = {}
    for orbit in aut.orbits:
        touched = sorted({int(sr.class_of[x]) for x in orbit})
        if len(touched) != 1:
            raise StabilizerOrbitNotInClass(orbit, touched)
        orbits_in_class.setdefault(touched[0], []).append(orbit)
    for k in range(sr.rank):
        if len(orbits_in_class[k]) > 1:
            return SchurityCertificate(
                schurian=False, aut=aut, split_class=k,
                split_orbits=tuple(orbits_in_class[k]),
            )
    return SchurityCertificate(schurian=True, aut=aut)


def aut_order_precheck(sr: SRing, aut: Optional[AutResult] = None) -> Precheck:
    """
    Necessary condition for Schurity of an S-ring with conditions (A) and
    (B): a stabilizer of order p. Never claims Schurity.

    Raises:
        ConditionsABRequired: If (A) or (B) fails
    """
    conditions = check_conditions_AB(sr)
    if not (conditions.holds_A and conditions.holds_B):
        raise ConditionsABRequired(conditions.holds_A, conditions.holds_B)
    aut = stabilizer_automorphisms(scheme_from_sring(sr)) if aut is None else aut
    if aut.stabilizer_order != sr.group.prime:
        return Precheck.CERTAINLY_NOT
    return Precheck.MAYBE_SCHURIAN
