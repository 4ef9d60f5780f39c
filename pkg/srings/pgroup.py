"""
Exact multiplication tables for the two non-abelian groups of order p^3.

H1 = <a, b | a^(p^2) = b^p = 1, ab = ba^(p+1)> with elements a^i b^j,
H2 = <a, b, c | a^p = b^p = c^p = 1, [a, b] = c central> with elements
a^i b^j c^k. Elements are addressed by index, lexicographic on the
normal-form exponents, so index 0 is always the identity.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, FrozenSet, Tuple

import numpy as np
from django.db import models

from .conf import get_setting
from .exceptions import ValidationFailure

logger = logging.getLogger(__name__)


class InvalidPrime(ValidationFailure):
    """The group parameter is not an odd prime"""

    def __init__(self, prime):
        self.prime = prime
        super().__init__(f"p must be an odd prime, got {prime}")


class NotASubgroup(ValidationFailure):
    """An element set claimed to be a subgroup is not closed"""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"Set is not a subgroup: {witness}")


class EmptyGenerators(ValidationFailure):
    """generate_subgroup was called without generators"""

    def __init__(self):
        super().__init__("Generator set must not be empty")


class Family(models.TextChoices):
    H1 = 'h1', 'H1'
    H2 = 'h2', 'H2'


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    prime: int

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        if not isinstance(self.prime, (int, np.integer)) or not is_odd_prime(int(self.prime)):
            raise InvalidPrime(self.prime)
        object.__setattr__(self, 'prime', int(self.prime))

    @property
    def header(self) -> str:
        return f"group={self.family.value} p={self.prime}"


@dataclass(frozen=True, eq=False)
class Group:
    """
    A group of order p^3 with precomputed tables.

    ``elements[x]`` is the normal form of element ``x``; ``mul[x, y]`` is the
    index of ``x * y`` and ``inv[x]`` the index of ``x^-1``.
    """
    spec: GroupSpec
    elements: Tuple[Tuple[int, ...], ...]
    mul: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def prime(self) -> int:
        return self.spec.prime

    @property
    def family(self) -> Family:
        return self.spec.family

    def index(self, normal_form) -> int:
        """Index of a normal form; exponents are reduced first"""
        p = self.prime
        if self.family == Family.H1:
            i, j = normal_form
            return (i % (p * p)) * p + (j % p)
        i, j, k = normal_form
        return ((i % p) * p + (j % p)) * p + (k % p)

    def generator(self, name: str) -> int:
        if name == 'a':
            return 1 * self.prime if self.family == Family.H1 else self.prime ** 2
        if name == 'b':
            return 1 if self.family == Family.H1 else self.prime
        if name == 'c' and self.family == Family.H2:
            return 1
        raise KeyError(f"{self.family.value} has no generator {name!r}")

    def product(self, *xs: int) -> int:
        result = self.identity
        for x in xs:
            result = int(self.mul[result, x])
        return result

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        result = self.identity
        for _ in range(k):
            result = int(self.mul[result, x])
        return result

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.mul[y, x])
            k += 1
        return k

    def central_element(self) -> int:
        """The element z used for class shifts: a^p in H1, c in H2"""
        if self.family == Family.H1:
            return self.power(self.generator('a'), self.prime)
        return self.generator('c')

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        return _closure_witness(self, elements) is None


def _normal_forms(spec: GroupSpec) -> np.ndarray:
    p = spec.prime
    if spec.family == Family.H1:
        i, j = np.meshgrid(np.arange(p * p), np.arange(p), indexing='ij')
        return np.stack([i.ravel(), j.ravel()], axis=1)
    i, j, k = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing='ij')
    return np.stack([i.ravel(), j.ravel(), k.ravel()], axis=1)


def _multiplication_table(spec: GroupSpec, forms: np.ndarray) -> np.ndarray:
    p = spec.prime
    if spec.family == Family.H1:
        i1, j1 = forms[:, 0][:, None], forms[:, 1][:, None]
        i2, j2 = forms[:, 0][None, :], forms[:, 1][None, :]
        # b^j a = a^((1-p)^j) b^j and (1-p)^j = 1 - jp mod p^2
        i = (i1 + i2 * (1 - j1 * p)) % (p * p)
        j = (j1 + j2) % p
        return (i * p + j).astype(np.int32)
    i1, j1, k1 = (forms[:, t][:, None] for t in range(3))
    i2, j2, k2 = (forms[:, t][None, :] for t in range(3))
    i = (i1 + i2) % p
    j = (j1 + j2) % p
    k = (k1 + k2 - j1 * i2) % p
    return ((i * p + j) * p + k).astype(np.int32)


def _to_b_first(spec: GroupSpec, form) -> Tuple[int, ...]:
    """Rewrite a normal form as b^J a^I (c^K) using only the defining relations"""
    p = spec.prime
    if spec.family == Family.H1:
        i, j = (int(v) for v in form)
        # a^m b -> b a^(m(p+1)), applied once per b
        for _ in range(j):
            i = (i * (p + 1)) % (p * p)
        return (j, i)
    i, j, k = (int(v) for v in form)
    # a^m b -> b a^m c^m
    for _ in range(j):
        k = (k + i) % p
    return (j, i, k)


def _rewrite_times_generator(spec: GroupSpec, b_first, gen: str) -> Tuple[int, ...]:
    p = spec.prime
    if spec.family == Family.H1:
        j, i = b_first
        if gen == 'a':
            return (j, (i + 1) % (p * p))
        return ((j + 1) % p, (i * (p + 1)) % (p * p))
    j, i, k = b_first
    if gen == 'a':
        return (j, (i + 1) % p, k)
    if gen == 'b':
        return ((j + 1) % p, i, (k + i) % p)
    return (j, i, (k + 1) % p)


def _verify_against_rewriting(spec: GroupSpec, forms: np.ndarray, mul: np.ndarray, gens) -> None:
    for name, g in gens.items():
        for x in range(len(forms)):
            expected = _rewrite_times_generator(spec, _to_b_first(spec, forms[x]), name)
            actual = _to_b_first(spec, forms[mul[x, g]])
            if expected != actual:
                raise AssertionError(
                    f"Normal-form law disagrees with the presentation at "
                    f"{tuple(forms[x])} * {name}: {actual} != {expected}"
                )


def _verify_group_axioms(spec: GroupSpec, mul: np.ndarray, inv: np.ndarray) -> None:
    n = mul.shape[0]
    everything = np.arange(n)
    if not (np.array_equal(mul[0], everything) and np.array_equal(mul[:, 0], everything)):
        raise AssertionError("Index 0 is not a two-sided identity")
    if np.any(mul[everything, inv] != 0) or np.any(mul[inv, everything] != 0):
        raise AssertionError("Inverse table is not two-sided")
    if spec.prime <= get_setting('GROUP_EXHAUSTIVE_CHECK_MAX_PRIME'):
        rows = everything
    else:
        rows = np.unique(np.linspace(0, n - 1, get_setting('GROUP_SPOT_CHECK_ROWS')).astype(int))
    for x in rows:
        r = mul[x]
        # (x y) z == x (y z) for every y, z
        if not np.array_equal(mul[r], r[mul]):
            raise AssertionError(f"Associativity fails for left factor {x}")


@lru_cache(maxsize=16)
def _build(family: str, prime: int) -> Group:
    spec = GroupSpec(Family(family), prime)
    forms = _normal_forms(spec)
    mul = _multiplication_table(spec, forms)
    inv = np.argmin(mul, axis=1).astype(np.int32)
    elements = tuple(tuple(int(v) for v in row) for row in forms)
    group = Group(spec=spec, elements=elements, mul=mul, inv=inv)

    names = ('a', 'b') if spec.family == Family.H1 else ('a', 'b', 'c')
    _verify_against_rewriting(spec, forms, mul, {name: group.generator(name) for name in names})
    _verify_group_axioms(spec, mul, inv)

    mul.setflags(write=False)
    inv.setflags(write=False)
    logger.info(f"Built {spec.family.value}({prime}) of order {group.order}")
    return group


def build_group(spec: GroupSpec) -> Group:
    """
    Build a group from its spec, verifying the normal-form law.

    Args:
        spec: Family and prime

    Returns:
        Immutable Group shared between callers asking for the same GroupSpec
    """
    return _build(spec.family.value, spec.prime)


def center(group: Group) -> FrozenSet[int]:
    """Elements commuting with every element"""
    commuting = (group.mul == group.mul.T).all(axis=1)
    return frozenset(int(z) for z in np.flatnonzero(commuting))


def generate_subgroup(group: Group, gens: Iterable[int]) -> FrozenSet[int]:
    gens = [int(g) for g in gens]
    if not gens:
        raise EmptyGenerators()
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = int(group.mul[x, g])
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def _closure_witness(group: Group, elements: Iterable[int]):
    subset = np.array(sorted({int(x) for x in elements}), dtype=np.int64)
    if subset.size == 0 or subset[0] != group.identity:
        return 'identity missing'
    inside = np.zeros(group.order, dtype=bool)
    inside[subset] = True
    products = group.mul[np.ix_(subset, subset)]
    bad = np.argwhere(~inside[products])
    if bad.size:
        x, y = bad[0]
        return (int(subset[x]), int(subset[y]))
    return None


def coset(group: Group, subgroup: Iterable[int], h: int, side: str = 'left') -> FrozenSet[int]:
    """
    hK (side='left') or Kh (side='right').

    Raises:
        NotASubgroup: If ``subgroup`` is not closed under multiplication
    """
    subgroup = frozenset(int(x) for x in subgroup)
    witness = _closure_witness(group, subgroup)
    if witness is not None:
        raise NotASubgroup(witness)
    members = np.fromiter(subgroup, dtype=np.int64)
    if side == 'left':
        return frozenset(int(y) for y in group.mul[h, members])
    if side == 'right':
        return frozenset(int(y) for y in group.mul[members, h])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
