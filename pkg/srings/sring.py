"""
Partitions of a group, Schur-ring validation and the S-ring invariants.

A Partition covers either the whole group or an A-subgroup of it (for
restrictions). Classes are kept sorted by their minimum element index, so
the identity class is always class 0.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ValidationFailure
from .pgroup import Family, Group, center, generate_subgroup

logger = logging.getLogger(__name__)


class NotAPartition(ValidationFailure):
    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"Not a partition: {reason} (witness {witness})")


class IdentityNotSingleton(ValidationFailure):
    def __init__(self, class_index, size):
        self.class_index = class_index
        self.size = size
        super().__init__(
            f"Identity class {class_index} has {size} elements; it must be {{1_H}}"
        )


class NotInverseClosed(ValidationFailure):
    def __init__(self, class_index, witness):
        self.class_index = class_index
        self.witness = witness
        super().__init__(
            f"Inverse set of class {class_index} is not a class (element {witness})"
        )


class NotClosedUnderProduct(ValidationFailure):
    def __init__(self, i, j, witness):
        self.i = i
        self.j = j
        self.witness = witness
        super().__init__(
            f"Product of classes {i} and {j} is not a combination of classes; "
            f"elements {witness} of one class get different multiplicities"
        )


class NotAnASubgroup(ValidationFailure):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"Not a subgroup made of whole classes (witness {witness})")


class NotAThinElement(ValidationFailure):
    def __init__(self, element):
        self.element = element
        super().__init__(f"Element {element} is not a singleton class")


class NotAnAutomorphism(ValidationFailure):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"Map is not a group automorphism (witness pair {witness})")


@dataclass(frozen=True, eq=False)
class Partition:
    group: Group
    classes: Tuple[Tuple[int, ...], ...]
    class_of: np.ndarray = field(repr=False)
    support: FrozenSet[int] = field(repr=False)

    @classmethod
    def from_classes(cls, group: Group, classes: Iterable[Iterable[int]],
                     support: Optional[Iterable[int]] = None) -> 'Partition':
        """
        Canonicalize a list of classes over ``support`` (default: the whole group).

        Raises:
            NotAPartition: On empty, overlapping or missing classes
        """
        support = frozenset(range(group.order)) if support is None else frozenset(support)
        class_of = np.full(group.order, -1, dtype=np.int32)
        cleaned = []
        for members in classes:
            members = tuple(sorted({int(x) for x in members}))
            if not members:
                raise NotAPartition('empty class')
            cleaned.append(members)
        cleaned.sort(key=lambda members: members[0])
        for k, members in enumerate(cleaned):
            for x in members:
                if x not in support:
                    raise NotAPartition('element outside the support', x)
                if class_of[x] != -1:
                    raise NotAPartition('classes overlap', x)
                class_of[x] = k
        missing = [x for x in support if class_of[x] == -1]
        if missing:
            raise NotAPartition('classes do not cover the support', min(missing))
        class_of.setflags(write=False)
        return cls(group=group, classes=tuple(cleaned), class_of=class_of, support=support)

    @property
    def rank(self) -> int:
        return len(self.classes)


@dataclass(frozen=True, eq=False)
class SRing:
    partition: Partition
    constants: np.ndarray = field(repr=False)
    inverse_map: Tuple[int, ...]

    @property
    def group(self) -> Group:
        return self.partition.group

    @property
    def classes(self):
        return self.partition.classes

    @property
    def class_of(self) -> np.ndarray:
        return self.partition.class_of

    @property
    def rank(self) -> int:
        return self.partition.rank

    @property
    def sizes(self) -> np.ndarray:
        return np.array([len(members) for members in self.classes], dtype=np.int64)

    def class_containing(self, x: int) -> int:
        k = int(self.class_of[x])
        if k < 0:
            raise KeyError(f"Element {x} is outside the support")
        return k

    def canonical_form(self) -> Tuple[Tuple[int, ...], ...]:
        return self.classes


@dataclass(frozen=True)
class SuitabilityConditionsAB:
    holds_A: bool
    holds_B: bool
    stabilizers: Tuple[FrozenSet[int], ...]
    stabilizers_avoid_center: bool
    block_structure_holds: bool

    @property
    def distinct_stabilizers(self) -> int:
        return len(set(self.stabilizers))


def singleton_partition(group: Group) -> Partition:
    return Partition.from_classes(group, ([x] for x in range(group.order)))


def trivial_partition(group: Group) -> Partition:
    return Partition.from_classes(group, [[group.identity], range(1, group.order)])


def _class_order(part: Partition):
    order = np.concatenate([np.array(members, dtype=np.int64) for members in part.classes])
    starts = np.cumsum([0] + [len(members) for members in part.classes[:-1]])
    return order, starts


def validate_sring(part: Partition) -> SRing:
    """
    Check the Schur-ring axioms and compute the structure constants.

    The first violated axiom is reported, in the order identity class,
    inverse closure, product closure.

    Args:
        part: Partition of the group or of a subgroup

    Returns:
        SRing whose ``constants[i, j, k]`` is the coefficient of T_k in T_i T_j
    """
    group = part.group
    class_of = part.class_of
    identity_class = int(class_of[group.identity])
    if identity_class < 0:
        raise NotAPartition('support does not contain the identity', group.identity)
    if len(part.classes[identity_class]) != 1:
        raise IdentityNotSingleton(identity_class, len(part.classes[identity_class]))

    inverse_map = []
    for k, members in enumerate(part.classes):
        inverses = group.inv[np.array(members)]
        targets = class_of[inverses]
        target = int(targets[0])
        if target < 0 or np.any(targets != target) or len(part.classes[target]) != len(members):
            bad = members[int(np.argmax(targets != target))] if np.any(targets != target) else members[0]
            raise NotInverseClosed(k, bad)
        inverse_map.append(target)

    order, starts = _class_order(part)
    r = part.rank
    n = group.order
    constants = np.zeros((r, r, r), dtype=np.int32)
    arrays = [np.array(members, dtype=np.int64) for members in part.classes]
    for i in range(r):
        rows = group.mul[arrays[i]]
        for j in range(r):
            products = rows[:, arrays[j]].ravel()
            outside = class_of[products] < 0
            if np.any(outside):
                raise NotClosedUnderProduct(i, j, (int(products[np.argmax(outside)]), None))
            counts = np.bincount(products, minlength=n)[order]
            low = np.minimum.reduceat(counts, starts)
            high = np.maximum.reduceat(counts, starts)
            uneven = np.flatnonzero(low != high)
            if uneven.size:
                k = int(uneven[0])
                members = arrays[k]
                per_member = counts[starts[k]:starts[k] + len(members)]
                witness = (int(members[np.argmin(per_member)]), int(members[np.argmax(per_member)]))
                raise NotClosedUnderProduct(i, j, witness)
            constants[i, j] = low
    constants.setflags(write=False)
    logger.info(f"Validated S-ring with {r} classes over a support of {len(part.support)} elements")
    return SRing(partition=part, constants=constants, inverse_map=tuple(inverse_map))


def is_p_sring(sr: SRing) -> bool:
    p = sr.group.prime
    for size in sr.sizes:
        size = int(size)
        while size % p == 0:
            size //= p
        if size != 1:
            return False
    return True


def is_commutative(sr: SRing) -> bool:
    return bool(np.array_equal(sr.constants, sr.constants.transpose(1, 0, 2)))


def thin_radical(sr: SRing) -> FrozenSet[int]:
    """Elements forming singleton classes"""
    radical = frozenset(members[0] for members in sr.classes if len(members) == 1)
    assert sr.group.is_subgroup(radical), 'thin radical is not a subgroup'
    return radical


def thin_residue(sr: SRing) -> FrozenSet[int]:
    """Subgroup generated by every T^-1 T"""
    group = sr.group
    gens = set()
    for members in sr.classes:
        arr = np.array(members)
        gens.update(int(x) for x in np.unique(group.mul[np.ix_(group.inv[arr], arr)]))
    return generate_subgroup(group, gens)


def right_stabilizer(sr: SRing, class_index: int) -> FrozenSet[int]:
    """St_R(T) = {h : Th = T}"""
    group = sr.group
    members = np.array(sr.classes[class_index])
    target = np.sort(members)
    first_inverse = group.inv[members[0]]
    stabilizer = set()
    for h in group.mul[first_inverse, members]:
        if np.array_equal(np.sort(group.mul[members, h]), target):
            stabilizer.add(int(h))
    stabilizer = frozenset(stabilizer)
    assert _is_union_of_classes(sr, stabilizer), 'stabilizer is not an A-set'
    return stabilizer


def _is_union_of_classes(sr: SRing, elements: FrozenSet[int]) -> bool:
    if any(sr.class_of[x] < 0 for x in elements):
        return False
    touched = {int(sr.class_of[x]) for x in elements}
    return sum(len(sr.classes[k]) for k in touched) == len(elements)


def _close_vectorized(group: Group, seed: np.ndarray) -> np.ndarray:
    members = seed.copy()
    members[group.identity] = True
    while True:
        idx = np.flatnonzero(members)
        grown = members.copy()
        grown[group.mul[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(grown, members):
            return members
        members = grown


def a_subgroups(sr: SRing) -> List[FrozenSet[int]]:
    """
    All subgroups that are unions of classes, sorted by order then elements.

    Every A-subgroup E is reached from {e} by adding the classes inside E
    one at a time, so the search is complete.
    """
    group = sr.group
    class_masks = []
    for members in sr.classes:
        mask = np.zeros(group.order, dtype=bool)
        mask[list(members)] = True
        class_masks.append(mask)
    start = np.zeros(group.order, dtype=bool)
    start[group.identity] = True
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for k, mask in enumerate(class_masks):
            if current[sr.classes[k][0]]:
                continue
            grown = _close_vectorized(group, current | mask)
            key = grown.tobytes()
            if key not in seen:
                seen[key] = grown
                frontier.append(grown)
    found = [frozenset(int(x) for x in np.flatnonzero(mask)) for mask in seen.values()]
    found.sort(key=lambda members: (len(members), sorted(members)))
    for members in found:
        assert _is_union_of_classes(sr, members)
    return found


def restriction(sr: SRing, subgroup: Iterable[int]) -> SRing:
    """
    The S-ring A_E over an A-subgroup E.

    Raises:
        NotAnASubgroup: If E is not a subgroup or not a union of classes
    """
    subgroup = frozenset(int(x) for x in subgroup)
    if not sr.group.is_subgroup(subgroup):
        raise NotAnASubgroup('not closed under multiplication')
    for x in subgroup:
        if sr.class_of[x] < 0 or not set(sr.classes[sr.class_of[x]]) <= subgroup:
            raise NotAnASubgroup(x)
    classes = [members for members in sr.classes if members[0] in subgroup]
    return validate_sring(Partition.from_classes(sr.group, classes, support=subgroup))


def translate_class(sr: SRing, class_index: int, m: int) -> int:
    """
    Index of the class Tm for a thin element m.

    Raises:
        NotAThinElement: If {m} is not a class
    """
    if sr.class_of[m] < 0 or len(sr.classes[sr.class_containing(m)]) != 1:
        raise NotAThinElement(m)
    moved = sr.group.mul[np.array(sr.classes[class_index]), m]
    target = sr.class_containing(int(moved[0]))
    assert tuple(sorted(int(x) for x in moved)) == sr.classes[target]
    return target


def automorphism_from_images(group: Group, images: Dict[str, int]) -> np.ndarray:
    """
    Extend generator images to a map on the whole group and check it.

    Args:
        group: H1 or H2
        images: Images of ``'a'`` and ``'b'`` (c = [a, b] follows)

    Returns:
        Read-only image array

    Raises:
        NotAnAutomorphism: If the extension is not a bijective homomorphism
    """
    p = group.prime
    A, B = int(images['a']), int(images['b'])
    if group.family == Family.H1:
        pa = [group.power(A, i) for i in range(p * p)]
        pb = [group.power(B, j) for j in range(p)]
        mapped = [group.mul[pa[i], pb[j]] for i, j in group.elements]
    else:
        C = group.product(group.inv[A], group.inv[B], A, B)
        pa = [group.power(A, i) for i in range(p)]
        pb = [group.power(B, j) for j in range(p)]
        pc = [group.power(C, k) for k in range(p)]
        mapped = [group.product(pa[i], pb[j], pc[k]) for i, j, k in group.elements]
    return check_automorphism(group, np.array(mapped, dtype=np.int32))


def check_automorphism(group: Group, images: np.ndarray) -> np.ndarray:
    images = np.array(images, dtype=np.int32)
    if images.shape != (group.order,) or len(np.unique(images)) != group.order:
        raise NotAnAutomorphism('not a bijection')
    lhs = images[group.mul]
    rhs = group.mul[images[:, None], images[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotAnAutomorphism((int(bad[0][0]), int(bad[0][1])))
    images.setflags(write=False)
    return images


def transitivity_module(group: Group, auts: Sequence[np.ndarray]) -> SRing:
    """
    S-ring of orbits of the automorphism group generated by ``auts``.
    """
    checked = [check_automorphism(group, images) for images in auts]
    parent = list(range(group.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for images in checked:
        for x in range(group.order):
            rx, ry = find(x), find(int(images[x]))
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    orbits: Dict[int, List[int]] = {}
    for x in range(group.order):
        orbits.setdefault(find(x), []).append(x)
    return validate_sring(Partition.from_classes(group, orbits.values()))


def outside_classes(sr: SRing, residue: Optional[FrozenSet[int]] = None) -> List[int]:
    """Indices of the classes not contained in the thin residue"""
    residue = thin_residue(sr) if residue is None else residue
    return [k for k, members in enumerate(sr.classes) if members[0] not in residue]


def check_conditions_AB(sr: SRing) -> SuitabilityConditionsAB:
    """
    Evaluate conditions (A) and (B) together with the stabilizer and block
    structure facts that follow from them.
    """
    group = sr.group
    p = group.prime
    residue = thin_residue(sr)
    outside = outside_classes(sr, residue)
    stabilizers = tuple(right_stabilizer(sr, k) for k in outside)
    holds_A = all(len(sr.classes[k]) == p for k in outside)
    holds_B = len(set(stabilizers)) == p - 1

    z_center = center(group)
    avoid_center = all(stabilizer != z_center for stabilizer in stabilizers)

    block_structure = False
    radical = thin_radical(sr)
    z = group.central_element()
    if (holds_A and radical == residue and z in radical
            and len(radical) == p * p and len(outside) == p * (p - 1)):
        block_structure = True
        for k in outside:
            shifted = {k}
            current = k
            for _ in range(p - 1):
                current = translate_class(sr, current, z)
                shifted.add(current)
            if len(shifted) != p:
                block_structure = False
                break
    return SuitabilityConditionsAB(
        holds_A=holds_A,
        holds_B=holds_B,
        stabilizers=stabilizers,
        stabilizers_avoid_center=avoid_center,
        block_structure_holds=block_structure,
    )
