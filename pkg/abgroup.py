#!/usr/bin/env python3
"""
Finite Abelian Groups
Direct sums of cyclic groups: element arithmetic, subgroups, quotients and homomorphisms
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ, eye
from sympy.matrices.normalforms import invariant_factors


# Constants
DEFAULT_ENUMERATION_BUDGET = 2 ** 20
MAX_GROUP_SIZE = 2 ** 32

logger = logging.getLogger("abgroup")


class AbelianGroupError(Exception):
    """Base error for finite abelian group operations"""


class InvalidGroup(AbelianGroupError, ValueError):
    """Raised for non-positive cyclic orders or groups too large to handle"""


class MismatchedGroups(AbelianGroupError):
    """Raised when elements of different groups are combined"""


class BudgetExceeded(AbelianGroupError):
    """Raised when an enumeration would exceed its element budget"""


class NotASubgroup(AbelianGroupError, ValueError):
    """Raised when a set passed as a subgroup is not closed"""


class NotWellDefinedHom(AbelianGroupError, ValueError):
    """Raised when generator images do not respect the generator orders"""


@dataclass(frozen=True)
class FinAbGroup:
    """G = Z_{n_1} x ... x Z_{n_k}; order-1 factors are dropped on construction"""
    orders: Tuple[int, ...]

    def __post_init__(self):
        try:
            orders = tuple(int(n) for n in self.orders)
        except (TypeError, ValueError) as e:
            raise InvalidGroup(f"Cyclic orders must be integers: {self.orders!r}") from e
        if any(n < 1 for n in orders):
            raise InvalidGroup(f"Cyclic orders must be positive: {orders}")
        normalized = tuple(n for n in orders if n > 1)
        if math.prod(normalized) > MAX_GROUP_SIZE:
            raise InvalidGroup(f"Group of order {math.prod(normalized)} is too large")
        object.__setattr__(self, 'orders', normalized)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @property
    def zero(self) -> 'GroupElem':
        return GroupElem._make(self, (0,) * self.rank)

    def element(self, residues: Sequence[int]) -> 'GroupElem':
        return GroupElem(self, tuple(residues))

    def generator(self, index: int) -> 'GroupElem':
        residues = [0] * self.rank
        residues[index] = 1
        return GroupElem._make(self, tuple(residues))

    def generators(self) -> List['GroupElem']:
        return [self.generator(i) for i in range(self.rank)]

    def check_enumerable(self, budget: int = DEFAULT_ENUMERATION_BUDGET):
        if self.size > budget:
            raise BudgetExceeded(f"Group of order {self.size} exceeds enumeration budget {budget}")

    def elements(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> Iterator['GroupElem']:
        """All elements in lexicographic order of residues"""
        self.check_enumerable(budget)
        for residues in itertools.product(*(range(n) for n in self.orders)):
            yield GroupElem._make(self, residues)

    def contains(self, g: 'GroupElem') -> bool:
        return g.group == self

    def direct_sum(self, other: 'FinAbGroup') -> 'FinAbGroup':
        return FinAbGroup(self.orders + other.orders)

    def __str__(self) -> str:
        if not self.orders:
            return "0"
        return " x ".join(f"Z {n}" for n in self.orders)


@dataclass(frozen=True)
class GroupElem:
    """Element of a FinAbGroup as a tuple of residues"""
    group: FinAbGroup
    residues: Tuple[int, ...]

    def __post_init__(self):
        residues = tuple(int(r) for r in self.residues)
        if len(residues) != self.group.rank:
            raise MismatchedGroups(
                f"Element {residues} has {len(residues)} coordinates, group {self.group} has rank {self.group.rank}")
        object.__setattr__(self, 'residues', tuple(r % n for r, n in zip(residues, self.group.orders)))

    @classmethod
    def _make(cls, group: FinAbGroup, residues: Tuple[int, ...]) -> 'GroupElem':
        # Residues are already reduced
        elem = object.__new__(cls)
        object.__setattr__(elem, 'group', group)
        object.__setattr__(elem, 'residues', residues)
        return elem

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __add__(self, other: 'GroupElem') -> 'GroupElem':
        return elem_add(self, other)

    def __sub__(self, other: 'GroupElem') -> 'GroupElem':
        return elem_add(self, elem_neg(other))

    def __neg__(self) -> 'GroupElem':
        return elem_neg(self)

    def __mul__(self, scalar: int) -> 'GroupElem':
        return elem_scale(self, scalar)

    __rmul__ = __mul__

    def __lt__(self, other: 'GroupElem') -> bool:
        return self.residues < other.residues

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"GroupElem{format_element(self)}"


def _check_same(a: GroupElem, b: GroupElem):
    if a.group != b.group:
        raise MismatchedGroups(f"Elements belong to different groups: {a.group} and {b.group}")


def elem_add(a: GroupElem, b: GroupElem) -> GroupElem:
    _check_same(a, b)
    return GroupElem._make(a.group, tuple((x + y) % n for x, y, n in zip(a.residues, b.residues, a.group.orders)))


def elem_neg(a: GroupElem) -> GroupElem:
    return GroupElem._make(a.group, tuple((-x) % n for x, n in zip(a.residues, a.group.orders)))


def elem_scale(a: GroupElem, scalar: int) -> GroupElem:
    return GroupElem._make(a.group, tuple((scalar * x) % n for x, n in zip(a.residues, a.group.orders)))


def elem_order(a: GroupElem) -> int:
    return reduce(math.lcm, (n // math.gcd(n, x) for x, n in zip(a.residues, a.group.orders)), 1)


def format_element(g: GroupElem) -> str:
    return "(" + ",".join(str(r) for r in g.residues) + ")"


def parse_element(group: FinAbGroup, text: str) -> GroupElem:
    """Parse '(l1,...,lk)'; residues are reduced modulo the cyclic orders"""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",") if p.strip()]
    try:
        residues = tuple(int(p) for p in parts)
    except ValueError as e:
        raise InvalidGroup(f"Malformed group element: {text!r}") from e
    return GroupElem(group, residues)


def subgroup_generated(group: FinAbGroup, gens: Iterable[GroupElem],
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> FrozenSet[GroupElem]:
    """Subgroup generated by gens, built one cyclic factor at a time"""
    group.check_enumerable(budget)
    span = {group.zero}
    for g in gens:
        if g.group != group:
            raise MismatchedGroups(f"Generator {g} does not belong to {group}")
        if g in span:
            continue
        multiples = []
        current = group.zero
        for _ in range(elem_order(g)):
            multiples.append(current)
            current = elem_add(current, g)
        span = {elem_add(s, m) for s in span for m in multiples}
    return frozenset(span)


def generates(group: FinAbGroup, elements: Iterable[GroupElem],
              budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    return len(subgroup_generated(group, elements, budget)) == group.size


def is_subgroup(group: FinAbGroup, subset: Iterable[GroupElem]) -> bool:
    subset = frozenset(subset)
    if group.zero not in subset:
        return False
    return subgroup_generated(group, subset) == subset


def generating_set(group: FinAbGroup, subgroup: Iterable[GroupElem]) -> List[GroupElem]:
    """Greedy small generating set in sorted element order"""
    gens: List[GroupElem] = []
    span = frozenset({group.zero})
    for h in sorted(subgroup):
        if h not in span:
            gens.append(h)
            span = subgroup_generated(group, gens)
    return gens


def canonical_orders(group: FinAbGroup) -> Tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... with the trivial ones dropped"""
    if not group.orders:
        return ()
    factors = invariant_factors(Matrix.diag(*group.orders), domain=ZZ)
    return tuple(int(f) for f in factors if int(f) > 1)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the domain generators"""
    domain: FinAbGroup
    codomain: FinAbGroup
    images: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.domain.rank:
            raise NotWellDefinedHom(f"Expected {self.domain.rank} generator images, got {len(self.images)}")
        images = tuple(GroupElem(self.codomain, tuple(img)).residues for img in self.images)
        for n, img in zip(self.domain.orders, images):
            if not elem_scale(GroupElem._make(self.codomain, img), n).is_zero():
                raise NotWellDefinedHom(f"Image {img} of a generator of order {n} does not have order dividing {n}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, group: FinAbGroup) -> 'GroupHom':
        return cls(group, group, tuple(g.residues for g in group.generators()))

    def apply(self, g: GroupElem) -> GroupElem:
        if g.group != self.domain:
            raise MismatchedGroups(f"{g} is not in the domain {self.domain}")
        out = [0] * self.codomain.rank
        for coeff, img in zip(g.residues, self.images):
            if coeff:
                for t, v in enumerate(img):
                    out[t] += coeff * v
        return GroupElem._make(self.codomain, tuple(x % n for x, n in zip(out, self.codomain.orders)))

    __call__ = apply

    def then(self, other: 'GroupHom') -> 'GroupHom':
        """Composite: apply self, then other"""
        if other.domain != self.codomain:
            raise MismatchedGroups("Homomorphisms are not composable")
        return GroupHom(self.domain, other.codomain,
                        tuple(other.apply(GroupElem._make(self.codomain, img)).residues for img in self.images))

    def image_of(self, elements: Iterable[GroupElem]) -> FrozenSet[GroupElem]:
        return frozenset(self.apply(g) for g in elements)

    def kernel(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> FrozenSet[GroupElem]:
        return frozenset(g for g in self.domain.elements(budget) if self.apply(g).is_zero())

    def is_surjective(self) -> bool:
        return generates(self.codomain, (GroupElem._make(self.codomain, img) for img in self.images))

    def is_injective(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
        return len(self.kernel(budget)) == 1


# Smith normal form over the integers, on sympy matrices.
# D = U * A * V with U, V unimodular and d_1 | d_2 | ... on the diagonal.

def _move_least_to_start(A: Matrix, U: Matrix, V: Matrix, s: int) -> bool:
    rows, cols = A.shape
    best = None
    for i in range(s, rows):
        for j in range(s, cols):
            if A[i, j] != 0 and (best is None or abs(A[i, j]) < abs(A[best])):
                best = (i, j)
    if best is None:
        return False
    i, j = best
    if i != s:
        A.row_swap(s, i)
        U.row_swap(s, i)
    if j != s:
        A.col_swap(s, j)
        V.col_swap(s, j)
    return True


def _edging_clear(A: Matrix, s: int) -> bool:
    rows, cols = A.shape
    return (all(A[i, s] == 0 for i in range(s + 1, rows))
            and all(A[s, j] == 0 for j in range(s + 1, cols)))


def _modify_edging(A: Matrix, U: Matrix, V: Matrix, s: int):
    rows, cols = A.shape
    while True:
        pivot = A[s, s]
        for i in range(s + 1, rows):
            q = A[i, s] // pivot
            if q:
                A.row_op(i, lambda v, j: v - q * A[s, j])
                U.row_op(i, lambda v, j: v - q * U[s, j])
        for j in range(s + 1, cols):
            q = A[s, j] // pivot
            if q:
                A.col_op(j, lambda v, i: v - q * A[i, s])
                V.col_op(j, lambda v, i: v - q * V[i, s])
        if _edging_clear(A, s):
            return
        # a remainder is now smaller than the pivot; bring it to (s, s)
        best_row = min((i for i in range(s + 1, rows) if A[i, s] != 0), key=lambda i: abs(A[i, s]), default=None)
        best_col = min((j for j in range(s + 1, cols) if A[s, j] != 0), key=lambda j: abs(A[s, j]), default=None)
        row_val = abs(A[best_row, s]) if best_row is not None else None
        col_val = abs(A[s, best_col]) if best_col is not None else None
        if col_val is None or (row_val is not None and row_val <= col_val):
            A.row_swap(s, best_row)
            U.row_swap(s, best_row)
        else:
            A.col_swap(s, best_col)
            V.col_swap(s, best_col)


def _non_divisible_row(A: Matrix, s: int) -> Optional[int]:
    rows, cols = A.shape
    for i in range(s + 1, rows):
        for j in range(s + 1, cols):
            if A[i, j] % A[s, s] != 0:
                return i
    return None


def smith_decomposition(rows: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    A = Matrix(rows)
    height, width = A.shape
    U = eye(height)
    V = eye(width)
    for s in range(min(height, width)):
        if not _move_least_to_start(A, U, V, s):
            break
        while True:
            _modify_edging(A, U, V, s)
            i = _non_divisible_row(A, s)
            if i is None:
                break
            A.row_op(s, lambda v, j: v + A[i, j])
            U.row_op(s, lambda v, j: v + U[i, j])
        if A[s, s] < 0:
            A.row_op(s, lambda v, j: -v)
            U.row_op(s, lambda v, j: -v)
    return A, U, V


def quotient(group: FinAbGroup, subgroup: Iterable[GroupElem],
             budget: int = DEFAULT_ENUMERATION_BUDGET) -> Tuple[FinAbGroup, GroupHom]:
    """G/H with its projection.

    A coordinate subgroup is removed by dropping its coordinates, so the
    remaining generators keep their order. Other subgroups go through the
    Smith normal form of the relation matrix.
    """
    H = frozenset(subgroup)
    for h in H:
        if h.group != group:
            raise MismatchedGroups(f"{h} does not belong to {group}")
    if group.zero not in H or subgroup_generated(group, H, budget) != H:
        raise NotASubgroup(f"Set of {len(H)} elements is not a subgroup of {group}")

    if len(H) == 1:
        return group, GroupHom.identity(group)

    support = sorted({i for h in H for i, r in enumerate(h.residues) if r})
    if len(H) == math.prod(group.orders[i] for i in support):
        kept = [i for i in range(group.rank) if i not in support]
        target = FinAbGroup(tuple(group.orders[i] for i in kept))
        images = []
        for i in range(group.rank):
            img = [0] * target.rank
            if i in kept:
                img[kept.index(i)] = 1
            images.append(tuple(img))
        logger.debug(f"Quotient of {group} by coordinate subgroup on {support}")
        return target, GroupHom(group, target, tuple(images))

    relations = [[n if j == i else 0 for j in range(group.rank)] for i, n in enumerate(group.orders)]
    relations += [list(g.residues) for g in generating_set(group, H)]
    D, _, V = smith_decomposition(relations)
    factors = [abs(int(D[t, t])) for t in range(group.rank)]
    kept = [t for t in range(group.rank) if factors[t] > 1]
    target = FinAbGroup(tuple(factors[t] for t in kept))
    images = tuple(tuple(int(V[i, t]) % factors[t] for t in kept) for i in range(group.rank))
    logger.debug(f"Quotient of {group} by subgroup of order {len(H)} is {target}")
    return target, GroupHom(group, target, images)
