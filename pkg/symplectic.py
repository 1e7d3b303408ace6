#!/usr/bin/env python3
"""
Symplectic Data
Alternating bicharacters, bilinear 2-cocycles and twisted group algebras on finite abelian groups
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from abgroup import (
    DEFAULT_ENUMERATION_BUDGET, AbelianGroupError, BudgetExceeded, FinAbGroup, GroupElem, GroupHom,
    MismatchedGroups, elem_order
)
from cyclolinalg import CycloNum, cyclo_root

logger = logging.getLogger("symplectic")


class SymplecticError(Exception):
    """Base error for bicharacter, cocycle and twisted algebra operations"""


class NotAlternating(SymplecticError, ValueError):
    """Raised when an exponent matrix is not alternating modulo N"""


class NotWellDefined(SymplecticError, ValueError):
    """Raised when exponents are not compatible with the cyclic orders"""


class NotDivision(SymplecticError):
    """Raised when a basis product vanishes or a commutator is not a root of unity"""


class MismatchedAlgebras(SymplecticError):
    """Raised when elements of different twisted group algebras are multiplied"""


def _scaled(expo: Sequence[Sequence[int]], factor: int, modulus: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple((factor * v) % modulus for v in row) for row in expo)


@dataclass(frozen=True)
class _ExponentForm:
    """Bilinear map G x G -> mu_N given by exponents on the generators"""
    group: FinAbGroup
    N: int
    expo: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if int(self.N) < 1:
            raise NotWellDefined(f"Root order must be positive, got {self.N}")
        N = int(self.N)
        k = self.group.rank
        if len(self.expo) != k or any(len(row) != k for row in self.expo):
            raise NotWellDefined(f"Exponent matrix must be {k}x{k} for {self.group}")
        object.__setattr__(self, 'N', N)
        object.__setattr__(self, 'expo', tuple(tuple(int(v) % N for v in row) for row in self.expo))
        orders = self.group.orders
        for i in range(k):
            for j in range(k):
                if (orders[i] * self.expo[i][j]) % N or (orders[j] * self.expo[i][j]) % N:
                    raise NotWellDefined(
                        f"Exponent m[{i + 1}][{j + 1}] = {self.expo[i][j]} is not killed by the orders "
                        f"{orders[i]} and {orders[j]} modulo {N}")

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.expo, dtype=np.int64).reshape(self.group.rank, self.group.rank)

    def exponent(self, a: GroupElem, b: GroupElem) -> int:
        if a.group != self.group or b.group != self.group:
            raise MismatchedGroups(f"Arguments must belong to {self.group}")
        left = np.array(a.residues, dtype=np.int64)
        right = np.array(b.residues, dtype=np.int64)
        return int(left @ self.matrix @ right) % self.N

    def value(self, a: GroupElem, b: GroupElem) -> CycloNum:
        return cyclo_root(self.N, self.exponent(a, b))

    def lifted(self, order: int) -> Tuple[Tuple[int, ...], ...]:
        """Exponent matrix rewritten for mu_order, order a multiple of N"""
        if order % self.N:
            raise NotWellDefined(f"Cannot lift exponents from mu_{self.N} to mu_{order}")
        return _scaled(self.expo, order // self.N, order)

    def same_values(self, other: '_ExponentForm') -> bool:
        """Equal as maps G x G -> F^x, even when stored with different N"""
        if self.group != other.group:
            return False
        common = math.lcm(self.N, other.N)
        return self.lifted(common) == other.lifted(common)


@dataclass(frozen=True)
class Bicharacter(_ExponentForm):
    """Alternating bicharacter: beta(a_i, a_j) = zeta_N^{m_ij}"""

    def __post_init__(self):
        super().__post_init__()
        k = self.group.rank
        for i in range(k):
            if self.expo[i][i]:
                raise NotAlternating(f"Diagonal exponent m[{i + 1}][{i + 1}] must vanish")
            for j in range(i):
                if (self.expo[i][j] + self.expo[j][i]) % self.N:
                    raise NotAlternating(f"m[{i + 1}][{j + 1}] + m[{j + 1}][{i + 1}] is not 0 mod {self.N}")

    @classmethod
    def from_lower(cls, group: FinAbGroup, lower: Sequence[Sequence[int]],
                   N: Optional[int] = None) -> 'Bicharacter':
        """Build from strictly-lower-triangular rows: row i holds m_i1 .. m_i(i-1)"""
        k = group.rank
        rows = [list(row) for row in lower]
        if k and rows and len(rows) == k and not rows[0]:
            rows = rows[1:]
        if len(rows) != max(k - 1, 0):
            raise NotWellDefined(f"Expected {max(k - 1, 0)} lower-triangle rows for rank {k}, got {len(rows)}")
        expo = [[0] * k for _ in range(k)]
        for offset, row in enumerate(rows):
            i = offset + 1
            if len(row) != i:
                raise NotWellDefined(f"Lower-triangle row {i + 1} must have {i} entries, got {len(row)}")
            for j, v in enumerate(row):
                expo[i][j] = int(v)
                expo[j][i] = -int(v)
        return cls(group, N if N is not None else group.exponent, tuple(tuple(r) for r in expo))

    @classmethod
    def trivial(cls, group: FinAbGroup, N: Optional[int] = None) -> 'Bicharacter':
        k = group.rank
        return cls(group, N if N is not None else group.exponent, tuple((0,) * k for _ in range(k)))

    def lower_triangle(self) -> List[List[int]]:
        return [list(self.expo[i][:i]) for i in range(1, self.group.rank)]


@dataclass(frozen=True)
class Cocycle(_ExponentForm):
    """Bilinear 2-cocycle: xi(a_i, a_j) = zeta_N^{s_ij}, extended bilinearly"""

    @classmethod
    def trivial(cls, group: FinAbGroup, N: Optional[int] = None) -> 'Cocycle':
        k = group.rank
        return cls(group, N if N is not None else group.exponent, tuple((0,) * k for _ in range(k)))


def beta_eval(beta: Bicharacter, a: GroupElem, b: GroupElem) -> int:
    return beta.exponent(a, b)


def radical(beta: Bicharacter, budget: int = DEFAULT_ENUMERATION_BUDGET) -> FrozenSet[GroupElem]:
    gens = beta.group.generators()
    return frozenset(g for g in beta.group.elements(budget)
                     if all(beta.exponent(g, a) == 0 for a in gens))


def is_nonsingular(beta: Bicharacter, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    return len(radical(beta, budget)) == 1


def standard_cocycle(beta: Bicharacter) -> Cocycle:
    """s_ij = m_ij below the diagonal, zero on and above it"""
    k = beta.group.rank
    expo = tuple(tuple(beta.expo[i][j] if i > j else 0 for j in range(k)) for i in range(k))
    return Cocycle(beta.group, beta.N, expo)


def psi(xi: Cocycle) -> Bicharacter:
    k = xi.group.rank
    expo = tuple(tuple((xi.expo[i][j] - xi.expo[j][i]) % xi.N for j in range(k)) for i in range(k))
    return Bicharacter(xi.group, xi.N, expo)


def _block_sum(first: _ExponentForm, second: _ExponentForm) -> Tuple[FinAbGroup, int, Tuple[Tuple[int, ...], ...]]:
    N = math.lcm(first.N, second.N)
    top = first.lifted(N)
    bottom = second.lifted(N)
    k1, k2 = first.group.rank, second.group.rank
    expo = [list(row) + [0] * k2 for row in top] + [[0] * k1 + list(row) for row in bottom]
    return first.group.direct_sum(second.group), N, tuple(tuple(r) for r in expo)


def orthogonal_sum(beta1: Bicharacter, beta2: Bicharacter) -> Bicharacter:
    return Bicharacter(*_block_sum(beta1, beta2))


def cocycle_product(xi1: Cocycle, xi2: Cocycle) -> Cocycle:
    return Cocycle(*_block_sum(xi1, xi2))


def embed_summand(element: GroupElem, total: FinAbGroup, first: bool) -> GroupElem:
    """Image of an element of one summand inside G1 + G2"""
    padding = (0,) * (total.rank - element.group.rank)
    residues = element.residues + padding if first else padding + element.residues
    return GroupElem(total, residues)


def pullback(xi: Cocycle, hom: GroupHom) -> Cocycle:
    """xi o (p x p) for p: G -> Gbar, as exponents S = P Sbar P^T"""
    if hom.codomain != xi.group:
        raise MismatchedGroups(f"Cocycle lives on {xi.group}, homomorphism lands in {hom.codomain}")
    if not hom.domain.rank:
        return Cocycle.trivial(hom.domain, xi.N)
    P = np.array(hom.images, dtype=np.int64).reshape(hom.domain.rank, hom.codomain.rank)
    S = (P @ xi.matrix @ P.T) % xi.N
    return Cocycle(hom.domain, xi.N, tuple(tuple(int(v) for v in row) for row in S))


def restrict(beta: Bicharacter, basis: Sequence[GroupElem],
             budget: int = DEFAULT_ENUMERATION_BUDGET) -> Tuple[Bicharacter, GroupHom]:
    """Restriction of beta to the subgroup with the given independent basis"""
    for b in basis:
        if b.group != beta.group:
            raise MismatchedGroups(f"{b} does not belong to {beta.group}")
    orders = tuple(elem_order(b) for b in basis)
    if any(n == 1 for n in orders):
        raise AbelianGroupError("Subgroup basis contains the zero element")
    sub = FinAbGroup(orders)
    embedding = GroupHom(sub, beta.group, tuple(b.residues for b in basis))
    if not embedding.is_injective(budget):
        raise AbelianGroupError("Subgroup basis is not independent")
    expo = tuple(tuple(beta.exponent(x, y) for y in basis) for x in basis)
    return Bicharacter(sub, beta.N, expo), embedding


def _match_root(value: CycloNum, N: int) -> Optional[int]:
    for m in range(N):
        if value == cyclo_root(N, m):
            return m
    return None


def extract_bicharacter(group: FinAbGroup, mul: Callable[[GroupElem, GroupElem], CycloNum],
                        N: Optional[int] = None, exhaustive: bool = True,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> Bicharacter:
    """
    Commutation bicharacter of a division grading given by its basis products.

    mul(g, h) returns c with a_g a_h = c a_{g+h}. beta(g, h) is the ratio
    c(g, h) / c(h, g), read off on generator pairs. Every basis product is
    first checked to be nonzero, which needs |G|^2 <= budget; callers that
    already know the grading is division pass exhaustive=False.
    """
    N = N if N is not None else group.exponent
    if exhaustive:
        if group.size * group.size > budget:
            raise BudgetExceeded(f"{group.size ** 2} basis products exceed the enumeration budget {budget}")
        elements = list(group.elements(budget))
        for g in elements:
            for h in elements:
                if mul(g, h).is_zero():
                    raise NotDivision(f"Basis product a_{g} a_{h} vanishes")
    gens = group.generators()
    k = group.rank
    expo = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i):
            forward = mul(gens[i], gens[j])
            backward = mul(gens[j], gens[i])
            if forward.is_zero() or backward.is_zero():
                raise NotDivision(f"Basis product of generators {i + 1} and {j + 1} vanishes")
            m = _match_root(forward / backward, N)
            if m is None:
                raise NotDivision(f"Commutator of generators {i + 1} and {j + 1} is not an {N}-th root of unity")
            expo[i][j] = m
            expo[j][i] = -m
    return Bicharacter(group, N, tuple(tuple(r) for r in expo))


def format_bicharacter(beta: Bicharacter) -> str:
    lines = [f"N={beta.N}"]
    for row in beta.lower_triangle():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_bicharacter(group: FinAbGroup, text: str) -> Bicharacter:
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]
    if not lines or not lines[0].startswith("N="):
        raise NotWellDefined("Bicharacter text must start with 'N=<int>'")
    try:
        N = int(lines[0][2:])
        rows = [[int(v) for v in line.replace(",", " ").split()] for line in lines[1:]]
    except ValueError as e:
        raise NotWellDefined(f"Malformed bicharacter text: {e}") from e
    return Bicharacter.from_lower(group, rows, N)


class TGAElement:
    """Element of a twisted group algebra F^xi G as a sparse coefficient map"""

    __slots__ = ('algebra', 'terms')

    def __init__(self, algebra: 'TwistedGroupAlgebra', terms: Optional[Dict[GroupElem, CycloNum]] = None):
        self.algebra = algebra
        clean = {}
        for g, c in (terms or {}).items():
            if g.group != algebra.group:
                raise MismatchedGroups(f"{g} does not belong to {algebra.group}")
            if not c.is_zero():
                clean[g] = c
        self.terms = clean

    def coefficient(self, g: GroupElem) -> CycloNum:
        return self.terms.get(g, CycloNum.zero(self.algebra.order))

    def __add__(self, other: 'TGAElement') -> 'TGAElement':
        if other.algebra != self.algebra:
            raise MismatchedAlgebras("Cannot add elements of different algebras")
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms[g] + c if g in terms else c
        return TGAElement(self.algebra, terms)

    def __mul__(self, other: 'TGAElement') -> 'TGAElement':
        return tga_mul(self, other)

    def scale(self, scalar: CycloNum) -> 'TGAElement':
        return TGAElement(self.algebra, {g: c * scalar for g, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TGAElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*u{g}" for g, c in sorted(self.terms.items())) or "0"
        return f"TGAElement({body})"


@dataclass(frozen=True)
class TwistedGroupAlgebra:
    """F^xi G with basis u_g and u_a u_b = xi(a, b) u_{a+b}"""
    cocycle: Cocycle

    @property
    def group(self) -> FinAbGroup:
        return self.cocycle.group

    @property
    def order(self) -> int:
        return self.cocycle.N

    def basis(self, g: GroupElem) -> TGAElement:
        return TGAElement(self, {g: CycloNum.one(self.order)})

    def one(self) -> TGAElement:
        return self.basis(self.group.zero)

    def element(self, terms: Dict[GroupElem, CycloNum]) -> TGAElement:
        return TGAElement(self, terms)


def tga_mul(x: TGAElement, y: TGAElement) -> TGAElement:
    if x.algebra != y.algebra:
        raise MismatchedAlgebras("Cannot multiply elements of different twisted group algebras")
    xi = x.algebra.cocycle
    terms: Dict[GroupElem, CycloNum] = {}
    for g, c in x.terms.items():
        for h, d in y.terms.items():
            key = g + h
            value = c * d * xi.value(g, h)
            terms[key] = terms[key] + value if key in terms else value
    return TGAElement(x.algebra, terms)


def tga_basis_inverse(algebra: TwistedGroupAlgebra, g: GroupElem) -> TGAElement:
    """xi(g, -g)^{-1} u_{-g}"""
    factor = algebra.cocycle.value(g, -g).inverse()
    return TGAElement(algebra, {-g: factor})


@dataclass
class PresentationReport:
    commutation: bool
    generator_orders: bool
    monomials: bool
    failures: List[str]

    @property
    def ok(self) -> bool:
        return self.commutation and self.generator_orders and self.monomials


def check_presentation(algebra: TwistedGroupAlgebra, beta: Optional[Bicharacter] = None,
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> PresentationReport:
    """
    Check x_i x_j = beta x_j x_i, x_i^{n_i} = 1 and ordered monomials = u_g for x_i = u_{a_i}.

    The last two hold on the nose for the standard cocycle; other cocycles
    in the same class satisfy them only up to scalars.
    """
    beta = beta or psi(algebra.cocycle)
    group = algebra.group
    gens = [algebra.basis(a) for a in group.generators()]
    failures: List[str] = []

    commutation = True
    for i, a in enumerate(group.generators()):
        for j, b in enumerate(group.generators()):
            if gens[i] * gens[j] != (gens[j] * gens[i]).scale(beta.value(a, b)):
                commutation = False
                failures.append(f"x{i + 1} x{j + 1} != beta x{j + 1} x{i + 1}")

    generator_orders = True
    for i, n in enumerate(group.orders):
        power = algebra.one()
        for _ in range(n):
            power = power * gens[i]
        if power != algebra.one():
            generator_orders = False
            failures.append(f"x{i + 1}^{n} != 1")

    monomials = True
    for g in group.elements(budget):
        product = algebra.one()
        for i, exponent in enumerate(g.residues):
            for _ in range(exponent):
                product = product * gens[i]
        if product != algebra.basis(g):
            monomials = False
            failures.append(f"ordered monomial for {g} differs from u{g}")

    return PresentationReport(commutation, generator_orders, monomials, failures)
