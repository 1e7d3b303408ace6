#!/usr/bin/env python3
"""
Graded Algebras of Skew Root Systems
Lie algebras L(R) and Jordan algebras J(R): structure constants, invariant forms,
centroid dimension, graded simplicity and reduction homomorphisms
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from abgroup import GroupElem, GroupHom, elem_add
from cyclolinalg import CycloMatrix, CycloNum, cyclo_root, mat_det, mat_rank, min_poly_squarefree
from skewroot import KindMismatch, RootKind, SkewRootSystem
from symplectic import Cocycle, psi, pullback, standard_cocycle

# Constants
EXHAUSTIVE_JACOBI_LIMIT = 40
JORDAN_IDENTITY_LIMIT = 20
DENSE_CENTROID_LIMIT = 6
JACOBI_SAMPLES = 4000
RESCALING_BUDGET = 200_000

logger = logging.getLogger("galgebra")

Element = Dict[GroupElem, CycloNum]


class GradedAlgebraError(Exception):
    """Base error for graded algebra construction and analysis"""


class CocycleMismatch(GradedAlgebraError, ValueError):
    """Raised when psi(xi) differs from the bicharacter of the root system"""


class ClosureViolation(GradedAlgebraError):
    """Raised when a nonzero structure constant lands outside the root set"""


class NotSemisimple(GradedAlgebraError):
    """Raised when the invariant form is degenerate"""


class NotPulledBack(GradedAlgebraError):
    """Raised when a cocycle is not the pullback of the reduced cocycle"""


class NotARoot(GradedAlgebraError, KeyError):
    """Raised when a basis index outside R is requested"""


@dataclass(frozen=True, eq=False)
class GradedAlgebra:
    """
    Span of u_a, a in R, with u_a * u_b = c(a, b) u_{a+b}.

    c(a, b) is xi(a,b) - xi(b,a) for Lie type and (xi(a,b) + xi(b,a)) / 2 for
    Jordan type. Only nonzero constants are stored.
    """
    kind: RootKind
    system: SkewRootSystem
    cocycle: Cocycle
    basis: Tuple[GroupElem, ...]
    sc: Mapping[Tuple[GroupElem, GroupElem], CycloNum]

    @cached_property
    def index(self) -> Dict[GroupElem, int]:
        return {g: i for i, g in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return self.cocycle.N

    def constant(self, a: GroupElem, b: GroupElem) -> CycloNum:
        return self.sc.get((a, b)) or CycloNum.zero(self.order)

    def multiply(self, x: Element, y: Element) -> Element:
        """Bilinear product of two sparse elements"""
        out: Element = {}
        for a, c in x.items():
            for b, d in y.items():
                k = self.sc.get((a, b))
                if k is None:
                    continue
                key = elem_add(a, b)
                value = c * d * k
                out[key] = out[key] + value if key in out else value
        return {g: v for g, v in out.items() if not v.is_zero()}

    def describe(self) -> str:
        name = "L(R)" if self.kind is RootKind.LIE else "J(R)"
        return f"{name} of dimension {self.dimension} over Q(zeta_{self.order})"


def raw_constant(kind: RootKind, xi: Cocycle, a: GroupElem, b: GroupElem) -> CycloNum:
    forward = xi.value(a, b)
    backward = xi.value(b, a)
    if kind is RootKind.LIE:
        return forward - backward
    return (forward + backward) * Fraction(1, 2)


def build(kind: RootKind, system: SkewRootSystem, xi: Optional[Cocycle] = None) -> GradedAlgebra:
    if kind is not system.kind:
        raise KindMismatch(f"Cannot build a {kind.value} algebra from a {system.kind.value} system")
    system.require_validated()
    xi = xi if xi is not None else standard_cocycle(system.beta)
    if xi.group != system.group or not psi(xi).same_values(system.beta):
        raise CocycleMismatch("psi(xi) does not match the bicharacter of the root system")

    basis = system.sorted_roots
    sc: Dict[Tuple[GroupElem, GroupElem], CycloNum] = {}
    for a in basis:
        for b in basis:
            c = raw_constant(kind, xi, a, b)
            if c.is_zero():
                continue
            target = elem_add(a, b)
            if target not in system.roots:
                raise ClosureViolation(f"c({a},{b}) = {c} is nonzero but {target} is not a root")
            sc[(a, b)] = c
    algebra = GradedAlgebra(kind, system, xi, basis, sc)
    logger.info(f"Built {algebra.describe()} with {len(sc)} nonzero structure constants")
    return algebra


def build_with_pullback(system: SkewRootSystem, reduced: GradedAlgebra, projection: GroupHom) -> GradedAlgebra:
    """Algebra of a system over G built with the cocycle pulled back from the reduced algebra"""
    return build(system.kind, system, pullback(reduced.cocycle, projection))


def ad_matrix(algebra: GradedAlgebra, a: GroupElem) -> CycloMatrix:
    """Matrix of x -> u_a * x in the basis order (at most one nonzero per column)"""
    if a not in algebra.index:
        raise NotARoot(f"{a} is not a root")
    n = algebra.dimension
    matrix = CycloMatrix.zeros(n, n, algebra.order)
    for j, b in enumerate(algebra.basis):
        c = algebra.sc.get((a, b))
        if c is not None:
            matrix.entries[algebra.index[elem_add(a, b)], j] = c
    return matrix


def left_mul_matrix(algebra: GradedAlgebra, a: GroupElem) -> CycloMatrix:
    if algebra.kind is not RootKind.JORDAN:
        raise KindMismatch("Left multiplication matrices are defined here for Jordan algebras")
    return ad_matrix(algebra, a)


@dataclass(eq=False)
class BilinearFormMatrix:
    name: str
    basis: Tuple[GroupElem, ...]
    matrix: CycloMatrix
    closed_form_ok: bool
    mismatches: List[GroupElem] = field(default_factory=list)

    @cached_property
    def determinant(self) -> CycloNum:
        return mat_det(self.matrix)

    @property
    def nondegenerate(self) -> bool:
        return not self.determinant.is_zero()

    def entry(self, a: GroupElem, b: GroupElem) -> CycloNum:
        return self.matrix[self.basis.index(a), self.basis.index(b)]

    def is_symmetric(self) -> bool:
        return self.matrix == self.matrix.transpose()


def _closed_form_sum(algebra: GradedAlgebra, a: GroupElem) -> CycloNum:
    beta = algebra.system.beta
    total = CycloNum.zero(algebra.order)
    for r in algebra.basis:
        e = beta.exponent(a, r)
        total = total + 2 - cyclo_root(beta.N, e) - cyclo_root(beta.N, -e)
    return total


def killing_form(algebra: GradedAlgebra) -> BilinearFormMatrix:
    """
    kappa(u_a, u_b) = tr(ad u_a ad u_b), read off the monomial shape of ad.

    ad u_a ad u_b sends u_c to a multiple of u_{a+b+c}, so only b = -a
    contributes. Each kappa(u_{-a}, u_a) is compared with
    xi(a,-a) * sum over roots b of (2 - beta(a,b) - beta(a,b)^-1).
    """
    if algebra.kind is not RootKind.LIE:
        raise KindMismatch("The Killing form is defined for Lie type algebras")
    n = algebra.dimension
    matrix = CycloMatrix.zeros(n, n, algebra.order)
    for a in algebra.basis:
        b = -a
        total = CycloNum.zero(algebra.order)
        for c in algebra.basis:
            inner = algebra.sc.get((b, c))
            if inner is None:
                continue
            outer = algebra.sc.get((a, elem_add(b, c)))
            if outer is not None:
                total = total + inner * outer
        matrix.entries[algebra.index[a], algebra.index[b]] = total

    mismatches = []
    for a in algebra.basis:
        expected = algebra.cocycle.value(a, -a) * _closed_form_sum(algebra, a)
        if matrix.entries[algebra.index[-a], algebra.index[a]] != expected:
            mismatches.append(a)
    if mismatches:
        logger.warning(f"Killing form differs from its closed form at {len(mismatches)} root(s)")
    return BilinearFormMatrix("killing", algebra.basis, matrix, not mismatches, mismatches)


def killing_form_dense(algebra: GradedAlgebra) -> CycloMatrix:
    """Killing matrix from full ad products, for cross-checking small algebras"""
    ads = [ad_matrix(algebra, a) for a in algebra.basis]
    n = algebra.dimension
    rows = [[(ads[i] @ ads[j]).trace() for j in range(n)] for i in range(n)]
    return CycloMatrix(rows, algebra.order)


def _trace_of_left_mul(algebra: GradedAlgebra, k: GroupElem) -> CycloNum:
    # L(u_k) u_c is a multiple of u_{k+c}: only k = 0 has diagonal entries
    total = CycloNum.zero(algebra.order)
    for c in algebra.basis:
        if elem_add(k, c) == c:
            value = algebra.sc.get((k, c))
            if value is not None:
                total = total + value
    return total


def trace_form(algebra: GradedAlgebra) -> BilinearFormMatrix:
    """tau(x, y) = tr L(x o y), checked against tau(u_g, u_-g) = xi(-g, g) * dim"""
    if algebra.kind is not RootKind.JORDAN:
        raise KindMismatch("The trace form is defined for Jordan type algebras")
    n = algebra.dimension
    matrix = CycloMatrix.zeros(n, n, algebra.order)
    traces: Dict[GroupElem, CycloNum] = {}
    for (g, h), c in algebra.sc.items():
        k = elem_add(g, h)
        if k not in traces:
            traces[k] = _trace_of_left_mul(algebra, k)
        matrix.entries[algebra.index[g], algebra.index[h]] = c * traces[k]

    mismatches = []
    for g in algebra.basis:
        expected = algebra.cocycle.value(-g, g) * n
        if matrix.entries[algebra.index[g], algebra.index[-g]] != expected:
            mismatches.append(g)
    if mismatches:
        logger.warning(f"Trace form differs from its closed form at {len(mismatches)} root(s)")
    return BilinearFormMatrix("trace", algebra.basis, matrix, not mismatches, mismatches)


def trace_form_dense(algebra: GradedAlgebra) -> CycloMatrix:
    lefts = {a: left_mul_matrix(algebra, a) for a in algebra.basis}
    n = algebra.dimension
    rows = [[CycloNum.zero(algebra.order)] * n for _ in range(n)]
    for (g, h), c in algebra.sc.items():
        rows[algebra.index[g]][algebra.index[h]] = lefts[elem_add(g, h)].scale(c).trace()
    return CycloMatrix(rows, algebra.order)


def invariant_form(algebra: GradedAlgebra) -> BilinearFormMatrix:
    return killing_form(algebra) if algebra.kind is RootKind.LIE else trace_form(algebra)


class _RatioUnionFind:
    """Unknowns tied by phi_x = r * phi_y; a component is either free or forced to zero"""

    def __init__(self, size: int, order: int):
        self.parent = list(range(size))
        self.ratio = [CycloNum.one(order)] * size
        self.zero = [False] * size

    def find(self, v: int) -> Tuple[int, CycloNum]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        for node in reversed(path):
            up = self.parent[node]
            if up != root:
                self.ratio[node] = self.ratio[node] * self.ratio[up]
                self.parent[node] = root
        return root, (self.ratio[path[0]] if path else CycloNum.one(self.ratio[root].order))

    def union(self, x: int, y: int, r: CycloNum):
        rx, wx = self.find(x)
        ry, wy = self.find(y)
        if rx == ry:
            if wx != r * wy:
                self.zero[rx] = True
            return
        self.parent[rx] = ry
        self.ratio[rx] = r * wy / wx
        self.zero[ry] = self.zero[ry] or self.zero[rx]

    def force_zero(self, x: int):
        root, _ = self.find(x)
        self.zero[root] = True

    def free_components(self) -> int:
        return sum(1 for v in range(len(self.parent)) if self.parent[v] == v and not self.zero[v])


def _centroid_equations(algebra: GradedAlgebra):
    """
    Yield (c1, x, c2, y) for c1 * phi_x - c2 * phi_y = 0, where phi_(p, q) is
    the u_p coefficient of phi(u_q); a missing term has coefficient None.
    """
    n = algebra.dimension
    index = algebra.index
    for a in algebra.basis:
        for b in algebra.basis:
            c1 = algebra.sc.get((a, b))
            ab = index[elem_add(a, b)] if c1 is not None else None
            for p in algebra.basis:
                q = p - a
                c2 = algebra.sc.get((a, q)) if q in index else None
                if c1 is None and c2 is None:
                    continue
                x = index[p] * n + ab if c1 is not None else None
                y = index[q] * n + index[b] if c2 is not None else None
                yield c1, x, c2, y


def _require_semisimple(algebra: GradedAlgebra):
    form = invariant_form(algebra)
    if not form.nondegenerate:
        raise NotSemisimple(f"The {form.name} form of {algebra.describe()} is degenerate")


def centroid_dim(algebra: GradedAlgebra) -> int:
    """
    Dimension of the centroid, the maps commuting with every multiplication.

    Every commutation equation has at most two unknowns, so the solution
    space is counted with a ratio-weighted union-find instead of elimination.
    """
    _require_semisimple(algebra)
    n = algebra.dimension
    uf = _RatioUnionFind(n * n, algebra.order)
    for c1, x, c2, y in _centroid_equations(algebra):
        if x is not None and y is not None:
            uf.union(x, y, c2 / c1)
        elif x is not None:
            uf.force_zero(x)
        else:
            uf.force_zero(y)
    dim = uf.free_components()
    logger.info(f"Centroid of {algebra.describe()} has dimension {dim}")
    return dim


def centroid_dim_dense(algebra: GradedAlgebra) -> int:
    """Centroid dimension by rank of the full commutation system (small algebras only)"""
    n = algebra.dimension
    if n > DENSE_CENTROID_LIMIT:
        raise GradedAlgebraError(f"Dense centroid computation is limited to dimension {DENSE_CENTROID_LIMIT}")
    zero = CycloNum.zero(algebra.order)
    rows = []
    for c1, x, c2, y in _centroid_equations(algebra):
        row = [zero] * (n * n)
        if x is not None:
            row[x] = row[x] + c1
        if y is not None:
            row[y] = row[y] - c2
        rows.append(row)
    if not rows:
        return n * n
    return n * n - mat_rank(CycloMatrix(rows, algebra.order))


def graded_simple(algebra: GradedAlgebra) -> bool:
    """True when every homogeneous u_a generates the whole algebra as an ideal"""
    successors: Dict[GroupElem, List[GroupElem]] = {b: [] for b in algebra.basis}
    for (a, b) in algebra.sc:
        successors[b].append(elem_add(a, b))
    for start in algebra.basis:
        seen = {start}
        stack = [start]
        while stack:
            b = stack.pop()
            for nxt in successors[b]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != algebra.dimension:
            return False
    return True


def homogeneous_semisimple(algebra: GradedAlgebra) -> bool:
    """
    Lie: every ad u_a is semisimple (squarefree minimal polynomial).
    Jordan: every u_g is invertible with inverse xi(g, g) u_{-g}.
    """
    if algebra.kind is RootKind.LIE:
        return all(min_poly_squarefree(ad_matrix(algebra, a)) for a in algebra.basis)

    one = CycloNum.one(algebra.order)
    for g in algebra.basis:
        inverse_scale = algebra.cocycle.value(g, g)
        if algebra.constant(g, -g) * inverse_scale != one:
            return False
        square = elem_add(g, g)
        if square not in algebra.index:
            return False
        # (u_g o u_g) o u_g^-1 = u_g
        if algebra.constant(g, g) * inverse_scale * algebra.constant(square, -g) != one:
            return False
    return True


@dataclass
class ReductionMap:
    """u_a -> u_{p(a)} from the algebra of R onto the algebra of its reduction"""
    projection: GroupHom
    source_dim: int
    target_dim: int
    preserves_products: bool
    surjective: bool
    kernel_dim: int
    failures: List[Tuple[GroupElem, GroupElem]] = field(default_factory=list)

    @property
    def is_isomorphism(self) -> bool:
        return self.preserves_products and self.surjective and self.kernel_dim == 0


def algebra_hom_from_reduction(algebra: GradedAlgebra, reduced: GradedAlgebra,
                               projection: GroupHom) -> ReductionMap:
    if projection.domain != algebra.system.group or projection.codomain != reduced.system.group:
        raise GradedAlgebraError("Projection does not connect the two grading groups")
    if algebra.kind is not reduced.kind:
        raise KindMismatch("Reduction maps connect algebras of the same kind")
    if not pullback(reduced.cocycle, projection).same_values(algebra.cocycle):
        raise NotPulledBack("Cocycle of the algebra is not pulled back from the reduced cocycle")

    images = {a: projection.apply(a) for a in algebra.basis}
    failures = [(a, None) for a, image in images.items() if image not in reduced.index]
    for a in algebra.basis:
        for b in algebra.basis:
            if algebra.constant(a, b) != reduced.constant(images[a], images[b]):
                failures.append((a, b))
    distinct = set(images.values())
    result = ReductionMap(
        projection=projection,
        source_dim=algebra.dimension,
        target_dim=reduced.dimension,
        preserves_products=not failures,
        surjective=distinct == set(reduced.basis),
        kernel_dim=algebra.dimension - len(distinct),
        failures=failures[:10],
    )
    logger.info(f"Reduction map {result.source_dim} -> {result.target_dim}: "
                f"surjective={result.surjective} kernel={result.kernel_dim}")
    return result


@dataclass
class IdentityCheck:
    name: str
    ok: bool
    checked: int
    exhaustive: bool
    witness: Optional[Tuple[GroupElem, ...]] = None


def _chain(algebra: GradedAlgebra, x: GroupElem, y: GroupElem, z: GroupElem) -> Optional[CycloNum]:
    """Coefficient of (u_x u_y) u_z"""
    first = algebra.sc.get((x, y))
    if first is None:
        return None
    second = algebra.sc.get((elem_add(x, y), z))
    return first * second if second is not None else None


def jacobi_check(algebra: GradedAlgebra, exhaustive_limit: int = EXHAUSTIVE_JACOBI_LIMIT,
                 samples: int = JACOBI_SAMPLES, seed: int = 0) -> IdentityCheck:
    """Jacobi identity on basis triples, exhaustive for small algebras and sampled otherwise"""
    if algebra.kind is not RootKind.LIE:
        raise KindMismatch("The Jacobi identity applies to Lie type algebras")
    basis = algebra.basis
    n = len(basis)
    exhaustive = n <= exhaustive_limit
    if exhaustive:
        triples = itertools.product(basis, repeat=3)
    else:
        rng = np.random.default_rng(seed)
        triples = ((basis[i], basis[j], basis[k]) for i, j, k in rng.integers(0, n, size=(samples, 3)))
    zero = CycloNum.zero(algebra.order)
    checked = 0
    for a, b, c in triples:
        checked += 1
        total = zero
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            term = _chain(algebra, x, y, z)
            if term is not None:
                total = total + term
        if not total.is_zero():
            return IdentityCheck("jacobi", False, checked, exhaustive, (a, b, c))
    return IdentityCheck("jacobi", True, checked, exhaustive)


def _associator(algebra: GradedAlgebra, p: GroupElem, q: GroupElem, r: GroupElem) -> CycloNum:
    """(u_p o u_q) o u_r - u_p o (u_q o u_r), a multiple of u_{p+q+r}"""
    left = _chain(algebra, p, q, r)
    inner = algebra.sc.get((q, r))
    right = None
    if inner is not None:
        outer = algebra.sc.get((p, elem_add(q, r)))
        right = inner * outer if outer is not None else None
    zero = CycloNum.zero(algebra.order)
    return (left if left is not None else zero) - (right if right is not None else zero)


def jordan_identity_check(algebra: GradedAlgebra, limit: int = JORDAN_IDENTITY_LIMIT) -> IdentityCheck:
    """
    Linearized Jordan identity (x o z, y, w) + (z o w, y, x) + (w o x, y, z) = 0
    on all basis quadruples. The left side is symmetric in x, z, w.
    """
    if algebra.kind is not RootKind.JORDAN:
        raise KindMismatch("The Jordan identity applies to Jordan type algebras")
    if algebra.dimension > limit:
        raise GradedAlgebraError(f"Jordan identity check is limited to dimension {limit}")
    checked = 0
    for x, z, w in itertools.combinations_with_replacement(algebra.basis, 3):
        for y in algebra.basis:
            checked += 1
            total = CycloNum.zero(algebra.order)
            for first, second, last in ((x, z, w), (z, w, x), (w, x, z)):
                c = algebra.sc.get((first, second))
                if c is not None:
                    total = total + c * _associator(algebra, elem_add(first, second), y, last)
            if not total.is_zero():
                return IdentityCheck("jordan", False, checked, True, (x, y, z, w))
    return IdentityCheck("jordan", True, checked, True)


def rescaling_isomorphism(first: GradedAlgebra, second: GradedAlgebra, root_order: Optional[int] = None,
                          budget: int = RESCALING_BUDGET) -> Optional[Dict[GroupElem, CycloNum]]:
    """
    Scalars lambda_a with u_a -> lambda_a u_a an isomorphism between two
    algebras on the same root set, searched among roots of unity.
    """
    if first.basis != second.basis or first.kind is not second.kind:
        raise GradedAlgebraError("Rescaling compares algebras on the same root set")
    order = root_order or 2 * math.lcm(first.order, second.order)
    candidates = [cyclo_root(order, k) for k in range(order)]
    basis = first.basis
    position = first.index
    # equations checked once all three indices are assigned
    pending: List[List[Tuple[GroupElem, GroupElem, GroupElem]]] = [[] for _ in basis]
    for a in basis:
        for b in basis:
            s = elem_add(a, b)
            c1 = first.sc.get((a, b))
            c2 = second.sc.get((a, b))
            if c1 is None and c2 is None:
                continue
            last = max(position[a], position[b], position.get(s, -1))
            pending[last].append((a, b, s))

    scales: Dict[GroupElem, CycloNum] = {}
    nodes = 0

    def consistent(i: int) -> bool:
        for a, b, s in pending[i]:
            lhs = first.constant(a, b) * (scales[s] if s in scales else 0)
            rhs = scales[a] * scales[b] * second.constant(a, b)
            if lhs != rhs:
                return False
        return True

    def search(i: int) -> bool:
        nonlocal nodes
        if i == len(basis):
            return True
        for value in candidates:
            nodes += 1
            if nodes > budget:
                logger.warning(f"Rescaling search stopped after {budget} nodes")
                return False
            scales[basis[i]] = value
            if consistent(i) and search(i + 1):
                return True
            del scales[basis[i]]
        return False

    return dict(scales) if search(0) else None


def format_structure_constants(algebra: GradedAlgebra) -> str:
    """One line per nonzero constant: (a) (b) (a+b) N:[coefficients]"""
    lines = [f"# {algebra.kind.value} structure constants dim={algebra.dimension} N={algebra.order}"]
    for a in algebra.basis:
        for b in algebra.basis:
            c = algebra.sc.get((a, b))
            if c is not None:
                lines.append(f"{a} {b} {elem_add(a, b)} {c}")
    return "\n".join(lines) + "\n"
