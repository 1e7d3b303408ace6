#!/usr/bin/env python3
"""
Root System Families
Nonsingular, Clifford and quadratic-form families of skew root systems, with the
matrix models used to identify their Lie and Jordan algebras
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from abgroup import (
    BudgetExceeded, FinAbGroup, GroupElem, GroupHom, elem_add, generates, quotient
)
from cyclolinalg import CycloMatrix, CycloNum, cyclo_root, mat_rank, scalar_ratio
from galgebra import GradedAlgebra, build
from skewroot import RootKind, SkewRootSystem
from symplectic import (
    Bicharacter, Cocycle, NotDivision, extract_bicharacter, pullback, radical, restrict, standard_cocycle
)

# Constants
DEFAULT_MATRIX_BUDGET = 16
INVOLUTION_MATRIX_LIMIT = 32
FAMILY_GROUP_LIMIT = 4096

logger = logging.getLogger("families")


class FamilyError(Exception):
    """Base error for family constructors and matrix models"""


class RangeError(FamilyError, ValueError):
    """Raised when a family parameter lies outside the range where the family exists"""


class UnknownFamily(FamilyError, ValueError):
    """Raised for family names the registry cannot resolve"""


@dataclass(frozen=True)
class ClassicalType:
    """Expected simple algebra of a family; size is the matrix size or the rank of the form"""
    name: str
    size: int

    @property
    def dimension(self) -> int:
        s = self.size
        formulas = {
            'sl': s * s - 1,
            'gl+': s * s,
            'so': s * (s - 1) // 2,
            'sp': s * (s + 1) // 2,
            'spin': s + 1,
            'sym': s * (s + 1) // 2,
            'skew': s * (s - 1) // 2,
        }
        return formulas[self.name]

    @property
    def label(self) -> str:
        labels = {
            'sl': f"sl_{self.size}",
            'gl+': f"M_{self.size}^+",
            'so': f"so_{self.size}",
            'sp': f"sp_{self.size}",
            'spin': f"spin factor of rank {self.size}",
            'sym': f"H(M_{self.size}, transpose)",
            'skew': f"H(M_{self.size}, symplectic)",
        }
        return labels[self.name]

    @property
    def simple(self) -> bool:
        if self.name == 'so':
            return self.size >= 3 and self.size != 4
        if self.name == 'spin':
            return self.size >= 2
        return self.size >= 2


# Quadratic forms over F_2

class QuadraticKind(Enum):
    H = "h"
    F0 = "f0"
    F1 = "f1"


@dataclass(frozen=True)
class QuadraticFormF2:
    kind: QuadraticKind
    k: int

    @property
    def n(self) -> int:
        return 2 * self.k + 1 if self.kind is QuadraticKind.H else 2 * self.k

    def evaluate(self, a: Sequence[int]) -> int:
        """Literal evaluation, squares included (a^2 = a over F_2)"""
        value = sum(a[2 * i] * a[2 * i + 1] for i in range(self.k))
        if self.kind is QuadraticKind.H:
            value += a[2 * self.k] ** 2
        elif self.kind is QuadraticKind.F1:
            value += a[0] ** 2 + a[1] ** 2
        return value % 2

    def polarization(self, a: Sequence[int], b: Sequence[int]) -> int:
        s = [(x + y) % 2 for x, y in zip(a, b)]
        return (self.evaluate(s) - self.evaluate(a) - self.evaluate(b)) % 2

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """sum over pairs of a_{2i} b_{2i-1} - a_{2i-1} b_{2i}, mod 2"""
        return sum(a[2 * i + 1] * b[2 * i] - a[2 * i] * b[2 * i + 1] for i in range(self.k)) % 2

    def polarization_matches(self) -> bool:
        group = FinAbGroup((2,) * self.n)
        elements = [g.residues for g in group.elements()]
        return all(self.polarization(a, b) == self.pairing(a, b) for a in elements for b in elements)


# Matrix models

def _independent(matrices: Sequence[CycloMatrix]) -> bool:
    """
    Linear independence, split along connected supports.

    Matrices whose supports never overlap (even through others) are
    independent of each other, so each support cluster is ranked separately.
    """
    parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    supports = []
    for m in matrices:
        support = m.nonzero_entries()
        if not support:
            return False
        supports.append(support)
        for p in support:
            parent.setdefault(p, p)
        root = find(support[0])
        for p in support[1:]:
            other = find(p)
            if other != root:
                parent[other] = root
    clusters: Dict[Tuple[int, int], List[int]] = {}
    for i, support in enumerate(supports):
        clusters.setdefault(find(support[0]), []).append(i)
    for members in clusters.values():
        positions = sorted({p for i in members for p in supports[i]})
        if len(members) > len(positions):
            return False
        order = matrices[members[0]].order
        rows = [[matrices[i].entries[p] for p in positions] for i in members]
        if mat_rank(CycloMatrix(rows, order)) != len(members):
            return False
    return True


@dataclass
class DictionaryReport:
    model: str
    ok: bool
    pairs_checked: int
    independent: bool
    failure: Optional[Tuple[GroupElem, GroupElem]] = None


def verify_structure_dictionary(algebra: GradedAlgebra, image: Callable[[GroupElem], CycloMatrix],
                                model: str) -> DictionaryReport:
    """Check u_a -> image(a) carries every product u_a * u_b to the matrix product"""
    images = {a: image(a) for a in algebra.basis}
    independent = _independent(list(images.values()))
    half = Fraction(1, 2)
    checked = 0
    for a in algebra.basis:
        for b in algebra.basis:
            checked += 1
            x, y = images[a], images[b]
            if algebra.kind is RootKind.LIE:
                product = x @ y - y @ x
            else:
                product = (x @ y + y @ x).scale(half)
            c = algebra.sc.get((a, b))
            if c is None:
                matches = product.is_zero()
            else:
                matches = product == images[elem_add(a, b)].scale(c)
            if not matches:
                logger.warning(f"Dictionary with {model} fails at ({a}, {b})")
                return DictionaryReport(model, False, checked, independent, (a, b))
    return DictionaryReport(model, independent, checked, independent)


class GradedMatrixModel:
    """
    Matrix realization of a twisted group algebra: g -> ordered product of
    generator powers x_1^{l_1} ... x_k^{l_k}.
    """

    def __init__(self, name: str, group: FinAbGroup, generators: Sequence[CycloMatrix], order: int):
        if len(generators) != group.rank:
            raise FamilyError(f"{name}: expected {group.rank} generator images, got {len(generators)}")
        self.name = name
        self.group = group
        self.order = order
        self.generators = [m.with_order(order) for m in generators]
        self.size = self.generators[0].rows if self.generators else 1
        self._images: Dict[GroupElem, CycloMatrix] = {}

    def image(self, g: GroupElem) -> CycloMatrix:
        cached = self._images.get(g)
        if cached is not None:
            return cached
        result = CycloMatrix.identity(self.size, self.order)
        for gen, power in zip(self.generators, g.residues):
            if power:
                result = result @ gen.power(power)
        self._images[g] = result
        return result

    def structure_coefficient(self, g: GroupElem, h: GroupElem) -> CycloNum:
        """c with M_g M_h = c M_{g+h}"""
        product = self.image(g) @ self.image(h)
        if product.is_zero():
            return CycloNum.zero(self.order)
        ratio = scalar_ratio(product, self.image(elem_add(g, h)))
        if ratio is None:
            raise FamilyError(f"{self.name}: M_g M_h is not a multiple of M_(g+h) for g={g}, h={h}")
        return ratio

    def bicharacter(self) -> Bicharacter:
        """
        Commutation bicharacter of the model.

        Products of invertible matrices never vanish, so checking each image
        once replaces the |G|^2 product scan.
        """
        for g in self.group.elements():
            if mat_rank(self.image(g)) < self.size:
                raise NotDivision(f"{self.name}: image of {g} is singular")
        return extract_bicharacter(self.group, self.structure_coefficient, N=self.order, exhaustive=False)

    def check_presentation(self, beta: Bicharacter) -> bool:
        """x_i x_j = beta(a_i, a_j) x_j x_i and x_i^{n_i} = 1"""
        identity = CycloMatrix.identity(self.size, self.order)
        gens = self.group.generators()
        for i, x in enumerate(self.generators):
            if x.power(self.group.orders[i]) != identity:
                return False
            for j, y in enumerate(self.generators):
                if x @ y != (y @ x).scale(beta.value(gens[i], gens[j])):
                    return False
        return True

    def is_faithful(self, elements: Optional[Sequence[GroupElem]] = None) -> bool:
        """The images of the given elements (default: all of G) are linearly independent"""
        elements = list(elements) if elements is not None else list(self.group.elements())
        return _independent([self.image(g) for g in elements])

    def verify_dictionary(self, algebra: GradedAlgebra,
                          translate: Optional[Callable[[GroupElem], GroupElem]] = None) -> DictionaryReport:
        translate = translate or (lambda g: g)
        return verify_structure_dictionary(algebra, lambda g: self.image(translate(g)), self.name)


def _clock(n: int, order: int) -> CycloMatrix:
    eps = order // n
    rows = [[cyclo_root(order, eps * (n - 1 - r)) if r == c else 0 for c in range(n)] for r in range(n)]
    return CycloMatrix(rows, order)


def _shift(n: int, order: int) -> CycloMatrix:
    rows = [[1 if c == (r + 1) % n else 0 for c in range(n)] for r in range(n)]
    return CycloMatrix(rows, order)


def _tensor_word(factors: Sequence[CycloMatrix]) -> CycloMatrix:
    result = factors[0]
    for f in factors[1:]:
        result = result.kron(f)
    return result


def pauli_model(orders: Sequence[int]) -> GradedMatrixModel:
    """Clock and shift matrices per block, tensored: realizes the standard cocycle of the nonsingular family"""
    orders = [int(n) for n in orders]
    order = math.lcm(*orders)
    group = FinAbGroup(tuple(n for n in orders for _ in range(2)))
    identities = [CycloMatrix.identity(n, order) for n in orders]
    generators = []
    for t, n in enumerate(orders):
        for block in (_clock(n, order), _shift(n, order)):
            factors = list(identities)
            factors[t] = block
            generators.append(_tensor_word(factors))
    return GradedMatrixModel(f"pauli{tuple(orders)}", group, generators, order)


def clifford_model(n: int) -> GradedMatrixModel:
    """v_i = Z x ... x Z x X x I x ... x I on n qubits: v_i v_j = -v_j v_i, v_i^2 = 1"""
    if n < 1:
        raise RangeError("Clifford model needs at least one generator")
    x = CycloMatrix([[0, 1], [1, 0]], 2)
    z = CycloMatrix([[1, 0], [0, -1]], 2)
    one = CycloMatrix.identity(2, 2)
    generators = [_tensor_word([z] * i + [x] + [one] * (n - i - 1)) for i in range(n)]
    return GradedMatrixModel(f"clifford({n})", FinAbGroup((2,) * n), generators, 2)


def involution_form(m: int, k: int) -> CycloMatrix:
    """Phi = Phi_1 x I x ... (m = 1) or the identity (m = 0), size 2^k"""
    if m not in (0, 1):
        raise RangeError(f"Involution type must be 0 or 1, got {m}")
    first = CycloMatrix([[0, 1], [-1, 0]], 2) if m == 1 else CycloMatrix.identity(2, 2)
    return _tensor_word([first] + [CycloMatrix.identity(2, 2)] * (k - 1))


def involution_adjoint(phi: CycloMatrix, phi_inverse: CycloMatrix, matrix: CycloMatrix) -> CycloMatrix:
    """X* = Phi^-1 X^t Phi"""
    return phi_inverse @ matrix.transpose() @ phi


def so_image(n: int, order: int = 2) -> Callable[[GroupElem], CycloMatrix]:
    """e_i + e_j -> 2 (E_ij - E_ji), i < j, on Z_2^n"""
    def image(g: GroupElem) -> CycloMatrix:
        ones = [i for i, r in enumerate(g.residues) if r]
        if len(ones) != 2:
            raise FamilyError(f"{g} is not a sum of two distinct basis vectors")
        i, j = ones
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 2
        rows[j][i] = -2
        return CycloMatrix(rows, order)
    return image


# Families

@dataclass(eq=False)
class ModelSpec:
    name: str
    size: int
    image: Callable[[], Callable[[GroupElem], CycloMatrix]]


@dataclass(eq=False)
class FamilyInstance:
    tag: str
    family: str
    beta: Bicharacter
    systems: Dict[RootKind, SkewRootSystem] = field(default_factory=dict)
    expected: Dict[RootKind, ClassicalType] = field(default_factory=dict)
    witnesses: Dict[RootKind, FrozenSet[GroupElem]] = field(default_factory=dict)
    cocycles: Dict[RootKind, Cocycle] = field(default_factory=dict)
    expected_sizes: Dict[RootKind, int] = field(default_factory=dict)
    expected_reduced: Dict[RootKind, bool] = field(default_factory=dict)
    models: Dict[RootKind, List[ModelSpec]] = field(default_factory=dict)
    notes: Dict[RootKind, List[str]] = field(default_factory=dict)
    out_of_range: Dict[RootKind, str] = field(default_factory=dict)
    involution: Optional[int] = None

    @property
    def group(self) -> FinAbGroup:
        return self.beta.group

    def system(self, kind: RootKind) -> SkewRootSystem:
        if kind in self.out_of_range:
            raise RangeError(self.out_of_range[kind])
        return self.systems[kind]

    def cocycle(self, kind: RootKind) -> Cocycle:
        return self.cocycles.get(kind) or standard_cocycle(self.system(kind).beta)

    def build(self, kind: RootKind) -> GradedAlgebra:
        return build(kind, self.system(kind), self.cocycle(kind))

    def kinds(self) -> List[RootKind]:
        return [kind for kind in RootKind if kind in self.systems]


def _check_group_size(size: int):
    if size > FAMILY_GROUP_LIMIT:
        raise BudgetExceeded(f"Family group of order {size} exceeds the limit {FAMILY_GROUP_LIMIT}")


def _basis_sum(group: FinAbGroup, positions: Sequence[int]) -> GroupElem:
    """Sum of the 1-based basis vectors e_p"""
    residues = [0] * group.rank
    for p in positions:
        residues[p - 1] += 1
    return GroupElem(group, tuple(residues))


def _elementary_beta(n: int, pairs: Sequence[Tuple[int, int]]) -> Bicharacter:
    """Bicharacter on Z_2^n with beta(e_i, e_j) = -1 exactly for the listed 0-based pairs"""
    expo = [[0] * n for _ in range(n)]
    for i, j in pairs:
        expo[i][j] = expo[j][i] = 1
    return Bicharacter(FinAbGroup((2,) * n), 2, tuple(tuple(r) for r in expo))


def family_nonsingular(orders: Sequence[int]) -> FamilyInstance:
    """Z_{n_1}^2 + ... with beta((i,j),(s,t)) = eps^(it - js) per block"""
    orders = tuple(int(n) for n in orders)
    if not orders or any(n < 2 for n in orders):
        raise RangeError(f"Nonsingular family needs block orders >= 2, got {orders}")
    n = math.prod(orders)
    _check_group_size(n * n)
    N = math.lcm(*orders)
    group = FinAbGroup(tuple(m for m in orders for _ in range(2)))
    k = group.rank
    expo = [[0] * k for _ in range(k)]
    for t, m in enumerate(orders):
        expo[2 * t][2 * t + 1] = N // m
        expo[2 * t + 1][2 * t] = -(N // m)
    beta = Bicharacter(group, N, tuple(tuple(r) for r in expo))
    everything = frozenset(group.elements())
    tag = "nonsingular:" + ",".join(str(m) for m in orders)
    model = ModelSpec("pauli", n, lambda: pauli_model(orders).image)
    return FamilyInstance(
        tag=tag, family="nonsingular", beta=beta,
        systems={RootKind.LIE: SkewRootSystem(beta, RootKind.LIE, everything - {group.zero}),
                 RootKind.JORDAN: SkewRootSystem(beta, RootKind.JORDAN, everything)},
        expected={RootKind.LIE: ClassicalType('sl', n), RootKind.JORDAN: ClassicalType('gl+', n)},
        expected_sizes={RootKind.LIE: n * n - 1, RootKind.JORDAN: n * n},
        expected_reduced={RootKind.LIE: True, RootKind.JORDAN: True},
        models={RootKind.LIE: [model], RootKind.JORDAN: [model]},
    )


def family_clifford(n: int) -> FamilyInstance:
    """
    Z_2^n with beta(a, b) = (-1)^((sum a)(sum b) - sum a_i b_i).

    The Jordan system {0, e_i} lives on Z_2^n. The Lie system {e_i + e_j}
    lives on the subgroup spanned by e_i + e_{i+1}, with the cocycle pulled
    back from the standard cocycle of Z_2^n.
    """
    n = int(n)
    if n < 2:
        raise RangeError(f"Clifford family needs n >= 2, got {n}")
    _check_group_size(2 ** n)
    beta = _elementary_beta(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    group = beta.group
    jordan_roots = frozenset([group.zero] + group.generators())
    instance = FamilyInstance(
        tag=f"clifford:{n}", family="clifford", beta=beta,
        systems={RootKind.JORDAN: SkewRootSystem(beta, RootKind.JORDAN, jordan_roots)},
        expected={RootKind.JORDAN: ClassicalType('spin', n), RootKind.LIE: ClassicalType('so', n)},
        expected_sizes={RootKind.JORDAN: n + 1, RootKind.LIE: n * (n - 1) // 2},
        expected_reduced={RootKind.JORDAN: n % 2 == 0, RootKind.LIE: n % 2 == 1},
        models={RootKind.JORDAN: [ModelSpec("clifford", 2 ** n, lambda: clifford_model(n).image)]},
    )
    if n < 3:
        instance.out_of_range[RootKind.LIE] = "The Clifford Lie system needs n >= 3"
        return instance

    basis = [_basis_sum(group, (i, i + 1)) for i in range(1, n)]
    beta_sub, embedding = restrict(beta, basis)
    sub = beta_sub.group
    # e_i + e_j is b_i + ... + b_{j-1}
    lie_roots = frozenset(
        GroupElem(sub, tuple(1 if i <= t < j else 0 for t in range(n - 1)))
        for i in range(n) for j in range(i + 1, n)
    )
    instance.systems[RootKind.LIE] = SkewRootSystem(beta_sub, RootKind.LIE, lie_roots)
    instance.cocycles[RootKind.LIE] = pullback(standard_cocycle(beta), embedding)
    so = so_image(n)
    instance.models[RootKind.LIE] = [
        ModelSpec("so", n, lambda: (lambda g: so(embedding.apply(g)))),
        ModelSpec("clifford", 2 ** n, _cached_translate(lambda: clifford_model(n), embedding)),
    ]
    notes = []
    if not ClassicalType('so', n).simple:
        notes.append(f"so_{n} is not simple (n = 4 exception: so_4 = sl_2 + sl_2)")
    if n % 2 == 0:
        notes.append("beta on the Lie subgroup has a nontrivial radical; the system is not reduced")
    instance.notes[RootKind.LIE] = notes
    return instance


def _cached_translate(factory: Callable[[], GradedMatrixModel],
                      hom: GroupHom) -> Callable[[], Callable[[GroupElem], CycloMatrix]]:
    def make() -> Callable[[GroupElem], CycloMatrix]:
        model = factory()
        return lambda g: model.image(hom.apply(g))
    return make


def _quadratic_witnesses(kind: QuadraticKind, root_kind: RootKind, k: int,
                         group: FinAbGroup) -> FrozenSet[GroupElem]:
    sets: List[Sequence[int]] = []
    if kind is QuadraticKind.H and root_kind is RootKind.LIE:
        sets += [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
        sets += [(2 * i, 2 * k + 1) for i in range(1, k + 1)]
        sets.append(tuple(range(2 * k - 3, 2 * k + 2)))
    elif kind is QuadraticKind.H:
        sets += [(i,) for i in range(1, 2 * k + 1)]
        sets.append((2 * k - 1, 2 * k, 2 * k + 1))
    elif kind is QuadraticKind.F0 and root_kind is RootKind.LIE:
        for i in range(1, k + 1):
            nxt = 2 * i + 1 if i < k else 1
            sets += [(2 * i - 1, 2 * i), (2 * i - 1, 2 * i, nxt)]
    elif kind is QuadraticKind.F0:
        sets += [(i,) for i in range(1, 2 * k + 1)]
    elif root_kind is RootKind.LIE:
        if k == 1:
            sets += [(1,), (1, 2)]
        else:
            sets.append((1,))
            sets += [(2 * i - 1, 2 * i) for i in range(1, k + 1)]
            sets += [(2 * i - 1, 2 * i, 2 * i + 1) for i in range(1, k)]
    else:
        sets += [(i,) for i in range(3, 2 * k + 1)]
        sets += [(1, 2, 3, 4), (1, 3, 4)]
    return frozenset(_basis_sum(group, s) for s in sets)


_QUADRATIC_RANGES = {
    (QuadraticKind.H, RootKind.LIE): 2,
    (QuadraticKind.H, RootKind.JORDAN): 1,
    (QuadraticKind.F0, RootKind.LIE): 2,
    (QuadraticKind.F0, RootKind.JORDAN): 1,
    (QuadraticKind.F1, RootKind.LIE): 1,
    (QuadraticKind.F1, RootKind.JORDAN): 2,
}


def quadratic_root_count(kind: QuadraticKind, root_kind: RootKind, k: int) -> int:
    """Closed-form |R| for the quadratic families"""
    if kind is QuadraticKind.H:
        return 4 ** k - 1 if root_kind is RootKind.LIE else 4 ** k
    plus = 2 ** (2 * k - 1) + 2 ** (k - 1)
    minus = 2 ** (2 * k - 1) - 2 ** (k - 1)
    if kind is QuadraticKind.F0:
        return minus if root_kind is RootKind.LIE else plus
    return plus if root_kind is RootKind.LIE else minus


def family_quadratic(kind: QuadraticKind, k: int) -> FamilyInstance:
    """
    Systems cut out by a quadratic form over F_2.

    h on Z_2^(2k+1) has the last generator in the radical; f0 and f1 on
    Z_2^(2k) are nonsingular. Lie roots are where the form is 1 (outside
    the radical), Jordan roots where it is 0.
    """
    k = int(k)
    if k < 1:
        raise RangeError(f"Quadratic families need k >= 1, got {k}")
    form = QuadraticFormF2(kind, k)
    _check_group_size(2 ** form.n)
    beta = _elementary_beta(form.n, [(2 * i, 2 * i + 1) for i in range(k)])
    group = beta.group
    rad = radical(beta)
    values = {g: form.evaluate(g.residues) for g in group.elements()}
    lie_roots = frozenset(g for g, v in values.items() if v == 1 and g not in rad)
    jordan_roots = frozenset(g for g, v in values.items() if v == 0)

    size = 2 ** k
    if kind is QuadraticKind.H:
        expected = {RootKind.LIE: ClassicalType('sl', size), RootKind.JORDAN: ClassicalType('gl+', size)}
        reduced_group, projection = quotient(group, rad)
        pauli = ModelSpec("pauli", size, _cached_translate(lambda: pauli_model((2,) * k), projection))
        models = {RootKind.LIE: [pauli], RootKind.JORDAN: [pauli]}
        reduced = {RootKind.LIE: False, RootKind.JORDAN: False}
        involution = None
    else:
        if kind is QuadraticKind.F0:
            expected = {RootKind.LIE: ClassicalType('so', size), RootKind.JORDAN: ClassicalType('sym', size)}
        else:
            expected = {RootKind.LIE: ClassicalType('sp', size), RootKind.JORDAN: ClassicalType('skew', size)}
        model = ModelSpec("involution", size, lambda: pauli_model((2,) * k).image)
        models = {RootKind.LIE: [model], RootKind.JORDAN: [model]}
        reduced = {RootKind.LIE: True, RootKind.JORDAN: True}
        involution = 0 if kind is QuadraticKind.F0 else 1

    instance = FamilyInstance(
        tag=f"quad:{kind.value}:{k}", family="quad", beta=beta,
        expected=expected, models=models, expected_reduced=reduced, involution=involution,
        expected_sizes={rk: quadratic_root_count(kind, rk, k) for rk in RootKind},
    )
    for root_kind, roots in ((RootKind.LIE, lie_roots), (RootKind.JORDAN, jordan_roots)):
        minimum = _QUADRATIC_RANGES[(kind, root_kind)]
        if k < minimum:
            instance.out_of_range[root_kind] = (
                f"quad:{kind.value} {root_kind.value} systems need k >= {minimum}, got {k}")
            continue
        instance.systems[root_kind] = SkewRootSystem(beta, root_kind, roots)
        instance.witnesses[root_kind] = _quadratic_witnesses(kind, root_kind, k, group)
        if not expected[root_kind].simple:
            instance.notes.setdefault(root_kind, []).append(
                f"{expected[root_kind].label} is not simple (so_4 = sl_2 + sl_2)")
    return instance


@dataclass
class InvolutionSupport:
    m: int
    k: int
    skew_from_matrices: FrozenSet[GroupElem]
    symmetric_from_matrices: FrozenSet[GroupElem]
    skew_from_form: FrozenSet[GroupElem]
    symmetric_from_form: FrozenSet[GroupElem]
    # K closed under commutators, H under anticommutators
    skew_closed: bool
    symmetric_closed: bool

    @property
    def agree(self) -> bool:
        return (self.skew_from_matrices == self.skew_from_form
                and self.symmetric_from_matrices == self.symmetric_from_form
                and self.skew_closed and self.symmetric_closed)


def involution_support(m: int, k: int, matrix_budget: int = INVOLUTION_MATRIX_LIMIT) -> InvolutionSupport:
    """Supports of K(M,*) and H(M,*) from the matrix model and from the form f_m"""
    if m not in (0, 1):
        raise RangeError(f"Involution type must be 0 or 1, got {m}")
    if k < 1:
        raise RangeError(f"Involution models need k >= 1, got {k}")
    if 2 ** k > matrix_budget:
        raise BudgetExceeded(f"Matrix size {2 ** k} exceeds the budget {matrix_budget}")
    model = pauli_model((2,) * k)
    phi = involution_form(m, k)
    phi_inverse = phi.inverse()
    form = QuadraticFormF2(QuadraticKind.F0 if m == 0 else QuadraticKind.F1, k)
    skew, symmetric = set(), set()
    for g in model.group.elements():
        matrix = model.image(g)
        adjoint = involution_adjoint(phi, phi_inverse, matrix)
        if adjoint == -matrix:
            skew.add(g)
        elif adjoint == matrix:
            symmetric.add(g)
        else:
            raise FamilyError(f"Graded component {g} is neither symmetric nor skew")
    elements = list(model.group.elements())
    return InvolutionSupport(
        m, k, frozenset(skew), frozenset(symmetric),
        frozenset(g for g in elements if form.evaluate(g.residues) == 1),
        frozenset(g for g in elements if form.evaluate(g.residues) == 0),
        _support_closed(model, skew, -1),
        _support_closed(model, symmetric, 1),
    )


def _support_closed(model: GradedMatrixModel, support: Set[GroupElem], sign: int) -> bool:
    """xy + sign*yx lies in the span of M_(a+b) with a+b in the support, for all a, b in it"""
    ordered = sorted(support)
    for i, a in enumerate(ordered):
        x = model.image(a)
        for b in ordered[i:]:
            y = model.image(b)
            product = x @ y + (y @ x).scale(sign)
            if product.is_zero():
                continue
            target = elem_add(a, b)
            if target not in support or scalar_ratio(product, model.image(target)) is None:
                logger.warning(f"{model.name}: graded support not closed at ({a}, {b})")
                return False
    return True


@dataclass
class Identification:
    tag: str
    kind: RootKind
    dimension: int
    expected: ClassicalType
    dictionaries: List[DictionaryReport] = field(default_factory=list)
    involution_ok: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    @property
    def dimension_matches(self) -> bool:
        return self.dimension == self.expected.dimension

    @property
    def dictionary_verified(self) -> Optional[bool]:
        if not self.dictionaries:
            return None
        return all(d.ok for d in self.dictionaries)

    @property
    def matched(self) -> bool:
        return (self.dimension_matches and self.dictionary_verified is not False
                and self.involution_ok is not False)

    def format(self) -> str:
        status = "matched" if self.matched else "MISMATCH"
        text = f"{self.expected.label} (dim {self.expected.dimension}) {status}"
        if self.dictionaries:
            verified = ", ".join(f"{d.model}: {'verified' if d.ok else 'failed'}" for d in self.dictionaries)
            text += f"; dictionary {verified}"
        else:
            text += "; no matrix model within budget"
        if self.involution_ok is not None:
            text += f"; involution {'compatible' if self.involution_ok else 'incompatible'}"
        return text


def identify(algebra: GradedAlgebra, instance: FamilyInstance,
             matrix_budget: int = DEFAULT_MATRIX_BUDGET) -> Identification:
    kind = algebra.kind
    record = Identification(instance.tag, kind, algebra.dimension, instance.expected[kind],
                            notes=list(instance.notes.get(kind, [])))
    for spec in instance.models.get(kind, []):
        if spec.size > matrix_budget:
            logger.debug(f"Skipping {spec.name} model of size {spec.size} (budget {matrix_budget})")
            continue
        record.dictionaries.append(verify_structure_dictionary(algebra, spec.image(), spec.name))

    if instance.involution is not None and 2 ** (instance.group.rank // 2) <= matrix_budget:
        k = instance.group.rank // 2
        model = pauli_model((2,) * k)
        phi = involution_form(instance.involution, k)
        phi_inverse = phi.inverse()
        sign = -1 if kind is RootKind.LIE else 1
        record.involution_ok = all(
            involution_adjoint(phi, phi_inverse, model.image(g)) == model.image(g).scale(sign)
            for g in algebra.basis
        )
    if not record.matched:
        logger.warning(f"Identification of {instance.tag}:{kind.value} failed: {record.format()}")
    return record


class FamilyRegistry:
    """Registry mapping family names to constructors"""

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger("families")
        self.families: Dict[str, Tuple[Callable[[List[str]], FamilyInstance], str]] = {}
        self._register_default_families()

    def _register_default_families(self):
        self.families = {
            'nonsingular': (self._nonsingular, "nonsingular:<n1,n2,...>:<lie|jordan>"),
            'clifford': (self._clifford, "clifford:<n>:<lie|jordan>"),
            'quad': (self._quadratic, "quad:<h|f0|f1>:<k>:<lie|jordan>"),
        }

    def register_family(self, name: str, builder: Callable[[List[str]], FamilyInstance], syntax: str):
        self.families[name] = (builder, syntax)
        self.logger.info(f"Registered family: {name}")

    def get_family(self, name: str):
        entry = self.families.get(name)
        return entry[0] if entry else None

    def list_families(self) -> List[str]:
        return [syntax for _, syntax in self.families.values()]

    def resolve(self, name: str) -> Tuple[FamilyInstance, RootKind]:
        """Parse 'family:args...:kind' into an instance and the requested kind"""
        parts = [p.strip() for p in name.strip().split(':')]
        if len(parts) < 3:
            raise UnknownFamily(f"Family name must look like one of: {', '.join(self.list_families())}")
        builder = self.get_family(parts[0])
        if builder is None:
            raise UnknownFamily(f"Unknown family: {parts[0]}")
        kind = RootKind.parse(parts[-1])
        try:
            instance = builder(parts[1:-1])
        except ValueError as e:
            if isinstance(e, FamilyError):
                raise
            raise UnknownFamily(f"Malformed family parameters in {name!r}: {e}") from e
        self.logger.debug(f"Resolved family {name} to {instance.tag}")
        return instance, kind

    @staticmethod
    def _nonsingular(args: List[str]) -> FamilyInstance:
        if len(args) != 1:
            raise UnknownFamily("nonsingular takes one argument: comma-separated block orders")
        return family_nonsingular([int(v) for v in args[0].split(',') if v.strip()])

    @staticmethod
    def _clifford(args: List[str]) -> FamilyInstance:
        if len(args) != 1:
            raise UnknownFamily("clifford takes one argument: n")
        return family_clifford(int(args[0]))

    @staticmethod
    def _quadratic(args: List[str]) -> FamilyInstance:
        if len(args) != 2:
            raise UnknownFamily("quad takes two arguments: form (h, f0, f1) and k")
        try:
            kind = QuadraticKind(args[0].lower())
        except ValueError as e:
            raise UnknownFamily(f"Unknown quadratic form: {args[0]}") from e
        return family_quadratic(kind, int(args[1]))


def witnesses_generate(instance: FamilyInstance, kind: RootKind) -> bool:
    """The displayed generating set lies in R and generates G"""
    witnesses = instance.witnesses.get(kind)
    if witnesses is None:
        return True
    system = instance.system(kind)
    return witnesses <= system.roots and generates(system.group, witnesses)
