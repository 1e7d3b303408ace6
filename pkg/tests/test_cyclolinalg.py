"""
Tests for exact cyclotomic arithmetic and matrices over Q(zeta_N)
"""

import itertools
import random
import pytest
from fractions import Fraction
from sympy import I, Matrix, Poly, expand, eye, symbols

from cyclolinalg import (
    CycloMatrix, CycloNum, CyclotomicError, DivisionByZero, IncompatibleOrders, ShapeError,
    cyclo_arith, cyclo_root, cyclotomic_coeffs, embed, field_degree, format_cyclonum, mat_det,
    mat_rank, mat_solve, min_poly_squarefree, minimal_polynomial, parse_cyclonum, scalar_ratio,
)


class TestCyclotomicPolynomials:
    """Phi_N coefficients and field degrees"""

    @pytest.mark.parametrize("order,coeffs", [
        (1, (-1, 1)),
        (2, (1, 1)),
        (3, (1, 1, 1)),
        (4, (1, 0, 1)),
        (6, (1, -1, 1)),
        (12, (1, 0, -1, 0, 1)),
    ])
    def test_coefficients(self, order, coeffs):
        assert cyclotomic_coeffs(order) == coeffs

    def test_field_degree_is_euler_phi(self):
        assert [field_degree(n) for n in (1, 2, 3, 4, 5, 8, 9, 12)] == [1, 1, 2, 2, 4, 4, 6, 4]

    def test_non_positive_order_rejected(self):
        with pytest.raises(ValueError, match="must be positive"):
            cyclotomic_coeffs(0)


class TestCycloNum:
    """Field arithmetic in the power basis"""

    def test_roots_of_unity_relations(self):
        assert cyclo_root(4, 2) == -1
        assert cyclo_root(3, 1) + cyclo_root(3, 2) == -1
        assert cyclo_root(5, 7) == cyclo_root(5, 2)
        assert cyclo_root(6, 3) * cyclo_root(6, 3) == 1

    def test_equality_lifts_orders(self):
        assert cyclo_root(6, 2) == cyclo_root(3, 1)
        assert cyclo_root(4, 1) ** 2 == cyclo_root(2, 1)
        assert CycloNum.rational(3, 5) == CycloNum.rational(8, 5)
        assert hash(CycloNum.rational(3, 5)) == hash(CycloNum.rational(8, 5))

    def test_hash_agrees_across_orders(self):
        assert hash(cyclo_root(3, 1)) == hash(cyclo_root(6, 2))
        assert hash(cyclo_root(6, 1)) == hash(-cyclo_root(3, 2))
        assert hash(cyclo_root(4, 1) + 2) == hash(cyclo_root(12, 3) + 2)
        assert hash(cyclo_root(5, 1)) == hash(embed(cyclo_root(5, 1), 20))

    def test_set_and_dict_lookup_across_orders(self):
        values = {cyclo_root(3, 1), cyclo_root(4, 1), CycloNum.rational(5, 2)}
        assert cyclo_root(6, 2) in values
        assert cyclo_root(12, 3) in values
        assert CycloNum.rational(1, 2) in values
        assert len(values | {cyclo_root(12, 4), cyclo_root(8, 2)}) == 3
        table = {cyclo_root(6, 1): "primitive sixth root"}
        assert table[-cyclo_root(3, 2)] == "primitive sixth root"

    def test_mixed_order_sum_lands_in_lcm(self):
        total = cyclo_root(4, 1) + cyclo_root(3, 1)
        assert total.order == 12
        assert total - cyclo_root(3, 1) == cyclo_root(4, 1)

    def test_inverse_and_division(self):
        x = 1 + cyclo_root(4, 1)
        assert x * x.inverse() == 1
        assert (cyclo_root(5, 2) / cyclo_root(5, 3)) == cyclo_root(5, 4)
        assert 1 / CycloNum.rational(7, 4) == Fraction(1, 4)

    def test_negative_powers(self):
        z = cyclo_root(7, 1)
        assert z ** -1 == cyclo_root(7, 6)
        assert z ** 0 == 1

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            CycloNum.zero(3).inverse()
        with pytest.raises(CyclotomicError):
            cyclo_root(3, 1) / 0

    def test_rational_predicates(self):
        assert CycloNum.rational(5, Fraction(3, 2)).rational_value() == Fraction(3, 2)
        assert not cyclo_root(5, 1).is_rational()
        with pytest.raises(ValueError, match="not rational"):
            cyclo_root(5, 1).rational_value()

    def test_embed_requires_divisibility(self):
        assert embed(cyclo_root(3, 1), 6) == cyclo_root(6, 2)
        with pytest.raises(IncompatibleOrders):
            embed(cyclo_root(4, 1), 6)

    def test_cyclo_arith_dispatch(self):
        a, b = cyclo_root(4, 1), cyclo_root(4, 3)
        assert cyclo_arith(a, b, 'mul') == 1
        assert cyclo_arith(a, b, 'add') == 0
        with pytest.raises(ValueError, match="Unknown operation"):
            cyclo_arith(a, b, 'pow')


class TestTextForm:
    """Canonical N:[c0,...] text form"""

    def test_format(self):
        assert format_cyclonum(CycloNum.rational(4, Fraction(1, 2))) == "4:[1/2,0]"
        assert str(CycloNum.rational(2, -512)) == "2:[-512]"
        assert str(cyclo_root(4, 3)) == "4:[0,-1]"

    def test_parse(self):
        assert parse_cyclonum("4:[1,-1]") == 1 - cyclo_root(4, 1)
        assert parse_cyclonum(" 3:[1/2, 0] ") == Fraction(1, 2)

    @pytest.mark.parametrize("text", ["4:[1]", "x:[1,2]", "4 [1,2]"])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_cyclonum(text)


class TestCycloMatrix:
    """Dense matrices over Q(zeta_N)"""

    def setup_method(self):
        self.z3 = cyclo_root(3, 1)
        self.clock = CycloMatrix([[1, 0, 0], [0, self.z3, 0], [0, 0, self.z3 ** 2]])
        self.shift = CycloMatrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]], 3)

    def test_order_inferred_from_entries(self):
        assert self.clock.order == 3
        assert CycloMatrix([[1, 2], [3, 4]]).order == 1

    def test_clock_shift_commutation(self):
        assert scalar_ratio(self.clock @ self.shift, self.shift @ self.clock) == self.z3

    def test_scalar_ratio_none_when_not_proportional(self):
        assert scalar_ratio(self.clock, self.shift) is None
        with pytest.raises(DivisionByZero):
            scalar_ratio(self.clock, CycloMatrix.zeros(3, 3, 3))

    def test_power_and_inverse(self):
        identity = CycloMatrix.identity(3, 3)
        assert self.shift.power(3) == identity
        assert self.clock.power(-1) == self.clock.inverse()
        assert self.clock @ self.clock.inverse() == identity

    def test_singular_inverse(self):
        with pytest.raises(DivisionByZero, match="singular"):
            CycloMatrix([[1, 2], [2, 4]]).inverse()

    def test_kron(self):
        product = CycloMatrix.identity(2, 1).kron(CycloMatrix.identity(3, 3))
        assert product.shape == (6, 6)
        assert product == CycloMatrix.identity(6, 3)

    def test_scale_by_higher_order_scalar(self):
        scaled = CycloMatrix.identity(2, 2).scale(cyclo_root(4, 1))
        assert scaled.order == 4
        assert scaled[0, 0] == cyclo_root(4, 1)

    def test_determinant_and_rank(self):
        assert mat_det(CycloMatrix([[1, 2], [3, 4]])) == -2
        assert mat_det(self.clock) == 1
        assert mat_rank(CycloMatrix([[1, 2], [2, 4]])) == 1
        assert mat_rank(self.shift) == 3

    def test_solve(self):
        matrix = CycloMatrix([[1, 1], [0, 1]])
        assert mat_solve(matrix, [3, 1]) == [2, 1]
        assert mat_solve(CycloMatrix([[1, 1], [1, 1]]), [1, 2]) is None

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            CycloMatrix([[1, 2], [3]])
        with pytest.raises(ShapeError):
            CycloMatrix([[1, 2]]) @ CycloMatrix([[1, 2]])
        with pytest.raises(ShapeError):
            mat_det(CycloMatrix([[1, 2]]))

    def test_nonzero_entries_and_transpose(self):
        assert self.shift.nonzero_entries() == [(0, 2), (1, 0), (2, 1)]
        assert self.shift.transpose() @ self.shift == CycloMatrix.identity(3, 3)


class TestMinimalPolynomial:
    """Semisimplicity through a squarefree minimal polynomial"""

    def test_nilpotent(self):
        nilpotent = CycloMatrix([[0, 1], [0, 0]])
        assert minimal_polynomial(nilpotent) == [0, 0, 1]
        assert not min_poly_squarefree(nilpotent)

    def test_diagonalizable(self):
        clock = CycloMatrix([[1, 0, 0], [0, cyclo_root(3, 1), 0], [0, 0, cyclo_root(3, 2)]])
        assert min_poly_squarefree(clock)
        assert min_poly_squarefree(CycloMatrix.identity(4, 1))
        assert len(minimal_polynomial(CycloMatrix.identity(4, 1))) == 2

    def test_rotation_over_rationals(self):
        # x^2 + 1 is squarefree even though it has no rational roots
        rotation = CycloMatrix([[0, -1], [1, 0]])
        assert minimal_polynomial(rotation) == [1, 0, 1]
        assert min_poly_squarefree(rotation)


FIELD_ORDERS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24]


def random_cyclonum(rng: random.Random, order: int) -> CycloNum:
    return CycloNum(order, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(field_degree(order))])


def random_cyclomatrix(rng: random.Random, order: int, size: int) -> CycloMatrix:
    return CycloMatrix([[random_cyclonum(rng, order) for _ in range(size)] for _ in range(size)], order)


class TestFieldLaws:
    """Randomized field axioms in Q(zeta_N)"""

    @pytest.mark.parametrize("order", FIELD_ORDERS)
    def test_ring_axioms(self, order):
        rng = random.Random(order)
        for _ in range(20):
            a, b, c = (random_cyclonum(rng, order) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == 0

    @pytest.mark.parametrize("order", FIELD_ORDERS)
    def test_nonzero_elements_invert(self, order):
        rng = random.Random(100 + order)
        for _ in range(20):
            a = random_cyclonum(rng, order)
            if a.is_zero():
                continue
            assert a * a.inverse() == 1
            assert (a ** 3) / a == a * a

    @pytest.mark.parametrize("left,right", [(3, 4), (4, 6), (5, 8), (12, 8)])
    def test_mixed_orders_agree_with_lifted_arithmetic(self, left, right):
        rng = random.Random(left * right)
        a, b = random_cyclonum(rng, left), random_cyclonum(rng, right)
        common = left * right
        assert a * b == embed(a, common) * embed(b, common)
        assert a + b == embed(a, common) + embed(b, common)


class TestDeterminant:
    """Multiplicativity of mat_det on random matrices"""

    @pytest.mark.parametrize("order,size", [(1, 3), (3, 3), (4, 3), (5, 2), (8, 3), (12, 2)])
    def test_det_is_multiplicative(self, order, size):
        rng = random.Random(order * 10 + size)
        for _ in range(3):
            a = random_cyclomatrix(rng, order, size)
            b = random_cyclomatrix(rng, order, size)
            assert mat_det(a @ b) == mat_det(a) * mat_det(b)

    def test_det_of_inverse(self):
        matrix = CycloMatrix([[1, cyclo_root(4, 1), 0], [2, 1, 1], [0, -1, 3]], 4)
        assert mat_det(matrix.inverse()) * mat_det(matrix) == 1


GAUSSIAN_UNITS = [(0, 0), (1, 1), (-1, -1), (cyclo_root(4, 1), I), (cyclo_root(4, 3), -I)]


def _is_diagonalizable(entries) -> bool:
    """Squarefree part of the characteristic polynomial annihilates the matrix"""
    x = symbols('x')
    matrix = Matrix(entries)
    factor = Poly(matrix.charpoly(x).as_expr(), x, extension=I).sqf_part()
    value = Matrix.zeros(*matrix.shape)
    for coeff in factor.all_coeffs():
        value = value * matrix + coeff * eye(matrix.rows)
    return value.applyfunc(expand).is_zero_matrix


class TestSquarefreeAgainstDiagonalization:
    """min_poly_squarefree agrees with diagonalizability over Q(i)"""

    def test_all_two_by_two(self):
        for choice in itertools.product(GAUSSIAN_UNITS, repeat=4):
            ours = CycloMatrix([[choice[0][0], choice[1][0]], [choice[2][0], choice[3][0]]], 4)
            expected = _is_diagonalizable([[choice[0][1], choice[1][1]], [choice[2][1], choice[3][1]]])
            assert min_poly_squarefree(ours) == expected, choice

    @pytest.mark.parametrize("seed", [1, 2, 3, 4])
    def test_sampled_three_by_three(self, seed):
        rng = random.Random(seed)
        for _ in range(50):
            choice = [[rng.choice(GAUSSIAN_UNITS) for _ in range(3)] for _ in range(3)]
            ours = CycloMatrix([[entry[0] for entry in row] for row in choice], 4)
            expected = _is_diagonalizable([[entry[1] for entry in row] for row in choice])
            assert min_poly_squarefree(ours) == expected, choice

    def test_oracle_separates_jordan_blocks(self):
        assert _is_diagonalizable([[I, 0, 0], [0, I, 0], [0, 0, 1]])
        assert not _is_diagonalizable([[I, 1, 0], [0, I, 0], [0, 0, 1]])
        jordan = CycloMatrix([[cyclo_root(4, 1), 1, 0], [0, cyclo_root(4, 1), 0], [0, 0, 1]], 4)
        assert not min_poly_squarefree(jordan)
