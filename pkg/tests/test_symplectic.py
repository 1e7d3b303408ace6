"""
Tests for alternating bicharacters, cocycles and twisted group algebras
"""

import random
from fractions import Fraction

import pytest

from abgroup import AbelianGroupError, BudgetExceeded, FinAbGroup, GroupHom
from cyclolinalg import CycloNum, cyclo_root
from symplectic import (
    Bicharacter, Cocycle, NotAlternating, NotDivision, NotWellDefined, TwistedGroupAlgebra, check_presentation,
    extract_bicharacter, format_bicharacter, is_nonsingular, orthogonal_sum, parse_bicharacter, psi,
    pullback, radical, restrict, standard_cocycle, tga_basis_inverse,
)


class TestBicharacter:
    """Validation and evaluation of alternating bicharacters"""

    def test_from_lower(self, beta_z2z2):
        assert beta_z2z2.expo == ((0, 1), (1, 0))
        g = beta_z2z2.group
        assert beta_z2z2.value(g.element((1, 0)), g.element((0, 1))) == -1
        assert beta_z2z2.value(g.element((1, 1)), g.element((1, 1))) == 1

    def test_leading_empty_row_accepted(self, z2z2):
        assert Bicharacter.from_lower(z2z2, [[], [1]], N=2).expo == ((0, 1), (1, 0))

    def test_not_alternating(self):
        with pytest.raises(NotAlternating):
            Bicharacter(FinAbGroup((3, 3)), 3, ((0, 1), (1, 0)))
        with pytest.raises(NotAlternating, match="Diagonal"):
            Bicharacter(FinAbGroup((2,)), 2, ((1,),))

    def test_exponents_must_respect_orders(self):
        with pytest.raises(NotWellDefined, match="not killed"):
            Bicharacter(FinAbGroup((2, 3)), 6, ((0, 1), (5, 0)))

    def test_wrong_row_count(self, z2z2):
        with pytest.raises(NotWellDefined, match="lower-triangle rows"):
            Bicharacter.from_lower(z2z2, [[1], [1, 0]], N=2)

    def test_bilinearity(self, beta_z3z3):
        elements = list(beta_z3z3.group.elements())
        for a in elements:
            for b in elements:
                for c in elements:
                    assert beta_z3z3.value(a + b, c) == beta_z3z3.value(a, c) * beta_z3z3.value(b, c)
                assert beta_z3z3.value(a, b) * beta_z3z3.value(b, a) == 1

    def test_same_values_across_root_orders(self, z2z2, beta_z2z2):
        lifted = Bicharacter(z2z2, 4, ((0, 2), (2, 0)))
        assert lifted.same_values(beta_z2z2)
        assert not Bicharacter.trivial(z2z2).same_values(beta_z2z2)


class TestRadical:
    """Radical and nonsingularity"""

    def test_nonsingular(self, beta_z2z2, beta_z3z3):
        assert is_nonsingular(beta_z2z2)
        assert is_nonsingular(beta_z3z3)

    def test_trivial_bicharacter_radical_is_everything(self, z2z2):
        assert len(radical(Bicharacter.trivial(z2z2))) == 4

    def test_partial_radical(self):
        group = FinAbGroup((4, 2))
        beta = Bicharacter.from_lower(group, [[2]])
        assert radical(beta) == frozenset({group.zero, group.element((2, 0))})

    def test_orthogonal_sum(self, beta_z2z2, beta_z3z3):
        total = orthogonal_sum(beta_z2z2, beta_z3z3)
        assert total.group.orders == (2, 2, 3, 3)
        assert total.N == 6
        assert is_nonsingular(total)


class TestCocycles:
    """Standard cocycle, psi and pullbacks"""

    def test_psi_of_standard_cocycle(self, beta_z2z2, beta_z3z3):
        for beta in (beta_z2z2, beta_z3z3):
            assert psi(standard_cocycle(beta)) == beta

    def test_standard_cocycle_values(self, beta_z2z2):
        xi = standard_cocycle(beta_z2z2)
        g = beta_z2z2.group
        assert xi.value(g.element((0, 1)), g.element((1, 0))) == -1
        assert xi.value(g.element((1, 0)), g.element((0, 1))) == 1

    def test_pullback_along_identity(self, beta_z3z3):
        xi = standard_cocycle(beta_z3z3)
        assert pullback(xi, GroupHom.identity(beta_z3z3.group)) == xi

    def test_restrict_and_pullback(self):
        group = FinAbGroup((2, 2, 2))
        beta = Bicharacter(group, 2, ((0, 1, 1), (1, 0, 1), (1, 1, 0)))
        basis = [group.element((1, 1, 0)), group.element((0, 1, 1))]
        beta_sub, embedding = restrict(beta, basis)
        assert beta_sub.group.orders == (2, 2)
        assert embedding.apply(beta_sub.group.element((1, 1))).residues == (1, 0, 1)
        xi = pullback(standard_cocycle(beta), embedding)
        assert psi(xi).same_values(beta_sub)

    def test_restrict_rejects_dependent_basis(self, beta_z2z2):
        g = beta_z2z2.group
        with pytest.raises(AbelianGroupError, match="not independent"):
            restrict(beta_z2z2, [g.element((1, 0)), g.element((1, 0))])
        with pytest.raises(AbelianGroupError, match="zero element"):
            restrict(beta_z2z2, [g.zero])


class TestTwistedGroupAlgebra:
    """F^xi G multiplication and presentation"""

    def test_basis_products(self, beta_z2z2):
        algebra = TwistedGroupAlgebra(standard_cocycle(beta_z2z2))
        g = beta_z2z2.group
        a, b = algebra.basis(g.element((1, 0))), algebra.basis(g.element((0, 1)))
        ab = algebra.basis(g.element((1, 1)))
        assert a * b == ab
        assert b * a == ab.scale(cyclo_root(2, 1))

    def test_basis_inverse(self, beta_z3z3):
        algebra = TwistedGroupAlgebra(standard_cocycle(beta_z3z3))
        for g in beta_z3z3.group.elements():
            assert algebra.basis(g) * tga_basis_inverse(algebra, g) == algebra.one()

    def test_presentation_holds_for_standard_cocycle(self, beta_z3z3):
        report = check_presentation(TwistedGroupAlgebra(standard_cocycle(beta_z3z3)), beta_z3z3)
        assert report.ok
        assert report.failures == []

    def test_presentation_detects_wrong_commutation(self, beta_z2z2):
        algebra = TwistedGroupAlgebra(Cocycle.trivial(beta_z2z2.group))
        report = check_presentation(algebra, beta_z2z2)
        assert not report.commutation
        assert report.generator_orders

    def test_extract_bicharacter(self, beta_z3z3):
        xi = standard_cocycle(beta_z3z3)
        recovered = extract_bicharacter(beta_z3z3.group, xi.value, exhaustive=True)
        assert recovered.same_values(beta_z3z3)


class TestTextForm:
    def test_format(self, beta_z3z3):
        assert format_bicharacter(beta_z3z3) == "N=3\n1\n"

    def test_parse(self, beta_z3z3):
        text = "# comment\nN=3\n1\n"
        assert parse_bicharacter(beta_z3z3.group, text) == beta_z3z3

    def test_parse_requires_header(self, z2z2):
        with pytest.raises(NotWellDefined, match="must start"):
            parse_bicharacter(z2z2, "1\n")


class TestExtraction:
    """Recovering beta from basis products"""

    @pytest.mark.parametrize("orders,lower,seed", [
        ((3, 3), [[1]], 1),
        ((4, 4), [[1]], 2),
        ((2, 4, 4), [[2], [0, 1]], 3),
        ((2, 2, 2, 2), [[1], [0, 0], [1, 0, 1]], 4),
    ])
    def test_invariant_under_basis_rescaling(self, orders, lower, seed):
        rng = random.Random(seed)
        group = FinAbGroup(orders)
        beta = Bicharacter.from_lower(group, lower)
        xi = standard_cocycle(beta)
        N = beta.N
        scale = {
            g: cyclo_root(N, rng.randrange(N)) * rng.choice([1, -2, 3, Fraction(1, 2), Fraction(-5, 3)])
            for g in group.elements()
        }

        def rescaled(g, h):
            return xi.value(g, h) * scale[g] * scale[h] / scale[g + h]

        assert extract_bicharacter(group, rescaled).same_values(beta)

    def test_zero_product_off_the_generators(self, beta_z2z2):
        xi = standard_cocycle(beta_z2z2)
        group = beta_z2z2.group
        diagonal = group.element((1, 1))

        def degenerate(g, h):
            if g == diagonal and h == diagonal:
                return CycloNum.zero(2)
            return xi.value(g, h)

        with pytest.raises(NotDivision, match="vanishes"):
            extract_bicharacter(group, degenerate)
        # generator pairs alone do not see the zero
        assert extract_bicharacter(group, degenerate, exhaustive=False).same_values(beta_z2z2)

    def test_product_scan_is_budgeted(self, beta_z3z3):
        xi = standard_cocycle(beta_z3z3)
        with pytest.raises(BudgetExceeded):
            extract_bicharacter(beta_z3z3.group, xi.value, budget=80)
        assert extract_bicharacter(beta_z3z3.group, xi.value, budget=81).same_values(beta_z3z3)
