"""
Larger checks: family cardinalities, the Z_2^4 census and centroid dimensions
"""

import math
import random

import pytest

from abgroup import FinAbGroup
from families import (
    QuadraticKind, family_clifford, family_nonsingular, family_quadratic, involution_support, quadratic_root_count,
)
from galgebra import algebra_hom_from_reduction, build, build_with_pullback, centroid_dim, graded_simple
from skewroot import RootKind, classify, enumerate_systems, reduce
from symplectic import Bicharacter, TwistedGroupAlgebra, psi, radical, standard_cocycle

RANGES = {
    (QuadraticKind.H, RootKind.LIE): 2,
    (QuadraticKind.H, RootKind.JORDAN): 1,
    (QuadraticKind.F0, RootKind.LIE): 2,
    (QuadraticKind.F0, RootKind.JORDAN): 1,
    (QuadraticKind.F1, RootKind.LIE): 1,
    (QuadraticKind.F1, RootKind.JORDAN): 2,
}


@pytest.mark.slow
class TestCardinalityTables:
    @pytest.mark.parametrize("kind,root_kind", list(RANGES))
    def test_counts_up_to_k4(self, kind, root_kind):
        for k in range(RANGES[(kind, root_kind)], 5):
            system = family_quadratic(kind, k).system(root_kind)
            assert len(system) == quadratic_root_count(kind, root_kind, k)
            assert system.validated

    def test_count_table(self):
        table = [
            [quadratic_root_count(kind, root_kind, k) for k in range(1, 5)]
            for kind in QuadraticKind for root_kind in RootKind
        ]
        assert table == [
            [3, 15, 63, 255], [4, 16, 64, 256],
            [1, 6, 28, 120], [3, 10, 36, 136],
            [3, 10, 36, 136], [1, 6, 28, 120],
        ]


@pytest.mark.slow
class TestZ2FourCensus:
    def test_lie_census_contains_so4_and_sp4(self):
        group = FinAbGroup((2, 2, 2, 2))
        beta = Bicharacter.from_lower(group, [[1], [0, 0], [0, 0, 1]], N=2)
        classes = classify(enumerate_systems(beta, RootKind.LIE))
        sizes = {len(c.representative) for c in classes}
        assert {6, 10} <= sizes


@pytest.mark.slow
class TestCentroids:
    def test_sp4_is_central(self):
        assert centroid_dim(family_quadratic(QuadraticKind.F1, 2).build(RootKind.LIE)) == 1

    def test_so4_has_two_dimensional_centroid(self):
        assert centroid_dim(family_clifford(4).build(RootKind.LIE)) == 2

    @pytest.mark.parametrize("root_kind", list(RootKind))
    def test_h_family_reduces_isomorphically(self, root_kind):
        instance = family_quadratic(QuadraticKind.H, 2)
        system = instance.system(root_kind)
        reduced_system, projection = reduce(system, radical(system.beta))
        reduced = build(root_kind, reduced_system)
        algebra = build_with_pullback(system, reduced, projection)
        result = algebra_hom_from_reduction(algebra, reduced, projection)
        assert result.is_isomorphism
        assert centroid_dim(algebra) == 1


@pytest.mark.slow
class TestSmallFamilies:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_nonsingular_counts(self, n):
        instance = family_nonsingular((n,))
        assert len(instance.system(RootKind.LIE)) == n * n - 1
        assert len(instance.system(RootKind.JORDAN)) == n * n

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_clifford_counts(self, n):
        instance = family_clifford(n)
        assert len(instance.system(RootKind.LIE)) == n * (n - 1) // 2
        assert len(instance.system(RootKind.JORDAN)) == n + 1

    @pytest.mark.parametrize("n", [3, 5])
    def test_odd_clifford_lie_is_central_simple(self, n):
        algebra = family_clifford(n).build(RootKind.LIE)
        assert centroid_dim(algebra) == 1
        assert graded_simple(algebra)

    def test_f0_k2_is_so4(self):
        algebra = family_quadratic(QuadraticKind.F0, 2).build(RootKind.LIE)
        assert algebra.dimension == 6
        assert centroid_dim(algebra) == 2

    @pytest.mark.parametrize("m", [0, 1])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_involution_supports_agree(self, m, k):
        assert involution_support(m, k).agree


@pytest.mark.slow
class TestCocycleLayer:
    def test_psi_of_standard_cocycle_on_random_bicharacters(self):
        rng = random.Random(12)
        for _ in range(100):
            orders = tuple(rng.choice([2, 3, 4, 6, 12]) for _ in range(rng.randint(1, 3)))
            group = FinAbGroup(orders)
            N = group.exponent
            k = group.rank
            expo = [[0] * k for _ in range(k)]
            for i in range(k):
                for j in range(i):
                    step = N // math.gcd(group.orders[i], group.orders[j])
                    expo[i][j] = step * rng.randrange(N // step)
                    expo[j][i] = -expo[i][j]
            beta = Bicharacter(group, N, tuple(tuple(r) for r in expo))
            assert psi(standard_cocycle(beta)) == beta

    @pytest.mark.parametrize("orders,lower", [((4, 4), [[1]]), ((2, 2, 2, 2), [[1], [0, 0], [1, 0, 1]]), ((2, 4, 4), [[2], [0, 1]])])
    def test_twisted_algebra_is_associative(self, orders, lower):
        group = FinAbGroup(orders)
        algebra = TwistedGroupAlgebra(standard_cocycle(Bicharacter.from_lower(group, lower)))
        basis = [algebra.basis(g) for g in group.elements()]
        for x in basis:
            for y in basis:
                xy = x * y
                for z in basis:
                    assert xy * z == x * (y * z)
