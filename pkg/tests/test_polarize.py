from __future__ import annotations

from math import comb

import pytest

from polhilb.errors import MalformedInputError, PreconditionError, StructuralError
from polhilb.monomials import Monomial, VariableUniverse, hilbert_function, hilbert_numerator, minimalize
from polhilb.polarize import (
    DepolarizationSpec,
    box_polarization,
    depolarize,
    flat_index,
    is_polarization,
    power_ideal,
    sqfree_power_ideal,
    standard_polarization,
    trivial_polarization,
    unflatten,
    vertices,
)

from conftest import xm

CONSTRUCTORS = {
    "power": power_ideal,
    "sqfree": sqfree_power_ideal,
    "standard": standard_polarization,
    "box": box_polarization,
}


def gens_of(d, *tuples):
    """Generators written as sequences of (i, j) pairs."""
    return tuple(xm(d, *t) for t in tuples)


def test_flat_index_roundtrip():
    for n in range(1, 5):
        for d in range(1, 5):
            seen = set()
            for i in range(1, n + 1):
                for j in range(1, d + 1):
                    k = flat_index(i, j, d)
                    assert unflatten(k, d) == (i, j)
                    seen.add(k)
            assert seen == set(range(n * d))


class TestConstructors:
    def test_power_examples(self):
        assert power_ideal(2, 2).generators == tuple(
            Monomial.from_indices(c) for c in [(0, 0), (0, 1), (1, 1)]
        )
        assert len(power_ideal(3, 2)) == 6
        assert power_ideal(1, 5).generators == (Monomial.var(0, 5),)

    def test_sqfree_examples(self):
        ideal = sqfree_power_ideal(2, 2)
        assert ideal.nvars == 3
        assert ideal.generators == tuple(Monomial.from_indices(c) for c in [(0, 1), (0, 2), (1, 2)])
        assert len(sqfree_power_ideal(3, 2)) == 6 and sqfree_power_ideal(3, 2).nvars == 4
        assert sqfree_power_ideal(2, 3).generators == tuple(
            Monomial.from_indices(c) for c in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        )

    def test_standard_p32(self):
        expected = gens_of(
            2,
            [(1, 1), (1, 2)], [(1, 1), (2, 1)], [(1, 1), (3, 1)],
            [(2, 1), (2, 2)], [(2, 1), (3, 1)], [(3, 1), (3, 2)],
        )
        assert set(standard_polarization(3, 2).generators) == set(expected)

    def test_standard_small(self):
        assert standard_polarization(1, 4).generators == (xm(4, (1, 1), (1, 2), (1, 3), (1, 4)),)
        expected = gens_of(
            3,
            [(1, 1), (1, 2), (1, 3)], [(1, 1), (1, 2), (2, 1)],
            [(1, 1), (2, 1), (2, 2)], [(2, 1), (2, 2), (2, 3)],
        )
        assert set(standard_polarization(2, 3).generators) == set(expected)

    def test_box_b33(self):
        listed = [
            (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3),
            (1, 3, 3), (2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3),
        ]
        expected = {xm(3, *[(i, j + 1) for j, i in enumerate(seq)]) for seq in listed}
        assert set(box_polarization(3, 3).generators) == expected

    def test_box_small(self):
        assert set(box_polarization(2, 2).generators) == set(
            gens_of(2, [(1, 1), (1, 2)], [(1, 1), (2, 2)], [(2, 1), (2, 2)])
        )
        assert box_polarization(4, 1).generators == tuple(Monomial.var(k) for k in range(4))

    def test_trivial(self):
        ideal = trivial_polarization(2, 2)
        assert ideal.nvars == 4
        assert set(ideal.generators) == {xm(2, (1, 1), (1, 1)), xm(2, (1, 1), (2, 1)), xm(2, (2, 1), (2, 1))}
        assert trivial_polarization(3, 1).generators == tuple(Monomial.var(k) for k in range(3))
        assert len(trivial_polarization(2, 3)) == 4 and trivial_polarization(2, 3).nvars == 6

    @pytest.mark.parametrize("kind", sorted(CONSTRUCTORS))
    @pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(1, 5)])
    def test_generator_count(self, kind, n, d):
        assert len(CONSTRUCTORS[kind](n, d)) == comb(n + d - 1, d)

    def test_invalid_parameters(self):
        with pytest.raises(MalformedInputError):
            box_polarization(0, 2)


class TestDepolarize:
    def test_box33(self):
        assert depolarize(box_polarization(3, 3), DepolarizationSpec.standard(3, 3)) == power_ideal(3, 3)

    def test_standard32(self):
        assert depolarize(standard_polarization(3, 2), DepolarizationSpec.standard(3, 2)) == power_ideal(3, 2)

    def test_identity(self):
        ideal = box_polarization(2, 3)
        assert depolarize(ideal, DepolarizationSpec.identity(ideal.universe)) == ideal

    @pytest.mark.parametrize("build", [box_polarization, standard_polarization, trivial_polarization])
    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4)])
    def test_every_constructor_depolarizes_to_power(self, build, n, d):
        assert depolarize(build(n, d), DepolarizationSpec.standard(n, d)) == power_ideal(n, d)

    def test_spec_must_cover_universe(self):
        with pytest.raises(MalformedInputError):
            depolarize(box_polarization(2, 2), DepolarizationSpec.standard(2, 3))


def series_after_extra_variables(target, extra, max_degree):
    """Hilbert function of (S/I)[y_1..y_extra] from direct standard-monomial counts of S/I."""
    base = [hilbert_function(target, k) for k in range(max_degree + 1)]
    return [sum(base[j] * comb(extra - 1 + k - j, k - j) for j in range(k + 1)) for k in range(max_degree + 1)]


class TestIsPolarization:
    def test_box22(self):
        report = is_polarization(box_polarization(2, 2), power_ideal(2, 2), DepolarizationSpec.standard(2, 2))
        assert report.ok and report.depolarizes_bijectively and report.k_polynomials_equal

    @pytest.mark.parametrize("build", [box_polarization, standard_polarization])
    @pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_box_and_standard(self, build, n, d):
        assert is_polarization(build(n, d), power_ideal(n, d), DepolarizationSpec.standard(n, d))

    def test_perturbed_standard_rejected(self):
        d = 2
        gens = [g for g in standard_polarization(3, 2).generators if g != xm(d, (3, 1), (3, 2))]
        mutant = minimalize(gens + [xm(d, (3, 1), (2, 2))], standard_polarization(3, 2).universe)
        report = is_polarization(mutant, power_ideal(3, 2), DepolarizationSpec.standard(3, 2))
        assert not report.ok
        assert not report.depolarizes_bijectively

    def test_bijective_but_not_flat_rejected(self):
        d = 2
        gens = [g for g in box_polarization(3, 2).generators if g != xm(d, (1, 1), (2, 2))]
        mutant = minimalize(gens + [xm(d, (1, 2), (2, 2))], box_polarization(3, 2).universe)
        report = is_polarization(mutant, power_ideal(3, 2), DepolarizationSpec.standard(3, 2))
        assert report.depolarizes_bijectively
        assert not report.k_polynomials_equal and not report.ok

    def test_self_identity(self):
        ideal = sqfree_power_ideal(3, 2)
        assert is_polarization(ideal, ideal, DepolarizationSpec.identity(ideal.universe)).ok

    def test_not_squarefree(self):
        with pytest.raises(PreconditionError):
            is_polarization(trivial_polarization(2, 2), power_ideal(2, 2), DepolarizationSpec.standard(2, 2))

    @pytest.mark.parametrize("build", [box_polarization, standard_polarization])
    @pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3)])
    def test_hilbert_function_oracle(self, build, n, d):
        # a polarization is S/I with n(d-1) free extra variables, degree by degree
        ideal = build(n, d)
        expected = series_after_extra_variables(power_ideal(n, d), n * (d - 1), 6)
        assert [hilbert_function(ideal, k) for k in range(7)] == expected

    @pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3), (3, 3)])
    def test_k_polynomial_shared(self, n, d):
        ks = {
            hilbert_numerator(build(n, d)).coefficients
            for build in (box_polarization, standard_polarization, trivial_polarization)
        }
        assert ks == {hilbert_numerator(power_ideal(n, d)).coefficients}


class TestVertices:
    def test_box33(self):
        ideal = box_polarization(3, 3)
        found = [ideal.generators[k] for k in vertices(ideal, DepolarizationSpec.standard(3, 3))]
        assert found == [xm(3, (i, 1), (i, 2), (i, 3)) for i in (1, 2, 3)]

    def test_standard32(self):
        ideal = standard_polarization(3, 2)
        found = [ideal.generators[k] for k in vertices(ideal, DepolarizationSpec.standard(3, 2))]
        assert found == [xm(2, (i, 1), (i, 2)) for i in (1, 2, 3)]

    def test_single_variable(self):
        ideal = standard_polarization(1, 3)
        assert vertices(ideal, DepolarizationSpec.standard(1, 3)) == [0]

    def test_missing_vertex(self):
        ideal = minimalize([xm(2, (1, 1), (2, 1))], box_polarization(2, 2).universe)
        with pytest.raises(StructuralError):
            vertices(ideal, DepolarizationSpec.standard(2, 2))


def test_universe_names():
    assert box_polarization(2, 2).universe.names == ("x_{1,1}", "x_{1,2}", "x_{2,1}", "x_{2,2}")
    assert VariableUniverse.indexed(2).names == ("x1", "x2")
