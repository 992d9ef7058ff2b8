from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from polhilb.errors import MalformedInputError, PreconditionError
from polhilb.monomials import Monomial, VariableUniverse, minimalize, standard_monomials
from polhilb.polarize import (
    DepolarizationSpec,
    box_polarization,
    power_ideal,
    standard_polarization,
    vertices,
)
from polhilb.tangent import (
    DeformationVector,
    PushKind,
    adjacent_generators,
    deformation_basis,
    determinantal_component_dim,
    is_first_order_deformation,
    push_deformation,
    pushes_to_vertices,
    syzygy_constraints,
    tangent_dimension,
    variable_deformation_dim,
    vertex_restriction_rank,
)
from polhilb.trees import LabeledTree, tree_ideal

from conftest import equigenerated_ideals, hom_dimension_oracle, xm

B22 = box_polarization(2, 2)


def g22(*pairs):
    return xm(2, *pairs)


class TestConstraints:
    def test_maximal_ideal_has_no_columns(self):
        ideal = power_ideal(2, 1)
        system = syzygy_constraints(ideal)
        assert system.matrix.col_count == 0
        assert tangent_dimension(ideal) == 0

    def test_box22_shape(self):
        system = syzygy_constraints(B22)
        assert len(system.standard) == 7
        assert system.matrix.col_count == 21
        # x11*x12 and x21*x22 are coprime with cofactors in I: no rows for that pair
        assert {(i, j) for i, j, _ in system.row_labels} == {(0, 1), (1, 2)}
        assert tangent_dimension(B22) == 12

    def test_entries_are_signs(self):
        for ideal in (B22, standard_polarization(3, 2)):
            for row in syzygy_constraints(ideal).matrix.rows:
                assert set(row.values()) <= {1, -1}

    def test_single_generator_unconstrained(self):
        ideal = minimalize([g22((1, 1), (1, 2))], B22.universe)
        system = syzygy_constraints(ideal)
        assert system.matrix.row_count == 0
        assert tangent_dimension(ideal) == len(standard_monomials(ideal, 2)) == 9

    def test_mixed_degrees_rejected(self):
        ideal = minimalize([Monomial.var(0), Monomial.from_indices((1, 2))], VariableUniverse.indexed(3))
        with pytest.raises(PreconditionError):
            syzygy_constraints(ideal)


class TestTangentDimension:
    @pytest.mark.parametrize("ideal,expected", [
        (box_polarization(2, 2), 12),
        (box_polarization(3, 2), 29),
        (standard_polarization(3, 2), 27),
        (box_polarization(2, 3), 48),
    ])
    def test_examples(self, ideal, expected):
        assert tangent_dimension(ideal) == expected

    @pytest.mark.parametrize("ideal", [
        box_polarization(2, 2), box_polarization(3, 2), standard_polarization(3, 2),
        box_polarization(2, 3), tree_ideal(LabeledTree.path(4)).ideal,
    ], ids=["B22", "B32", "P32", "B23", "path4"])
    def test_matches_dense_oracle(self, ideal):
        assert tangent_dimension(ideal) == hom_dimension_oracle(ideal)

    @settings(max_examples=40, deadline=None)
    @given(equigenerated_ideals())
    def test_random_ideals_match_oracle(self, ideal):
        assert tangent_dimension(ideal) == hom_dimension_oracle(ideal)

    @pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3)])
    def test_box_formula(self, n, d):
        assert tangent_dimension(box_polarization(n, d)) == determinantal_component_dim(n, d)

    def test_invariant_under_symmetry(self):
        # x_{ij} -> x_{n+1-i, d+1-j} maps B_nd onto itself
        for n, d in [(2, 2), (3, 2), (2, 3)]:
            ideal = box_polarization(n, d)
            perm = [0] * (n * d)
            for i in range(1, n + 1):
                for j in range(1, d + 1):
                    perm[(i - 1) * d + j - 1] = (n - i) * d + (d - j)
            assert ideal.rename(perm) == ideal
            assert tangent_dimension(ideal.rename(perm)) == tangent_dimension(ideal)

    @settings(max_examples=25, deadline=None)
    @given(equigenerated_ideals(max_vars=4))
    def test_invariant_under_variable_permutation(self, ideal):
        n = ideal.nvars
        perm = list(reversed(range(n)))
        assert tangent_dimension(ideal.rename(perm)) == tangent_dimension(ideal)


class TestBasis:
    def test_box22_basis_satisfies_constraints(self):
        system = syzygy_constraints(B22)
        basis = deformation_basis(B22)
        assert len(basis) == 12
        for v in basis:
            assert is_first_order_deformation(B22, v, system)
            assert not v.is_zero()

    def test_single_generator_basis(self):
        ideal = minimalize([g22((1, 1), (1, 2))], B22.universe)
        basis = deformation_basis(ideal)
        std = standard_monomials(ideal, 2)
        assert [v.perturbations[0] for v in basis] == [((m, 1),) for m in std]

    @pytest.mark.parametrize("ideal", [box_polarization(3, 2), standard_polarization(3, 2)])
    def test_bases_are_deformations(self, ideal):
        system = syzygy_constraints(ideal)
        for v in deformation_basis(ideal):
            assert is_first_order_deformation(ideal, v, system)

    def test_coordinates_roundtrip(self):
        system = syzygy_constraints(B22)
        for v in deformation_basis(B22):
            assert DeformationVector.from_coordinates(system, v.coordinates(system)) == v


class TestIsFirstOrder:
    def test_zero(self):
        assert is_first_order_deformation(B22, DeformationVector.zero(3))

    def test_variable_move(self):
        # x11 -> x11 + t x12 perturbs only x11*x12 and x11*x22
        v = DeformationVector((
            ((g22((1, 2), (1, 2)), 1),),
            ((g22((1, 2), (2, 2)), 1),),
            (),
        ))
        assert is_first_order_deformation(B22, v)

    def test_lone_perturbation_on_x11x12_lifts(self):
        # x22 * x21^2 and x21*x22 * x21^2 both lie in I, so every pair relation holds
        v = DeformationVector.single(3, 0, g22((2, 1), (2, 1)))
        assert is_first_order_deformation(B22, v)

    def test_lone_perturbation_on_x11x22_fails(self):
        # relation with x11*x12 leaves x12*x21^2, which is standard
        v = DeformationVector.single(3, 1, g22((2, 1), (2, 1)))
        assert not is_first_order_deformation(B22, v)

    def test_shape_mismatch(self):
        with pytest.raises(MalformedInputError):
            is_first_order_deformation(B22, DeformationVector.zero(2))

    def test_nonstandard_monomial(self):
        with pytest.raises(MalformedInputError):
            is_first_order_deformation(B22, DeformationVector.single(3, 0, g22((1, 1), (1, 2))))


class TestVariableDeformations:
    def test_box22(self):
        # 10, not 12: two of the twelve are not realised by moving variables
        assert variable_deformation_dim(B22) == 10

    def test_standard_n4_only_variables(self):
        ideal = standard_polarization(4, 2)
        assert variable_deformation_dim(ideal) == tangent_dimension(ideal) == 44

    @pytest.mark.parametrize("d", [2, 3])
    def test_standard_n3_three_extra(self, d):
        ideal = standard_polarization(3, d)
        assert tangent_dimension(ideal) - variable_deformation_dim(ideal) == 3

    @settings(max_examples=25, deadline=None)
    @given(equigenerated_ideals())
    def test_subspace_bound(self, ideal):
        assert variable_deformation_dim(ideal) <= tangent_dimension(ideal)


class TestPush:
    f, fprime = 1, 0  # x11*x22 and x11*x12 in canonical order

    def test_generator_order(self):
        assert B22.generators[self.f] == g22((1, 1), (2, 2))
        assert B22.generators[self.fprime] == g22((1, 1), (1, 2))

    def test_vanishes(self):
        out = push_deformation(B22, self.f, g22((2, 1), (2, 2)), self.fprime)
        assert out.kind is PushKind.VANISHES
        out = push_deformation(B22, self.f, g22((1, 1), (1, 1)), self.fprime)
        assert out.kind is PushKind.VANISHES

    def test_pushed(self):
        out = push_deformation(B22, self.f, g22((1, 2), (2, 2)), self.fprime)
        assert out.kind is PushKind.PUSHED and out.monomial == g22((1, 2), (1, 2))

    def test_obstructed(self):
        out = push_deformation(B22, self.f, g22((2, 1), (2, 1)), self.fprime)
        assert out.kind is PushKind.OBSTRUCTED

    def test_non_adjacent(self):
        b = box_polarization(3, 2)
        i, j = b.index(xm(2, (1, 1), (1, 2))), b.index(xm(2, (2, 1), (3, 2)))
        with pytest.raises(PreconditionError):
            push_deformation(b, i, xm(2, (1, 2), (1, 2)), j)

    def test_reaches_one_vertex(self):
        reach = pushes_to_vertices(B22, DepolarizationSpec.standard(2, 2), self.f, g22((1, 2), (2, 2)))
        assert reach.vertices == {self.fprime}

    def test_improper_rejected(self):
        with pytest.raises(PreconditionError):
            pushes_to_vertices(B22, [0, 2], self.f, g22((1, 1), (2, 2)))

    def test_vertex_reaches_itself(self):
        b = box_polarization(3, 3)
        spec = DepolarizationSpec.standard(3, 3)
        f1 = vertices(b, spec)[0]
        m = xm(3, (1, 1), (1, 2), (1, 2))
        assert is_first_order_deformation(b, DeformationVector.single(len(b), f1, m))
        assert pushes_to_vertices(b, spec, f1, m).vertices == {f1}

    @pytest.mark.parametrize("build,n,d", [
        (box_polarization, 2, 2), (box_polarization, 3, 2),
        (standard_polarization, 3, 2), (box_polarization, 2, 3),
    ])
    def test_basis_support_reaches_exactly_one_vertex(self, build, n, d):
        ideal = build(n, d)
        spec = DepolarizationSpec.standard(n, d)
        for v in deformation_basis(ideal):
            for g, part in enumerate(v.perturbations):
                for m, _ in part:
                    assert len(pushes_to_vertices(ideal, spec, g, m).vertices) == 1

    def test_adjacency_is_symmetric(self):
        adj = adjacent_generators(box_polarization(3, 2))
        for i, nbrs in adj.items():
            for j in nbrs:
                assert i in adj[j]


class TestVertexRestriction:
    @pytest.mark.parametrize("build,n,d", [
        (box_polarization, 2, 2), (box_polarization, 3, 2), (standard_polarization, 3, 2),
        (box_polarization, 2, 3), (standard_polarization, 2, 3),
    ])
    def test_injective_on_polarizations(self, build, n, d):
        ideal = build(n, d)
        verts = vertices(ideal, DepolarizationSpec.standard(n, d))
        assert vertex_restriction_rank(ideal, verts) == tangent_dimension(ideal)

    @pytest.mark.parametrize("tree", [LabeledTree.path(5), LabeledTree.star(5), LabeledTree(5, ((1, 2), (2, 3), (3, 4), (3, 5)))])
    def test_injective_on_trees(self, tree):
        ti = tree_ideal(tree)
        assert vertex_restriction_rank(ti.ideal, ti.vertices()) == tangent_dimension(ti.ideal)

    def test_dropping_a_vertex_loses_rank(self):
        verts = vertices(B22, DepolarizationSpec.standard(2, 2))
        assert vertex_restriction_rank(B22, verts[:1]) < tangent_dimension(B22)


class TestComponentFormula:
    @pytest.mark.parametrize("n,d,value", [(2, 2, 12), (3, 2, 29), (2, 3, 48)])
    def test_values(self, n, d, value):
        assert determinantal_component_dim(n, d) == value

    def test_matches_direct_expansion(self):
        for n, d in itertools.product(range(1, 6), repeat=2):
            cols = n + d - 1
            # d x cols matrices of linear forms in nd variables, modulo GL_d x GL_cols
            expected = d * cols * n * d - (d * d + cols * cols - 1)
            assert determinantal_component_dim(n, d) == expected
