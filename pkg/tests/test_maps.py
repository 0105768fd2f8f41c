"""Tests for pentagon, stabilization and skein maps and the skein exact triangle."""

from dataclasses import replace
from fractions import Fraction

import pytest

from gridhom.grid.diagram import GridDiagram

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def unknot2() -> GridDiagram:
    return GridDiagram(n=2, o_rows=(0, 1), x_rows=(1, 0), name="unknot2")


@pytest.fixture()
def unlink2() -> GridDiagram:
    return GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(1, 0, 3, 2), name="unlink2")


@pytest.fixture()
def quadruple():
    from gridhom.grid.library import builtin
    from gridhom.grid.skein import skein_quadruple

    entry = builtin("trefoil_skein")
    return skein_quadruple(entry.diagram, entry.column)


@pytest.fixture()
def switch3() -> GridDiagram:
    # columns 0 and 1 share row 1 (the X of column 0, the O of column 1)
    return GridDiagram(n=3, o_rows=(0, 1, 2), x_rows=(1, 2, 0), name="switch3")


@pytest.fixture()
def knot4() -> GridDiagram:
    return GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(2, 0, 3, 1), name="knot4")


# ---------------------------------------------------------------------------
# commutation
# ---------------------------------------------------------------------------


class TestSuperimpose:
    def test_bigon_rows(self, unlink2):
        from gridhom.maps.superimposed import superimpose

        sigma = superimpose(unlink2, 2)
        assert (sigma.start, sigma.end) == (2, 3)
        assert sigma.G_prime.o_rows == (0, 2, 1, 3)
        assert sigma.variables() == (0, 2, 1, 3)

    def test_interleaved_columns_have_no_bigon(self):
        from gridhom.grid.library import builtin
        from gridhom.maps.superimposed import superimpose
        from gridhom.shared.errors import BigonConditionViolated

        with pytest.raises(BigonConditionViolated):
            superimpose(builtin("trefoil").diagram, 1)

    def test_bad_index(self, unlink2):
        from gridhom.maps.superimposed import superimpose
        from gridhom.shared.errors import BadLocation

        with pytest.raises(BadLocation):
            superimpose(unlink2, 0)

    def test_closest_point_drops_maslov_by_the_triangle(self, unlink2):
        from gridhom.maps.superimposed import closest_point, superimpose, triangle_violations

        sigma = superimpose(unlink2, 2)
        assert closest_point(sigma, (3, 2, 1, 0)) == (3, 2, 1, 0)
        assert triangle_violations(sigma) == []

    def test_commutation_check(self, unlink2):
        from gridhom.maps.superimposed import commutation_check

        report = commutation_check(unlink2, 2)
        assert report.checked > 0
        assert report.ok, report.violations[:3]
        assert report.metadata["rows"] == "false"

    def test_knot_commutation_check(self, knot4):
        from gridhom.grid.diagram import component_count
        from gridhom.maps.superimposed import commutation_check

        assert component_count(knot4) == 1
        report = commutation_check(knot4, 2)
        assert report.metadata["relation"] == "disjoint"
        assert report.checked == 48
        assert report.ok, report.violations[:3]

    def test_switch_superimposes(self, switch3):
        from gridhom.maps.superimposed import superimpose, triangle_violations

        sigma = superimpose(switch3, 1)
        assert sigma.is_switch
        assert sigma.shared == 1
        assert (sigma.start, sigma.end) == (1, 2)
        assert sigma.G_prime.o_rows == (1, 0, 2)
        assert sigma.G_prime.x_rows == (2, 1, 0)
        assert sigma.a == Fraction(3, 2)
        assert sigma.in_first(sigma.marking_height(1, 1))
        assert not sigma.in_first(sigma.marking_height(0, 1))
        assert triangle_violations(sigma) == []

    def test_switch_check(self, switch3):
        from gridhom.maps.superimposed import commutation_check

        report = commutation_check(switch3, 1)
        assert report.metadata["relation"] == "shared_vertex"
        assert report.ok, report.violations[:3]


# ---------------------------------------------------------------------------
# stabilization
# ---------------------------------------------------------------------------


class TestStabilization:
    def test_recovers_the_stabilized_column(self):
        from gridhom.grid.library import builtin
        from gridhom.grid.moves import stabilize_xsw
        from gridhom.maps.stabilization import stabilization_of

        trefoil = builtin("trefoil").diagram
        G_prime = stabilize_xsw(trefoil, 2)
        st = stabilization_of(trefoil, G_prime)
        assert stabilize_xsw(trefoil, st.column).x_rows == G_prime.x_rows
        assert st.row == trefoil.x_rows[st.column]

    def test_unrelated_pair(self, unknot2, unlink2):
        from gridhom.maps.stabilization import stabilization_of
        from gridhom.shared.errors import NotAStabilizationPair

        with pytest.raises(NotAStabilizationPair):
            stabilization_of(unknot2, unlink2)

    def test_cone_check(self, unknot2):
        from gridhom.grid.moves import stabilize_xsw
        from gridhom.maps.stabilization import stabilization_cone_check

        report = stabilization_cone_check(unknot2, stabilize_xsw(unknot2, 0))
        assert report.checked == 6
        assert report.ok, report.violations[:3]


# ---------------------------------------------------------------------------
# skein maps
# ---------------------------------------------------------------------------


class TestSkeinMaps:
    def test_markings(self, quadruple):
        from gridhom.maps.skein import skein_markings

        markings = skein_markings(quadruple)
        assert markings.y1 == (0, 1)
        assert markings.y2 == (1, 0)
        assert len(markings.rest) == 3

    def test_mismatched_quadruple(self, quadruple):
        from gridhom.maps.skein import skein_markings
        from gridhom.shared.errors import QuadrupleGeometryInvalid

        with pytest.raises(QuadrupleGeometryInvalid):
            skein_markings(replace(quadruple, zero_prime=quadruple.zero))

    def test_phi_is_a_chain_map(self, quadruple):
        from gridhom.complex.polynomial import Ring
        from gridhom.maps.domains import degree_violations
        from gridhom.maps.skein import PHI_DEGREE, phi_map, skein_complexes

        plus, zero, zero_prime, minus = skein_complexes(quadruple, ring=Ring.MOD2)
        phi = phi_map(quadruple, plus, zero_prime, zero, minus)
        assert phi.degree == PHI_DEGREE
        assert not phi.chain_violations()
        assert not degree_violations(phi)

    def test_phi_is_a_chain_map_over_z(self, quadruple):
        from gridhom.maps.skein import skein_maps

        maps = skein_maps(quadruple)
        assert maps.phi.source is maps.zero_prime
        assert maps.phi.target is maps.zero
        assert not maps.phi.chain_violations()
        assert any(c == -1 for row in maps.phi.terms for _, c, _ in row)

    def test_h_y_is_zero_on_states_through_c(self, quadruple):
        from gridhom.maps.skein import skein_maps

        maps = skein_maps(quadruple)
        i, j = quadruple.geometry.column, quadruple.geometry.row
        for which in ("y1", "y2"):
            h = maps.h[which]
            assert all(not h.terms[k] for k, x in enumerate(maps.zero_prime.labels) if x[i] == j)
        assert any(maps.h["y1"].terms) or any(maps.h["y2"].terms)

    def test_identities_hold(self, quadruple):
        from gridhom.maps.skein import SUITE, skein_maps_suite

        maps, report = skein_maps_suite(quadruple)
        assert report.suite == SUITE
        assert report.checked == 120
        assert report.ok, report.violations[:3]
        assert set(maps.h) == {"x2", "y1", "y2", "x2_y1", "x2_y2"}


# ---------------------------------------------------------------------------
# exact triangle
# ---------------------------------------------------------------------------


class TestExactTriangle:
    def test_sizes(self, quadruple):
        from gridhom.maps.skein import exact_triangle

        triangle = exact_triangle(quadruple)
        assert len(triangle.cone) == 240
        assert len(triangle.right) == 120
        assert len(triangle.left) == 120
        assert triangle.cone.w_power == 4

    def test_maps_are_chain_maps(self, quadruple):
        from gridhom.maps.skein import exact_triangle

        triangle = exact_triangle(quadruple)
        assert not triangle.inclusion.chain_violations()
        assert not triangle.projection.chain_violations()
        assert not triangle.connecting.chain_violations()

    def test_restrict_keeps_the_chosen_generators(self, unknot2):
        from gridhom.complex.freecomplex import grid_complex
        from gridhom.maps.skein import restrict

        C = grid_complex(unknot2)
        piece = restrict(C, [1], "top", 0)
        assert piece.labels == [(1, 0)]
        assert piece.terms == [[]]

    def test_shift_mismatches(self):
        from gridhom.maps.skein import shift_mismatches

        reference = {(0, 0): 1, (-1, -2): 2}
        shifted = {(m + 1, a2 - 2): v for (m, a2), v in reference.items()}
        cells = [(m, a2) for m in range(-4, 4) for a2 in range(-6, 4)]
        dim = lambda m, a2: shifted.get((m, a2), 0)  # noqa: E731
        ref = lambda m, a2: reference.get((m, a2), 0)  # noqa: E731
        assert shift_mismatches(dim, ref, cells, (1, -2)) == []
        assert shift_mismatches(dim, ref, cells, (0, 0)) == [(-1, -2), (0, -4), (0, 0), (1, -2)]

    def test_tensoring_with_j(self):
        from gridhom.maps.skein import J_DIMS, _tensor_j

        value = _tensor_j(lambda m, a2: 1 if (m, a2) == (0, 0) else 0)
        assert {cell: value(*cell) for cell in J_DIMS} == J_DIMS
        assert sum(J_DIMS.values()) == 4

    def test_exact_sequence(self, quadruple):
        from gridhom.maps.skein import LES_SUITE, skein_les_check

        report = skein_les_check(quadruple)
        assert report.suite == LES_SUITE
        assert report.ok, report.violations[:3]
        assert report.metadata["shift_right"] == "(-1, -1/2)"
        assert report.metadata["shift_left"] == "(0, -1/2)"
        assert report.metadata["shift_cone"] == "(0, 0)"
        assert "tensor" not in report.metadata


# ---------------------------------------------------------------------------
# long runs (pytest -m slow)
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_trefoil_stabilization_cone():
    from gridhom.grid.library import builtin
    from gridhom.grid.moves import stabilize_xsw
    from gridhom.maps.stabilization import stabilization_cone_check

    trefoil = builtin("trefoil").diagram
    report = stabilization_cone_check(trefoil, stabilize_xsw(trefoil, 2))
    assert report.checked > 0
    assert report.ok, report.violations[:3]
    assert len(report.tables) == 3
