"""Tests for per-bigrading homology, W-division, U-module structure and the derived invariants."""

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
def trefoil() -> GridDiagram:
    from gridhom.grid.library import builtin

    return builtin("trefoil").diagram


@pytest.fixture()
def mirror_trefoil() -> GridDiagram:
    from gridhom.grid.library import builtin

    return builtin("mirror_trefoil").diagram


# ---------------------------------------------------------------------------
# W-division
# ---------------------------------------------------------------------------


class TestDivideByW:
    def test_recovers_a_single_generator(self):
        from gridhom.homology.engine import divide_by_w

        collapsed = {(0, 0): 1, (-1, -2): 1}
        value = divide_by_w(lambda m, a2: collapsed.get((m, a2), 0), 1, a2_max=0, band_min=0)
        assert value(0, 0) == 1
        assert value(-1, -2) == 0

    def test_two_factors(self):
        from gridhom.homology.engine import divide_by_w

        # F(0,0) ⊗ W^2 = F(0,0) + 2 F(-1,-2) + F(-2,-4)
        collapsed = {(0, 0): 1, (-1, -2): 2, (-2, -4): 1}
        value = divide_by_w(lambda m, a2: collapsed.get((m, a2), 0), 2, a2_max=0, band_min=0)
        assert [value(0, 0), value(-1, -2), value(-2, -4)] == [1, 0, 0]

    def test_indivisible_input(self):
        from gridhom.homology.engine import divide_by_w
        from gridhom.shared.errors import WindowTooSmall

        value = divide_by_w(lambda m, a2: 1 if (m, a2) == (0, 0) else 0, 1, a2_max=0, band_min=0)
        with pytest.raises(WindowTooSmall):
            value(-1, -2)


# ---------------------------------------------------------------------------
# homology of the unknot
# ---------------------------------------------------------------------------


class TestUnknotHomology:
    def test_gh_minus_is_one_tower(self, unknot2):
        from gridhom.homology.compute import homology_at

        assert homology_at(unknot2, "gc_minus", (0, 0)) == 1
        assert homology_at(unknot2, "gc_minus", (-1, -1)) == 0
        assert homology_at(unknot2, "gc_minus", (-2, -1)) == 1

    def test_gh_hat(self, unknot2):
        from gridhom.homology.compute import homology_table

        table = homology_table(unknot2, "gc_hat", actions=False)
        assert table.as_dict() == {(0, Fraction(0)): 1}

    def test_ghl_has_v_multiples(self, unknot2):
        from gridhom.homology.compute import homology_at

        assert homology_at(unknot2, "gcl", (2, 0)) == 1

    def test_u_acts_injectively(self, unknot2):
        from gridhom.homology.compute import action_rank

        assert action_rank(unknot2, "gc_minus", "U", (0, 0)) == 1

    def test_single_variable_action_needs_gc_minus(self, unknot2):
        from gridhom.homology.compute import action_rank
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            action_rank(unknot2, "gcl", "U", (0, 0), variable=0)

    def test_slice_basis(self, unknot2):
        from gridhom.homology.compute import slice_basis

        graded = slice_basis(unknot2, "gc_minus", (-2, -1))
        assert graded.basis == [((1, 0), 1, 0)]

    def test_table_lists_actions(self, unknot2):
        from gridhom.homology.compute import homology_table

        table = homology_table(unknot2, "gcl")
        assert {row.which for row in table.actions} == {"U", "v"}
        assert table.rank_at(0, 0) == 1

    def test_decomposition(self, unknot2):
        from gridhom.homology.structure import decompose_over_U

        decomposition = decompose_over_U(unknot2)
        assert decomposition.tower == (0, Fraction(0))
        assert decomposition.torsion == []

    def test_invariants(self, unknot2):
        from gridhom.homology.structure import invariants

        report = invariants(unknot2)
        assert (report.tau, report.tau_plus, report.tau_plus_u, report.rho) == (0, 0, 0, 0)

    def test_decomposition_is_for_knots(self):
        from gridhom.homology.structure import decompose_over_U
        from gridhom.shared.errors import VariantMismatch

        hopf = GridDiagram(n=4, o_rows=(1, 2, 3, 0), x_rows=(3, 0, 1, 2))
        with pytest.raises(VariantMismatch):
            decompose_over_U(hopf)


class TestUnknotDerived:
    def test_spectral_sequence_collapses(self, unknot2):
        from gridhom.homology.spectral import spectral_pages

        pages = spectral_pages(unknot2, r_max=3)
        assert [page.r for page in pages] == [2, 3, "infinity"]
        assert pages[-1].collapsed_at == 2

    def test_del1_vanishes(self, unknot2):
        from gridhom.homology.del1 import del1_star

        report = del1_star(unknot2)
        assert report.identically_zero
        assert report.squares_to_zero

    def test_tower_generator_survives_u_powers(self, unknot2):
        from gridhom.complex.variants import GC_MINUS
        from gridhom.homology.compute import engine_for
        from gridhom.homology.del1 import _nonzero_class, _tower_generator

        engine = engine_for(unknot2, GC_MINUS)
        engine.compute()
        zeta = _tower_generator(engine, (0, 0), 2)
        assert zeta is not None
        assert _nonzero_class(engine, (-2, -2), engine.power_map("U", 1)(zeta))
        assert not _nonzero_class(engine, (0, 0), {})

    def test_universal_coefficients(self, unknot2):
        from gridhom.homology.coefficients import uct_check

        report = uct_check(unknot2)
        assert report.checked > 0
        assert report.ok


# ---------------------------------------------------------------------------
# GF(2) linear algebra
# ---------------------------------------------------------------------------


class TestGF2:
    def test_kernel_of_a_cycle(self):
        import numpy as np

        from gridhom.homology.linalg import gf2_kernel, gf2_rank

        rows = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.uint8)
        assert gf2_rank(rows) == 2
        assert gf2_kernel(rows).tolist() == [[1, 1, 1]]

    def test_kernel_of_an_empty_map(self):
        import numpy as np

        from gridhom.homology.linalg import gf2_kernel

        assert gf2_kernel(np.zeros((2, 0), dtype=np.uint8)).tolist() == [[1, 0], [0, 1]]
        assert gf2_kernel(np.zeros((0, 3), dtype=np.uint8)).shape == (0, 0)

    def test_solve(self):
        from gridhom.homology.linalg import gf2_solve

        x = gf2_solve([[1, 1, 0], [0, 1, 1]], [1, 0])
        assert x.tolist() == [1, 0, 0]
        assert gf2_solve([[1, 1], [1, 1]], [1, 0]) is None

    def test_basis_tracks_coordinates(self):
        from gridhom.homology.linalg import GF2Basis, gf2_vector

        basis = GF2Basis(3, tag_size=2)
        assert basis.add(gf2_vector(3, [0, 1]), gf2_vector(2, [0]))
        assert basis.add(gf2_vector(3, [1, 2]), gf2_vector(2, [1]))
        assert not basis.add(gf2_vector(3, [0, 2]))
        residue, tag = basis.reduce(gf2_vector(3, [0, 2]))
        assert not residue.any()
        assert tag.tolist() == [1, 1]
        assert not basis.contains(gf2_vector(3, [2]))
        assert [len(t) for t in basis.copy(tag_size=4).tags] == [4, 4]

    def test_from_rows_matches_incremental_insertion(self):
        import numpy as np

        from gridhom.homology.linalg import GF2Basis

        rows = np.array([[1, 1, 0, 1], [1, 1, 0, 1], [0, 0, 1, 1], [1, 1, 1, 0]], dtype=np.uint8)
        batch = GF2Basis.from_rows(rows)
        assert len(batch) == len(GF2Basis(4, rows)) == 2
        assert all(batch.contains(row) for row in rows)


# ---------------------------------------------------------------------------
# knots from the library
# ---------------------------------------------------------------------------


class TestKnots:
    def test_trefoil_hat_has_rank_three(self, trefoil):
        from gridhom.homology.compute import homology_table

        table = homology_table(trefoil, "gc_hat", actions=False)
        assert sum(row.rank for row in table.rows) == 3
        assert sorted(row.a for row in table.rows) == [-1, 0, 1]

    def test_hat_is_alexander_symmetric(self, trefoil):
        from gridhom.homology.compute import homology_table

        table = homology_table(trefoil, "gc_hat", actions=False)
        for row in table.rows:
            assert table.rank_at(row.m - 2 * int(row.a), -row.a) == row.rank

    def test_mirror_negates_both_gradings(self, trefoil, mirror_trefoil):
        from gridhom.homology.compute import homology_table

        ranks = homology_table(trefoil, "gc_hat", actions=False).as_dict()
        mirrored = homology_table(mirror_trefoil, "gc_hat", actions=False).as_dict()
        assert mirrored == {(-m, -a): rank for (m, a), rank in ranks.items()}

    def test_tau_changes_sign_under_mirroring(self, trefoil, mirror_trefoil):
        from gridhom.homology.structure import tau

        value = tau(trefoil)
        assert abs(value) == 1
        assert tau(mirror_trefoil) == -value

    def test_figure_eight_matches_stored_values(self):
        from gridhom.grid.library import builtin, regression_values
        from gridhom.homology.compute import homology_table

        stored = regression_values()["knots"]["figure_eight"]
        table = homology_table(builtin("figure_eight").diagram, "gc_hat", actions=False)
        assert table.as_dict() == {(row["m"], Fraction(row["a"])): row["rank"] for row in stored["gh_hat"]}

    def test_trefoil_spectral_sequence_collapses_at_e2(self, trefoil):
        from gridhom.homology.spectral import spectral_pages

        assert spectral_pages(trefoil, r_max=3)[-1].collapsed_at == 2

    def test_hat_survives_grid_moves(self, trefoil):
        import numpy as np

        from gridhom.grid.moves import random_move_sequence
        from gridhom.homology.compute import homology_table

        expected = homology_table(trefoil, "gc_hat", actions=False).as_dict()
        for applied in random_move_sequence(trefoil, 3, np.random.default_rng(0), max_size=6):
            assert homology_table(applied.result, "gc_hat", actions=False).as_dict() == expected, applied.kind


# ---------------------------------------------------------------------------
# long runs (pytest -m slow)
# ---------------------------------------------------------------------------


def _gh_minus_tensor_v(G: GridDiagram) -> tuple[dict, dict]:
    """GHL dims and GH⁻[v] dims over the GHL window."""
    from gridhom.homology.compute import homology_table

    ghl = homology_table(G, "gcl", actions=False)
    expected: dict[tuple[int, Fraction], int] = {}
    for (m, a), rank in homology_table(G, "gc_minus", actions=False).as_dict().items():
        shifted = m
        while shifted - 2 * a <= ghl.window.band_max:
            if ghl.window.contains(shifted, a):
                expected[(shifted, a)] = expected.get((shifted, a), 0) + rank
            shifted += 2
    return ghl.as_dict(), expected


def _on_common_window(table, other) -> dict:
    return {cell: rank for cell, rank in table.as_dict().items() if other.window.contains(*cell)}


@pytest.mark.slow
class TestLongRuns:
    def test_torus_2_5_invariants(self):
        from gridhom.grid.library import builtin
        from gridhom.homology.spectral import spectral_pages
        from gridhom.homology.structure import decompose_over_U, invariants

        G = builtin("torus_2_5").diagram
        report = invariants(G)
        assert (report.tau, report.tau_plus, report.tau_plus_u) == (2, 2, 2)
        assert decompose_over_U(G).tower == (-4, -2)
        assert spectral_pages(G, r_max=3)[-1].collapsed_at == 2

    @pytest.mark.parametrize("name", ["trefoil", "figure_eight", "torus_2_5"])
    def test_ghl_is_gh_minus_tensor_v(self, name):
        from gridhom.grid.library import builtin

        ghl, expected = _gh_minus_tensor_v(builtin(name).diagram)
        assert ghl == expected

    def test_invariants_survive_twenty_move_sequences(self, trefoil):
        import numpy as np

        from gridhom.grid.moves import random_move_sequence
        from gridhom.homology.compute import homology_table
        from gridhom.homology.structure import tau

        hat = homology_table(trefoil, "gc_hat", actions=False).as_dict()
        expected_tau = tau(trefoil)
        ghl = homology_table(trefoil, "gcl", actions=False)
        rng = np.random.default_rng(20)
        for _ in range(20):
            applied = random_move_sequence(trefoil, 6, rng, max_size=7)
            G = applied[-1].result if applied else trefoil
            kinds = [move.kind for move in applied]
            assert homology_table(G, "gc_hat", actions=False).as_dict() == hat, kinds
            assert tau(G) == expected_tau, kinds
            other = homology_table(G, "gcl", actions=False)
            assert _on_common_window(ghl, other) == _on_common_window(other, ghl), kinds
