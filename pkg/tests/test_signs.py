"""Tests for the spin extension and rectangle sign assignments."""

import pytest

from gridhom.grid.diagram import GridDiagram

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def staircase3() -> GridDiagram:
    return GridDiagram(n=3, o_rows=(0, 1, 2), x_rows=(1, 2, 0), name="unknot3")


# ---------------------------------------------------------------------------
# spin extension
# ---------------------------------------------------------------------------


class TestSpin:
    def test_transposition_squares_to_z(self):
        from gridhom.signs.spin import spin_mul, transposition_lift

        t = transposition_lift(3, 0)
        square = spin_mul(t, t)
        assert square.perm == (0, 1, 2)
        assert square.z_parity == 1

    def test_distant_transpositions_anticommute(self):
        from gridhom.signs.spin import spin_mul, transposition_lift

        a, b = transposition_lift(4, 0), transposition_lift(4, 2)
        ab, ba = spin_mul(a, b), spin_mul(b, a)
        assert ab.perm == ba.perm == (1, 0, 3, 2)
        assert ab.z_parity != ba.z_parity

    def test_sizes_must_agree(self):
        from gridhom.signs.spin import spin_mul, transposition_lift
        from gridhom.shared.errors import SizeMismatch

        with pytest.raises(SizeMismatch):
            spin_mul(transposition_lift(3, 0), transposition_lift(4, 0))

    def test_descent_word_rebuilds_the_permutation(self):
        from gridhom.signs.spin import descent_word

        perm = (2, 0, 3, 1)
        current = list(range(4))
        for a in reversed(descent_word(perm)):
            i, j = current.index(a), current.index(a + 1)
            current[i], current[j] = current[j], current[i]
        assert tuple(current) == perm


# ---------------------------------------------------------------------------
# sign assignments
# ---------------------------------------------------------------------------


class TestSignAssignment:
    def test_axioms_hold_exhaustively(self, staircase3):
        from gridhom.signs.verify import verify_sign_axioms

        report = verify_sign_axioms(staircase3, mode="exhaustive")
        assert report.checked > 0
        assert report.ok, report.violations[:3]

    def test_gauged_assignment_still_satisfies_the_axioms(self, staircase3):
        from gridhom.signs.assignment import GaugedSignAssignment, SignAssignment, random_gauge
        from gridhom.signs.verify import verify_sign_axioms

        S = GaugedSignAssignment(SignAssignment(3), random_gauge(11))
        assert verify_sign_axioms(staircase3, S=S).ok

    def test_sampled_mode_is_seeded(self, staircase3):
        from gridhom.signs.verify import verify_sign_axioms

        first = verify_sign_axioms(staircase3, mode="sampled", samples=40, seed=3)
        second = verify_sign_axioms(staircase3, mode="sampled", samples=40, seed=3)
        assert first.checked == second.checked
        assert first.ok

    def test_sampled_mode_reaches_the_target(self):
        from gridhom.signs.verify import verify_sign_axioms

        G = GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(1, 2, 3, 0))
        report = verify_sign_axioms(G, mode="sampled", samples=60, seed=5)
        assert report.checked == 60
        assert report.metadata["target"] == "60"
        assert report.ok, report.violations[:3]

    def test_sampled_target_defaults_to_the_environment(self, monkeypatch):
        from gridhom.signs.verify import verify_sign_axioms

        monkeypatch.setenv("GRIDHOM_SIGN_SAMPLES", "30")
        G = GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(1, 2, 3, 0))
        report = verify_sign_axioms(G, mode="sampled", seed=2)
        assert report.metadata["target"] == "30"
        assert report.checked == 30

    def test_unconstrained_domains_are_reported(self, staircase3):
        from gridhom.signs.verify import verify_sign_axioms

        report = verify_sign_axioms(staircase3)
        skipped = {k: int(v) for k, v in report.metadata.items() if k.startswith("skipped.")}
        assert skipped.get("skipped.closed_not_thin_annulus", 0) > 0
        assert all(v > 0 for v in skipped.values())

    def test_constant_signs_break_the_vertical_annulus(self, staircase3):
        from gridhom.signs.assignment import TableSignAssignment
        from gridhom.signs.verify import verify_sign_axioms

        report = verify_sign_axioms(staircase3, S=TableSignAssignment(3, {}, default=1))
        assert not report.ok

    def test_table_without_default_refuses_unknown_rectangles(self):
        from gridhom.grid.rectangles import short_rectangle
        from gridhom.signs.assignment import TableSignAssignment
        from gridhom.shared.errors import MissingSign

        S = TableSignAssignment(3, {((0, 1, 2), 0, 1): -1})
        assert S(short_rectangle((0, 1, 2), 0, 1)) == -1
        with pytest.raises(MissingSign):
            S(short_rectangle((0, 1, 2), 1, 2))

    def test_solved_assignment(self, staircase3):
        from gridhom.signs.assignment import solve_sign_assignment
        from gridhom.signs.verify import verify_sign_axioms

        S = solve_sign_assignment(3)
        assert verify_sign_axioms(staircase3, S=S).ok

    def test_solver_refuses_large_grids(self):
        from gridhom.signs.assignment import solve_sign_assignment
        from gridhom.shared.errors import SizeMismatch

        with pytest.raises(SizeMismatch):
            solve_sign_assignment(4)

    def test_only_rectangles_are_signed(self):
        from dataclasses import replace

        from gridhom.grid.rectangles import PENTAGON, short_rectangle
        from gridhom.signs.assignment import SignAssignment
        from gridhom.shared.errors import NotARectangle

        r = replace(short_rectangle((0, 1, 2), 0, 1), kind=PENTAGON)
        with pytest.raises(NotARectangle):
            SignAssignment(3)(r)

    def test_wrong_size(self):
        from gridhom.grid.rectangles import short_rectangle
        from gridhom.signs.assignment import SignAssignment
        from gridhom.shared.errors import SizeMismatch

        with pytest.raises(SizeMismatch):
            SignAssignment(4)(short_rectangle((0, 1, 2), 0, 1))

    def test_sign_of_checks_the_endpoints(self):
        from gridhom.grid.rectangles import short_rectangle
        from gridhom.signs.assignment import SignAssignment, sign_of
        from gridhom.shared.errors import NotARectangle

        r = short_rectangle((0, 1, 2), 0, 1)
        S = SignAssignment(3)
        assert sign_of(r, (0, 1, 2), (1, 0, 2), S) in (1, -1)
        with pytest.raises(NotARectangle):
            sign_of(r, (0, 1, 2), (0, 2, 1), S)


# ---------------------------------------------------------------------------
# long runs (pytest -m slow)
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_ten_thousand_sampled_domains_at_size_five():
    from gridhom.signs.verify import verify_sign_axioms

    G = GridDiagram(n=5, o_rows=(0, 1, 2, 3, 4), x_rows=(1, 2, 3, 4, 0))
    report = verify_sign_axioms(G, mode="sampled", samples=10_000, seed=0)
    assert report.checked == 10_000
    assert report.ok, report.violations[:3]
