"""Tests for grid diagrams: text format, gradings, moves, rectangles, library and skein quadruples."""

import numpy as np
import pytest

from gridhom.grid.diagram import GridDiagram, parse_diagram

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

SAMPLE_UNKNOT2_TEXT = "n=2\nO=0,1\nX=1,0\nname=unknot2\n"
SAMPLE_TREFOIL = {"n": 5, "o_rows": [4, 3, 2, 1, 0], "x_rows": [1, 0, 4, 3, 2], "name": "trefoil"}
SAMPLE_STABILIZED_UNKNOT = {"n": 3, "o_rows": [0, 2, 1], "x_rows": [2, 1, 0]}


@pytest.fixture()
def unknot2() -> GridDiagram:
    return parse_diagram(SAMPLE_UNKNOT2_TEXT)


@pytest.fixture()
def trefoil() -> GridDiagram:
    return parse_diagram(SAMPLE_TREFOIL)


# ---------------------------------------------------------------------------
# parse / serialize
# ---------------------------------------------------------------------------


class TestParseDiagram:
    def test_parses_text_format(self, unknot2):
        assert unknot2.n == 2
        assert unknot2.o_rows == (0, 1)
        assert unknot2.x_rows == (1, 0)
        assert unknot2.name == "unknot2"

    def test_parses_document(self, trefoil):
        assert trefoil.x_rows == (1, 0, 4, 3, 2)

    def test_ignores_comments_and_blank_lines(self):
        G = parse_diagram("# a comment\n\nn=1\nO=0\nX=0\n")
        assert G.n == 1

    def test_rejects_non_permutation(self):
        from gridhom.shared.errors import NotAPermutation

        with pytest.raises(NotAPermutation):
            parse_diagram("n=3\nO=0,0,1\nX=1,2,0\n")

    def test_rejects_marking_collision(self):
        from gridhom.shared.errors import MarkingCollision

        with pytest.raises(MarkingCollision):
            parse_diagram("n=2\nO=0,1\nX=0,1\n")

    def test_rejects_size_mismatch(self):
        from gridhom.shared.errors import SizeMismatch

        with pytest.raises(SizeMismatch):
            parse_diagram("n=3\nO=0,1\nX=1,0\n")

    def test_rejects_missing_fields(self):
        from gridhom.shared.errors import MalformedDiagram

        with pytest.raises(MalformedDiagram):
            parse_diagram("n=2\nO=0,1\n")

    def test_rejects_bad_rows(self):
        from gridhom.shared.errors import MalformedDiagram

        with pytest.raises(MalformedDiagram):
            parse_diagram("n=2\nO=0,a\nX=1,0\n")

    def test_round_trip_for_every_builtin(self):
        from gridhom.grid.diagram import serialize_diagram
        from gridhom.grid.library import library

        for entry in library().values():
            assert parse_diagram(serialize_diagram(entry.diagram)) == entry.diagram

    def test_transpose_is_an_involution(self, trefoil):
        from gridhom.grid.diagram import transpose

        assert transpose(transpose(trefoil)).o_rows == trefoil.o_rows
        assert transpose(transpose(trefoil)).x_rows == trefoil.x_rows


# ---------------------------------------------------------------------------
# components and gradings
# ---------------------------------------------------------------------------


class TestComponents:
    def test_knots_have_one_component(self, unknot2, trefoil):
        from gridhom.grid.diagram import component_count

        assert component_count(unknot2) == 1
        assert component_count(trefoil) == 1

    def test_hopf_link_has_two(self):
        from gridhom.grid.diagram import link_components

        hopf = GridDiagram(n=4, o_rows=(1, 2, 3, 0), x_rows=(3, 0, 1, 2))
        assert link_components(hopf) == ((0, 2), (1, 3))


class TestGradings:
    def test_unknot2_states(self, unknot2):
        from gridhom.grid.states import grading, grading_pair

        assert grading_pair(unknot2, (1, 0)) == (0, 0)
        assert grading_pair(unknot2, (0, 1)) == (-1, -2)
        assert grading(unknot2, (0, 1)).alexander == -1

    def test_one_by_one_grid(self):
        from gridhom.grid.states import grading_pair

        G = GridDiagram(n=1, o_rows=(0,), x_rows=(0,))
        assert grading_pair(G, (0,)) == (0, 0)

    def test_half_integral_alexander_on_a_link(self):
        from gridhom.grid.states import enumerate_states, grading

        hopf = GridDiagram(n=4, o_rows=(1, 2, 3, 0), x_rows=(3, 0, 1, 2))
        alexanders = {grading(hopf, x).alexander for x in enumerate_states(hopf)}
        assert all((2 * a).denominator == 1 for a in alexanders)
        assert any(a.denominator == 2 for a in alexanders)

    def test_state_of_wrong_size(self, unknot2):
        from gridhom.grid.states import grading_pair
        from gridhom.shared.errors import SizeMismatch

        with pytest.raises(SizeMismatch):
            grading_pair(unknot2, (0, 1, 2))

    def test_enumerates_all_permutations(self, trefoil):
        from gridhom.grid.states import enumerate_states

        assert len(list(enumerate_states(trefoil))) == 120


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------


class TestMoves:
    def test_stabilizing_the_one_by_one_unknot(self):
        from gridhom.grid.moves import stabilize_xsw

        G = stabilize_xsw(GridDiagram(n=1, o_rows=(0,), x_rows=(0,)), 0)
        assert (G.o_rows, G.x_rows) == ((0, 1), (1, 0))

    def test_stabilize_then_destabilize(self, trefoil):
        from gridhom.grid.moves import destabilize_xsw, stabilize_xsw

        G = stabilize_xsw(trefoil, 2)
        assert G.n == 6
        back = destabilize_xsw(G, 2)
        assert (back.o_rows, back.x_rows) == (trefoil.o_rows, trefoil.x_rows)

    def test_stabilized_unknot2(self, unknot2):
        from gridhom.grid.moves import stabilize_xsw

        G = stabilize_xsw(unknot2, 0)
        assert list(G.o_rows) == SAMPLE_STABILIZED_UNKNOT["o_rows"]
        assert list(G.x_rows) == SAMPLE_STABILIZED_UNKNOT["x_rows"]

    def test_commutation_swaps_columns(self):
        from gridhom.grid.moves import apply_move

        unlink = GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(1, 0, 3, 2))
        G = apply_move(unlink, "commutation", 2)
        assert G.o_rows == (0, 2, 1, 3)
        assert G.x_rows == (1, 3, 0, 2)

    def test_commutation_refuses_interleaved_columns(self, trefoil):
        from gridhom.grid.moves import commute_columns
        from gridhom.shared.errors import IllegalMove

        with pytest.raises(IllegalMove):
            commute_columns(trefoil, 1)

    def test_unknown_move(self, trefoil):
        from gridhom.grid.moves import apply_move
        from gridhom.shared.errors import IllegalMove

        with pytest.raises(IllegalMove):
            apply_move(trefoil, "twist", 1)

    def test_bad_location(self, trefoil):
        from gridhom.grid.moves import stabilize_xsw
        from gridhom.shared.errors import BadLocation

        with pytest.raises(BadLocation):
            stabilize_xsw(trefoil, 9)

    def test_random_sequence_is_seeded_and_capped(self, trefoil):
        from gridhom.grid.moves import random_move_sequence

        first = random_move_sequence(trefoil, 6, np.random.default_rng(7), max_size=7)
        second = random_move_sequence(trefoil, 6, np.random.default_rng(7), max_size=7)
        assert [(m.kind, m.location) for m in first] == [(m.kind, m.location) for m in second]
        assert all(m.result.n <= 7 for m in first)


# ---------------------------------------------------------------------------
# rectangles
# ---------------------------------------------------------------------------


class TestRectangles:
    def test_two_rectangles_on_unknot2(self, unknot2):
        from gridhom.grid.rectangles import rectangles_from

        rects = rectangles_from(unknot2, (0, 1))
        assert len(rects) == 2
        assert {r.target for r in rects} == {(1, 0)}

    def test_long_rectangles_on_request(self, unknot2):
        from gridhom.grid.rectangles import rectangles_from

        assert len(rectangles_from(unknot2, (0, 1), include_long=True)) == 6

    def test_multiplicities_of_a_short_rectangle(self, unknot2):
        from gridhom.grid.rectangles import multiplicities, short_rectangle

        counts = multiplicities(unknot2, short_rectangle((0, 1), 0, 1))
        assert counts.o == (1, 0)
        assert counts.x == (0, 0)
        assert (counts.interior_points, counts.t) == (0, 0)

    def test_rectangles_between_non_adjacent_states(self, trefoil):
        from gridhom.grid.rectangles import rectangles_between

        assert rectangles_between(trefoil, (0, 1, 2, 3, 4), (1, 2, 0, 3, 4)) == []


# ---------------------------------------------------------------------------
# library
# ---------------------------------------------------------------------------


class TestLibrary:
    def test_lists_every_entry(self):
        from gridhom.grid.library import library

        names = set(library())
        assert {"unknot1", "unknot2", "trefoil", "mirror_trefoil", "figure_eight", "torus_2_5"} <= names
        assert {"hopf", "unlink2", "trefoil_skein"} <= names

    def test_builtin_lookup(self):
        from gridhom.grid.library import builtin

        entry = builtin("builtin:hopf")
        assert entry.kind == "link"
        assert entry.components == 2

    def test_unknown_builtin(self):
        from gridhom.grid.library import builtin
        from gridhom.shared.errors import LibraryError

        with pytest.raises(LibraryError):
            builtin("builtin:nope")

    def test_resolves_inline_text(self):
        from gridhom.grid.library import resolve_diagram

        G = resolve_diagram("n=2;O=0,1;X=1,0")
        assert G.x_rows == (1, 0)

    def test_resolves_a_file(self, tmp_path):
        from gridhom.grid.library import resolve_diagram

        path = tmp_path / "k.grid"
        path.write_text(SAMPLE_UNKNOT2_TEXT)
        assert resolve_diagram(str(path)).name == "unknot2"

    def test_stated_component_count_is_checked(self, tmp_path):
        from gridhom.grid.library import load_entry
        from gridhom.shared.errors import LibraryError

        path = tmp_path / "fake.grid"
        path.write_text("n=4\nO=0,1,2,3\nX=1,0,3,2\nkind=knot\ncomponents=1\n")
        with pytest.raises(LibraryError):
            load_entry(path)

    def test_regression_values_cover_the_knots(self):
        from gridhom.grid.library import library, regression_values

        values = regression_values()
        knots = {name for name, entry in library().items() if entry.kind == "knot"}
        assert knots == set(values["knots"])
        assert values["knots"]["torus_2_5"]["tau"] == 2


# ---------------------------------------------------------------------------
# skein quadruples
# ---------------------------------------------------------------------------


class TestSkeinQuadruple:
    def test_trefoil_quadruple(self, trefoil):
        from gridhom.grid.skein import skein_quadruple

        Q = skein_quadruple(trefoil, 1)
        assert Q.zero.x_rows == (0, 1, 4, 3, 2)
        assert Q.minus.o_rows == (3, 4, 2, 1, 0)
        assert Q.minus.x_rows == (0, 1, 4, 3, 2)
        assert Q.geometry.row == 1
        assert Q.geometry.plus_components == 1
        assert Q.geometry.zero_components == 2

    def test_marking_positions(self, trefoil):
        from gridhom.grid.skein import skein_quadruple

        g = skein_quadruple(trefoil, 1).geometry
        assert g.x1 == (1, 1)
        assert g.x2 == (0, 0)
        assert (g.y1, g.y2) == ((0, 1), (1, 0))
        assert g.o_columns == (3, 4, 0, 1)

    def test_not_a_crossing(self, unknot2):
        from gridhom.grid.skein import skein_quadruple
        from gridhom.shared.errors import NotACrossing

        with pytest.raises(NotACrossing):
            skein_quadruple(unknot2, 1)

    def test_bad_column(self, trefoil):
        from gridhom.grid.skein import skein_quadruple
        from gridhom.shared.errors import BadLocation

        with pytest.raises(BadLocation):
            skein_quadruple(trefoil, 0)
