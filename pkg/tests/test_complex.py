"""Tests for chain elements, differentials, free complexes and mapping cones."""

import pytest

from gridhom.grid.diagram import GridDiagram

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def unknot2() -> GridDiagram:
    return GridDiagram(n=2, o_rows=(0, 1), x_rows=(1, 0), name="unknot2")


@pytest.fixture()
def staircase3() -> GridDiagram:
    return GridDiagram(n=3, o_rows=(0, 1, 2), x_rows=(1, 2, 0), name="unknot3")


def _identity(complex_):
    from gridhom.complex.freecomplex import FreeMap

    zero = complex_.zero_exps()
    return FreeMap(complex_, complex_, (0, 0), [[(i, 1, zero)] for i in range(len(complex_))], name="id")


# ---------------------------------------------------------------------------
# variants
# ---------------------------------------------------------------------------


class TestComplexVariant:
    def test_parses_aliases(self):
        from gridhom.complex.variants import ComplexVariant

        assert ComplexVariant.parse("gc-").kind == "GC_minus"
        assert ComplexVariant.parse("hat").hat
        assert ComplexVariant.parse("GCL").enhanced

    def test_parses_collapsed_forms(self):
        from gridhom.complex.variants import ComplexVariant

        assert ComplexVariant.parse("collapsed(gcl)").collapsed
        assert ComplexVariant.parse("cgc_minus") == ComplexVariant("GC_minus", collapsed=True)

    def test_unknown_variant(self):
        from gridhom.complex.variants import ComplexVariant
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            ComplexVariant.parse("gc_plus")

    def test_signed_variant_needs_signs(self):
        from gridhom.complex.variants import GC_MINUS, GCL_SIGNED_Z
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            GCL_SIGNED_Z.check(None)
        with pytest.raises(VariantMismatch):
            GC_MINUS.check(object())

    def test_hat_kills_the_last_variable(self, unknot2):
        from gridhom.complex.variants import GC_HAT

        assert GC_HAT.variable_map(unknot2) == (0, None)


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


class TestBoundary:
    def test_unknot2_differential(self, unknot2):
        from gridhom.complex.boundary import boundary
        from gridhom.complex.polynomial import ChainElement, Monomial, Ring
        from gridhom.complex.variants import GC_MINUS

        d = boundary(unknot2, GC_MINUS, ChainElement.generator(Ring.MOD2, (0, 1), 2))
        expected = ChainElement(Ring.MOD2, {((1, 0), Monomial((1, 0))): 1, ((1, 0), Monomial((0, 1))): 1})
        assert d == expected

    def test_collapse_merges_component_variables(self):
        from gridhom.complex.boundary import boundary
        from gridhom.complex.polynomial import ChainElement, Monomial, Ring
        from gridhom.complex.variants import GC_MINUS, ComplexVariant

        unlink2 = GridDiagram(n=4, o_rows=(0, 1, 2, 3), x_rows=(1, 0, 3, 2), name="unlink2")
        collapsed_variant = ComplexVariant.parse("cgc_minus")
        assert collapsed_variant.variable_map(unlink2) == (0, 1, 0, 3)

        xi = ChainElement.generator(Ring.MOD2, (0, 1, 2, 3), 4)
        plain = boundary(unlink2, GC_MINUS, xi)
        collapsed = boundary(unlink2, collapsed_variant, xi)
        # the rectangle through O_2 only
        assert plain.terms[((0, 1, 3, 2), Monomial((0, 0, 1, 0)))] == 1
        assert collapsed.terms[((0, 1, 3, 2), Monomial((1, 0, 0, 0)))] == 1
        assert len(collapsed) == len(plain)

    def test_collapsed_knot_differential_is_gc_minus(self, unknot2):
        from gridhom.complex.boundary import boundary
        from gridhom.complex.polynomial import ChainElement, Ring
        from gridhom.complex.variants import GC_MINUS, ComplexVariant

        xi = ChainElement.generator(Ring.MOD2, (0, 1), 2)
        assert boundary(unknot2, ComplexVariant.parse("cgc_minus"), xi) == boundary(unknot2, GC_MINUS, xi)

    def test_x_marking_of(self, unknot2):
        from gridhom.complex.boundary import x_marking_of
        from gridhom.shared.errors import BadMarkingIndex

        assert x_marking_of(unknot2, 0) == 1
        with pytest.raises(BadMarkingIndex):
            x_marking_of(unknot2, 2)

    def test_d1_is_mod2_only(self, unknot2):
        from gridhom.complex.boundary import d1_operator
        from gridhom.complex.polynomial import ChainElement, Ring
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            d1_operator(unknot2, ChainElement.generator(Ring.INTEGERS, (0, 1), 2))


class TestIdentities:
    @pytest.mark.parametrize("variant", ["gc_minus", "gc_hat", "gcl", "collapsed(gc_minus)"])
    def test_d_squared_vanishes(self, staircase3, variant):
        from gridhom.complex.variants import ComplexVariant
        from gridhom.complex.verify import verify_identities

        report = verify_identities(staircase3, "d_squared", ComplexVariant.parse(variant))
        assert report.checked == 6
        assert report.ok, report.violations[:3]

    def test_d_squared_with_signs(self, staircase3):
        from gridhom.complex.variants import GCL_SIGNED_Z
        from gridhom.complex.verify import verify_identities
        from gridhom.signs.assignment import SignAssignment

        report = verify_identities(staircase3, "d_squared", GCL_SIGNED_Z, S=SignAssignment(3))
        assert report.ok, report.violations[:3]

    def test_homotopy_identity(self, unknot2):
        from gridhom.complex.variants import GC_MINUS
        from gridhom.complex.verify import verify_identities

        assert verify_identities(unknot2, "homotopy", GC_MINUS).ok

    def test_d1_relations(self, staircase3):
        from gridhom.complex.variants import GC_MINUS
        from gridhom.complex.verify import verify_identities

        assert verify_identities(staircase3, "d1_relations", GC_MINUS).ok

    def test_unknown_suite(self, unknot2):
        from gridhom.complex.variants import GC_MINUS
        from gridhom.complex.verify import verify_identities

        with pytest.raises(ValueError):
            verify_identities(unknot2, "d_cubed", GC_MINUS)

    def test_sampling_is_seeded(self, staircase3):
        from gridhom.complex.verify import sample_states

        first = list(sample_states(staircase3, exhaustive=False, samples=4, seed=5))
        second = list(sample_states(staircase3, exhaustive=False, samples=4, seed=5))
        assert first == second
        assert len(set(first)) == 4


# ---------------------------------------------------------------------------
# free complexes and cones
# ---------------------------------------------------------------------------


class TestFreeComplex:
    def test_collapsed_grid_complex(self, unknot2):
        from gridhom.complex.freecomplex import grid_complex

        C = grid_complex(unknot2)
        assert len(C) == 2
        assert C.w_power == 1
        assert C.maslov[C.index[(1, 0)]] == 0
        assert C.alex2[C.index[(0, 1)]] == -2
        assert not C.d_squared_violations()
        assert not C.degree_violations()

    def test_integral_complex_needs_signs(self, unknot2):
        from gridhom.complex.freecomplex import grid_complex
        from gridhom.complex.polynomial import Ring
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            grid_complex(unknot2, ring=Ring.INTEGERS)

    def test_piece_needs_v(self, unknot2):
        from gridhom.complex.freecomplex import grid_complex
        from gridhom.shared.errors import VariantMismatch

        with pytest.raises(VariantMismatch):
            grid_complex(unknot2).piece(0)

    def test_cone_of_the_identity_is_acyclic(self, staircase3):
        from gridhom.complex.freecomplex import MappingCone, grid_complex
        from gridhom.homology.engine import HomologyEngine

        C = grid_complex(staircase3)
        identity = _identity(C)
        assert not identity.chain_violations()
        cone = MappingCone(identity)
        assert len(cone.complex) == 12
        assert not cone.complex.d_squared_violations()
        assert HomologyEngine(cone.complex).dims(collapsed=True) == {}

    def test_cone_inclusion_and_projection(self, unknot2):
        from gridhom.complex.freecomplex import MappingCone, grid_complex

        cone = MappingCone(_identity(grid_complex(unknot2)))
        assert not cone.inclusion().chain_violations()
        assert not cone.projection().chain_violations(sign=-1)
        assert cone.complex.labels[0] == ("source", (0, 1))

    def test_compose_requires_matching_ends(self, unknot2):
        from gridhom.complex.freecomplex import compose_maps, grid_complex
        from gridhom.shared.errors import SizeMismatch

        first = _identity(grid_complex(unknot2))
        second = _identity(grid_complex(unknot2))
        with pytest.raises(SizeMismatch):
            compose_maps(first, second)
        assert compose_maps(first, first).degree == (0, 0)
