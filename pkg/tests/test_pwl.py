"""Exact piecewise-linear maps: catalog shapes, validation, diagonal geometry,
and the orbit linearization that the pattern engine is built on."""

import random
from fractions import Fraction

import pytest

from patlab import (
    OutOfDomain,
    PwlMap,
    PwlPiece,
    ResourceLimit,
    ValidationError,
    alt_sawtooth,
    ascent_components,
    catalog,
    descent_components,
    diagonal_region,
    orbit_linearization,
    refined_piece_count,
    sawtooth,
    tent,
)

F = Fraction


class TestCatalog:
    def test_tent_values(self):
        m = tent()
        assert m(F(0)) == 0
        assert m(F(1, 4)) == F(1, 2)
        assert m(F(1, 2)) == 1
        assert m(F(3, 4)) == F(1, 2)
        assert m(F(1)) == 0

    def test_sawtooth_wraps_to_zero_at_one(self):
        for n in (2, 3, 5):
            m = sawtooth(n)
            assert m(F(1)) == 0
            # interior breakpoints belong to the ramp on their right
            for j in range(1, n):
                assert m(F(j, n)) == 0

    def test_sawtooth_slope(self):
        m = sawtooth(3)
        assert m(F(1, 6)) == F(1, 2)
        assert m(F(1, 2)) == F(1, 2)
        assert m(F(5, 6)) == F(1, 2)

    def test_alt_sawtooth_matches_folded_formula(self):
        """alt_sawtooth(N) must equal the tent map applied to (Nx/2) mod 1."""
        t = tent()
        for n in (2, 3, 4, 5, 9):
            m = alt_sawtooth(n)
            rng = random.Random(n)
            for _ in range(50):
                x = F(rng.randint(0, 10**6), 10**6)
                folded = (n * x / 2) % 1
                assert m(x) == t(folded), (n, x)

    def test_alt_sawtooth_endpoint(self):
        assert alt_sawtooth(3)(F(1)) == 1  # odd ramp count ends rising
        assert alt_sawtooth(4)(F(1)) == 0

    def test_alt_sawtooth_continuous(self):
        for n in (3, 4, 9):
            m = alt_sawtooth(n)
            for j in range(1, n):
                x = F(j, n)
                left = [p for p in m.pieces if p.hi == x]
                right = [p for p in m.pieces if p.lo == x]
                assert left and right
                assert left[0].value_at(x) == right[0].value_at(x)

    def test_catalog_dispatch(self):
        assert catalog("tent") == tent()
        assert catalog("sawtooth", 3) == sawtooth(3)
        assert catalog("alt_sawtooth", 5) == alt_sawtooth(5)


class TestValidation:
    def test_gap(self):
        with pytest.raises(ValidationError, match="gap"):
            PwlMap(
                (
                    PwlPiece(0, F(1, 4), True, False, 2, 0),
                    PwlPiece(F(1, 2), 1, True, True, -1, 1),
                )
            )

    def test_overlap(self):
        with pytest.raises(ValidationError, match="overlap"):
            PwlMap(
                (
                    PwlPiece(0, F(2, 3), True, True, 1, 0),
                    PwlPiece(F(1, 3), 1, True, True, -1, 1),
                )
            )

    def test_image_escape(self):
        with pytest.raises(ValidationError, match="escape"):
            PwlPiece(0, 1, True, True, 2, 0)

    def test_zero_slope_rejected(self):
        with pytest.raises(ValidationError):
            PwlPiece(0, 1, True, True, 0, F(1, 2))

    def test_domain_must_start_at_zero(self):
        with pytest.raises(ValidationError):
            PwlMap((PwlPiece(F(1, 4), 1, True, True, 1, 0),))

    def test_right_end_must_be_owned(self):
        with pytest.raises(ValidationError):
            PwlMap((PwlPiece(0, 1, True, False, 1, 0),))

    def test_piece_order_irrelevant(self):
        a = PwlPiece(0, F(1, 2), True, False, 2, 0)
        b = PwlPiece(F(1, 2), 1, True, True, -2, 2)
        assert PwlMap((a, b)) == PwlMap((b, a)) == tent()

    def test_eval_outside_domain(self):
        with pytest.raises(OutOfDomain):
            tent()(F(3, 2))


class TestDiagonalGeometry:
    def test_tent_descent_region(self):
        (iv,) = diagonal_region(tent(), "below")
        assert (iv.lo, iv.hi) == (F(2, 3), F(1))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_sawtooth_descent_count(self, n):
        assert descent_components(sawtooth(n)) == n - 1

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_alt_sawtooth_descent_count(self, n):
        assert descent_components(alt_sawtooth(n)) == (n - 1) // 2

    def test_ascent_counts(self):
        assert ascent_components(tent()) == 1
        assert ascent_components(sawtooth(2)) == 1

    def test_refined_counts(self):
        assert refined_piece_count(tent(), "below") == 1
        assert refined_piece_count(sawtooth(2), "below") == 1

    def test_refined_counts_alt_sawtooth(self):
        """Rising ramps of the alternating sawtooth start at height 0, which is
        strictly below the diagonal everywhere but the origin, so interior
        rising ramps qualify alongside the falling ones."""
        assert refined_piece_count(alt_sawtooth(9), "below") == 8
        assert refined_piece_count(alt_sawtooth(3), "below") == 2


class TestOrbitLinearization:
    def test_tent_depth_three_breakpoints(self):
        lin = orbit_linearization(tent(), 3)
        interior = sorted({c.iv.lo for c in lin.cells} - {F(0)})
        assert interior == [F(1, 4), F(1, 2), F(3, 4)]

    def test_degenerate_endpoint_cell(self):
        # the {1} point piece of the sawtooth survives as its own cell
        lin = orbit_linearization(sawtooth(2), 2)
        assert len(lin.cells) == 3
        assert any(c.iv.is_point for c in lin.cells)

    def test_forms_match_iteration(self):
        """Stored affine forms must reproduce honest iterated evaluation."""
        rng = random.Random(5)
        for m in (tent(), sawtooth(3), alt_sawtooth(5)):
            lin = orbit_linearization(m, 5)
            for cell in lin.cells:
                xs = []
                if cell.iv.is_point:
                    xs = [cell.iv.lo]
                else:
                    span = cell.iv.hi - cell.iv.lo
                    xs = [
                        cell.iv.lo + span * F(rng.randint(1, 99), 100)
                        for _ in range(3)
                    ]
                for x in xs:
                    vals = cell.values_at(x)
                    y = x
                    for v in vals:
                        assert v == y
                        y = m(y)

    def test_cells_partition_domain(self):
        for m in (tent(), sawtooth(2), alt_sawtooth(3)):
            for horizon in (1, 2, 4):
                cells = orbit_linearization(m, horizon).cells
                assert cells[0].iv.lo == 0 and cells[0].iv.lo_closed
                assert cells[-1].iv.hi == 1 and cells[-1].iv.hi_closed
                for left, right in zip(cells, cells[1:]):
                    assert left.iv.hi == right.iv.lo
                    assert left.iv.hi_closed != right.iv.lo_closed

    def test_cell_budget(self):
        with pytest.raises(ResourceLimit):
            orbit_linearization(sawtooth(4), 8, cell_budget=100)
