"""Piecewise-linear self-maps of [0, 1] with exact rational arithmetic.

A map is a finite list of affine pieces whose intervals partition [0, 1];
every point is owned by exactly one piece, so evaluation is unambiguous
even at jump discontinuities.  The catalog builds the standard examples:
the tent map, the mod-one sawtooth with N ramps, and the alternating
sawtooth whose ramps flip slope sign from one to the next.

The sawtooth convention: ramps are half-open [lo, hi) and the endpoint
x = 1 sits in its own zero-length piece with value 0, matching the mod-1
definition.  Degenerate pieces are carried through every computation but
are never treated as monotone ramps.

orbit_linearization refines [0, 1] into cells on which the first
`horizon` iterates are all affine; it is the workhorse behind the exact
pattern engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import BadParameter, OutOfDomain, ResourceLimit, UnknownMap, ValidationError
from .intervals import Interval, clip_above, clip_below, intersect

DEFAULT_CELL_BUDGET = 1_000_000

# An affine form a*x + b, stored as (a, b).
Form = tuple[Fraction, Fraction]


def _frac(value) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BadParameter(f"not a rational value: {value!r}") from exc


@dataclass(frozen=True)
class PwlPiece:
    """One affine piece: x -> slope*x + intercept on its interval."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        for name in ("lo", "hi", "slope", "intercept"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.lo > self.hi:
            raise ValidationError(f"piece has lo > hi: {self.lo} > {self.hi}")
        if self.lo == self.hi:
            if not (self.lo_closed and self.hi_closed):
                raise ValidationError("zero-length piece must be closed on both sides")
        elif self.slope == 0:
            raise ValidationError("piece of positive length must have nonzero slope")
        for x in (self.lo, self.hi):
            v = self.slope * x + self.intercept
            if v < 0 or v > 1:
                raise ValidationError(
                    f"image escapes [0, 1]: piece maps {x} to {v}"
                )

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi, self.lo_closed, self.hi_closed)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def value_at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class PwlMap:
    """An ordered tuple of pieces partitioning [0, 1]."""

    pieces: tuple[PwlPiece, ...]

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=lambda p: (p.lo, not p.lo_closed, p.hi)))
        object.__setattr__(self, "pieces", pieces)
        if not pieces:
            raise ValidationError("a map needs at least one piece")
        first, last = pieces[0], pieces[-1]
        if first.lo != 0 or not first.lo_closed:
            raise ValidationError("gap: the domain must start closed at 0")
        if last.hi != 1 or not last.hi_closed:
            raise ValidationError("gap: the domain must end closed at 1")
        for left, right in zip(pieces, pieces[1:]):
            if left.hi < right.lo:
                raise ValidationError(f"gap between {left.hi} and {right.lo}")
            if left.hi > right.lo:
                raise ValidationError(f"overlap: pieces cross at {right.lo}")
            if left.hi_closed and right.lo_closed:
                raise ValidationError(f"overlap: both pieces own the point {left.hi}")
            if not left.hi_closed and not right.lo_closed:
                raise ValidationError(f"gap: no piece owns the point {left.hi}")

    def piece_at(self, x) -> PwlPiece:
        x = _frac(x)
        if x < 0 or x > 1:
            raise OutOfDomain(f"{x} is outside [0, 1]")
        for piece in self.pieces:
            if piece.interval.contains(x):
                return piece
        raise AssertionError(f"partition invariant broken at {x}")

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        return self.piece_at(x).value_at(x)

    def breakpoints(self) -> tuple[Fraction, ...]:
        """Interior boundaries between consecutive pieces."""
        return tuple(p.lo for p in self.pieces[1:])


# ---------------------------------------------------------------------------
# catalog


def tent() -> PwlMap:
    """The symmetric tent map: 2x up to 1/2, then 2 - 2x."""
    h = Fraction(1, 2)
    return PwlMap(
        (
            PwlPiece(Fraction(0), h, True, False, Fraction(2), Fraction(0)),
            PwlPiece(h, Fraction(1), True, True, Fraction(-2), Fraction(2)),
        )
    )


def sawtooth(ramp_count: int) -> PwlMap:
    """N*x mod 1 with N rising ramps; x = 1 maps to 0 in its own point piece."""
    n = int(ramp_count)
    if n < 2:
        raise BadParameter("sawtooth needs at least 2 ramps")
    pieces = [
        PwlPiece(Fraction(m, n), Fraction(m + 1, n), True, False, Fraction(n), Fraction(-m))
        for m in range(n)
    ]
    pieces.append(PwlPiece(Fraction(1), Fraction(1), True, True, Fraction(0), Fraction(0)))
    return PwlMap(tuple(pieces))


def alt_sawtooth(ramp_count: int) -> PwlMap:
    """N ramps of slope +-N, alternating sign and starting positive.

    Consecutive ramps meet continuously (rising ramps end at 1 where the
    next falling ramp starts, and vice versa at 0), so no extra endpoint
    piece is needed.
    """
    n = int(ramp_count)
    if n < 2:
        raise BadParameter("alt_sawtooth needs at least 2 ramps")
    pieces = []
    for m in range(n):
        lo, hi = Fraction(m, n), Fraction(m + 1, n)
        last = m == n - 1
        if m % 2 == 0:
            slope, intercept = Fraction(n), Fraction(-m)
        else:
            slope, intercept = Fraction(-n), Fraction(m + 1)
        pieces.append(PwlPiece(lo, hi, True, last, slope, intercept))
    return PwlMap(tuple(pieces))


def catalog(name: str, param: int | None = None) -> PwlMap:
    """Look up a catalog map by name; sawtooth variants take the ramp count."""
    if name == "tent":
        if param is not None:
            raise BadParameter("tent takes no parameter")
        return tent()
    if name == "sawtooth":
        if param is None:
            raise BadParameter("sawtooth needs a ramp count")
        return sawtooth(param)
    if name == "alt_sawtooth":
        if param is None:
            raise BadParameter("alt_sawtooth needs a ramp count")
        return alt_sawtooth(param)
    raise UnknownMap(f"no catalog map named {name!r}")


# ---------------------------------------------------------------------------
# where the graph sits below (or above) the diagonal


def _piece_region(piece: PwlPiece, orientation: str) -> Interval | None:
    """Subset of one piece where f(x) < x (below) or f(x) > x (above), strictly."""
    iv = piece.interval
    if piece.is_point:
        v = piece.value_at(iv.lo)
        hit = v < iv.lo if orientation == "below" else v > iv.lo
        return iv if hit else None
    a = piece.slope - 1
    c = piece.intercept
    if a == 0:
        hit = c < 0 if orientation == "below" else c > 0
        return iv if hit else None
    root = -c / a
    if orientation == "below":
        return clip_below(iv, root) if a > 0 else clip_above(iv, root)
    return clip_above(iv, root) if a > 0 else clip_below(iv, root)


def _check_orientation(orientation: str) -> None:
    if orientation not in ("below", "above"):
        raise BadParameter(f"orientation must be 'below' or 'above', got {orientation!r}")


def diagonal_region(m: PwlMap, orientation: str = "below") -> tuple[Interval, ...]:
    """Maximal intervals of {x : f(x) < x} (or > for 'above').

    The set is defined by the strict inequality, so a point where f meets
    the diagonal separates components even when the inequality holds on
    both sides of it.
    """
    _check_orientation(orientation)
    parts = [r for p in m.pieces if (r := _piece_region(p, orientation)) is not None]
    parts.sort(key=lambda r: (r.lo, not r.lo_closed))
    merged: list[Interval] = []
    for part in parts:
        if merged:
            prev = merged[-1]
            if part.lo == prev.hi and (prev.hi_closed or part.lo_closed):
                merged[-1] = Interval(prev.lo, part.hi, prev.lo_closed, part.hi_closed)
                continue
        merged.append(part)
    return tuple(merged)


def descent_components(m: PwlMap) -> int:
    """Number of maximal intervals on which the map is strictly below the diagonal."""
    return len(diagonal_region(m, "below"))


def ascent_components(m: PwlMap) -> int:
    """Number of maximal intervals on which the map is strictly above the diagonal."""
    return len(diagonal_region(m, "above"))


def refined_piece_count(m: PwlMap, orientation: str = "below") -> int:
    """Count monotone pieces that can carry an orbit across the diagonal.

    For orientation 'below' a piece qualifies when it is increasing and its
    affine extension at the left endpoint of its closure lands strictly
    below the diagonal, or when it is decreasing and meets f(x) < x
    somewhere on it.  'above' mirrors both conditions (right endpoint,
    f(x) > x).  Zero-length pieces are not monotone ramps and are skipped.
    """
    _check_orientation(orientation)
    count = 0
    for piece in m.pieces:
        if piece.is_point:
            continue
        if piece.slope > 0:
            if orientation == "below":
                endpoint = piece.lo
                if piece.value_at(endpoint) < endpoint:
                    count += 1
            else:
                endpoint = piece.hi
                if piece.value_at(endpoint) > endpoint:
                    count += 1
        else:
            if _piece_region(piece, orientation) is not None:
                count += 1
    return count


# ---------------------------------------------------------------------------
# orbit linearization


@dataclass(frozen=True)
class OrbitCell:
    """A cell on which the first len(forms) iterates are all affine."""

    iv: Interval
    forms: tuple[Form, ...]

    def values_at(self, x: Fraction) -> list[Fraction]:
        return [a * x + b for a, b in self.forms]


@dataclass(frozen=True)
class OrbitLinearization:
    horizon: int
    cells: tuple[OrbitCell, ...]


def _compose(piece: PwlPiece, form: Form) -> Form:
    a, b = form
    return (piece.slope * a, piece.slope * b + piece.intercept)


def _preimage(piece_iv: Interval, form: Form) -> Interval:
    a, b = form
    if a > 0:
        return Interval((piece_iv.lo - b) / a, (piece_iv.hi - b) / a,
                        piece_iv.lo_closed, piece_iv.hi_closed)
    return Interval((piece_iv.hi - b) / a, (piece_iv.lo - b) / a,
                    piece_iv.hi_closed, piece_iv.lo_closed)


def advance_cell(m: PwlMap, cell: OrbitCell) -> list[OrbitCell]:
    """Split a cell so the next iterate is affine on each part, and append it."""
    form = cell.forms[-1]
    a, _ = form
    if cell.iv.is_point:
        value = form[0] * cell.iv.lo + form[1]
        piece = m.piece_at(value)
        return [OrbitCell(cell.iv, cell.forms + (_compose(piece, form),))]
    if a == 0:
        raise AssertionError("constant form on a cell of positive length")
    out = []
    for piece in m.pieces:
        sub = intersect(cell.iv, _preimage(piece.interval, form))
        if sub is not None:
            out.append(OrbitCell(sub, cell.forms + (_compose(piece, form),)))
    return out


def orbit_linearization(
    m: PwlMap, horizon: int, cell_budget: int = DEFAULT_CELL_BUDGET
) -> OrbitLinearization:
    """Partition [0, 1] into cells where iterates 0..horizon-1 are affine."""
    if horizon < 1:
        raise BadParameter("horizon must be at least 1")
    identity: Form = (Fraction(1), Fraction(0))
    cells = [OrbitCell(Interval(Fraction(0), Fraction(1), True, True), (identity,))]
    for _ in range(horizon - 1):
        nxt: list[OrbitCell] = []
        for cell in cells:
            nxt.extend(advance_cell(m, cell))
            if len(nxt) > cell_budget:
                raise ResourceLimit(
                    f"orbit linearization exceeded the cell budget of {cell_budget}"
                )
        cells = nxt
    cells.sort(key=lambda c: (c.iv.lo, not c.iv.lo_closed, c.iv.hi))
    return OrbitLinearization(horizon, tuple(cells))
