"""Exact enumeration of the consecutive patterns realized by a PWL map.

The orbit pattern of x at length n is the rank word of
x, f(x), ..., f^{n-1}(x); it is undefined whenever two of those values
coincide.  A pattern is allowed when some point realizes it, forbidden
otherwise, and basic forbidden when it is forbidden while both of its
length-(n-1) windows are allowed.

Everything runs on the orbit linearization: within a cell all iterates
are affine, so the rank word is constant between consecutive crossing
abscissae of the iterate graphs, and the crossings themselves carry no
pattern at all (two orbit values are equal there).  Closed cell endpoints
are evaluated individually, so patterns realized at isolated points are
kept whenever the orbit values are pairwise distinct.

Basic forbidden sets are generated by gluing: every candidate at length n
is an allowed (n-1)-pattern extended by one final rank, which bounds the
candidate pool by n * |allowed(n-1)| instead of n!.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BadParameter, ResourceLimit
from .intervals import clip_above, clip_below
from .perms import PatternSet, Perm, all_perms, check_perm, reduce_values
from .pwl import DEFAULT_CELL_BUDGET, OrbitCell, PwlMap, advance_cell, orbit_linearization
from .intervals import Interval

DEFAULT_MAX_FORBIDDEN_N = 10

_allowed_cache: dict[tuple[PwlMap, int], PatternSet] = {}


def _point_pattern(cell: OrbitCell, x: Fraction, sink: set[Perm]) -> None:
    vals = cell.values_at(x)
    if len(set(vals)) == len(vals):
        sink.add(reduce_values(vals))


def _cell_patterns(cell: OrbitCell, sink: set[Perm]) -> None:
    iv = cell.iv
    if iv.is_point:
        _point_pattern(cell, iv.lo, sink)
        return
    forms = cell.forms
    if len(set(forms)) != len(forms):
        # two iterates agree everywhere on the cell: no point has a pattern
        return
    crossings: set[Fraction] = set()
    for i, (ai, bi) in enumerate(forms):
        for aj, bj in forms[i + 1 :]:
            if ai != aj:
                t = (bj - bi) / (ai - aj)
                if iv.lo < t < iv.hi:
                    crossings.add(t)
    marks = [iv.lo, *sorted(crossings), iv.hi]
    for left, right in zip(marks, marks[1:]):
        x = (left + right) / 2
        sink.add(reduce_values(cell.values_at(x)))
    if iv.lo_closed:
        _point_pattern(cell, iv.lo, sink)
    if iv.hi_closed:
        _point_pattern(cell, iv.hi, sink)


def exact_allowed(m: PwlMap, n: int, cell_budget: int = DEFAULT_CELL_BUDGET) -> PatternSet:
    """All length-n patterns realized by some orbit of the map."""
    if n < 1:
        raise BadParameter("n must be at least 1")
    key = (m, n)
    if cell_budget == DEFAULT_CELL_BUDGET and key in _allowed_cache:
        return _allowed_cache[key]
    lin = orbit_linearization(m, n, cell_budget)
    found: set[Perm] = set()
    for cell in lin.cells:
        _cell_patterns(cell, found)
    result = PatternSet.from_perms(n, found)
    if cell_budget == DEFAULT_CELL_BUDGET:
        _allowed_cache[key] = result
    return result


def exact_forbidden(
    m: PwlMap,
    n: int,
    cell_budget: int = DEFAULT_CELL_BUDGET,
    max_n: int = DEFAULT_MAX_FORBIDDEN_N,
) -> PatternSet:
    """Complement of exact_allowed within S_n (capped: the result has ~n! members)."""
    if n < 1:
        raise BadParameter("n must be at least 1")
    if n > max_n:
        raise ResourceLimit(
            f"forbidden-set enumeration is capped at n = {max_n}; raise max_n to override"
        )
    allowed = exact_allowed(m, n, cell_budget)
    return PatternSet.from_perms(n, (p for p in all_perms(n) if p not in allowed))


def exact_basic_forbidden(
    m: PwlMap, n: int, cell_budget: int = DEFAULT_CELL_BUDGET
) -> PatternSet:
    """Forbidden length-n patterns whose two length-(n-1) windows are both allowed."""
    if n < 2:
        raise BadParameter("basic forbidden patterns need n >= 2")
    shorter = exact_allowed(m, n - 1, cell_budget)
    full = exact_allowed(m, n, cell_budget)
    found: list[Perm] = []
    for alpha in shorter:
        for v in range(1, n + 1):
            pi = tuple(e + (e >= v) for e in alpha) + (v,)
            if pi in full:
                continue
            if reduce_values(pi[1:]) in shorter:
                found.append(pi)
    return PatternSet.from_perms(n, found)


def shortest_forbidden_length(
    m: PwlMap, n_max: int, cell_budget: int = DEFAULT_CELL_BUDGET
) -> int | None:
    """Least n <= n_max with a forbidden pattern, or None if every length fills S_n."""
    if n_max < 2:
        raise BadParameter("n_max must be at least 2")
    for n in range(2, n_max + 1):
        if len(exact_allowed(m, n, cell_budget)) < math.factorial(n):
            return n
    return None


def is_realized(m: PwlMap, pattern, cell_budget: int = DEFAULT_CELL_BUDGET) -> bool:
    """Exact check whether one specific pattern is realized by the map.

    Walks the same cell refinement as orbit_linearization but discards any
    cell whose iterate order already disagrees with the pattern prefix, so
    single patterns stay cheap even at horizons where the full cell
    complex would be enormous.
    """
    pi = check_perm(pattern)
    n = len(pi)
    identity = (Fraction(1), Fraction(0))
    cells = [OrbitCell(Interval(Fraction(0), Fraction(1), True, True), (identity,))]
    created = 0
    for depth in range(1, n):
        prefix_order = sorted(range(depth + 1), key=lambda idx: pi[idx])
        nxt: list[OrbitCell] = []
        for cell in cells:
            for sub in advance_cell(m, cell):
                constrained = _constrain(sub, prefix_order)
                if constrained is not None:
                    nxt.append(constrained)
        created += len(nxt)
        if created > cell_budget:
            raise ResourceLimit(
                f"pattern search exceeded the cell budget of {cell_budget}"
            )
        if not nxt:
            return False
        cells = nxt
    return True


def _constrain(cell: OrbitCell, prefix_order: list[int]) -> OrbitCell | None:
    """Restrict a cell to the (strict) region realizing the given iterate order."""
    iv = cell.iv
    for low_idx, high_idx in zip(prefix_order, prefix_order[1:]):
        a = cell.forms[low_idx][0] - cell.forms[high_idx][0]
        b = cell.forms[low_idx][1] - cell.forms[high_idx][1]
        # need a*x + b < 0
        if a == 0:
            if b >= 0:
                return None
            continue
        root = -b / a
        iv = clip_below(iv, root) if a > 0 else clip_above(iv, root)
        if iv is None:
            return None
    return OrbitCell(iv, cell.forms) if iv is not cell.iv else cell
