"""Upper bounds on the shortest forbidden pattern, and antichain obstructions.

A continuous interval map whose graph leaves the diagonal forces certain
rank words to be unrealizable, and how soon depends only on coarse
geometry: count the maximal intervals where f(x) < x and some pattern of
length 2k+2 is already forbidden; a refined count over monotone pieces
gives 2k+3.  Both counts come with an explicit structural witness family,
mirrored for the f(x) > x side.

The same witnesses power a negative test for basis sets: if the refined
witness of every order m up to a cutoff avoids all patterns of a
candidate set, no map with few monotone pieces can have exactly that set
as its minimal forbidden family.  A separate counting inequality rules
out antichains whose lengths are too short for the number of patterns a
piecewise-monotone map must forbid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadParameter
from .perms import Perm, check_perm, contains
from .pwl import PwlMap, ascent_components, descent_components, refined_piece_count

METHODS = ("simple", "refined")
ORIENTATIONS = ("below", "above")


@dataclass(frozen=True)
class BoundReport:
    """Shortest-forbidden-length bound derived from diagonal geometry."""

    component_count: int
    bound: int
    method: str
    orientation: str


def shortest_bound(m: PwlMap, method: str = "simple", orientation: str = "below") -> BoundReport:
    """Upper bound on the shortest forbidden pattern length of the map.

    method 'simple' counts components of the strict below/above-diagonal
    region and yields 2k+2; 'refined' counts qualifying monotone pieces
    and yields 2k+3.
    """
    if method not in METHODS:
        raise BadParameter(f"method must be one of {METHODS}, got {method!r}")
    if orientation not in ORIENTATIONS:
        raise BadParameter(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    if method == "simple":
        count = descent_components(m) if orientation == "below" else ascent_components(m)
        return BoundReport(count, 2 * count + 2, method, orientation)
    count = refined_piece_count(m, orientation)
    return BoundReport(count, 2 * count + 3, method, orientation)


# ---------------------------------------------------------------------------
# witness family


def _check_order(k: int) -> None:
    if k < 1:
        raise BadParameter("the witness order k must be at least 1")


def _check_variant(variant: str) -> None:
    if variant not in METHODS:
        raise BadParameter(f"variant must be one of {METHODS}, got {variant!r}")


def witness(k: int, variant: str = "simple") -> Perm:
    """Explicit member of the order-k witness class.

    variant 'simple' has length 2k+2: the odd values 3..2k+1 ascending,
    then 2k+2 followed by the even values descending, then 1.  variant
    'refined' has length 2k+3: evens descending from 2k+2 to 2, then 1,
    then the odd values 3..2k+3 ascending.
    """
    _check_order(k)
    _check_variant(variant)
    if variant == "refined":
        word = list(range(2 * k + 2, 0, -2)) + [1] + list(range(3, 2 * k + 4, 2))
    else:
        word = list(range(3, 2 * k + 2, 2)) + [2 * k + 2] + list(range(2 * k, 0, -2)) + [1]
    return tuple(word)


def in_witness_class(pi: Sequence[int], k: int, variant: str = "simple") -> bool:
    """Membership test for the order-k witness class.

    Some index i must start a run of k descents, each straddling a value
    that sits at an ascent elsewhere, followed by one more descent.  The
    'refined' variant additionally requires a later entry rising back
    above the bottom of that final descent.
    """
    p = check_perm(pi)
    _check_order(k)
    _check_variant(variant)
    n = len(p)
    ascent_values = [p[ell] for ell in range(n - 1) if p[ell] < p[ell + 1]]
    for i in range(n - k - 1):
        # p[i..i+k-1] each strictly above an ascent value above the next entry
        if not all(
            any(p[j] > v > p[j + 1] for v in ascent_values) for j in range(i, i + k)
        ):
            continue
        if p[i + k] <= p[i + k + 1]:
            continue
        if variant == "refined" and not any(
            p[h] > p[i + k + 1] for h in range(i + k + 2, n)
        ):
            continue
        return True
    return False


# ---------------------------------------------------------------------------
# antichain obstructions


@dataclass(frozen=True)
class AntichainLengthCheck:
    """Counting inequality a basis of a piecewise-monotone map must satisfy."""

    lengths: tuple[int, ...]
    half_min: int
    total: int
    required: int
    satisfied: bool


def basis_length_check(lengths: Iterable[int]) -> AntichainLengthCheck:
    """Test whether pattern lengths k_1 <= ... <= k_m could form such a basis.

    With h = k_1 // 2, the lengths must satisfy
    sum(k_i) >= h! + m*(h - 1); a violation certifies that no interval
    map with finitely many monotone pieces has a basis with exactly
    those pattern lengths.
    """
    ks = tuple(sorted(int(k) for k in lengths))
    if not ks:
        raise BadParameter("need at least one pattern length")
    if ks[0] < 2:
        raise BadParameter("basis pattern lengths must be at least 2")
    half_min = ks[0] // 2
    total = sum(ks)
    required = math.factorial(half_min) + len(ks) * (half_min - 1)
    return AntichainLengthCheck(ks, half_min, total, required, total >= required)


def multinomial_blocks(block_size: int, blocks: int) -> int:
    """(r*h)! / (h!)^r: orderings of r blocks of h values with blocks interleaved.

    This is the count of length r*h permutations whose r consecutive
    blocks each appear in a prescribed relative order, the growth rate
    against which basis length budgets are compared.
    """
    h, r = int(block_size), int(blocks)
    if h < 1 or r < 1:
        raise BadParameter("block size and block count must be at least 1")
    return math.factorial(r * h) // math.factorial(h) ** r


def basis_obstruction(patterns: Iterable[Sequence[int]], m_max: int) -> list[int]:
    """Orders m <= m_max whose refined witness avoids every given pattern.

    Each listed m certifies that no interval map with m monotone pieces
    has exactly the given set as its basis: the witness would have to be
    forbidden for such a map, yet it avoids every pattern of the set.
    """
    if m_max < 1:
        raise BadParameter("m_max must be at least 1")
    pats = [check_perm(p) for p in patterns]
    if not pats:
        raise BadParameter("need at least one pattern")
    out = []
    for m in range(1, m_max + 1):
        w = witness(m, "refined")
        if all(not contains(w, sigma) for sigma in pats):
            out.append(m)
    return out
