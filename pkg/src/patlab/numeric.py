"""Floating-point orbit patterns and sampled lower bounds on allowed sets.

Smooth maps (the logistic family, 1 - x^2) have no exact piecewise-linear
engine, so realized patterns are estimated by sampling: iterate many start
points in double precision, rank each orbit, and union the patterns.  The
result is a LOWER bound on the allowed set.  Sampling never certifies that
a pattern is forbidden; rounding can only lose patterns near boundaries,
never invent certified claims.

Orbits with two iterates closer than a tie tolerance are discarded whole:
the pattern of a tied orbit is undefined, and a false pattern is worse
than a lost sample.

>>> lm = NumericMap.logistic(4.0)
>>> format_perm(pattern_at(lm, 0.8, 4))
'3241'
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, OutOfDomain, TieDetected, ValidationError
from .perms import PatternSet, Perm, format_perm, reduce_values
from .pwl import PwlMap

DEFAULT_TIE_EPSILON = 1e-12
_CONSTRUCTION_GRID = 1001
_CHUNK = 1 << 15


@dataclass(frozen=True)
class SampleConfig:
    """How many orbits to sample and how to seed them.

    grid_count equally spaced interior points j/(grid_count+1) plus
    random_count seeded uniform points.  The defaults saturate the
    length-5 allowed sets of the catalog maps in under a second while
    staying reproducible.
    """

    grid_count: int = 100_000
    random_count: int = 100_000
    seed: int = 1
    tie_epsilon: float = DEFAULT_TIE_EPSILON

    def __post_init__(self):
        if self.grid_count < 0 or self.random_count < 0:
            raise BadParameter("sample counts must be nonnegative")
        if self.grid_count + self.random_count < 1:
            raise BadParameter("need at least one sample point")
        if not self.tie_epsilon > 0:
            raise BadParameter("tie_epsilon must be positive")


class NumericMap:
    """A self-map of [0,1] evaluated in double precision.

    Kinds: 'logistic' (r x (1-x), 1 < r <= 4), 'one_minus_x_squared',
    and 'pwl' (float evaluation of an exact piecewise-linear map).
    Construction samples a 1001-point grid to confirm the image stays in
    [0,1]; stepping clamps to the domain so roundoff cannot escape it.
    """

    def __init__(self, kind: str, r: float | None = None, pwl: PwlMap | None = None):
        if kind == "logistic":
            if r is None or not 1.0 < float(r) <= 4.0:
                raise BadParameter("logistic parameter must satisfy 1 < r <= 4")
            self.r = float(r)
        elif kind == "one_minus_x_squared":
            pass
        elif kind == "pwl":
            if pwl is None:
                raise BadParameter("kind 'pwl' needs a PwlMap to wrap")
            # precompute float breakpoints and coefficients, one row per piece
            self._lo = np.array([float(p.lo) for p in pwl.pieces])
            self._hi = np.array([float(p.hi) for p in pwl.pieces])
            self._slope = np.array([float(p.slope) for p in pwl.pieces])
            self._icept = np.array([float(p.intercept) for p in pwl.pieces])
        else:
            raise BadParameter(f"unknown numeric map kind {kind!r}")
        self.kind = kind
        grid = np.linspace(0.0, 1.0, _CONSTRUCTION_GRID)
        image = self._raw_step(grid)
        if not (np.all(image >= -1e-9) and np.all(image <= 1.0 + 1e-9)):
            raise ValidationError(f"image escapes [0,1] for kind {self.kind!r}")

    @classmethod
    def logistic(cls, r: float) -> "NumericMap":
        return cls("logistic", r=r)

    @classmethod
    def one_minus_x_squared(cls) -> "NumericMap":
        return cls("one_minus_x_squared")

    @classmethod
    def from_pwl(cls, pwl: PwlMap) -> "NumericMap":
        return cls("pwl", pwl=pwl)

    def _raw_step(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "logistic":
            return self.r * x * (1.0 - x)
        if self.kind == "one_minus_x_squared":
            return 1.0 - x * x
        # ownership of shared breakpoints does not matter in floats: the
        # exact map is continuous wherever two pieces share an endpoint,
        # and discontinuity points are a rounding-level event regardless
        idx = np.clip(np.searchsorted(self._lo, x, side="right") - 1, 0, len(self._lo) - 1)
        return self._slope[idx] * x + self._icept[idx]

    def step(self, x: np.ndarray) -> np.ndarray:
        """One iteration, clamped to [0,1]."""
        return np.clip(self._raw_step(x), 0.0, 1.0)

    def __call__(self, x: float) -> float:
        return float(self.step(np.asarray([x]))[0])


def pattern_at(
    nm: NumericMap, x: float, n: int, tie_epsilon: float = DEFAULT_TIE_EPSILON
) -> Perm:
    """Rank word of the first n orbit values of x, in double precision.

    Raises TieDetected when two orbit values are within tie_epsilon: the
    pattern is not defined there, and the caller should discard the
    sample rather than order the values arbitrarily.
    """
    if not 0.0 <= x <= 1.0:
        raise OutOfDomain(f"start point {x} outside [0,1]")
    if n < 1:
        raise BadParameter("n must be at least 1")
    orbit = [float(x)]
    for _ in range(n - 1):
        orbit.append(nm(orbit[-1]))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(orbit[i] - orbit[j]) < tie_epsilon:
                raise TieDetected(
                    f"orbit values {i} and {j} within {tie_epsilon} of each other"
                )
    return reduce_values(orbit)


def _sample_points(cfg: SampleConfig) -> np.ndarray:
    parts = []
    if cfg.grid_count:
        g = cfg.grid_count
        parts.append(np.arange(1, g + 1, dtype=np.float64) / (g + 1))
    if cfg.random_count:
        # counter-based generator: partitioning the index range cannot
        # change the stream, so results are independent of chunking
        rng = np.random.Generator(np.random.Philox(cfg.seed))
        parts.append(rng.random(cfg.random_count))
    return np.concatenate(parts)


def _orbit_patterns(nm: NumericMap, pts: np.ndarray, n: int, eps: float) -> set[Perm]:
    orbit = np.empty((len(pts), n))
    orbit[:, 0] = pts
    for i in range(1, n):
        orbit[:, i] = nm.step(orbit[:, i - 1])
    if n == 1:
        return {(1,)} if len(pts) else set()
    ordered = np.sort(orbit, axis=1)
    clean = np.min(np.diff(ordered, axis=1), axis=1) >= eps
    ranks = np.argsort(np.argsort(orbit[clean], axis=1), axis=1) + 1
    return {tuple(int(v) for v in row) for row in np.unique(ranks, axis=0)}


def sampled_allowed(nm: NumericMap, n: int, cfg: SampleConfig | None = None) -> PatternSet:
    """Patterns realized by sampled orbits: a lower bound on the allowed set.

    Deterministic for a fixed config; tied orbits are discarded.
    """
    if n < 1:
        raise BadParameter("n must be at least 1")
    cfg = cfg or SampleConfig()
    pts = _sample_points(cfg)
    found: set[Perm] = set()
    for start in range(0, len(pts), _CHUNK):
        found |= _orbit_patterns(nm, pts[start : start + _CHUNK], n, cfg.tie_epsilon)
    return PatternSet.from_perms(n, found)


def cap_pattern(n: int) -> Perm:
    """(n-1) 1 2 ... (n-2) n: second-largest entry first, rising to the top."""
    if n < 2:
        raise BadParameter("cap pattern needs n >= 2")
    return tuple([n - 1, *range(1, n - 1), n])


def first_missing_cap(
    nm: NumericMap, n_max: int, cfg: SampleConfig | None = None
) -> int | None:
    """Smallest n <= n_max whose cap pattern no sample realizes.

    Empirical only: non-observation at one seed is evidence, not proof,
    that the pattern is forbidden from that length on.
    """
    if n_max < 3:
        raise BadParameter("n_max must be at least 3")
    for n in range(3, n_max + 1):
        if cap_pattern(n) not in sampled_allowed(nm, n, cfg):
            return n
    return None
