"""Closed algebra of one-dimensional distributions with exact evaluation.

Every distribution exposes its CDF (with left limits), both generalized
inverses, and exact integrals of the lower quantile function.  The algebra
is closed under positive scaling, shifts, positive/negative part, absolute
value and comonotone addition; discrete inputs are transformed eagerly into
new atom lists, parametric tails stay symbolic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "Distribution",
    "Discrete",
    "ParetoNegative",
    "ParetoPositive",
    "Scale",
    "Shift",
    "PosPart",
    "NegPart",
    "Abs",
    "TailPower",
    "BOUNDED",
    "point_mass",
    "transform",
    "comonotone_sum",
    "cdf",
    "quantile_lower",
    "quantile_upper",
]

_ATOM_TOL = 1e-12

# Tail descriptor at an endpoint of (0,1): BOUNDED means the quantile
# function stays bounded there; TailPower(theta, coef) means it blows up
# like coef * t**(-1/theta) in the distance t to the endpoint.
BOUNDED = "bounded"


@dataclass(frozen=True)
class TailPower:
    theta: float
    coef: float


# ---------------------------------------------------------------------------
# transform operations


@dataclass(frozen=True)
class Scale:
    factor: float


@dataclass(frozen=True)
class Shift:
    offset: float


@dataclass(frozen=True)
class PosPart:
    pass


@dataclass(frozen=True)
class NegPart:
    pass


@dataclass(frozen=True)
class Abs:
    pass


def _check_level(u: float) -> float:
    u = float(u)
    if not 0.0 < u < 1.0:
        raise ParameterError(f"quantile level must lie in (0,1), got {u!r}")
    return u


def _compensated_cumsum(xs) -> np.ndarray:
    """Running Kahan sum; keeps cumulative probabilities tie-exact."""
    out = np.empty(len(xs))
    total = 0.0
    carry = 0.0
    for i, x in enumerate(xs):
        y = float(x) - carry
        t = total + y
        carry = (t - total) - y
        total = t
        out[i] = total
    return out


class Distribution:
    """Abstract one-dimensional distribution.

    Subclasses implement ``cdf``, ``cdf_left``, ``quantile_lower``,
    ``quantile_upper``, ``quantile_integral``, ``quantile_breakpoints``,
    ``support`` and the two tail descriptors.  All instances are immutable
    and all operations are pure.
    """

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf_left(self, x: float) -> float:
        """Left limit of the CDF at ``x``."""
        raise NotImplementedError

    def quantile_lower(self, u: float) -> float:
        """inf{x : cdf(x) >= u} for u in (0,1)."""
        raise NotImplementedError

    def quantile_upper(self, u: float) -> float:
        """sup{x : cdf(x) <= u} for u in (0,1)."""
        raise NotImplementedError

    def quantile_integral(self, a: float, b: float) -> float:
        """Lebesgue integral of the lower quantile function over (a, b).

        May return ``+-inf`` when the improper integral diverges; the
        endpoints 0 and 1 are admissible.
        """
        raise NotImplementedError

    def quantile_breakpoints(self) -> tuple[float, ...]:
        """Levels in (0,1) where the quantile function jumps or kinks."""
        return ()

    def support(self) -> tuple[float, float]:
        """Essential bounds of the distribution, possibly infinite."""
        raise NotImplementedError

    def lower_tail(self):
        """Behaviour of the quantile function at 0+: BOUNDED, TailPower or None."""
        return None

    def upper_tail(self):
        """Behaviour of the quantile function at 1-: BOUNDED, TailPower or None."""
        return None

    def mean(self) -> float:
        return self.quantile_integral(0.0, 1.0)

    @property
    def is_discrete(self) -> bool:
        return isinstance(self, Discrete)

    # fluent aliases for the transform algebra
    def scale(self, factor: float) -> Distribution:
        return transform(self, Scale(factor))

    def shift(self, offset: float) -> Distribution:
        return transform(self, Shift(offset))

    def pos_part(self) -> Distribution:
        return transform(self, PosPart())

    def neg_part(self) -> Distribution:
        return transform(self, NegPart())

    def abs(self) -> Distribution:
        return transform(self, Abs())

    def label(self) -> str:
        return repr(self)


class Discrete(Distribution):
    """Finitely supported distribution given by sorted atoms.

    ``values`` must be strictly increasing and ``probs`` strictly positive
    with total mass 1 within 1e-12.  Duplicate sample values are merged by
    the ``from_samples`` constructor, not here.
    """

    def __init__(self, values, probs):
        values = np.asarray(values, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if values.ndim != 1 or values.shape != probs.shape or len(values) == 0:
            raise ParameterError("values and probs must be equal-length, non-empty 1-D sequences")
        if not np.all(np.isfinite(values)):
            raise ParameterError("atom values must be finite")
        if np.any(np.diff(values) <= 0):
            raise ParameterError("atom values must be strictly increasing")
        if np.any(probs <= 0):
            raise ParameterError("atom probabilities must be strictly positive")
        total = math.fsum(probs.tolist())
        if abs(total - 1.0) > _ATOM_TOL:
            raise ParameterError(f"atom probabilities must sum to 1 within {_ATOM_TOL}, got {total!r}")
        self.values = values
        self.probs = probs
        self.cum = _compensated_cumsum(probs)
        self.cum[-1] = 1.0

    @classmethod
    def from_samples(cls, samples, weights=None) -> Discrete:
        """Empirical distribution; equal weights unless given, duplicates merged."""
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 1 or len(samples) == 0:
            raise ParameterError("need at least one sample value")
        if weights is None:
            weights = np.ones_like(samples)
        else:
            weights = np.asarray(weights, dtype=float)
            if weights.shape != samples.shape:
                raise ParameterError("weights must match samples in length")
            if np.any(weights < 0):
                raise ParameterError("weights must be non-negative")
        keep = weights > 0
        samples, weights = samples[keep], weights[keep]
        if len(samples) == 0:
            raise ParameterError("total weight must be positive")
        values, masses = _merge_atoms(samples, weights)
        return cls(values, masses / math.fsum(masses.tolist()))

    def cdf(self, x: float) -> float:
        idx = int(np.searchsorted(self.values, x, side="right"))
        return 0.0 if idx == 0 else float(self.cum[idx - 1])

    def cdf_left(self, x: float) -> float:
        idx = int(np.searchsorted(self.values, x, side="left"))
        return 0.0 if idx == 0 else float(self.cum[idx - 1])

    def quantile_lower(self, u: float) -> float:
        u = _check_level(u)
        idx = int(np.searchsorted(self.cum, u, side="left"))
        return float(self.values[min(idx, len(self.values) - 1)])

    def quantile_upper(self, u: float) -> float:
        u = _check_level(u)
        idx = int(np.searchsorted(self.cum, u, side="right"))
        return float(self.values[min(idx, len(self.values) - 1)])

    def quantile_integral(self, a: float, b: float) -> float:
        a, b = _check_range(a, b)
        lower = np.concatenate(([0.0], self.cum[:-1]))
        overlap = np.minimum(self.cum, b) - np.maximum(lower, a)
        overlap = np.maximum(overlap, 0.0)
        return float(np.dot(self.values, overlap))

    def quantile_breakpoints(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.cum[:-1])

    def support(self) -> tuple[float, float]:
        return float(self.values[0]), float(self.values[-1])

    def lower_tail(self):
        return BOUNDED

    def upper_tail(self):
        return BOUNDED

    def mean(self) -> float:
        return float(np.dot(self.values, self.probs))

    def label(self) -> str:
        if len(self.values) == 1:
            return f"point_mass({self.values[0]:g})"
        return f"discrete(n={len(self.values)})"

    def __repr__(self) -> str:
        if len(self.values) <= 6:
            pairs = ", ".join(f"({v:g}, {p:g})" for v, p in zip(self.values, self.probs))
            return f"Discrete([{pairs}])"
        return f"Discrete(n={len(self.values)})"


def _merge_atoms(values, masses) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(values, kind="stable")
    values, masses = values[order], masses[order]
    uniq, inverse = np.unique(values, return_inverse=True)
    merged = np.zeros(len(uniq))
    np.add.at(merged, inverse, masses)
    keep = merged > 0
    return uniq[keep], merged[keep]


def point_mass(value: float) -> Discrete:
    return Discrete([value], [1.0])


class ParetoNegative(Distribution):
    """Power-law left tail supported on (-inf, -beta].

    ``cdf(x) = (beta / -x)**theta`` for x < -beta and 1 beyond.  ``theta``
    defaults to 2, which has a finite mean; ``theta <= 1`` gives mean -inf.
    """

    def __init__(self, beta: float, theta: float = 2.0):
        if not beta > 0:
            raise ParameterError(f"beta must be positive, got {beta!r}")
        if not theta > 0:
            raise ParameterError(f"theta must be positive, got {theta!r}")
        self.beta = float(beta)
        self.theta = float(theta)

    def cdf(self, x: float) -> float:
        if x >= -self.beta:
            return 1.0
        return (self.beta / -x) ** self.theta

    cdf_left = cdf  # continuous

    def quantile_lower(self, u: float) -> float:
        u = _check_level(u)
        return -self.beta * u ** (-1.0 / self.theta)

    quantile_upper = quantile_lower  # strictly increasing CDF, no flat levels

    def quantile_integral(self, a: float, b: float) -> float:
        a, b = _check_range(a, b)
        if a == b:
            return 0.0
        if self.theta == 1.0:
            if a == 0.0:
                return -math.inf
            return -self.beta * (math.log(b) - math.log(a))
        e = 1.0 - 1.0 / self.theta
        if a == 0.0 and e <= 0:
            return -math.inf
        lo = 0.0 if a == 0.0 else a**e
        return -self.beta * (b**e - lo) / e

    def support(self) -> tuple[float, float]:
        return -math.inf, -self.beta

    def lower_tail(self):
        return TailPower(self.theta, self.beta)

    def upper_tail(self):
        return BOUNDED

    def label(self) -> str:
        return f"pareto_negative(beta={self.beta:g},theta={self.theta:g})"

    def __repr__(self) -> str:
        return f"ParetoNegative(beta={self.beta!r}, theta={self.theta!r})"


class ParetoPositive(Distribution):
    """Classic Pareto right tail on [beta, inf): cdf(x) = 1 - (beta/x)**theta."""

    def __init__(self, beta: float, theta: float):
        if not beta > 0:
            raise ParameterError(f"beta must be positive, got {beta!r}")
        if not theta > 0:
            raise ParameterError(f"theta must be positive, got {theta!r}")
        self.beta = float(beta)
        self.theta = float(theta)

    def cdf(self, x: float) -> float:
        if x < self.beta:
            return 0.0
        return 1.0 - (self.beta / x) ** self.theta

    cdf_left = cdf

    def quantile_lower(self, u: float) -> float:
        u = _check_level(u)
        return self.beta * (1.0 - u) ** (-1.0 / self.theta)

    quantile_upper = quantile_lower

    def quantile_integral(self, a: float, b: float) -> float:
        a, b = _check_range(a, b)
        if a == b:
            return 0.0
        # substitute t = 1-u
        if self.theta == 1.0:
            if b == 1.0:
                return math.inf
            return self.beta * (math.log1p(-a) - math.log1p(-b))
        e = 1.0 - 1.0 / self.theta
        if b == 1.0 and e <= 0:
            return math.inf
        hi = 0.0 if b == 1.0 else (1.0 - b) ** e
        return -self.beta * (hi - (1.0 - a) ** e) / e

    def support(self) -> tuple[float, float]:
        return self.beta, math.inf

    def lower_tail(self):
        return BOUNDED

    def upper_tail(self):
        return TailPower(self.theta, self.beta)

    def label(self) -> str:
        return f"pareto_positive(beta={self.beta:g},theta={self.theta:g})"

    def __repr__(self) -> str:
        return f"ParetoPositive(beta={self.beta!r}, theta={self.theta!r})"


# ---------------------------------------------------------------------------
# lazy transform nodes (non-discrete bases only; discrete transforms are eager)


class _Scaled(Distribution):
    def __init__(self, base: Distribution, factor: float):
        self.base = base
        self.factor = float(factor)  # > 0; factor 0 collapses to point_mass earlier

    def cdf(self, x):
        return self.base.cdf(x / self.factor)

    def cdf_left(self, x):
        return self.base.cdf_left(x / self.factor)

    def quantile_lower(self, u):
        return self.factor * self.base.quantile_lower(u)

    def quantile_upper(self, u):
        return self.factor * self.base.quantile_upper(u)

    def quantile_integral(self, a, b):
        return self.factor * self.base.quantile_integral(a, b)

    def quantile_breakpoints(self):
        return self.base.quantile_breakpoints()

    def support(self):
        lo, hi = self.base.support()
        return self.factor * lo, self.factor * hi

    def lower_tail(self):
        return _scale_tail(self.base.lower_tail(), self.factor)

    def upper_tail(self):
        return _scale_tail(self.base.upper_tail(), self.factor)

    def label(self):
        return f"scale({self.factor:g},{self.base.label()})"


class _Shifted(Distribution):
    def __init__(self, base: Distribution, offset: float):
        self.base = base
        self.offset = float(offset)

    def cdf(self, x):
        return self.base.cdf(x - self.offset)

    def cdf_left(self, x):
        return self.base.cdf_left(x - self.offset)

    def quantile_lower(self, u):
        return self.base.quantile_lower(u) + self.offset

    def quantile_upper(self, u):
        return self.base.quantile_upper(u) + self.offset

    def quantile_integral(self, a, b):
        return self.base.quantile_integral(a, b) + self.offset * (b - a)

    def quantile_breakpoints(self):
        return self.base.quantile_breakpoints()

    def support(self):
        lo, hi = self.base.support()
        return lo + self.offset, hi + self.offset

    def lower_tail(self):
        return self.base.lower_tail()  # shift does not change the blow-up

    def upper_tail(self):
        return self.base.upper_tail()

    def label(self):
        return f"shift({self.offset:g},{self.base.label()})"


class _Negated(Distribution):
    """Reflection x -> -x; internal only, used to realize NegPart and Abs."""

    def __init__(self, base: Distribution):
        self.base = base

    def cdf(self, x):
        return 1.0 - self.base.cdf_left(-x)

    def cdf_left(self, x):
        return 1.0 - self.base.cdf(-x)

    def quantile_lower(self, u):
        return -self.base.quantile_upper(1.0 - _check_level(u))

    def quantile_upper(self, u):
        return -self.base.quantile_lower(1.0 - _check_level(u))

    def quantile_integral(self, a, b):
        a, b = _check_range(a, b)
        return -self.base.quantile_integral(1.0 - b, 1.0 - a)

    def quantile_breakpoints(self):
        return tuple(sorted(1.0 - t for t in self.base.quantile_breakpoints()))

    def support(self):
        lo, hi = self.base.support()
        return -hi, -lo

    def lower_tail(self):
        return self.base.upper_tail()

    def upper_tail(self):
        return self.base.lower_tail()

    def label(self):
        return f"negate({self.base.label()})"


class _PosPart(Distribution):
    def __init__(self, base: Distribution):
        self.base = base
        self._split = base.cdf(0.0)  # quantile_lower(u) <= 0 iff u <= split

    def cdf(self, x):
        return 0.0 if x < 0 else self.base.cdf(x)

    def cdf_left(self, x):
        return 0.0 if x <= 0 else self.base.cdf_left(x)

    def quantile_lower(self, u):
        return max(self.base.quantile_lower(u), 0.0)

    def quantile_upper(self, u):
        return max(self.base.quantile_upper(u), 0.0)

    def quantile_integral(self, a, b):
        a, b = _check_range(a, b)
        lo = max(a, min(self._split, b))
        if b <= lo:
            return 0.0
        return self.base.quantile_integral(lo, b)

    def quantile_breakpoints(self):
        pts = set(self.base.quantile_breakpoints())
        if 0.0 < self._split < 1.0:
            pts.add(self._split)
        return tuple(sorted(pts))

    def support(self):
        lo, hi = self.base.support()
        return max(lo, 0.0), max(hi, 0.0)

    def lower_tail(self):
        return BOUNDED

    def upper_tail(self):
        hi = self.base.support()[1]
        return self.base.upper_tail() if hi > 0 else BOUNDED

    def label(self):
        return f"pos_part({self.base.label()})"


class _AbsMixed(Distribution):
    """|X| for a non-discrete base straddling zero.

    The CDF is exact; quantiles invert it by monotone float bisection, so
    they are correct to one unit in the last place.
    """

    def __init__(self, base: Distribution):
        self.base = base

    def cdf(self, x):
        if x < 0:
            return 0.0
        return self.base.cdf(x) - self.base.cdf_left(-x)

    def cdf_left(self, x):
        if x <= 0:
            return 0.0
        return self.base.cdf_left(x) - self.base.cdf(-x)

    def quantile_lower(self, u):
        u = _check_level(u)
        return _bisect_float(lambda x: self.cdf(x) >= u, *self._bracket(u))

    def quantile_upper(self, u):
        u = _check_level(u)
        hi = _bisect_float(lambda x: self.cdf_left(x) > u, *self._bracket(u))
        return hi

    def _bracket(self, u):
        lo, hi = self.support()
        top = hi if math.isfinite(hi) else max(1.0, abs(lo) if math.isfinite(lo) else 1.0)
        while self.cdf(top) < u:
            top *= 2.0
        return 0.0, top

    def quantile_integral(self, a, b):
        a, b = _check_range(a, b)
        from scipy.integrate import quad

        if a == b:
            return 0.0
        val, _ = quad(self.quantile_lower, a, b, limit=200, epsabs=1e-11, epsrel=1e-11)
        return val

    def support(self):
        lo, hi = self.base.support()
        return 0.0, max(abs(lo), abs(hi))

    def lower_tail(self):
        return BOUNDED

    def upper_tail(self):
        return _heavier_tail(self.base.lower_tail(), self.base.upper_tail())

    def label(self):
        return f"abs({self.base.label()})"


class ComonotoneSum(Distribution):
    """Sum of two comonotone risks: the lower quantiles add pointwise.

    Discrete operands are merged exactly by :func:`comonotone_sum`; this lazy
    node covers the remaining cases.  The CDF inverts the summed quantile by
    float bisection (exact to one ulp).
    """

    def __init__(self, first: Distribution, second: Distribution):
        self.first = first
        self.second = second

    def quantile_lower(self, u):
        u = _check_level(u)
        return self.first.quantile_lower(u) + self.second.quantile_lower(u)

    def quantile_upper(self, u):
        u = _check_level(u)
        return self.first.quantile_upper(u) + self.second.quantile_upper(u)

    def cdf(self, x):
        lo, hi = self.support()
        if x < lo:
            return 0.0
        if x >= hi:
            return 1.0
        # largest u with q(u) <= x; measure of {q <= x}
        return _bisect_level(lambda u: self.quantile_lower(u) <= x)

    def cdf_left(self, x):
        lo, hi = self.support()
        if x <= lo:
            return 0.0
        if x > hi:
            return 1.0
        return _bisect_level(lambda u: self.quantile_lower(u) < x)

    def quantile_integral(self, a, b):
        return self.first.quantile_integral(a, b) + self.second.quantile_integral(a, b)

    def quantile_breakpoints(self):
        return tuple(sorted(set(self.first.quantile_breakpoints()) | set(self.second.quantile_breakpoints())))

    def support(self):
        lo1, hi1 = self.first.support()
        lo2, hi2 = self.second.support()
        return lo1 + lo2, hi1 + hi2

    def lower_tail(self):
        return _heavier_tail(self.first.lower_tail(), self.second.lower_tail())

    def upper_tail(self):
        return _heavier_tail(self.first.upper_tail(), self.second.upper_tail())

    def label(self):
        return f"comonotone({self.first.label()},{self.second.label()})"


def _scale_tail(tail, factor):
    if isinstance(tail, TailPower):
        return TailPower(tail.theta, tail.coef * factor)
    return tail


def _heavier_tail(t1, t2):
    if t1 is None or t2 is None:
        return None
    if t1 == BOUNDED:
        return t2
    if t2 == BOUNDED:
        return t1
    if t1.theta == t2.theta:
        return TailPower(t1.theta, t1.coef + t2.coef)
    return t1 if t1.theta < t2.theta else t2


def _bisect_float(pred, lo, hi):
    """Smallest float x in [lo, hi] with pred(x) true; pred monotone in x."""
    if pred(lo):
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi

def _bisect_level(pred):
    """Largest u in (0,1) with pred(u) true; pred true on an initial segment."""
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# algebra entry points


def transform(dist: Distribution, op) -> Distribution:
    """Apply Scale/Shift/PosPart/NegPart/Abs; discrete inputs stay discrete."""
    if isinstance(op, Scale):
        if op.factor < 0:
            raise ParameterError("negative scale factors are outside the quantile calculus")
        if op.factor == 0:
            return point_mass(0.0)
        if op.factor == 1.0:
            return dist
        if isinstance(dist, Discrete):
            return Discrete(dist.values * op.factor, dist.probs)
        return _Scaled(dist, op.factor)
    if isinstance(op, Shift):
        if op.offset == 0.0:
            return dist
        if isinstance(dist, Discrete):
            return Discrete(dist.values + op.offset, dist.probs)
        return _Shifted(dist, op.offset)
    if isinstance(op, PosPart):
        if isinstance(dist, Discrete):
            return _remap_discrete(dist, np.maximum(dist.values, 0.0))
        lo, hi = dist.support()
        if lo >= 0:
            return dist
        if hi <= 0:
            return point_mass(0.0)
        return _PosPart(dist)
    if isinstance(op, NegPart):
        if isinstance(dist, Discrete):
            return _remap_discrete(dist, np.maximum(-dist.values, 0.0))
        return transform(_negate(dist), PosPart())
    if isinstance(op, Abs):
        if isinstance(dist, Discrete):
            return _remap_discrete(dist, np.abs(dist.values))
        lo, hi = dist.support()
        if lo >= 0:
            return dist
        if hi <= 0:
            return _negate(dist)
        return _AbsMixed(dist)
    raise ParameterError(f"unknown transform op {op!r}")


def _negate(dist: Distribution) -> Distribution:
    if isinstance(dist, Discrete):
        return _remap_discrete(dist, -dist.values)
    if isinstance(dist, _Negated):
        return dist.base
    return _Negated(dist)


def _remap_discrete(dist: Discrete, new_values: np.ndarray) -> Discrete:
    values, masses = _merge_atoms(new_values, dist.probs)
    return Discrete(values, masses / math.fsum(masses.tolist()))


def comonotone_sum(d1: Distribution, d2: Distribution) -> Distribution:
    """Distribution of X+Y under the comonotone coupling of d1 and d2."""
    if isinstance(d1, Discrete) and isinstance(d2, Discrete):
        return _discrete_comonotone(d1, d2)
    if isinstance(d1, Discrete) and len(d1.values) == 1:
        return transform(d2, Shift(float(d1.values[0])))
    if isinstance(d2, Discrete) and len(d2.values) == 1:
        return transform(d1, Shift(float(d2.values[0])))
    return ComonotoneSum(d1, d2)


def _discrete_comonotone(d1: Discrete, d2: Discrete) -> Discrete:
    grid = np.unique(np.concatenate((d1.cum, d2.cum)))
    grid = grid[(grid > 0.0) & (grid <= 1.0)]
    i1 = np.searchsorted(d1.cum, grid, side="left")
    i2 = np.searchsorted(d2.cum, grid, side="left")
    sums = d1.values[np.minimum(i1, len(d1.values) - 1)] + d2.values[np.minimum(i2, len(d2.values) - 1)]
    masses = np.diff(np.concatenate(([0.0], grid)))
    values, masses = _merge_atoms(sums, masses)
    return Discrete(values, masses / math.fsum(masses.tolist()))


def _check_range(a: float, b: float) -> tuple[float, float]:
    a, b = float(a), float(b)
    if not (0.0 <= a <= b <= 1.0):
        raise ParameterError(f"integration range must satisfy 0 <= a <= b <= 1, got ({a!r}, {b!r})")
    return a, b


# module-level aliases matching the operation vocabulary


def cdf(dist: Distribution, x: float) -> float:
    return dist.cdf(x)


def quantile_lower(dist: Distribution, u: float) -> float:
    return dist.quantile_lower(u)


def quantile_upper(dist: Distribution, u: float) -> float:
    return dist.quantile_upper(u)
