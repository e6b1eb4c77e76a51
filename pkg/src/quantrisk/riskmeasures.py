"""Distortion risk measures through their equivalent representations.

The same functional is computed three ways: integrating the quantile
function against the distortion measure, integrating the distorted tail
probabilities over the real line, and mixing expected shortfall across
levels.  Discrete distributions and piecewise distortions are evaluated in
closed form; parametric tails fall back to adaptive quadrature with the
tolerances declared here.  ``+inf`` is never returned as a risk value: a
divergent positive part is reported as non-membership instead.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .distortions import (
    Distortion,
    higher_order_es_distortion,
    is_convex,
    mixture_measure_of,
    spectral_of,
)
from .distributions import BOUNDED, Discrete, Distribution, transform, Abs
from .errors import InconclusiveError, NotSpectralError, ParameterError

__all__ = [
    "RiskValue",
    "DomainClass",
    "Verdict",
    "MembershipVerdict",
    "DomainComparison",
    "InfimumResult",
    "quantile_risk",
    "choquet_risk",
    "mixture_risk",
    "value_at_risk",
    "expected_shortfall",
    "expected_shortfall_infimum",
    "expected_shortfall_higher_order",
    "classify_membership",
    "compare_domains",
]

QUAD_TOL = 1e-9
MIXTURE_TOL = 1e-8
PROBE_LEVELS = 40
PROBE_CAUCHY = 1e-9
PROBE_GROWTH = 1e-3


@dataclass(frozen=True)
class RiskValue:
    """A risk number in [-inf, inf), or the flag that X is outside the domain."""

    kind: str  # "finite" | "neg-inf" | "not-in-domain"
    value: float

    @classmethod
    def finite(cls, value: float) -> RiskValue:
        if not math.isfinite(value):
            raise ValueError(f"finite risk value required, got {value!r}")
        return cls("finite", float(value))

    @classmethod
    def neg_inf(cls) -> RiskValue:
        return cls("neg-inf", -math.inf)

    @classmethod
    def not_in_domain(cls) -> RiskValue:
        return cls("not-in-domain", math.nan)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def in_domain(self) -> bool:
        return self.kind != "not-in-domain"

    def as_float(self) -> float:
        """Numeric value; raises when the risk is undefined (not in domain)."""
        if not self.in_domain:
            raise ValueError("risk value is undefined: variable outside the domain")
        return self.value

    def json_value(self):
        if self.kind == "finite":
            return self.value
        return "-inf" if self.kind == "neg-inf" else "not-in-domain"

    def __str__(self) -> str:
        return f"{self.value:.12g}" if self.kind == "finite" else self.json_value()


class DomainClass(enum.Enum):
    QUANTILE = "quantile"  # positive quantile part integrable
    ACERBI = "acerbi"  # absolute quantile integrable
    PICHLER = "pichler"  # quantile of |X| integrable

    def __str__(self) -> str:
        return self.value


class Verdict(enum.Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MembershipVerdict:
    domain_class: DomainClass
    verdict: Verdict
    method: str  # "discrete" | "analytic" | "probe"
    partials: tuple[float, ...] = ()


# ---------------------------------------------------------------------------
# integration helpers


def _quad(f, a, b, *, points=(), epsabs=1e-10):
    pts = sorted(p for p in points if a < p < b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err = quad(f, a, b, points=pts or None, limit=400, epsabs=epsabs, epsrel=1e-10)
    if not math.isfinite(val) or err > max(1e-7, abs(val) * 1e-6):
        raise InconclusiveError(
            f"quadrature did not converge on ({a!r}, {b!r})", diagnostics=[val, err]
        )
    return val


def _quad_tail(f, a, b, *, epsabs=1e-10):
    """quad without breakpoints; admits infinite limits."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val, err = quad(f, a, b, limit=400, epsabs=epsabs, epsrel=1e-10)
    if not math.isfinite(val) or err > max(1e-7, abs(val) * 1e-6):
        raise InconclusiveError(
            f"quadrature did not converge on ({a!r}, {b!r})", diagnostics=[val, err]
        )
    return val


def _tail_rule(tail, dens) -> bool | None:
    """Does the quantile-vs-density integral diverge at this endpoint?

    ``tail`` describes the quantile blow-up, ``dens`` the local density
    ``q(t) ~ coef * t**p`` in the distance t to the endpoint, with None
    meaning no density reaches it.  Returns None when undecidable analytically.
    """
    if tail == BOUNDED:
        return False
    if dens is None:
        return False
    if tail is None:
        return None
    p, _coef = dens
    return p - 1.0 / tail.theta <= -1.0


@dataclass(frozen=True)
class _Flags:
    pos_diverges: bool
    neg_diverges: bool
    method: str


def _domain_flags(dist: Distribution, distortion: Distortion) -> _Flags:
    if dist.is_discrete:
        return _Flags(False, False, "discrete")
    pos = _tail_rule(dist.upper_tail(), distortion.density_exponent_at(1))
    neg = _tail_rule(dist.lower_tail(), distortion.density_exponent_at(0))
    method = "analytic"
    if pos is None:
        pos, _ = _probe_diverges(dist, distortion, side="+")
        method = "probe"
    if neg is None:
        neg, _ = _probe_diverges(dist, distortion, side="-")
        method = "probe"
    return _Flags(pos, neg, method)


def _probe_diverges(dist, distortion, side: str) -> tuple[bool, tuple[float, ...]]:
    if side == "+":
        h = lambda u: max(dist.quantile_lower(u), 0.0)
    else:
        h = lambda u: max(-dist.quantile_lower(u), 0.0)
    partials = _dyadic_partials(dist, distortion, h)
    verdict = _judge_partials(partials)
    if verdict is Verdict.INCONCLUSIVE:
        raise InconclusiveError(
            f"dyadic probe undecided for the {side} part after {PROBE_LEVELS} levels",
            diagnostics=list(partials),
        )
    return verdict is Verdict.NON_MEMBER, partials


def _dyadic_partials(dist, distortion, h, levels: int = PROBE_LEVELS) -> tuple[float, ...]:
    """Cumulative integrals of h dQ over the windows (2^-k, 1 - 2^-k)."""
    atoms = distortion.jumps()
    density = distortion.density_pieces()
    points = dist.quantile_breakpoints()
    total = 0.0
    out = []
    prev_lo, prev_hi = math.inf, -math.inf  # empty previous window
    for k in range(1, levels + 1):
        lo, hi = 2.0**-k, 1.0 - 2.0**-k
        inc = 0.0
        for loc, mass in atoms:
            if lo <= loc <= hi and not (prev_lo <= loc <= prev_hi):
                inc += mass * h(loc)
        if lo < hi:
            segments = [(lo, min(prev_lo, hi)), (max(prev_hi, lo), hi)] if prev_lo <= prev_hi else [(lo, hi)]
            for a, b in segments:
                if b <= a:
                    continue
                for piece in density:
                    pa, pb = max(a, piece.lo), min(b, piece.hi)
                    if pb > pa:
                        inc += _quad(
                            lambda u, piece=piece: h(u) * float(piece.value(u)),
                            pa,
                            pb,
                            points=points,
                            epsabs=1e-11,
                        )
        total += inc
        out.append(total)
        prev_lo, prev_hi = lo, hi
    return tuple(out)


def _judge_partials(partials) -> Verdict:
    inc = [b - a for a, b in zip(partials, partials[1:])]
    if not inc:
        return Verdict.INCONCLUSIVE
    if inc[-1] <= PROBE_CAUCHY:
        return Verdict.MEMBER
    tail = inc[-5:]
    if len(tail) == 5 and all(x > PROBE_GROWTH for x in tail) and all(
        b >= 0.9 * a for a, b in zip(tail, tail[1:])
    ):
        return Verdict.NON_MEMBER
    return Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# the three representations


def quantile_risk(dist: Distribution, distortion, *, epsabs: float = QUAD_TOL) -> RiskValue:
    """Integral of the lower quantile function against the distortion measure.

    Exact for discrete distributions (for any evaluable distortion); adaptive
    quadrature with absolute tolerance ``epsabs`` otherwise.  A divergent
    positive part yields the not-in-domain flag, a divergent negative part
    alone yields -inf.
    """
    if dist.is_discrete:
        levels = np.asarray(dist.cum)
        w = distortion.eval(levels) if isinstance(distortion, Distortion) else np.array(
            [distortion.eval(float(c)) for c in levels]
        )
        dw = np.diff(np.concatenate(([0.0], np.asarray(w, dtype=float))))
        return RiskValue.finite(float(np.dot(dist.values, dw)))
    if not isinstance(distortion, Distortion):
        raise ParameterError("non-discrete distributions require a piecewise distortion")
    flags = _domain_flags(dist, distortion)
    if flags.pos_diverges:
        return RiskValue.not_in_domain()
    if flags.neg_diverges:
        return RiskValue.neg_inf()
    total = math.fsum(mass * dist.quantile_lower(loc) for loc, mass in distortion.jumps())
    pieces = distortion.density_pieces()
    points = dist.quantile_breakpoints()
    for piece in pieces:
        total += _quad(
            lambda u, piece=piece: dist.quantile_lower(u) * float(piece.value(u)),
            piece.lo,
            piece.hi,
            points=points,
            epsabs=epsabs / max(len(pieces), 1),
        )
    return RiskValue.finite(total)


def choquet_risk(dist: Distribution, distortion, *, epsabs: float = QUAD_TOL) -> RiskValue:
    """Tail-integral form: distorted survival over (0,inf) minus distorted CDF over (-inf,0)."""
    if dist.is_discrete:
        return RiskValue.finite(_choquet_discrete(dist, distortion))
    if not isinstance(distortion, Distortion):
        raise ParameterError("non-discrete distributions require a piecewise distortion")
    flags = _domain_flags(dist, distortion)
    if flags.pos_diverges:
        return RiskValue.not_in_domain()
    if flags.neg_diverges:
        return RiskValue.neg_inf()

    def dist_fx(x: float) -> float:
        return distortion.eval(dist.cdf(x))

    lo, hi = dist.support()
    cuts = sorted(
        {dist.quantile_lower(t) for t, _ in distortion.jumps()}
        | {dist.quantile_lower(p.lo) for p in distortion.pieces if 0.0 < p.lo < 1.0}
    )
    pos = 0.0
    if hi > 0.0:
        start = 0.0
        if lo > 0.0:
            pos += lo  # survival weight is 1 below the support
            start = lo
        stops = [c for c in cuts if c > start] + [hi]
        prev = start
        for stop in stops:
            stop = min(stop, hi)
            if stop <= prev:
                continue
            if math.isinf(stop):
                pos += _quad_tail(lambda x: 1.0 - dist_fx(x), prev, math.inf, epsabs=epsabs / 4)
            else:
                pos += _quad(lambda x: 1.0 - dist_fx(x), prev, stop, epsabs=epsabs / 4)
            prev = stop
    neg = 0.0
    if lo < 0.0:
        end = 0.0
        if hi < 0.0:
            neg += -hi  # distorted CDF is 1 between the support top and zero
            end = hi
        starts = [lo] + [c for c in cuts if c < end]
        prev = end
        for start in reversed(starts):
            start = max(start, lo)
            if start >= prev:
                continue
            if math.isinf(start):
                neg += _quad_tail(dist_fx, -math.inf, prev, epsabs=epsabs / 4)
            else:
                neg += _quad(dist_fx, start, prev, epsabs=epsabs / 4)
            prev = start
    return RiskValue.finite(pos - neg)


def _choquet_discrete(dist: Discrete, distortion) -> float:
    edges = np.unique(np.concatenate((dist.values, [0.0])))
    terms = []
    for a, b in zip(edges, edges[1:]):
        level = dist.cdf(a)
        dlevel = float(distortion.eval(level))
        if b <= 0.0:
            terms.append(-(b - a) * dlevel)
        else:
            terms.append((b - a) * (1.0 - dlevel))
    return math.fsum(terms)


def mixture_risk(dist: Distribution, distortion: Distortion, *, epsabs: float = MIXTURE_TOL) -> RiskValue:
    """Average of rescaled expected shortfalls against the spectral mixing measure.

    Only convex distortions admit this representation; atoms of the mixing
    measure are summed exactly and its density integrated numerically.
    """
    res = is_convex(distortion)
    if not res.convex:
        raise NotSpectralError(
            f"{distortion.label()} is not convex: no expected-shortfall mixture exists",
            witness=res.witness,
        )
    if not dist.is_discrete:
        flags = _domain_flags(dist, distortion)
        if flags.pos_diverges:
            return RiskValue.not_in_domain()
        if flags.neg_diverges:
            return RiskValue.neg_inf()
    nu = mixture_measure_of(spectral_of(distortion))

    def scaled_es(alpha: float) -> float:
        # (1-alpha) * ES_alpha = integral of the quantile function over (alpha, 1)
        return dist.quantile_integral(alpha, 1.0)

    total = 0.0
    for loc, mass in nu.atoms:
        contrib = scaled_es(loc)
        if math.isinf(contrib):
            return RiskValue.neg_inf() if contrib < 0 else RiskValue.not_in_domain()
        total += mass * contrib
    points = dist.quantile_breakpoints()
    for piece in nu.density:
        total += _quad(
            lambda a, piece=piece: scaled_es(a) * float(piece.value(a)),
            piece.lo,
            piece.hi,
            points=points,
            epsabs=epsabs / max(len(nu.density), 1),
        )
    return RiskValue.finite(total)


# ---------------------------------------------------------------------------
# closed-form measures


def value_at_risk(dist: Distribution, alpha: float) -> float:
    """Lower quantile at alpha; defined and finite for every distribution."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"value-at-risk level must lie in (0,1), got {alpha!r}")
    return dist.quantile_lower(alpha)


def _stop_loss(dist: Distribution, c: float) -> float:
    """E[(X - c)+] via the quantile integral; may be +inf."""
    u0 = dist.cdf(c)
    integral = dist.quantile_integral(u0, 1.0)
    if math.isinf(integral):
        return math.inf
    return integral - c * (1.0 - u0)


def expected_shortfall(dist: Distribution, alpha: float) -> RiskValue:
    """Closed-form shortfall: quantile plus the rescaled stop-loss above it.

    ``alpha = 0`` returns the mean.  The not-in-domain flag appears exactly
    when E[X+] is infinite, for every alpha.
    """
    if not 0.0 <= alpha < 1.0:
        raise ParameterError(f"expected-shortfall level must lie in [0,1), got {alpha!r}")
    if alpha == 0.0:
        m = dist.mean()
        if m == math.inf:
            return RiskValue.not_in_domain()
        if m == -math.inf:
            return RiskValue.neg_inf()
        return RiskValue.finite(m)
    q = dist.quantile_lower(alpha)
    sl = _stop_loss(dist, q)
    if math.isinf(sl):
        return RiskValue.not_in_domain()
    return RiskValue.finite(q + sl / (1.0 - alpha))


@dataclass(frozen=True)
class InfimumResult:
    value: float
    minimizer: float


def expected_shortfall_infimum(dist: Distribution, alpha: float, *, tol: float = 1e-10) -> InfimumResult:
    """Shortfall as the infimum of c + E[(X-c)+]/(1-alpha) over c.

    Golden-section search over a quantile bracket; the objective is convex,
    flat minimizers are acceptable.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"infimum form needs alpha in (0,1), got {alpha!r}")
    if _stop_loss(dist, 0.0) == math.inf:
        raise ParameterError("infimum form requires E[X+] < inf")

    def objective(c: float) -> float:
        return c + _stop_loss(dist, c) / (1.0 - alpha)

    lo = dist.quantile_lower(alpha / 2.0)
    hi = dist.quantile_lower((1.0 + alpha) / 2.0)
    for _ in range(4):
        if hi - lo <= tol:
            c = 0.5 * (lo + hi)
            return InfimumResult(objective(c), c)
        c = _golden_section(objective, lo, hi, tol)
        val = objective(c)
        pad = hi - lo + 1.0
        if objective(lo) < val - 1e-12:
            lo, hi = lo - pad, hi
            continue
        if objective(hi) < val - 1e-12:
            lo, hi = lo, hi + pad
            continue
        return InfimumResult(val, c)
    raise InconclusiveError("bracket for the shortfall infimum failed to enclose a minimizer")


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def expected_shortfall_higher_order(dist: Distribution, n: int, alpha: float) -> RiskValue:
    """Risk under the order-n shortfall distortion; order 1 is plain shortfall."""
    return quantile_risk(dist, higher_order_es_distortion(n, alpha))


# ---------------------------------------------------------------------------
# domain classification


def classify_membership(
    dist: Distribution,
    distortion: Distortion,
    domain_class: DomainClass,
    *,
    method: str = "auto",
) -> MembershipVerdict:
    """Decide membership of ``dist`` in one of the three integrability classes.

    Discrete distributions belong to every class.  Otherwise an analytic
    exponent comparison decides when the tail data is available; the dyadic
    probe of partial integrals is the fallback (and can be forced with
    ``method='probe'``).
    """
    domain_class = DomainClass(domain_class)
    if dist.is_discrete:
        return MembershipVerdict(domain_class, Verdict.MEMBER, "discrete")
    if method not in ("auto", "analytic", "probe"):
        raise ParameterError(f"unknown classify method {method!r}")
    if method != "probe":
        analytic = _classify_analytic(dist, distortion, domain_class)
        if analytic is not None:
            return analytic
        if method == "analytic":
            return MembershipVerdict(domain_class, Verdict.INCONCLUSIVE, "analytic")
    return _classify_probe(dist, distortion, domain_class)


def _classify_analytic(dist, distortion, domain_class) -> MembershipVerdict | None:
    dens0 = distortion.density_exponent_at(0)
    dens1 = distortion.density_exponent_at(1)
    if domain_class is DomainClass.QUANTILE:
        sides = [_tail_rule(dist.upper_tail(), dens1)]
    elif domain_class is DomainClass.ACERBI:
        sides = [
            _tail_rule(dist.upper_tail(), dens1),
            _tail_rule(dist.lower_tail(), dens0),
        ]
    else:
        sides = [_tail_rule(transform(dist, Abs()).upper_tail(), dens1)]
    if any(s is None for s in sides):
        return None
    verdict = Verdict.NON_MEMBER if any(sides) else Verdict.MEMBER
    return MembershipVerdict(domain_class, verdict, "analytic")


def _classify_probe(dist, distortion, domain_class) -> MembershipVerdict:
    if domain_class is DomainClass.QUANTILE:
        h = lambda u: max(dist.quantile_lower(u), 0.0)
        probe_dist = dist
    elif domain_class is DomainClass.ACERBI:
        h = lambda u: abs(dist.quantile_lower(u))
        probe_dist = dist
    else:
        abs_dist = transform(dist, Abs())
        h = lambda u: abs_dist.quantile_lower(u)
        probe_dist = abs_dist
    partials = _dyadic_partials(probe_dist, distortion, h)
    return MembershipVerdict(domain_class, _judge_partials(partials), "probe", partials)


# ---------------------------------------------------------------------------
# domain comparison


@dataclass(frozen=True)
class DomainComparison:
    """Pointwise ordering evidence for two distortions on [delta, 1)."""

    delta: float
    d1_le_d2: bool
    d2_le_d1: bool
    max_excess_1_over_2: float
    max_excess_2_over_1: float
    relation: str  # "subset-1-in-2" | "subset-2-in-1" | "equal-on-grid" | "incomparable"
    sandwich_1: tuple[int, float] | None
    sandwich_2: tuple[int, float] | None

    @property
    def domain_equals_expectation_1(self) -> bool:
        return self.sandwich_1 is not None

    @property
    def domain_equals_expectation_2(self) -> bool:
        return self.sandwich_2 is not None


def compare_domains(d1: Distortion, d2: Distortion, delta: float = 0.25) -> DomainComparison:
    """Grid comparison of two distortions on [delta, 1).

    A smaller distortion on [delta, 1) has the smaller domain.  The sandwich
    flags certify (per distortion) that some order-n shortfall curve lies
    below it while it stays below the identity, which pins its domain to the
    expectation's.
    """
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0,1), got {delta!r}")
    grid = _comparison_grid(d1, d2, delta)
    v1 = np.asarray(d1.eval(grid))
    v2 = np.asarray(d2.eval(grid))
    exc12 = float(np.max(v1 - v2))
    exc21 = float(np.max(v2 - v1))
    le12 = exc12 <= 1e-12
    le21 = exc21 <= 1e-12
    if le12 and le21:
        relation = "equal-on-grid"
    elif le12:
        relation = "subset-1-in-2"
    elif le21:
        relation = "subset-2-in-1"
    else:
        relation = "incomparable"
    return DomainComparison(
        delta=delta,
        d1_le_d2=le12,
        d2_le_d1=le21,
        max_excess_1_over_2=exc12,
        max_excess_2_over_1=exc21,
        relation=relation,
        sandwich_1=_sandwich_certificate(d1, grid, np.asarray(v1)),
        sandwich_2=_sandwich_certificate(d2, grid, np.asarray(v2)),
    )


def _comparison_grid(d1, d2, delta) -> np.ndarray:
    pts = set(np.linspace(delta, 1.0, 2049)[:-1])
    for d in (d1, d2):
        if isinstance(d, Distortion):
            for p in d.pieces:
                pts.add(p.lo)
            for loc, _ in d.jumps():
                pts.update((loc, loc - 1e-9, loc + 1e-9))
    return np.array(sorted(p for p in pts if delta <= p < 1.0))


def _sandwich_certificate(d, grid, values) -> tuple[int, float] | None:
    if np.max(values - grid) > 1e-12:  # must stay below the identity
        return None
    for n in range(1, 7):
        for alpha in np.arange(0.05, 1.0, 0.05):
            low = higher_order_es_distortion(n, round(float(alpha), 2))
            if np.max(np.asarray(low.eval(grid)) - values) <= 1e-12:
                return (n, round(float(alpha), 2))
    return None
