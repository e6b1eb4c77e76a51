"""Distortion functions on [0,1] as exact piecewise data.

A distortion is stored as contiguous pieces covering [0,1); each piece is a
shifted power ``base + coef * ((u - origin)/width)**expo`` which covers
constants, lines and the named power families in one form.  Jumps are the
discontinuities between consecutive pieces; the function is evaluated
right-continuously, so the value at a jump point is the post-jump value.
Everything downstream (measures, derivatives, primitives) stays in closed
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotSpectralError, ParameterError

__all__ = [
    "Piece",
    "DensityPiece",
    "Distortion",
    "GridDistortion",
    "DistortionMeasure",
    "SpectralDensity",
    "MixtureMeasure",
    "ConvexityResult",
    "make_named",
    "expectation",
    "value_at_risk_distortion",
    "expected_shortfall_distortion",
    "higher_order_es_distortion",
    "threshold_distortion",
    "sqrt_example_distortion",
    "is_convex",
    "midpoint_convexity",
    "measure_of",
    "spectral_of",
    "distortion_of",
    "mixture_measure_of",
]

_MASS_TOL = 1e-12
_JUMP_TOL = 1e-12

# lattice for the grid-based convexity check on opaque distortions
_GRID_U = 512
_GRID_EPS = 1024


@dataclass(frozen=True)
class Piece:
    """value(u) = base + coef * ((u - origin)/width)**expo on [lo, hi)."""

    lo: float
    hi: float
    base: float
    coef: float
    origin: float
    width: float
    expo: float

    def __post_init__(self):
        if not 0.0 <= self.lo < self.hi <= 1.0:
            raise ParameterError(f"piece interval [{self.lo}, {self.hi}) not inside [0,1]")
        if self.width <= 0:
            raise ParameterError("piece width must be positive")
        if self.origin > self.lo + 1e-15:
            raise ParameterError("piece origin must not exceed its left endpoint")
        if self.expo < 0:
            raise ParameterError("piece exponent must be >= 0")
        if self.coef < 0:
            raise ParameterError("pieces must be increasing (coef >= 0)")

    def value(self, u):
        if self.expo == 0.0:
            return self.base + self.coef * np.ones_like(np.asarray(u, dtype=float))
        z = (np.asarray(u, dtype=float) - self.origin) / self.width
        return self.base + self.coef * np.maximum(z, 0.0) ** self.expo

    def value_at_hi(self) -> float:
        """Left limit at hi (pieces are continuous on their closure)."""
        return float(self.value(self.hi))

    def density(self) -> DensityPiece | None:
        """Derivative on (lo, hi); None when the piece is flat."""
        if self.coef == 0.0 or self.expo == 0.0:
            return None
        return DensityPiece(
            lo=self.lo,
            hi=self.hi,
            coef=self.coef * self.expo / self.width,
            origin=self.origin,
            width=self.width,
            expo=self.expo - 1.0,
        )


@dataclass(frozen=True)
class DensityPiece:
    """value(u) = coef * ((u - origin)/width)**expo on (lo, hi); expo > -1."""

    lo: float
    hi: float
    coef: float
    origin: float
    width: float
    expo: float

    def __post_init__(self):
        if not 0.0 <= self.lo < self.hi <= 1.0:
            raise ParameterError(f"density interval [{self.lo}, {self.hi}) not inside [0,1]")
        if self.width <= 0:
            raise ParameterError("density width must be positive")
        if self.expo <= -1.0:
            raise ParameterError("density exponent must exceed -1 to stay integrable")
        if self.coef < 0:
            raise ParameterError("densities must be non-negative")

    def value(self, u):
        if self.expo == 0.0:
            return self.coef * np.ones_like(np.asarray(u, dtype=float))
        z = (np.asarray(u, dtype=float) - self.origin) / self.width
        return self.coef * np.maximum(z, 0.0) ** self.expo

    def integral(self, a: float, b: float) -> float:
        """Exact integral over (a, b) intersected with (lo, hi)."""
        a = max(a, self.lo)
        b = min(b, self.hi)
        if b <= a:
            return 0.0
        e1 = self.expo + 1.0
        za = (a - self.origin) / self.width
        zb = (b - self.origin) / self.width
        return self.coef * self.width / e1 * (max(zb, 0.0) ** e1 - max(za, 0.0) ** e1)

    def antiderivative_piece(self, cum_lo: float) -> Piece:
        """Primitive starting from value cum_lo at lo, as a distortion piece."""
        e1 = self.expo + 1.0
        c = self.coef * self.width / e1
        za = max((self.lo - self.origin) / self.width, 0.0)
        return Piece(
            lo=self.lo,
            hi=self.hi,
            base=cum_lo - c * za**e1,
            coef=c,
            origin=self.origin,
            width=self.width,
            expo=e1,
        )


@dataclass(frozen=True)
class ConvexityResult:
    convex: bool
    witness: tuple[float, float] | None = None  # (u, eps) violating the midpoint test

    def __bool__(self) -> bool:
        return self.convex


class Distortion:
    """Increasing right-continuous D on [0,1] with D(0)=0 and D(1-)=1."""

    def __init__(self, pieces, name: str | None = None):
        pieces = sorted(pieces, key=lambda p: p.lo)
        if not pieces:
            raise ParameterError("a distortion needs at least one piece")
        if pieces[0].lo != 0.0 or pieces[-1].hi != 1.0:
            raise ParameterError("pieces must cover [0,1)")
        for prev, nxt in zip(pieces, pieces[1:]):
            if prev.hi != nxt.lo:
                raise ParameterError("pieces must be contiguous")
        self.pieces: tuple[Piece, ...] = tuple(pieces)
        self.name = name
        self._knots = np.array([p.lo for p in pieces])
        start = float(pieces[0].value(0.0))
        if abs(start) > _MASS_TOL:
            raise ParameterError(f"distortion must vanish at 0, got {start!r}")
        jumps = []
        for prev, nxt in zip(pieces, pieces[1:]):
            h = float(nxt.value(nxt.lo)) - prev.value_at_hi()
            if h < -_JUMP_TOL:
                raise ParameterError(f"distortion decreases at {nxt.lo!r}")
            if h > _JUMP_TOL:
                jumps.append((nxt.lo, h))
        self._jumps = tuple(jumps)
        top = pieces[-1].value_at_hi()
        if abs(top - 1.0) > _MASS_TOL:
            raise ParameterError(f"distortion must reach 1 at 1, got {top!r}")

    def eval(self, u):
        """Evaluate D; scalar in, scalar out.  Right-continuous at jumps."""
        scalar = np.isscalar(u) or np.ndim(u) == 0
        arr = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any((arr < 0.0) | (arr > 1.0)):
            raise ParameterError("distortion argument must lie in [0,1]")
        idx = np.minimum(np.searchsorted(self._knots, arr, side="right") - 1, len(self.pieces) - 1)
        out = np.empty_like(arr)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if np.any(mask):
                out[mask] = piece.value(arr[mask])
        out = np.where(arr == 1.0, 1.0, out)
        return float(out[0]) if scalar else out

    def left_limit(self, u: float) -> float:
        """lim_{v -> u-} D(v) for u in (0,1]."""
        u = float(u)
        if not 0.0 < u <= 1.0:
            raise ParameterError("left limit requires u in (0,1]")
        idx = int(np.searchsorted(self._knots, u, side="left")) - 1
        return float(self.pieces[idx].value(u))

    def jumps(self) -> tuple[tuple[float, float], ...]:
        """Interior discontinuities as (location, height) pairs."""
        return self._jumps

    def density_pieces(self) -> tuple[DensityPiece, ...]:
        return tuple(p.density() for p in self.pieces if p.density() is not None)

    def density_exponent_at(self, endpoint: int):
        """Local density behaviour q(u) ~ coef * t**expo at endpoint 0 or 1.

        Returns (expo, coef) with t the distance to the endpoint, or None
        when no density piece touches it (D flat there or atom-only).
        """
        if endpoint == 0:
            piece = self.pieces[0]
            dens = piece.density()
            if dens is None:
                return None
            if dens.origin == 0.0:
                return dens.expo, dens.coef * dens.width ** (-dens.expo)
            return 0.0, float(dens.value(0.0))
        piece = self.pieces[-1]
        dens = piece.density()
        if dens is None:
            return None
        # origin <= lo < 1, so the density is bounded and positive at 1-
        return 0.0, float(dens.value(1.0))

    def label(self) -> str:
        return self.name or f"piecewise({len(self.pieces)} pieces)"

    def __repr__(self) -> str:
        return f"Distortion({self.label()})"


class GridDistortion:
    """Opaque distortion given only by a callable.

    Supports evaluation and the lattice midpoint convexity check; the exact
    structural operations require the piecewise representation.
    """

    def __init__(self, fn, name: str | None = None):
        self._fn = fn
        self.name = name
        if abs(float(fn(0.0))) > 1e-9 or abs(float(fn(1.0)) - 1.0) > 1e-9:
            raise ParameterError("callable distortion must map 0 to 0 and 1 to 1")

    def eval(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any((arr < 0.0) | (arr > 1.0)):
            raise ParameterError("distortion argument must lie in [0,1]")
        if np.isscalar(u) or arr.ndim == 0:
            return float(self._fn(float(u)))
        return np.array([float(self._fn(float(v))) for v in arr])

    def label(self) -> str:
        return self.name or "callable"


# ---------------------------------------------------------------------------
# named families


def expectation() -> Distortion:
    return Distortion([_linear_identity(0.0, 1.0)], name="expectation")


def value_at_risk_distortion(alpha: float) -> Distortion:
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"var level must lie in (0,1), got {alpha!r}")
    return Distortion(
        [_flat(0.0, alpha, 0.0), _flat(alpha, 1.0, 1.0)],
        name=f"var({alpha:g})",
    )


def expected_shortfall_distortion(alpha: float) -> Distortion:
    return higher_order_es_distortion(1, alpha, _name=f"es({alpha:g})")


def higher_order_es_distortion(n: int, alpha: float, _name: str | None = None) -> Distortion:
    if int(n) != n or n < 1:
        raise ParameterError(f"order must be an integer >= 1, got {n!r}")
    if not 0.0 <= alpha < 1.0:
        raise ParameterError(f"es level must lie in [0,1), got {alpha!r}")
    n = int(n)
    name = _name or f"es_n({n},{alpha:g})"
    ramp = Piece(lo=alpha, hi=1.0, base=0.0, coef=1.0, origin=alpha, width=1.0 - alpha, expo=float(n))
    if alpha == 0.0:
        return Distortion([ramp], name=name)
    return Distortion([_flat(0.0, alpha, 0.0), ramp], name=name)


def threshold_distortion(delta: float) -> Distortion:
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"threshold must lie in (0,1), got {delta!r}")
    return Distortion(
        [_linear_identity(0.0, delta), _flat(delta, 1.0, 1.0)],
        name=f"threshold({delta:g})",
    )


def sqrt_example_distortion() -> Distortion:
    half_sqrt = Piece(lo=0.0, hi=0.25, base=0.0, coef=0.5, origin=0.0, width=1.0, expo=0.5)
    return Distortion([half_sqrt, _linear_identity(0.25, 1.0)], name="sqrt_example")


def _linear_identity(lo: float, hi: float) -> Piece:
    return Piece(lo=lo, hi=hi, base=0.0, coef=1.0, origin=0.0, width=1.0, expo=1.0)


def _flat(lo: float, hi: float, level: float) -> Piece:
    return Piece(lo=lo, hi=hi, base=level, coef=0.0, origin=0.0, width=1.0, expo=0.0)


_NAMED = {
    "expectation": ((), lambda params: expectation()),
    "var": (("alpha",), lambda params: value_at_risk_distortion(params["alpha"])),
    "es": (("alpha",), lambda params: expected_shortfall_distortion(params["alpha"])),
    "es_n": (("n", "alpha"), lambda params: higher_order_es_distortion(params["n"], params["alpha"])),
    "threshold": (("delta",), lambda params: threshold_distortion(params["delta"])),
    "sqrt_example": ((), lambda params: sqrt_example_distortion()),
}


def make_named(name: str, **params) -> Distortion:
    """Build one of the named families: expectation, var, es, es_n, threshold, sqrt_example."""
    try:
        required, builder = _NAMED[name]
    except KeyError:
        raise ParameterError(f"unknown distortion family {name!r}") from None
    missing = [k for k in required if k not in params]
    extra = sorted(set(params) - set(required))
    if missing or extra:
        raise TypeError(
            f"family {name!r} takes parameters {list(required)}; missing {missing}, unexpected {extra}"
        )
    return builder(params)


# ---------------------------------------------------------------------------
# measure, convexity, spectrum


@dataclass(frozen=True)
class DistortionMeasure:
    """Atoms plus density of the probability measure on (0,1) induced by D."""

    atoms: tuple[tuple[float, float], ...]
    density: tuple[DensityPiece, ...]

    def total_mass(self) -> float:
        return math.fsum(m for _, m in self.atoms) + math.fsum(
            p.integral(p.lo, p.hi) for p in self.density
        )


def measure_of(distortion: Distortion) -> DistortionMeasure:
    return DistortionMeasure(atoms=distortion.jumps(), density=distortion.density_pieces())


def is_convex(distortion) -> ConvexityResult:
    """Exact convexity decision for piecewise distortions, lattice check otherwise.

    A non-convex result carries a witness (u, eps) with
    ``2 D(u) > D(u-eps) + D(u+eps)``.
    """
    if not isinstance(distortion, Distortion):
        return midpoint_convexity(distortion)
    for loc, _height in distortion.jumps():
        return ConvexityResult(False, _shrink_witness(distortion, loc))
    # strictly concave piece: positive curvature violation in its interior
    for piece in distortion.pieces:
        if piece.coef > 0 and 0.0 < piece.expo < 1.0:
            u = 0.5 * (piece.lo + piece.hi)
            return ConvexityResult(False, _shrink_witness(distortion, u, 0.25 * (piece.hi - piece.lo)))
    # slope drop across a knot
    for prev, nxt in zip(distortion.pieces, distortion.pieces[1:]):
        if _slope_left(prev) > _slope_right(nxt) + 1e-15:
            return ConvexityResult(False, _shrink_witness(distortion, nxt.lo))
    return ConvexityResult(True)


def _slope_left(piece: Piece) -> float:
    dens = piece.density()
    return 0.0 if dens is None else float(dens.value(piece.hi))


def _slope_right(piece: Piece) -> float:
    dens = piece.density()
    return 0.0 if dens is None else float(dens.value(piece.lo))


def _shrink_witness(distortion, u: float, eps: float | None = None) -> tuple[float, float]:
    """Find eps with a strict midpoint violation at u, halving from a safe start."""
    if eps is None:
        eps = 0.5 * min(u, 1.0 - u)
    for _ in range(80):
        if 2.0 * distortion.eval(u) > distortion.eval(u - eps) + distortion.eval(u + eps) + 1e-15:
            return (u, eps)
        eps *= 0.5
    raise AssertionError(f"no midpoint violation found near u={u}")


def midpoint_convexity(distortion, u_grid: int = _GRID_U, eps_grid: int = _GRID_EPS) -> ConvexityResult:
    """Midpoint test on the (u, eps) lattice; works on any evaluable distortion.

    Scans u = k/u_grid, eps = j/eps_grid with eps < min(u, 1-u); returns the
    first violation (smallest u, then smallest eps).
    """
    for k in range(1, u_grid):
        u = k / u_grid
        du = float(distortion.eval(u))
        cap = min(u, 1.0 - u)
        eps = np.arange(1, eps_grid) / eps_grid
        eps = eps[eps < cap]
        if len(eps) == 0:
            continue
        bad = 2.0 * du > np.asarray(distortion.eval(u - eps)) + np.asarray(distortion.eval(u + eps)) + 1e-12
        if np.any(bad):
            j = int(np.argmax(bad))
            return ConvexityResult(False, (u, float(eps[j])))
    return ConvexityResult(True)


class SpectralDensity:
    """Increasing density s on (0,1) with unit integral, stored piecewise."""

    def __init__(self, pieces):
        pieces = sorted(pieces, key=lambda p: p.lo)
        if not pieces:
            raise ParameterError("a spectral density needs at least one piece")
        if pieces[0].lo != 0.0 or pieces[-1].hi != 1.0:
            raise ParameterError("density pieces must cover (0,1)")
        for prev, nxt in zip(pieces, pieces[1:]):
            if prev.hi != nxt.lo:
                raise ParameterError("density pieces must be contiguous")
        for p in pieces:
            if p.expo < 0:
                raise ParameterError("spectral pieces must be increasing (expo >= 0)")
        for prev, nxt in zip(pieces, pieces[1:]):
            if float(nxt.value(nxt.lo)) < float(prev.value(prev.hi)) - _JUMP_TOL:
                raise ParameterError(f"spectral density decreases at {nxt.lo!r}")
        total = math.fsum(p.integral(p.lo, p.hi) for p in pieces)
        if abs(total - 1.0) > _MASS_TOL:
            raise ParameterError(f"spectral density must integrate to 1, got {total!r}")
        self.pieces: tuple[DensityPiece, ...] = tuple(pieces)
        self._knots = np.array([p.lo for p in pieces])

    def eval(self, u):
        scalar = np.isscalar(u) or np.ndim(u) == 0
        arr = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any((arr <= 0.0) | (arr >= 1.0)):
            raise ParameterError("spectral density argument must lie in (0,1)")
        idx = np.minimum(np.searchsorted(self._knots, arr, side="right") - 1, len(self.pieces) - 1)
        out = np.empty_like(arr)
        for i, piece in enumerate(self.pieces):
            mask = idx == i
            if np.any(mask):
                out[mask] = piece.value(arr[mask])
        return float(out[0]) if scalar else out

    def value_at_zero(self) -> float:
        """Right limit at 0, the infimum of the (increasing) density."""
        return float(self.pieces[0].value(self.pieces[0].lo))


def spectral_of(distortion: Distortion) -> SpectralDensity:
    """Derivative of a convex distortion, the density of its measure."""
    res = is_convex(distortion)
    if not res.convex:
        raise NotSpectralError(
            f"{distortion.label()} is not convex, hence admits no increasing density",
            witness=res.witness,
        )
    pieces = []
    for p in distortion.pieces:
        dens = p.density()
        if dens is None:
            dens = DensityPiece(lo=p.lo, hi=p.hi, coef=0.0, origin=0.0, width=1.0, expo=0.0)
        pieces.append(dens)
    return SpectralDensity(pieces)


def distortion_of(spectrum: SpectralDensity) -> Distortion:
    """Primitive of a spectral density: the convex distortion it represents."""
    pieces = []
    cum = 0.0
    for dens in spectrum.pieces:
        piece = dens.antiderivative_piece(cum)
        cum = piece.value_at_hi()
        pieces.append(piece)
    return Distortion(pieces, name="integral")


@dataclass(frozen=True)
class MixtureMeasure:
    """Measure nu on [0,1) with nu[[0,u]] = s(u); weights the ES mixture."""

    atoms: tuple[tuple[float, float], ...]
    density: tuple[DensityPiece, ...]

    def cumulative(self, u: float) -> float:
        """nu[[0,u]] for u in (0,1)."""
        atom_part = math.fsum(m for loc, m in self.atoms if loc <= u)
        dens_part = math.fsum(p.integral(0.0, u) for p in self.density)
        return atom_part + dens_part


def mixture_measure_of(spectrum: SpectralDensity) -> MixtureMeasure:
    atoms = []
    at_zero = spectrum.value_at_zero()
    if at_zero > 0.0:
        atoms.append((0.0, at_zero))
    prev_end = at_zero
    density = []
    for dens in spectrum.pieces:
        start = float(dens.value(dens.lo))
        if start > prev_end + _JUMP_TOL:
            atoms.append((dens.lo, start - prev_end))
        if dens.expo > 0.0 and dens.coef > 0.0:
            density.append(
                DensityPiece(
                    lo=dens.lo,
                    hi=dens.hi,
                    coef=dens.coef * dens.expo / dens.width,
                    origin=dens.origin,
                    width=dens.width,
                    expo=dens.expo - 1.0,
                )
            )
        prev_end = float(dens.value(dens.hi))
    return MixtureMeasure(atoms=tuple(atoms), density=tuple(density))
