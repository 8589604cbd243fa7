"""Möbius gyrovector arithmetic on the open s-ball.

Points are complex scalars of the ball of radius ``s``. Every formula is
evaluated on the unit disc; a point of a general ball is scaled to the unit
disc, combined there and scaled back, so there is a single code path and the
maps involved are exactly linear.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict

from .errors import (
    BallMismatchError,
    DomainError,
    InternalConsistencyError,
    NonFiniteError,
    OutsideBallError,
)


logger = logging.getLogger(__name__)

ALGEBRAIC_TOLERANCE = 1e-12
GYRATION_TOLERANCE = 1e-12
NEAR_BOUNDARY_MARGIN = 1e-6

_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class BallParam:
    """Radius ``s`` of the Möbius ball; ``s = 1`` is the Poincaré disc."""

    s: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.s, (int, float)) or not math.isfinite(self.s) or self.s <= 0:
            raise DomainError(f"Ball radius must be a positive finite real, got {self.s!r}")
        object.__setattr__(self, "s", float(self.s))


UNIT_BALL = BallParam()


@dataclass(frozen=True)
class DiscPoint:
    """A point of the open s-ball stored as the complex scalar ``re + i*im``."""

    re: float
    im: float
    ball: BallParam = UNIT_BALL

    def __post_init__(self) -> None:
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise NonFiniteError(f"Point coordinates must be finite, got ({self.re!r}, {self.im!r})")
        if math.hypot(re, im) >= self.ball.s:
            raise OutsideBallError(
                f"Point {complex(re, im)} lies outside the open ball of radius {self.ball.s}"
            )
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_complex(cls, z: complex, ball: BallParam = UNIT_BALL) -> "DiscPoint":
        z = complex(z)
        return cls(z.real, z.imag, ball)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def unit(self) -> complex:
        """Coordinates rescaled to the unit disc."""
        return self.z / self.ball.s

    @property
    def norm(self) -> float:
        return math.hypot(self.re, self.im)

    def is_near_boundary(self, margin: float = NEAR_BOUNDARY_MARGIN) -> bool:
        return self.norm > (1.0 - margin) * self.ball.s

    def close_to(self, other: "DiscPoint", tol: float = ALGEBRAIC_TOLERANCE) -> bool:
        """Componentwise equality within ``tol * s``."""
        common_ball(self, other)
        scale = tol * self.ball.s
        return abs(self.re - other.re) <= scale and abs(self.im - other.im) <= scale

    def to_json(self) -> list:
        return [self.re, self.im]


@dataclass(frozen=True)
class GyrationFactor:
    """Unimodular factor gyr[a, b]; gyrations act on the disc as rotations."""

    u: complex

    def __post_init__(self) -> None:
        if abs(abs(self.u) - 1.0) > GYRATION_TOLERANCE:
            raise InternalConsistencyError(f"Gyration factor {self.u} is not unimodular")

    def apply(self, p: DiscPoint) -> DiscPoint:
        return from_unit(self.u * p.unit, p.ball)


@dataclass(frozen=True)
class GammaLength:
    """A gyrolength ``v`` together with ``v_gamma = v / (1 - v^2/s^2)``."""

    v: float
    v_gamma: float

    @property
    def residual(self) -> float:
        return self.v_gamma - self.v


def common_ball(*points: DiscPoint) -> BallParam:
    """Return the ball shared by ``points``; mixing balls is an error."""
    ball = points[0].ball
    for point in points[1:]:
        if point.ball != ball:
            raise BallMismatchError(f"Points belong to different balls (s={ball.s} and s={point.ball.s})")
    return ball


def from_unit(w: complex, ball: BallParam = UNIT_BALL) -> DiscPoint:
    """Build a point of ``ball`` from unit-disc coordinates ``w``."""
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise NonFiniteError(f"Non-finite result {w}")
    if abs(w) >= 1.0:
        raise OutsideBallError(f"Result {w} escaped the unit disc (|w| = {abs(w)!r})")
    z = w * ball.s
    if abs(z) >= ball.s:
        # |w| < 1 but scaling rounded onto the boundary
        z *= math.nextafter(ball.s, 0.0) / abs(z)
    return DiscPoint(z.real, z.imag, ball)


def origin(ball: BallParam = UNIT_BALL) -> DiscPoint:
    return DiscPoint(0.0, 0.0, ball)


def _check_finite(value: float, name: str) -> float:
    if not math.isfinite(value):
        raise NonFiniteError(f"{name} must be finite, got {value!r}")
    return float(value)


def mobius_add(a: DiscPoint, b: DiscPoint) -> DiscPoint:
    """Möbius addition a ⊕ b = (a + b) / (1 + conj(a) b)."""
    ball = common_ball(a, b)
    u, w = a.unit, b.unit
    return from_unit((u + w) / (1 + u.conjugate() * w), ball)


def mobius_neg(a: DiscPoint) -> DiscPoint:
    return DiscPoint(-a.re, -a.im, a.ball)


def mobius_sub(a: DiscPoint, b: DiscPoint) -> DiscPoint:
    """Gyro-difference a ⊖ b = a ⊕ (-b)."""
    return mobius_add(a, mobius_neg(b))


def gyr(a: DiscPoint, b: DiscPoint) -> GyrationFactor:
    """gyr[a, b] = (1 + a conj(b)) / (1 + conj(a) b)."""
    common_ball(a, b)
    u, w = a.unit, b.unit
    return GyrationFactor((1 + u * w.conjugate()) / (1 + u.conjugate() * w))


def mobius_scalar_mul(r: float, a: DiscPoint) -> DiscPoint:
    """r ⊗ a = s tanh(r artanh(|a|/s)) a/|a|, and 0 ⊗ anything = 0."""
    r = _check_finite(r, "Scalar")
    w = a.unit
    n = abs(w)
    if n == 0.0 or r == 0.0:
        return origin(a.ball)
    m = math.tanh(r * math.atanh(n))
    # tanh saturates to 1.0 for large arguments
    m = math.copysign(min(abs(m), _BELOW_ONE), m)
    return from_unit(w / n * m, a.ball)


def mobius_midpoint(a: DiscPoint, b: DiscPoint) -> DiscPoint:
    """Gyromidpoint a ⊕ (½ ⊗ ((⊖a) ⊕ b))."""
    return mobius_add(a, mobius_scalar_mul(0.5, mobius_add(mobius_neg(a), b)))


def gamma_correct(v: float, ball: BallParam = UNIT_BALL) -> GammaLength:
    """Gamma-corrected gyrolength v / (1 - v^2/s^2) for 0 <= v < s."""
    v = _check_finite(v, "Gyrolength")
    if v < 0.0 or v >= ball.s:
        raise DomainError(f"Gyrolength {v!r} outside [0, {ball.s}); a point escaped the ball")
    q = v / ball.s
    return GammaLength(v, v / ((1.0 - q) * (1.0 + q)))


def _one_minus_square(w: complex) -> float:
    n = abs(w)
    return (1.0 - n) * (1.0 + n)


def hyp_distance(a: DiscPoint, b: DiscPoint) -> GammaLength:
    """
    Gyrodistance |(a - b) / (1 - conj(a) b)| with its gamma-corrected value.

    The corrected value uses 1 - v^2 = (1 - |a|^2)(1 - |b|^2) / |1 - conj(a) b|^2,
    which keeps full relative accuracy near the boundary.
    """
    ball = common_ball(a, b)
    u, w = a.unit, b.unit
    # two moduli keep d(a, b) == d(b, a) bit for bit
    chord = abs(u - w)
    spread = abs(1 - u.conjugate() * w)
    v = chord / spread
    if not v < 1.0:
        raise DomainError(f"Gyrolength {v * ball.s!r} is not below s={ball.s}")
    v_gamma = chord * spread / (_one_minus_square(u) * _one_minus_square(w))
    return GammaLength(v * ball.s, v_gamma * ball.s)


def rapidity(a: DiscPoint, b: DiscPoint) -> float:
    """artanh(d(a, b)/s); additive along a gyroline."""
    length = hyp_distance(a, b)
    return math.atanh(length.v / a.ball.s)


def rescale(p: DiscPoint, target: BallParam) -> DiscPoint:
    """Map z to z * (s_target / s_source); preserves |z|/s."""
    if p.ball == target:
        return p
    z = p.z * (target.s / p.ball.s)
    if abs(z) >= target.s:
        z *= math.nextafter(target.s, 0.0) / abs(z)
    return DiscPoint(z.real, z.imag, target)


@dataclass(frozen=True)
class DiscIsometry:
    """Orientation-preserving disc isometry z -> e^{i theta} (z0 ⊕ z)."""

    translation: DiscPoint
    theta: float = 0.0

    def apply(self, p: DiscPoint) -> DiscPoint:
        moved = mobius_add(self.translation, p)
        return from_unit(cmath.exp(1j * self.theta) * moved.unit, moved.ball)

    def __call__(self, p: DiscPoint) -> DiscPoint:
        return self.apply(p)


def _norm_add(x: float, y: float) -> float:
    """Möbius addition of real norms on the unit interval."""
    return (x + y) / (1.0 + x * y)


def _real_scalar_mul(r: float, x: float) -> float:
    return math.tanh(r * math.atanh(x)) if x else 0.0


def axiom_residuals(
    a: DiscPoint,
    b: DiscPoint,
    u: DiscPoint,
    v: DiscPoint,
    r1: float,
    r2: float,
) -> Dict[str, float]:
    """
    Evaluate the gyrovector-space axioms on one sample.

    Residuals are measured in unit-disc coordinates. ``G8`` reports the amount
    by which the gyrotriangle inequality is violated (0 when it holds). Axiom
    G6 is reported both as printed (the same scalar twice) and with two
    scalars.
    """
    common_ball(a, b, u, v)
    g = gyr(u, v)

    ga, gb = g.u * a.unit, g.u * b.unit
    inner = abs((ga.conjugate() * gb).real - (a.unit.conjugate() * b.unit).real)

    r1a = mobius_scalar_mul(r1, a)
    r2a = mobius_scalar_mul(r2, a)

    g4 = 0.0
    if a.norm > 0.0 and r1 != 0.0:
        lhs = mobius_scalar_mul(abs(r1), a).unit / mobius_scalar_mul(r1, a).norm * a.ball.s
        g4 = abs(lhs - a.unit / abs(a.unit))

    norm_a, norm_b = abs(a.unit), abs(b.unit)
    residuals: Dict[str, float] = {
        "inner_product": inner,
        "G1": abs(mobius_scalar_mul(1.0, a).unit - a.unit),
        "G2": abs(mobius_scalar_mul(r1 + r2, a).unit - mobius_add(r1a, r2a).unit),
        "G3": abs(mobius_scalar_mul(r1 * r2, a).unit - mobius_scalar_mul(r1, r2a).unit),
        "G4": g4,
        "G5": abs(g.u * r1a.unit - mobius_scalar_mul(r1, g.apply(a)).unit),
        "G6_printed": abs(gyr(mobius_scalar_mul(r1, v), mobius_scalar_mul(r1, v)).u - 1.0),
        "G6_two_scalar": abs(gyr(mobius_scalar_mul(r1, v), mobius_scalar_mul(r2, v)).u - 1.0),
        "G7": abs(abs(r1a.unit) - _real_scalar_mul(abs(r1), norm_a)),
        "G8": max(0.0, abs(mobius_add(a, b).unit) - _norm_add(norm_a, norm_b)),
    }
    return residuals
