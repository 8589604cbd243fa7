"""Gyrolines (geodesics) of the s-ball as Euclidean carriers.

A gyroline is either a diameter or a circular arc orthogonal to the boundary.
On the unit disc both kinds are members of the pencil

    a (|z|^2 + 1) - 2 Re(conj(b) z) = 0,    a >= 0, |b| = 1,

with ``a = 0`` for diameters and ``b / a`` the center of an arc. Incidence and
intersection are evaluated on the pencil coefficients, which stay bounded for
nearly straight arcs.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from .errors import (
    BallMismatchError,
    DegenerateInputError,
    DomainError,
    IndeterminateError,
    InternalConsistencyError,
)
from .mobius_core import (
    ALGEBRAIC_TOLERANCE,
    UNIT_BALL,
    BallParam,
    DiscIsometry,
    DiscPoint,
    common_ball,
    from_unit,
    mobius_add,
    mobius_neg,
    mobius_scalar_mul,
)


logger = logging.getLogger(__name__)

INCIDENCE_TOLERANCE = 1e-9
DIAMETER_THRESHOLD = 1e-12
ORTHOGONALITY_TOLERANCE = 1e-10
INTERSECTION_MARGIN = 1e-12


class GyrolineKind(Enum):
    DIAMETER = "diameter"
    ARC = "arc"


@dataclass(frozen=True)
class Gyroline:
    """
    Canonical form of a gyroline of ``ball``.

    Diameters carry ``theta`` in [0, pi), the direction of the line through
    the origin. Arcs carry ``center`` and ``radius`` in ball coordinates.
    Equality compares the canonical form only; ``anchors`` keeps the two
    points a gyroline was constructed through, when there are any.
    """

    kind: GyrolineKind
    ball: BallParam = UNIT_BALL
    theta: float = 0.0
    center: complex = 0j
    radius: float = 0.0
    pencil_a: float = field(default=0.0, compare=False, repr=False)
    pencil_b: complex = field(default=1j, compare=False, repr=False)
    anchors: Optional[Tuple[DiscPoint, DiscPoint]] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_pencil(cls, a: float, b: complex, ball: BallParam = UNIT_BALL) -> "Gyroline":
        """Build from unit-disc pencil coefficients (normalised on the way in)."""
        scale = abs(b)
        if not math.isfinite(a) or not math.isfinite(scale) or scale == 0.0:
            raise DegenerateInputError(f"Degenerate pencil coefficients a={a!r}, b={b!r}")
        a, b = a / scale, b / scale
        if a < 0.0:
            a, b = -a, -b
        if a <= DIAMETER_THRESHOLD:
            # points of the line are i*b*t; fold the direction into [0, pi)
            theta = math.atan2(b.real, -b.imag) % math.pi
            if theta >= math.pi:
                theta = 0.0
            return cls.diameter(theta, ball)
        if a >= 1.0:
            raise DegenerateInputError("Gyroline carrier does not meet the open ball")
        center = ball.s * b / a
        radius = ball.s * math.sqrt((1.0 - a) * (1.0 + a)) / a
        return cls(GyrolineKind.ARC, ball, 0.0, center, radius, a, b)

    @classmethod
    def diameter(cls, theta: float, ball: BallParam = UNIT_BALL) -> "Gyroline":
        if not math.isfinite(theta) or not 0.0 <= theta < math.pi:
            raise DomainError(f"Diameter angle must lie in [0, pi), got {theta!r}")
        b = -1j * cmath.exp(1j * theta)
        return cls(GyrolineKind.DIAMETER, ball, float(theta), 0j, 0.0, 0.0, b)

    @classmethod
    def arc(cls, center: complex, radius: float, ball: BallParam = UNIT_BALL) -> "Gyroline":
        """Arc with the given Euclidean carrier; must be orthogonal to the boundary."""
        center = complex(center)
        radius = float(radius)
        if not (math.isfinite(center.real) and math.isfinite(center.imag) and math.isfinite(radius)):
            raise DomainError("Arc center and radius must be finite")
        if radius <= 0.0:
            raise DomainError(f"Arc radius must be positive, got {radius!r}")
        s2 = ball.s * ball.s
        mismatch = abs(abs(center) ** 2 - radius * radius - s2)
        if mismatch > ORTHOGONALITY_TOLERANCE * max(s2, radius * radius):
            raise DomainError(
                f"Arc (center={center}, r={radius}) is not orthogonal to the boundary of radius {ball.s}"
            )
        if abs(center) - radius >= ball.s:
            raise DomainError("Arc does not meet the open ball")
        n = abs(center)
        return cls(GyrolineKind.ARC, ball, 0.0, center, radius, ball.s / n, center / n)

    @property
    def is_diameter(self) -> bool:
        return self.kind is GyrolineKind.DIAMETER

    @property
    def pencil(self) -> Tuple[float, complex]:
        return self.pencil_a, self.pencil_b

    def power(self, p: DiscPoint) -> float:
        """Pencil value at ``p`` in unit-disc coordinates (zero on the line)."""
        self._check_ball(p)
        u = p.unit
        a, b = self.pencil
        return a * (abs(u) ** 2 + 1.0) - 2.0 * (b.conjugate() * u).real

    def distance_to_carrier(self, p: DiscPoint) -> float:
        """Euclidean distance from ``p`` to the carrier circle or line."""
        u = p.unit
        a, b = self.pencil
        denominator = abs(a * u - b) + math.sqrt((1.0 - a) * (1.0 + a))
        return abs(self.power(p)) / denominator * self.ball.s

    def sample_points(self) -> Tuple[DiscPoint, DiscPoint]:
        """Two well separated points of the gyroline, either side of its point nearest the origin."""
        a, b = self.pencil
        v = a / (1.0 + math.sqrt((1.0 - a) * (1.0 + a)))
        foot = from_unit(b * v, self.ball)
        step = from_unit(0.5j * b, self.ball)
        return mobius_add(foot, step), mobius_add(foot, mobius_neg(step))

    def ideal_endpoints(self) -> Tuple[complex, complex]:
        """Boundary points of the carrier, in ball coordinates."""
        s = self.ball.s
        if self.is_diameter:
            e = cmath.exp(1j * self.theta)
            return s * e, -s * e
        a, b = self.pencil
        phi = cmath.phase(b)
        spread = math.acos(a)
        return s * cmath.exp(1j * (phi - spread)), s * cmath.exp(1j * (phi + spread))

    def to_dict(self) -> Dict[str, Any]:
        if self.is_diameter:
            return {"kind": GyrolineKind.DIAMETER.value, "theta": self.theta}
        return {
            "kind": GyrolineKind.ARC.value,
            "cx": self.center.real,
            "cy": self.center.imag,
            "r": self.radius,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], ball: BallParam = UNIT_BALL) -> "Gyroline":
        kind = data.get("kind")
        try:
            if kind == GyrolineKind.DIAMETER.value:
                return cls.diameter(float(data["theta"]), ball)
            if kind == GyrolineKind.ARC.value:
                return cls.arc(complex(float(data["cx"]), float(data["cy"])), float(data["r"]), ball)
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"Malformed gyroline record {data!r}: {e}") from e
        raise DomainError(f"Unknown gyroline kind {kind!r}")

    def _check_ball(self, p: DiscPoint) -> None:
        if p.ball != self.ball:
            raise BallMismatchError(
                f"Point of ball s={p.ball.s} used with gyroline of ball s={self.ball.s}"
            )


def gyroline_through(a: DiscPoint, b: DiscPoint) -> Gyroline:
    """The unique gyroline through two distinct points."""
    ball = common_ball(a, b)
    if a.close_to(b, ALGEBRAIC_TOLERANCE):
        raise DegenerateInputError(f"Coincident points {a.z} and {b.z} do not define a gyroline")
    z1, z2 = a.unit, b.unit
    n1 = z1.real * z1.real + z1.imag * z1.imag
    n2 = z2.real * z2.real + z2.imag * z2.imag
    coeff_a = z1.real * z2.imag - z1.imag * z2.real
    d = z2 * (1.0 + n1) - z1 * (1.0 + n2)
    # d / (2i); swapping a and b negates both coefficients exactly
    coeff_b = complex(0.5 * d.imag, -0.5 * d.real)
    return replace(Gyroline.from_pencil(coeff_a, coeff_b, ball), anchors=(a, b))


def contains(line: Gyroline, p: DiscPoint, tol: Optional[float] = None) -> bool:
    """Incidence within a Euclidean distance of ``tol`` (default 1e-9 * s)."""
    if tol is None:
        tol = INCIDENCE_TOLERANCE * line.ball.s
    return line.distance_to_carrier(p) <= tol


def intersect(first: Gyroline, second: Gyroline) -> Optional[DiscPoint]:
    """The common point of two gyrolines inside the ball, or None."""
    if first.ball != second.ball:
        raise BallMismatchError("Gyrolines belong to different balls")
    ball = first.ball
    a1, b1 = first.pencil
    a2, b2 = second.pencil

    if first.is_diameter and second.is_diameter:
        if abs((b1.conjugate() * b2).imag) <= ALGEBRAIC_TOLERANCE:
            raise IndeterminateError("Identical diameters have no unique intersection")
        return from_unit(0j, ball)

    n = a2 * b1 - a1 * b2
    if abs(n) <= ALGEBRAIC_TOLERANCE:
        raise IndeterminateError("Identical gyrolines have no unique intersection")

    # the radical axis of two boundary-orthogonal circles passes through the origin
    w = 1j * n / abs(n)
    candidates = []
    for a, b in ((a1, b1), (a2, b2)):
        p = (b.conjugate() * w).real
        candidates.append((p * p - a * a, a, p))
    disc, a, p = max(candidates)
    if disc <= 0.0:
        return None

    t_in = a / (p + math.copysign(math.sqrt(disc), p))
    roots = [t_in] if t_in == 0.0 else [t_in, 1.0 / t_in]
    inside = [t for t in roots if abs(t) < 1.0 - INTERSECTION_MARGIN]
    if len(inside) > 1:
        raise InternalConsistencyError(
            f"Two interior intersections found ({roots}); carrier orthogonality violated"
        )
    if not inside:
        return None
    return from_unit(inside[0] * w, ball)


def crossing_angle(first: Gyroline, second: Gyroline) -> Optional[float]:
    """
    Angle in [0, pi/2] at which two gyrolines cross, or None when they do not meet.

    Uses the Lorentzian normals (a, b) of the pencil form, whose inner
    product is Re(conj(b1) b2) - a1 a2.
    """
    if first.ball != second.ball:
        raise BallMismatchError("Gyrolines belong to different balls")
    a1, b1 = first.pencil
    a2, b2 = second.pencil
    norm = math.sqrt((1.0 - a1) * (1.0 + a1) * (1.0 - a2) * (1.0 + a2))
    cosine = abs((b1.conjugate() * b2).real - a1 * a2) / norm
    if cosine >= 1.0:
        return None
    return math.acos(cosine)


def _most_separated(points: Sequence[DiscPoint]) -> Tuple[DiscPoint, DiscPoint]:
    best = (points[0], points[1])
    best_gap = -1.0
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            gap = abs(p.z - q.z)
            if gap > best_gap:
                best, best_gap = (p, q), gap
    return best


def gyroline_through_points(points: Sequence[DiscPoint]) -> Gyroline:
    """Gyroline through the two most separated of ``points``."""
    if len(points) < 2:
        raise DegenerateInputError("At least two points are required to fit a gyroline")
    common_ball(*points)
    p, q = _most_separated(points)
    return gyroline_through(p, q)


def collinear(points: Sequence[DiscPoint], tol: Optional[float] = None) -> bool:
    """True when every point lies on the gyroline through the two most separated points."""
    if len(points) < 2:
        raise DegenerateInputError("Collinearity needs at least two points")
    common_ball(*points)
    p, q = _most_separated(points)
    if p.close_to(q, ALGEBRAIC_TOLERANCE):
        return True
    line = gyroline_through(p, q)
    return all(contains(line, point, tol) for point in points)


def gyroline_point(a: DiscPoint, b: DiscPoint, t: float) -> DiscPoint:
    """Point a ⊕ (((⊖a) ⊕ b) ⊗ t); t = 0 gives a and t = 1 gives b."""
    return mobius_add(a, mobius_scalar_mul(t, mobius_add(mobius_neg(a), b)))


def gyroline_param(a: DiscPoint, b: DiscPoint, p: DiscPoint) -> float:
    """Inverse of gyroline_point for a point ``p`` on the gyroline through a and b."""
    common_ball(a, b, p)
    if a.close_to(b, ALGEBRAIC_TOLERANCE):
        raise DegenerateInputError("Parameter is undefined for coincident endpoints")
    d = mobius_add(mobius_neg(a), b).unit
    q = mobius_add(mobius_neg(a), p).unit
    if q == 0:
        return 0.0
    sign = 1.0 if (d.conjugate() * q).real >= 0.0 else -1.0
    return sign * math.atanh(abs(q)) / math.atanh(abs(d))


def segment_interior(a: DiscPoint, b: DiscPoint, p: DiscPoint, tol: float = ALGEBRAIC_TOLERANCE) -> bool:
    """True when ``p`` lies strictly between a and b on their gyroline."""
    t = gyroline_param(a, b, p)
    return tol < t < 1.0 - tol


def map_gyroline(line: Gyroline, isometry: DiscIsometry) -> Gyroline:
    """Image of ``line`` under a disc isometry."""
    first, second = line.sample_points()
    return gyroline_through(isometry.apply(first), isometry.apply(second))


def gyrodistance_to_line(p: DiscPoint, line: Gyroline) -> float:
    """Gyrodistance from ``p`` to the nearest point of ``line``."""
    line._check_ball(p)
    moved = map_gyroline(line, DiscIsometry(mobius_neg(p)))
    a, _ = moved.pencil
    return line.ball.s * a / (1.0 + math.sqrt((1.0 - a) * (1.0 + a)))
