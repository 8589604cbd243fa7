"""
Menelaus-type product identities for gyrotriangles and gyroquadrilaterals.

Every ratio is a quotient of gamma-corrected gyrolengths (AX)_γ/(BX)_γ and
is unsigned. Transversals are intersected with the full side gyrolines and
each intersection records whether it falls inside its side segment.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .errors import (
    AuxiliaryPointError,
    BallMismatchError,
    DegenerateInputError,
    DomainError,
    IncidenceError,
    NonTransversalError,
    NotCollinearError,
    VertexProximityError,
)
from .gyroline import (
    INCIDENCE_TOLERANCE,
    Gyroline,
    collinear,
    contains,
    gyrodistance_to_line,
    gyroline_point,
    gyroline_through,
    gyroline_through_points,
    intersect,
    segment_interior,
)
from .mobius_core import (
    ALGEBRAIC_TOLERANCE,
    BallParam,
    DiscPoint,
    GammaLength,
    common_ball,
    from_unit,
    hyp_distance,
    mobius_add,
    mobius_neg,
)


logger = logging.getLogger(__name__)

VERIFICATION_TOLERANCE = 1e-9
VERTEX_GUARD = 1e-6
TELESCOPING_TOLERANCE = 1e-12
CONVERSE_AGREEMENT = 1e-9
F_FORMS_TOLERANCE = 1e-12

_EPS = np.finfo(float).eps


class Theorem(Enum):
    MENELAUS_TRIANGLE = "T2"
    MENELAUS_QUAD = "T3"
    CONVERSE = "T4"
    TRANSVERSAL = "T5"


def _require_distinct(named: Sequence[Tuple[str, DiscPoint]], tol: Optional[float] = None) -> None:
    for i, (name_p, p) in enumerate(named):
        for name_q, q in named[i + 1:]:
            coincide = p.close_to(q, ALGEBRAIC_TOLERANCE) if tol is None else abs(p.z - q.z) <= tol
            if coincide:
                raise DegenerateInputError(f"Vertices {name_p} and {name_q} coincide")


@dataclass(frozen=True)
class TriangleConfig:
    """
    Gyrotriangle ABC.

    ``incidence_tol`` is the Euclidean distance under which vertices count as
    coincident or collinear; None uses the ball-relative defaults.
    """

    A: DiscPoint
    B: DiscPoint
    C: DiscPoint
    incidence_tol: Optional[float] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        common_ball(self.A, self.B, self.C)
        _require_distinct([("A", self.A), ("B", self.B), ("C", self.C)], self.incidence_tol)
        if collinear([self.A, self.B, self.C], self.incidence_tol):
            raise DegenerateInputError("Triangle vertices are collinear")

    @property
    def ball(self) -> BallParam:
        return self.A.ball

    @property
    def vertices(self) -> Tuple[DiscPoint, DiscPoint, DiscPoint]:
        return self.A, self.B, self.C


@dataclass(frozen=True)
class QuadConfig:
    """Gyroquadrilateral with sides AB, BC, CD, DA; simplicity is not required."""

    A: DiscPoint
    B: DiscPoint
    C: DiscPoint
    D: DiscPoint
    incidence_tol: Optional[float] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        common_ball(self.A, self.B, self.C, self.D)
        named = [("A", self.A), ("B", self.B), ("C", self.C), ("D", self.D)]
        _require_distinct(named, self.incidence_tol)
        for i in range(4):
            window = [named[(i + k) % 4] for k in range(3)]
            if collinear([p for _, p in window], self.incidence_tol):
                labels = "".join(name for name, _ in window)
                raise DegenerateInputError(f"Consecutive vertices {labels} are collinear")

    @property
    def ball(self) -> BallParam:
        return self.A.ball

    @property
    def vertices(self) -> Tuple[DiscPoint, DiscPoint, DiscPoint, DiscPoint]:
        return self.A, self.B, self.C, self.D


@dataclass(frozen=True)
class RatioTerm:
    label: str
    numerator: GammaLength
    denominator: GammaLength
    ratio: float

    @classmethod
    def of(cls, label: str, numerator: GammaLength, denominator: GammaLength) -> "RatioTerm":
        if not (numerator.v_gamma > 0.0 and denominator.v_gamma > 0.0):
            raise DegenerateInputError(f"Ratio {label} has a vanishing gyrolength")
        return cls(label, numerator, denominator, numerator.v_gamma / denominator.v_gamma)

    @property
    def uncorrected(self) -> float:
        return self.numerator.v / self.denominator.v

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "numerator": self.numerator.v_gamma,
            "denominator": self.denominator.v_gamma,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class IntersectionRecord:
    side: str
    point: DiscPoint
    interior: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"side": self.side, "point": self.point.to_json(), "interior": self.interior}


@dataclass(frozen=True)
class ConverseDetail:
    """Both recoveries of the fourth point and the data of the inverted ratio equation."""

    y_geometric: DiscPoint
    y_inverted: DiscPoint
    agreement: float
    target_ratio: float
    b: float
    x: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "y_geometric": self.y_geometric.to_json(),
            "y_inverted": self.y_inverted.to_json(),
            "agreement": self.agreement,
            "target_ratio": self.target_ratio,
            "b": self.b,
            "x": self.x,
        }


@dataclass(frozen=True)
class MenelausReport:
    theorem: Theorem
    ratios: Tuple[RatioTerm, ...]
    product: float
    deviation: float
    intersections: Tuple[IntersectionRecord, ...] = ()
    auxiliary: Optional[DiscPoint] = None
    sub_products: Optional[Tuple[float, float]] = None
    converse: Optional[ConverseDetail] = field(default=None, compare=False)

    @classmethod
    def build(
        cls,
        theorem: Theorem,
        ratios: Sequence[RatioTerm],
        intersections: Sequence[IntersectionRecord] = (),
        **extra: Any,
    ) -> "MenelausReport":
        product = 1.0
        for term in ratios:
            product *= term.ratio
        return cls(theorem, tuple(ratios), product, abs(product - 1.0), tuple(intersections), **extra)

    def passes(self, tolerance: float = VERIFICATION_TOLERANCE) -> bool:
        return self.deviation <= tolerance

    def uncorrected_product(self) -> float:
        """Product of the same ratios built from raw gyrolengths."""
        product = 1.0
        for term in self.ratios:
            product *= term.uncorrected
        return product

    @property
    def telescoping_residual(self) -> Optional[float]:
        if self.sub_products is None:
            return None
        first, second = self.sub_products
        return abs(first * second - self.product)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "theorem": self.theorem.value,
            "ratios": [term.to_dict() for term in self.ratios],
            "product": self.product,
            "deviation": self.deviation,
            "intersections": [record.to_dict() for record in self.intersections],
        }
        if self.theorem is Theorem.MENELAUS_QUAD or self.theorem is Theorem.CONVERSE:
            data["auxiliary"] = self.auxiliary.to_json() if self.auxiliary else None
            data["sub_products"] = list(self.sub_products) if self.sub_products else None
        if self.converse is not None:
            data["converse"] = self.converse.to_dict()
        return data


def _ratio(label: str, num: Tuple[DiscPoint, DiscPoint], den: Tuple[DiscPoint, DiscPoint]) -> RatioTerm:
    return RatioTerm.of(label, hyp_distance(*num), hyp_distance(*den))


def _check_line_ball(line: Gyroline, ball: BallParam) -> None:
    if line.ball != ball:
        raise BallMismatchError(f"Transversal of ball s={line.ball.s} used with figure of ball s={ball.s}")


def _guard_vertices(line: Gyroline, named: Sequence[Tuple[str, DiscPoint]], vertex_guard: float) -> None:
    limit = vertex_guard * line.ball.s
    for name, vertex in named:
        gap = gyrodistance_to_line(vertex, line)
        if gap <= limit:
            raise VertexProximityError(
                f"Transversal passes within {gap:.3e} of {name} (guard {limit:.1e})"
            )


def _meet(line: Gyroline, side: Gyroline, label: str) -> DiscPoint:
    point = intersect(line, side)
    if point is None:
        raise NonTransversalError(f"Transversal does not meet side gyroline {label} inside the ball")
    return point


def triangle_menelaus(
    cfg: TriangleConfig,
    line: Gyroline,
    vertex_guard: float = VERTEX_GUARD,
) -> MenelausReport:
    """
    Product (AF)_γ/(BF)_γ · (BD)_γ/(CD)_γ · (CE)_γ/(AE)_γ for the transversal ``line``.

    Args:
        cfg: Triangle ABC
        line: Gyroline meeting AB in F, BC in D and CA in E
        vertex_guard: Minimum gyrodistance of ``line`` from a vertex, relative to s

    Returns:
        MenelausReport with the three ratios and intersection flags

    Raises:
        VertexProximityError: ``line`` passes too close to a vertex
        NonTransversalError: ``line`` misses a side gyroline inside the ball
    """
    A, B, C = cfg.vertices
    _check_line_ball(line, cfg.ball)
    _guard_vertices(line, [("A", A), ("B", B), ("C", C)], vertex_guard)

    F = _meet(line, gyroline_through(A, B), "AB")
    D = _meet(line, gyroline_through(B, C), "BC")
    E = _meet(line, gyroline_through(C, A), "CA")

    ratios = [
        _ratio("AF/BF", (A, F), (B, F)),
        _ratio("BD/CD", (B, D), (C, D)),
        _ratio("CE/AE", (C, E), (A, E)),
    ]
    intersections = [
        IntersectionRecord("AB", F, segment_interior(A, B, F)),
        IntersectionRecord("BC", D, segment_interior(B, C, D)),
        IntersectionRecord("CA", E, segment_interior(C, A, E)),
    ]
    report = MenelausReport.build(Theorem.MENELAUS_TRIANGLE, ratios, intersections)
    logger.debug(f"Triangle product {report.product!r} (deviation {report.deviation:.3e})")
    return report


def quad_product_at(
    cfg: QuadConfig,
    X: DiscPoint,
    Y: DiscPoint,
    Z: DiscPoint,
    W: DiscPoint,
    auxiliary: Optional[DiscPoint] = None,
    theorem: Theorem = Theorem.MENELAUS_QUAD,
) -> MenelausReport:
    """
    Four-ratio product for explicit side points X on AB, Y on BC, Z on CD, W on DA.

    When the auxiliary point T on the diagonal DB is given, the two
    three-ratio sub-products over triangles ABD and BCD are attached.

    Args:
        cfg: Quadrilateral ABCD
        X, Y, Z, W: Points on the side gyrolines AB, BC, CD, DA
        auxiliary: Optional point T on gyroline DB
        theorem: Theorem tag recorded on the report

    Returns:
        MenelausReport with four ratios and, with ``auxiliary``, the sub-products
    """
    A, B, C, D = cfg.vertices
    ratios = [
        _ratio("AX/BX", (A, X), (B, X)),
        _ratio("BY/CY", (B, Y), (C, Y)),
        _ratio("CZ/DZ", (C, Z), (D, Z)),
        _ratio("DW/AW", (D, W), (A, W)),
    ]
    intersections = [
        IntersectionRecord("AB", X, segment_interior(A, B, X)),
        IntersectionRecord("BC", Y, segment_interior(B, C, Y)),
        IntersectionRecord("CD", Z, segment_interior(C, D, Z)),
        IntersectionRecord("DA", W, segment_interior(D, A, W)),
    ]

    sub_products = None
    if auxiliary is not None:
        bt_dt = _ratio("BT/DT", (B, auxiliary), (D, auxiliary))
        dt_bt = _ratio("DT/BT", (D, auxiliary), (B, auxiliary))
        first = ratios[0].ratio * bt_dt.ratio * ratios[3].ratio
        second = ratios[1].ratio * ratios[2].ratio * dt_bt.ratio
        sub_products = (first, second)
    return MenelausReport.build(
        theorem, ratios, intersections, auxiliary=auxiliary, sub_products=sub_products
    )


def quad_menelaus(
    cfg: QuadConfig,
    line: Gyroline,
    vertex_guard: float = VERTEX_GUARD,
    require_auxiliary: bool = False,
) -> MenelausReport:
    """
    Product (AX)_γ/(BX)_γ · (BY)_γ/(CY)_γ · (CZ)_γ/(DZ)_γ · (DW)_γ/(AW)_γ.

    The auxiliary point T = line ∩ DB is attached when it exists; with
    ``require_auxiliary`` its absence raises AuxiliaryPointError, otherwise the
    decomposition fields stay empty and the identity is still evaluated.

    Args:
        cfg: Quadrilateral ABCD
        line: Gyroline meeting the four side gyrolines
        vertex_guard: Minimum gyrodistance of ``line`` from a vertex, relative to s
        require_auxiliary: Raise AuxiliaryPointError when ``line`` does not meet DB

    Returns:
        MenelausReport for the quadrilateral identity
    """
    A, B, C, D = cfg.vertices
    _check_line_ball(line, cfg.ball)
    _guard_vertices(line, [("A", A), ("B", B), ("C", C), ("D", D)], vertex_guard)

    X = _meet(line, gyroline_through(A, B), "AB")
    Y = _meet(line, gyroline_through(B, C), "BC")
    Z = _meet(line, gyroline_through(C, D), "CD")
    W = _meet(line, gyroline_through(D, A), "DA")

    T = intersect(line, gyroline_through(D, B))
    if T is None:
        if require_auxiliary:
            raise AuxiliaryPointError("Diagonal DB does not meet the transversal inside the ball")
        logger.debug("Diagonal DB misses the transversal; decomposition omitted")

    report = quad_product_at(cfg, X, Y, Z, W, auxiliary=T)
    logger.debug(f"Quadrilateral product {report.product!r} (deviation {report.deviation:.3e})")
    return report


def f_closed(x: float, b: float) -> float:
    return x * (1.0 - b * b) / ((b - x) * (1.0 - b * x))


def f_ratio_form(x: float, b: float) -> float:
    """f as the quotient x/(1-x^2) : m/(1-m^2) with m = (b - x)/(1 - b x)."""
    m = (b - x) / (1.0 - b * x)
    return (x / ((1.0 - x) * (1.0 + x))) / (m / ((1.0 - m) * (1.0 + m)))


def _check_f_domain(x: float, b: float) -> None:
    if not (math.isfinite(x) and math.isfinite(b)):
        raise DomainError(f"f requires finite arguments, got x={x!r}, b={b!r}")
    if not 0.0 < b < 1.0:
        raise DomainError(f"b must lie in (0, 1), got {b!r}")
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x!r}")
    if x == b:
        raise DomainError(f"f has a pole at x = b = {b!r}")


def f_forms(x: float, b: float) -> Tuple[float, float]:
    """Both printed forms of f: (ratio-of-gamma form, closed form)."""
    _check_f_domain(x, b)
    return f_ratio_form(x, b), f_closed(x, b)


def f_eval(x: float, b: float) -> float:
    """f(x) = x(1 - b^2) / ((b - x)(1 - b x)); both forms must agree."""
    ratio_form, closed = f_forms(x, b)
    scale = max(1.0, abs(closed))
    if abs(ratio_form - closed) > F_FORMS_TOLERANCE * scale:
        logger.warning(f"f forms disagree at x={x!r}, b={b!r}: {ratio_form!r} vs {closed!r}")
    return closed


def f_difference_residual(x: float, y: float, b: float) -> float:
    """Residual of f(x) - f(y) = b(1-b^2)(1-xy)(x-y) / ((b-x)(1-bx)(b-y)(1-by)), normalised."""
    fx, fy = f_eval(x, b), f_eval(y, b)
    rhs = b * (1.0 - b * b) * (1.0 - x * y) * (x - y) / (
        (b - x) * (1.0 - b * x) * (b - y) * (1.0 - b * y)
    )
    return abs((fx - fy) - rhs) / max(1.0, abs(fx), abs(fy))


def f_branch_ranges(b: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Open ranges of f on (-1, b) and (b, 1)."""
    left = (-(1.0 - b) / (1.0 + b), math.inf)
    right = (-math.inf, -(1.0 + b) / (1.0 - b))
    return left, right


def invert_f(target: float, b: float) -> float:
    """The unique x in (-1, 1) \\ {b} with f(x) = target, found by bisection."""
    if not 0.0 < b < 1.0:
        raise DomainError(f"b must lie in (0, 1), got {b!r}")
    if not math.isfinite(target):
        raise DomainError(f"Target must be finite, got {target!r}")
    (left_low, _), (_, right_high) = f_branch_ranges(b)
    if target > left_low:
        lo, hi = math.nextafter(-1.0, 0.0), math.nextafter(b, -1.0)
    elif target < right_high:
        lo, hi = math.nextafter(b, 1.0), math.nextafter(1.0, 0.0)
    else:
        raise DomainError(f"Target {target!r} lies between the branches of f for b={b!r}")

    try:
        return optimize.bisect(
            lambda x: f_closed(x, b) - target,
            lo,
            hi,
            xtol=1e-15,
            rtol=4 * _EPS,
            maxiter=200,
        )
    except (ValueError, RuntimeError) as e:
        raise DomainError(f"Cannot invert f at target {target!r} (b={b!r}): {e}") from e


def _check_on(side: Gyroline, point: DiscPoint, name: str, label: str, tol: Optional[float]) -> None:
    if not contains(side, point, tol):
        raise IncidenceError(f"{name} does not lie on gyroline {label}")


def converse_check(
    cfg: QuadConfig,
    X: DiscPoint,
    Z: DiscPoint,
    W: DiscPoint,
    tol: Optional[float] = None,
    vertex_guard: float = VERTEX_GUARD,
) -> Tuple[DiscPoint, MenelausReport]:
    """
    Recover Y on BC from collinear X (on AB), Z (on CD) and W (on DA).

    Y is found twice: as the intersection of the common gyroline with BC,
    and by inverting f on the ratio equation (BY)_γ/(CY)_γ = ρ. The agreement
    of both is recorded on the report, not enforced.

    Args:
        cfg: Quadrilateral ABCD
        X, Z, W: Collinear points on gyrolines AB, CD, DA
        tol: Incidence tolerance in ball units; default INCIDENCE_TOLERANCE · s
        vertex_guard: Minimum gyrodistance of the common gyroline from a vertex

    Returns:
        (Y from the intersection, report carrying the ConverseDetail)

    Raises:
        IncidenceError: A point is off its side gyroline
        NotCollinearError: X, Z and W are not collinear
    """
    A, B, C, D = cfg.vertices
    common_ball(A, X, Z, W)
    _check_on(gyroline_through(A, B), X, "X", "AB", tol)
    _check_on(gyroline_through(C, D), Z, "Z", "CD", tol)
    _check_on(gyroline_through(D, A), W, "W", "DA", tol)
    if not collinear([X, Z, W], tol):
        raise NotCollinearError("X, Z and W are not collinear")

    line = gyroline_through_points([X, Z, W])
    side = gyroline_through(B, C)
    Y = _meet(line, side, "BC")
    report = quad_menelaus(cfg, line, vertex_guard=vertex_guard)

    rho = 1.0 / (
        _ratio("AX/BX", (A, X), (B, X)).ratio
        * _ratio("CZ/DZ", (C, Z), (D, Z)).ratio
        * _ratio("DW/AW", (D, W), (A, W)).ratio
    )
    # a transversal crosses an even number of sides of a closed quadrilateral internally
    interior = [segment_interior(A, B, X), segment_interior(C, D, Z), segment_interior(D, A, W)]
    sign = -1.0 if interior.count(False) % 2 else 1.0
    target = sign * rho

    direction = mobius_add(mobius_neg(B), C).unit
    b = abs(direction)
    x = invert_f(target, b)
    y_inverted = mobius_add(B, from_unit(x * direction / b, cfg.ball))

    agreement = abs(y_inverted.z - Y.z) / cfg.ball.s
    if agreement > CONVERSE_AGREEMENT:
        logger.warning(f"Converse recoveries differ by {agreement:.3e}")
    detail = ConverseDetail(Y, y_inverted, agreement, target, b, x)
    return Y, replace(report, theorem=Theorem.CONVERSE, converse=detail)


def transversal_product(
    cfg: TriangleConfig,
    D: DiscPoint,
    line: Gyroline,
    tol: Optional[float] = None,
    vertex_guard: float = VERTEX_GUARD,
) -> MenelausReport:
    """
    Product (BD)_γ/(CD)_γ · (CA)_γ/(NA)_γ · (NP)_γ/(MP)_γ · (MA)_γ/(BA)_γ.

    D lies on gyroline BC; ``line`` meets AB in M, AC in N and AD in P.

    Args:
        cfg: Triangle ABC
        D: Cevian foot on gyroline BC
        line: Transversal gyroline
        tol: Incidence tolerance for D in ball units
        vertex_guard: Minimum gyrodistance of ``line`` from A, B, C, D

    Returns:
        MenelausReport with the four ratios
    """
    A, B, C = cfg.vertices
    common_ball(A, D)
    _check_line_ball(line, cfg.ball)
    _check_on(gyroline_through(B, C), D, "D", "BC", tol)
    _guard_vertices(line, [("A", A), ("B", B), ("C", C), ("D", D)], vertex_guard)

    M = _meet(line, gyroline_through(A, B), "AB")
    N = _meet(line, gyroline_through(A, C), "AC")
    P = _meet(line, gyroline_through(A, D), "AD")

    ratios = [
        _ratio("BD/CD", (B, D), (C, D)),
        _ratio("CA/NA", (C, A), (N, A)),
        _ratio("NP/MP", (N, P), (M, P)),
        _ratio("MA/BA", (M, A), (B, A)),
    ]
    intersections = [
        IntersectionRecord("AB", M, segment_interior(A, B, M)),
        IntersectionRecord("AC", N, segment_interior(A, C, N)),
        IntersectionRecord("AD", P, segment_interior(A, D, P)),
    ]
    report = MenelausReport.build(Theorem.TRANSVERSAL, ratios, intersections)
    logger.debug(f"Transversal product {report.product!r} (deviation {report.deviation:.3e})")
    return report


def transversal_via_quadrilateral(
    cfg: TriangleConfig,
    D: DiscPoint,
    line: Gyroline,
    vertex_guard: float = VERTEX_GUARD,
) -> MenelausReport:
    """The transversal product as the quadrilateral identity on BCNM cut by gyroline DA."""
    A, B, C = cfg.vertices
    M = _meet(line, gyroline_through(A, B), "AB")
    N = _meet(line, gyroline_through(A, C), "AC")
    quad = QuadConfig(B, C, N, M, incidence_tol=cfg.incidence_tol)
    return quad_menelaus(quad, gyroline_through(D, A), vertex_guard=vertex_guard)


class LimitFigure(Enum):
    QUAD = "quad"
    TRANSVERSAL = "transversal"


@dataclass(frozen=True)
class LimitConfiguration:
    """
    Euclidean coordinates held fixed while the ball grows.

    ``vertices`` holds A, B, C, D for a quadrilateral or A, B, C for the
    transversal figure, whose cevian foot sits at gyroline parameter
    ``cevian_t`` on BC. ``line`` holds two points of the transversal.
    """

    figure: LimitFigure
    vertices: Tuple[complex, ...]
    line: Tuple[complex, complex]
    cevian_t: Optional[float] = None

    def __post_init__(self) -> None:
        expected = 4 if self.figure is LimitFigure.QUAD else 3
        if len(self.vertices) != expected:
            raise DomainError(f"{self.figure.value} figure needs {expected} vertices")
        if self.figure is LimitFigure.TRANSVERSAL and self.cevian_t is None:
            raise DomainError("Transversal figure needs a cevian parameter")

    @property
    def extent(self) -> float:
        return max(abs(z) for z in (*self.vertices, *self.line))

    def report(self, ball: BallParam) -> MenelausReport:
        """
        Evaluate the figure in ``ball``.

        Incidence and vertex-guard tolerances follow the figure's own size, so
        they do not swallow the figure as s grows.

        Args:
            ball: Ball the fixed coordinates are placed in

        Returns:
            The gamma-corrected report of the figure's identity
        """
        tol = INCIDENCE_TOLERANCE * self.extent
        guard = VERTEX_GUARD * self.extent / ball.s
        points = [DiscPoint.from_complex(z, ball) for z in self.vertices]
        line = gyroline_through(*(DiscPoint.from_complex(z, ball) for z in self.line))
        if self.figure is LimitFigure.QUAD:
            return quad_menelaus(QuadConfig(*points, incidence_tol=tol), line, vertex_guard=guard)
        cfg = TriangleConfig(*points, incidence_tol=tol)
        foot = gyroline_point(cfg.B, cfg.C, self.cevian_t)
        return transversal_product(cfg, foot, line, tol=tol, vertex_guard=guard)


@dataclass(frozen=True)
class LimitRow:
    s: float
    gyro_deviation: float
    euclidean_deviation: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "s": self.s,
            "gyro_deviation": self.gyro_deviation,
            "euclidean_deviation": self.euclidean_deviation,
        }


def euclidean_limit_sweep(config: LimitConfiguration, s_values: Sequence[float]) -> List[LimitRow]:
    """
    Evaluate the gamma-corrected and raw products of a fixed figure in growing balls.

    Args:
        config: Figure in Euclidean coordinates
        s_values: Ball radii, each larger than the figure extent

    Returns:
        One LimitRow per radius, in the given order
    """
    if not s_values:
        raise DomainError("At least one ball radius is required")
    smallest = min(s_values)
    if config.extent >= smallest:
        raise DomainError(f"Configuration of extent {config.extent} does not fit the ball s={smallest}")

    rows = []
    for s in s_values:
        report = config.report(BallParam(s))
        euclidean = abs(report.uncorrected_product() - 1.0)
        rows.append(LimitRow(float(s), report.deviation, euclidean))
        logger.info(f"s={s:g}: gyro deviation {report.deviation:.3e}, euclidean deviation {euclidean:.3e}")
    return rows


def is_monotone_decreasing(rows: Sequence[LimitRow]) -> bool:
    return all(later.euclidean_deviation < earlier.euclidean_deviation for earlier, later in zip(rows, rows[1:]))


def loglog_slope(rows: Sequence[LimitRow]) -> float:
    """Least-squares slope of log(euclidean deviation) against log(s)."""
    if len(rows) < 2:
        raise DomainError("A slope needs at least two rows")
    deviations = np.array([row.euclidean_deviation for row in rows])
    if np.any(deviations <= 0.0):
        raise DomainError("Euclidean deviations must be positive to fit a log-log slope")
    s = np.array([row.s for row in rows])
    slope, _ = np.polyfit(np.log(s), np.log(deviations), 1)
    return float(slope)
