"""
Seeded generators of valid Menelaus configurations.

Each generator draws the transversal first (through two random interior
points), then the figure, and rejects draws that violate a precondition of
the matching evaluator. Rejections are counted per constraint so an exhausted
budget can be explained.

Points are drawn uniformly in the Euclidean disc of radius ``max_radius * s``;
this is not uniform with respect to hyperbolic area.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

import numpy as np

from .errors import (
    AuxiliaryPointError,
    DegenerateInputError,
    DomainError,
    GeneratorExhaustedError,
    GyroError,
    NonTransversalError,
    VertexProximityError,
)
from .gyroline import Gyroline, crossing_angle, gyroline_point, gyroline_through, intersect, segment_interior
from .menelaus import (
    VERTEX_GUARD,
    MenelausReport,
    QuadConfig,
    TriangleConfig,
    quad_menelaus,
    transversal_product,
    triangle_menelaus,
)
from .mobius_core import NEAR_BOUNDARY_MARGIN, UNIT_BALL, BallParam, DiscPoint


logger = logging.getLogger(__name__)

RNG_ALGORITHM = f"numpy.random.Philox (Philox4x64-10), numpy {np.__version__}"
MIN_CROSSING_ANGLE = 1e-2
CEVIAN_RANGE = (0.1, 0.9)

T = TypeVar("T")


@dataclass(frozen=True)
class GenPolicy:
    seed: int = 0
    max_radius: float = 0.9
    vertex_guard: float = VERTEX_GUARD
    max_retries: int = 1000
    require_auxiliary: bool = True
    require_simple: bool = True
    boundary_margin: float = NEAR_BOUNDARY_MARGIN
    ball: BallParam = UNIT_BALL

    def __post_init__(self) -> None:
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError(f"Seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not 0.0 < self.max_radius < 1.0:
            raise DomainError(f"max_radius must lie in (0, 1), got {self.max_radius!r}")
        if not self.vertex_guard > 0.0:
            raise DomainError(f"vertex_guard must be positive, got {self.vertex_guard!r}")
        if self.max_retries < 1:
            raise DomainError(f"max_retries must be positive, got {self.max_retries!r}")
        object.__setattr__(self, "seed", int(self.seed))

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        data["ball"] = self.ball.s
        return data


class _Rejected(Exception):
    def __init__(self, constraint: str) -> None:
        super().__init__(constraint)
        self.constraint = constraint


_CONSTRAINTS = {
    VertexProximityError: "vertex_guard",
    NonTransversalError: "non_transversal",
    AuxiliaryPointError: "auxiliary",
    DegenerateInputError: "degenerate",
}


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def case_seed(campaign_seed: int, index: int) -> int:
    """Seed of case ``index`` of a campaign; independent of scheduling order."""
    state = np.random.SeedSequence([campaign_seed, index]).generate_state(1, np.uint64)
    return int(state[0])


def _draw_point(rng: np.random.Generator, policy: GenPolicy) -> DiscPoint:
    r = policy.max_radius * math.sqrt(rng.random())
    theta = 2.0 * math.pi * rng.random()
    z = policy.ball.s * r * complex(math.cos(theta), math.sin(theta))
    return DiscPoint.from_complex(z, policy.ball)


def _draw_line(rng: np.random.Generator, policy: GenPolicy) -> Gyroline:
    return gyroline_through(_draw_point(rng, policy), _draw_point(rng, policy))


def _check_report(report: MenelausReport, policy: GenPolicy) -> None:
    limit = (1.0 - policy.boundary_margin) * policy.ball.s
    points = [record.point for record in report.intersections]
    if report.auxiliary is not None:
        points.append(report.auxiliary)
    if any(point.norm > limit for point in points):
        raise _Rejected("near_boundary")


def _check_crossings(line: Gyroline, sides: List[Gyroline]) -> None:
    for side in sides:
        angle = crossing_angle(line, side)
        if angle is None:
            raise _Rejected("non_transversal")
        if angle < MIN_CROSSING_ANGLE:
            raise _Rejected("grazing")


def _by_angle(points: List[DiscPoint]) -> List[DiscPoint]:
    centroid = sum(p.z for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p.im - centroid.imag, p.re - centroid.real))


def is_simple_quad(cfg: QuadConfig) -> bool:
    """Opposite sides of the quadrilateral do not cross inside their segments."""
    A, B, C, D = cfg.vertices
    for (p, q), (r, t) in (((A, B), (C, D)), ((B, C), (D, A))):
        crossing = intersect(gyroline_through(p, q), gyroline_through(r, t))
        if crossing is not None and segment_interior(p, q, crossing) and segment_interior(r, t, crossing):
            return False
    return True


def _sample(
    kind: str,
    policy: GenPolicy,
    draw: Callable[[np.random.Generator], T],
    stats: Optional[Counter] = None,
) -> T:
    rng = make_rng(policy.seed)
    histogram: Counter = Counter()
    for attempt in range(1, policy.max_retries + 1):
        try:
            result = draw(rng)
        except _Rejected as e:
            histogram[e.constraint] += 1
            continue
        except GyroError as e:
            histogram[_constraint_name(e)] += 1
            continue
        logger.debug(f"{kind}: accepted draw {attempt} for seed {policy.seed} (rejections: {dict(histogram)})")
        if stats is not None:
            stats.update(histogram)
            stats["accepted"] += 1
            stats["draws"] += attempt
        return result
    if stats is not None:
        stats.update(histogram)
        stats["draws"] += policy.max_retries
    raise GeneratorExhaustedError(kind, policy.max_retries, histogram)


def _constraint_name(error: GyroError) -> str:
    for error_type, name in _CONSTRAINTS.items():
        if isinstance(error, error_type):
            return name
    return type(error).__name__


def gen_triangle_transversal(
    policy: GenPolicy, stats: Optional[Counter] = None
) -> Tuple[TriangleConfig, Gyroline]:
    """A triangle and a transversal meeting all three side gyrolines."""

    def draw(rng: np.random.Generator) -> Tuple[TriangleConfig, Gyroline]:
        line = _draw_line(rng, policy)
        cfg = TriangleConfig(*(_draw_point(rng, policy) for _ in range(3)))
        A, B, C = cfg.vertices
        _check_crossings(line, [gyroline_through(A, B), gyroline_through(B, C), gyroline_through(C, A)])
        _check_report(triangle_menelaus(cfg, line, policy.vertex_guard), policy)
        return cfg, line

    return _sample("triangle", policy, draw, stats)


def gen_quad_transversal(
    policy: GenPolicy, stats: Optional[Counter] = None
) -> Tuple[QuadConfig, Gyroline]:
    """
    A quadrilateral and a transversal meeting all four side gyrolines.

    Under the default policy the quadrilateral is simple and the diagonal DB
    meets the transversal.
    """

    def draw(rng: np.random.Generator) -> Tuple[QuadConfig, Gyroline]:
        line = _draw_line(rng, policy)
        points = [_draw_point(rng, policy) for _ in range(4)]
        if policy.require_simple:
            points = _by_angle(points)
        cfg = QuadConfig(*points)
        if policy.require_simple and not is_simple_quad(cfg):
            raise _Rejected("not_simple")
        A, B, C, D = cfg.vertices
        sides = [gyroline_through(A, B), gyroline_through(B, C), gyroline_through(C, D), gyroline_through(D, A)]
        if policy.require_auxiliary:
            sides.append(gyroline_through(D, B))
        _check_crossings(line, sides)
        report = quad_menelaus(cfg, line, policy.vertex_guard, require_auxiliary=policy.require_auxiliary)
        _check_report(report, policy)
        return cfg, line

    return _sample("quad", policy, draw, stats)


def gen_cevian_config(
    policy: GenPolicy, stats: Optional[Counter] = None
) -> Tuple[TriangleConfig, DiscPoint, Gyroline]:
    """A triangle, a cevian foot D inside segment BC, and a transversal meeting AB, AC and AD."""
    cfg, foot, line, _ = gen_cevian_case(policy, stats)
    return cfg, foot, line


def gen_cevian_case(
    policy: GenPolicy, stats: Optional[Counter] = None
) -> Tuple[TriangleConfig, DiscPoint, Gyroline, float]:
    """As gen_cevian_config, also returning the gyroline parameter of D on BC."""

    def draw(rng: np.random.Generator) -> Tuple[TriangleConfig, DiscPoint, Gyroline, float]:
        line = _draw_line(rng, policy)
        cfg = TriangleConfig(*(_draw_point(rng, policy) for _ in range(3)))
        t = float(rng.uniform(*CEVIAN_RANGE))
        A, B, C = cfg.vertices
        foot = gyroline_point(B, C, t)
        _check_crossings(line, [gyroline_through(A, B), gyroline_through(A, C), gyroline_through(A, foot)])
        _check_report(transversal_product(cfg, foot, line, vertex_guard=policy.vertex_guard), policy)
        return cfg, foot, line, t

    return _sample("cevian", policy, draw, stats)
