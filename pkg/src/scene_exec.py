"""Execution of scene assertions against the Menelaus evaluators."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from .config_loader import VerificationConfig
from .errors import GyroError
from .menelaus import (
    MenelausReport,
    converse_check,
    quad_menelaus,
    transversal_product,
    triangle_menelaus,
)
from .scene_dsl import Binding, Scene


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AssertionOutcome:
    theorem: str
    figure: str
    line: str
    bound: float
    passed: bool
    report: Optional[MenelausReport] = None
    error: Optional[str] = None

    @property
    def deviation(self) -> Optional[float]:
        return self.report.deviation if self.report is not None else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "figure": self.figure,
            "line": self.line,
            "bound": self.bound,
            "passed": self.passed,
            "report": self.report.to_dict() if self.report is not None else None,
            "error": self.error,
        }


def evaluate_binding(
    scene: Scene, binding: Binding, verification: Optional[VerificationConfig] = None
) -> MenelausReport:
    """
    Run the evaluator an assertion names on its bound figure and line.

    Args:
        scene: Parsed scene holding the figure and line
        binding: Assertion together with the names it is bound to
        verification: Guard and incidence tolerances; None uses the defaults

    Returns:
        The report of the named identity

    Raises:
        GyroError: If a precondition of the evaluator does not hold
    """
    verification = verification or VerificationConfig()
    vertex_guard = verification.vertex_guard
    # incidence tolerance is relative to the ball radius
    tol = verification.incidence_tolerance * scene.ball.s
    theorem = binding.assertion.theorem
    line = scene.lines[binding.line]
    if theorem == "menelaus_triangle":
        return triangle_menelaus(scene.triangles[binding.figure], line, vertex_guard)
    if theorem == "menelaus_quad":
        return quad_menelaus(scene.quads[binding.figure], line, vertex_guard)
    if theorem == "menelaus_converse":
        cfg = scene.quads[binding.figure]
        forward = quad_menelaus(cfg, line, vertex_guard)
        X, _, Z, W = (record.point for record in forward.intersections)
        _, report = converse_check(cfg, X, Z, W, tol=tol, vertex_guard=vertex_guard)
        return report
    cevian = scene.cevians[binding.figure]
    return transversal_product(
        scene.triangles[cevian.triangle], scene.points[binding.figure], line, tol=tol, vertex_guard=vertex_guard
    )


def execute_scene(scene: Scene, verification: Optional[VerificationConfig] = None) -> List[AssertionOutcome]:
    """
    Evaluate every assertion. A precondition error (a transversal through a
    vertex, missing intersections) makes that assertion fail, as does a
    converse whose two recoveries disagree by more than
    ``verification.converse_agreement``.
    """
    verification = verification or VerificationConfig()
    outcomes = []
    for binding in scene.bindings:
        assertion = binding.assertion
        try:
            report = evaluate_binding(scene, binding, verification)
        except GyroError as e:
            logger.warning(f"{assertion.theorem} on {binding.figure}/{binding.line} failed: {e}")
            outcomes.append(
                AssertionOutcome(assertion.theorem, binding.figure, binding.line, assertion.bound, False, error=str(e))
            )
            continue
        passed = report.passes(assertion.bound)
        if report.converse is not None and report.converse.agreement > verification.converse_agreement:
            passed = False
        outcomes.append(AssertionOutcome(assertion.theorem, binding.figure, binding.line, assertion.bound, passed, report))
        logger.info(
            f"{assertion.theorem} on {binding.figure}/{binding.line}: deviation {report.deviation:.3e} "
            f"({'pass' if passed else 'FAIL'})"
        )
    return outcomes
