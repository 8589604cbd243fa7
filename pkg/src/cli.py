"""
Command-line front end.

Subcommands:
  verify   execute the assertions of a ``.gyro`` scene
  random   run a seeded campaign of generated configurations
  render   draw a scene as SVG
  limit    sweep a scene's figure through growing balls

Exit codes: 0 pass, 1 assertion failure, 2 input error, 3 generator exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter
from dataclasses import replace
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from pydantic import BaseModel, Field, model_validator

from .case_logger import CaseLogger
from .config_gen import (
    RNG_ALGORITHM,
    GenPolicy,
    case_seed,
    gen_cevian_case,
    gen_quad_transversal,
    gen_triangle_transversal,
)
from .config_loader import Config, load_config
from .errors import ConfigError, DomainError, GeneratorExhaustedError, GyroError, SceneError
from .logger import setup_logging
from .menelaus import (
    LimitConfiguration,
    LimitFigure,
    converse_check,
    euclidean_limit_sweep,
    is_monotone_decreasing,
    loglog_slope,
    quad_menelaus,
    transversal_product,
    transversal_via_quadrilateral,
    triangle_menelaus,
)
from .scene_dsl import LineStmt, Scene, cevian_scene, parse_file, quad_scene, triangle_scene, unparse
from .scene_exec import execute_scene
from .settings import apply_env_overrides
from .svg_render import SceneRenderer


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
STRESS_RADIUS = 0.9
CAMPAIGN_THEOREMS = {
    "t2": "menelaus_triangle",
    "t3": "menelaus_quad",
    "t5": "transversal",
    "t4-converse": "menelaus_converse",
}


class ExitCode(IntEnum):
    OK = 0
    ASSERTION_FAILED = 1
    INPUT_ERROR = 2
    GENERATOR_EXHAUSTED = 3


class CaseResult(BaseModel):
    index: int
    seed: int
    passed: bool
    deviation: Optional[float] = None
    checks: Dict[str, Optional[float]] = Field(default_factory=dict)
    report: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
    repro: Optional[str] = None


class Aggregate(BaseModel):
    count: int
    max_deviation: Optional[float]
    failures: int


class RunReport(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, serialization_alias="schema")
    command: List[str]
    theorem: str
    seed: int
    policy: Dict[str, Any]
    rng: str
    tolerance: float
    cases: List[CaseResult]
    aggregate: Aggregate
    timing: Optional[Dict[str, float]] = None

    @model_validator(mode="after")
    def _check_aggregate(self) -> "RunReport":
        deviations = [case.deviation for case in self.cases if case.deviation is not None]
        expected = max(deviations) if deviations else None
        if self.aggregate.max_deviation != expected:
            raise ValueError("aggregate max_deviation must equal the maximum case deviation")
        return self

    def payload(self) -> Dict[str, Any]:
        exclude = {"timing"} if self.timing is None else set()
        return self.model_dump(by_alias=True, exclude=exclude)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gyro",
        description="Verify Menelaus-type identities in the Möbius gyrovector disc",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py verify figures/quad.gyro
  python main.py random t3 -n 1000 --seed 42 --json
  python main.py render figures/quad.gyro --out quad.svg
  python main.py limit figures/quad.gyro --s 10 100 1000 10000
        """,
    )
    parser.add_argument('--config', type=str, default=None, help='Path to a YAML configuration file')
    parser.add_argument('--log-level', type=str, default=None, help='Override the configured log level')

    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='Execute the assertions of a scene')
    verify.add_argument('scene', type=str)
    verify.add_argument('--json', action='store_true', help='Emit a JSON report')

    random_cmd = sub.add_parser('random', help='Run a seeded campaign of generated cases')
    random_cmd.add_argument('theorem', choices=sorted(CAMPAIGN_THEOREMS))
    random_cmd.add_argument('-n', '--count', type=int, default=100)
    random_cmd.add_argument('--seed', type=int, default=None)
    random_cmd.add_argument('--max-radius', type=float, default=None)
    random_cmd.add_argument('--tolerance', type=float, default=None)
    random_cmd.add_argument('--max-retries', type=int, default=None)
    random_cmd.add_argument('--json', action='store_true', help='Emit the full JSON report')
    random_cmd.add_argument('--out', type=str, default=None, help="Directory for .gyro repro files of failing cases (default: campaign.repro_dir)")
    random_cmd.add_argument('--timing', action='store_true', help='Include wall-clock timing in the report')

    render = sub.add_parser('render', help='Draw a scene as SVG')
    render.add_argument('scene', type=str)
    render.add_argument('--out', type=str, default=None, help='SVG output path (default: stdout)')

    limit = sub.add_parser('limit', help='Euclidean-limit sweep of a scene figure')
    limit.add_argument('scene', type=str)
    limit.add_argument('--s', dest='s_values', type=float, nargs='+', default=None)
    limit.add_argument('--threshold', type=float, default=None)
    limit.add_argument('--json', action='store_true')

    return parser


def _emit(text: str, stream: TextIO) -> None:
    stream.write(text)
    if not text.endswith("\n"):
        stream.write("\n")


def _load_scene(path: str, err: TextIO) -> Optional[Scene]:
    try:
        return parse_file(path)
    except SceneError as e:
        _emit(str(e), err)
    except OSError as e:
        _emit(f"{path}: cannot read scene: {e}", err)
    return None


def cmd_verify(args: argparse.Namespace, config: Config, out: TextIO, err: TextIO) -> int:
    """
    Evaluate every assertion of a scene file.

    Args:
        args: Parsed arguments with ``scene`` and ``json``
        config: Loaded configuration; ``verification`` sets the tolerances
        out: Result stream
        err: Diagnostic stream

    Returns:
        ExitCode.OK, ASSERTION_FAILED or INPUT_ERROR
    """
    scene = _load_scene(args.scene, err)
    if scene is None:
        return ExitCode.INPUT_ERROR
    outcomes = execute_scene(scene, config.verification)
    passed = all(outcome.passed for outcome in outcomes)

    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "command": ["verify", args.scene],
            "passed": passed,
            "assertions": [outcome.to_dict() for outcome in outcomes],
        }
        _emit(json.dumps(payload, indent=2), out)
    else:
        for outcome in outcomes:
            status = "PASS" if outcome.passed else "FAIL"
            if outcome.report is not None:
                detail = f"deviation {outcome.report.deviation:.3e} <= {outcome.bound!r}"
            else:
                detail = f"error: {outcome.error}"
            _emit(f"{outcome.theorem} {outcome.figure}/{outcome.line}: {detail} {status}", out)
    return ExitCode.OK if passed else ExitCode.ASSERTION_FAILED


def _run_case(theorem: str, policy: GenPolicy, config: Config, stats: Counter) -> Dict[str, Any]:
    """Generate and evaluate one case; returns the report, extra checks and a repro scene."""
    v = config.verification
    checks: Dict[str, Optional[float]] = {}
    tol = v.incidence_tolerance * policy.ball.s
    passed_checks = True

    if theorem == "menelaus_triangle":
        cfg, line = gen_triangle_transversal(policy, stats)
        scene = triangle_scene(cfg, line, v.tolerance)
        report = triangle_menelaus(cfg, line, v.vertex_guard)
    elif theorem == "menelaus_quad":
        cfg, line = gen_quad_transversal(policy, stats)
        scene = quad_scene(cfg, line, v.tolerance)
        report = quad_menelaus(cfg, line, v.vertex_guard)
        checks["telescoping"] = report.telescoping_residual
        if report.telescoping_residual is not None:
            passed_checks = report.telescoping_residual <= v.telescoping_tolerance
    elif theorem == "transversal":
        cfg, foot, line, t = gen_cevian_case(policy, stats)
        scene = cevian_scene(cfg, t, line, v.tolerance)
        report = transversal_product(cfg, foot, line, tol=tol, vertex_guard=v.vertex_guard)
        try:
            via_quad = transversal_via_quadrilateral(cfg, foot, line, v.vertex_guard)
            checks["quadrilateral_route"] = abs(via_quad.product - report.product)
            passed_checks = checks["quadrilateral_route"] <= v.telescoping_tolerance
        except GyroError as e:
            logger.debug(f"Quadrilateral route unavailable for seed {policy.seed}: {e}")
            checks["quadrilateral_route"] = None
    else:
        cfg, line = gen_quad_transversal(policy, stats)
        scene = quad_scene(cfg, line, v.tolerance, theorem="menelaus_converse")
        forward = quad_menelaus(cfg, line, v.vertex_guard)
        X, original_y, Z, W = (record.point for record in forward.intersections)
        recovered, report = converse_check(cfg, X, Z, W, tol=tol, vertex_guard=v.vertex_guard)
        checks["recovery"] = abs(recovered.z - original_y.z) / cfg.ball.s
        checks["inversion_agreement"] = report.converse.agreement
        passed_checks = max(checks["recovery"], checks["inversion_agreement"]) <= v.converse_agreement

    return {"report": report, "checks": checks, "passed_checks": passed_checks, "scene": scene}


def _write_repro(out_dir: Optional[str], theorem: str, index: int, scene: Optional[Scene]) -> Optional[str]:
    if out_dir is None or scene is None:
        return None
    path = Path(out_dir) / f"{theorem}-{index:05d}.gyro"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(unparse(scene), encoding="utf-8")
    logger.info(f"Wrote repro file {path}")
    return str(path)


def _campaign_tolerance(config: Config, max_radius: float) -> float:
    """Default deviation bound; draws beyond STRESS_RADIUS use the looser stress tolerance."""
    if max_radius > STRESS_RADIUS:
        return config.verification.stress_tolerance
    return config.verification.tolerance


def cmd_random(args: argparse.Namespace, config: Config, out: TextIO, err: TextIO) -> int:
    """
    Run a seeded campaign of generated cases for one theorem.

    Args:
        args: Parsed arguments (theorem, count, seed, tolerance, max_radius, max_retries, out)
        config: Loaded configuration
        out: Result stream
        err: Diagnostic stream

    Returns:
        ExitCode.OK, ASSERTION_FAILED, INPUT_ERROR or GENERATOR_EXHAUSTED
    """
    if args.count < 1:
        _emit("random: -n must be at least 1", err)
        return ExitCode.INPUT_ERROR
    theorem = CAMPAIGN_THEOREMS[args.theorem]
    generation = config.generation
    campaign_seed = args.seed if args.seed is not None else generation.seed
    max_radius = args.max_radius if args.max_radius is not None else generation.max_radius
    tolerance = args.tolerance if args.tolerance is not None else _campaign_tolerance(config, max_radius)
    config = replace(config, verification=replace(config.verification, tolerance=tolerance))

    try:
        base_policy = GenPolicy(
            seed=campaign_seed,
            max_radius=max_radius,
            vertex_guard=config.verification.vertex_guard,
            max_retries=args.max_retries if args.max_retries is not None else generation.max_retries,
            require_auxiliary=generation.require_auxiliary,
            require_simple=generation.require_simple,
        )
    except DomainError as e:
        _emit(f"random: {e}", err)
        return ExitCode.INPUT_ERROR

    case_log = CaseLogger(config.campaign.case_log) if config.campaign.case_log else None
    stats: Counter = Counter()
    cases: List[CaseResult] = []
    started = time.perf_counter()

    for index in range(args.count):
        seed = case_seed(campaign_seed, index)
        policy = replace(base_policy, seed=seed)
        scene = None
        try:
            outcome = _run_case(theorem, policy, config, stats)
        except GeneratorExhaustedError as e:
            logger.error(f"Case {index} (seed {seed}): {e}")
            _emit(f"random: case {index}: {e}", err)
            return ExitCode.GENERATOR_EXHAUSTED
        except GyroError as e:
            logger.warning(f"Case {index} (seed {seed}) failed: {e}")
            case = CaseResult(index=index, seed=seed, passed=False, error=str(e))
        else:
            report, scene = outcome["report"], outcome["scene"]
            passed = report.passes(tolerance) and outcome["passed_checks"]
            case = CaseResult(
                index=index,
                seed=seed,
                passed=passed,
                deviation=report.deviation,
                checks=outcome["checks"],
                report=report.to_dict(),
            )
        if not case.passed:
            case.repro = _write_repro(args.out or config.campaign.repro_dir, args.theorem, index, scene)
        if case_log is not None:
            case_log.log_case(theorem, index, seed, case.deviation, case.passed, case.error)
        cases.append(case)

    elapsed = time.perf_counter() - started
    deviations = [case.deviation for case in cases if case.deviation is not None]
    failures = sum(1 for case in cases if not case.passed)
    draws = stats.get("draws", 0)
    if draws:
        logger.info(f"Generator acceptance rate {stats['accepted'] / draws:.1%} over {draws} draws")
    logger.info(f"Campaign {args.theorem}: {len(cases)} cases, {failures} failure(s) in {elapsed:.2f}s")

    run = RunReport(
        command=["random", args.theorem, "-n", str(args.count), "--seed", str(campaign_seed)],
        theorem=args.theorem,
        seed=campaign_seed,
        policy=base_policy.to_dict(),
        rng=RNG_ALGORITHM,
        tolerance=tolerance,
        cases=cases,
        aggregate=Aggregate(
            count=len(cases),
            max_deviation=max(deviations) if deviations else None,
            failures=failures,
        ),
        timing={"seconds": elapsed} if args.timing else None,
    )

    if args.json:
        _emit(json.dumps(run.payload(), indent=2), out)
    else:
        summary = run.aggregate
        max_text = f"{summary.max_deviation:.3e}" if summary.max_deviation is not None else "n/a"
        _emit(
            f"{args.theorem}: {summary.count} cases, max deviation {max_text}, "
            f"{summary.failures} failure(s), tolerance {tolerance!r}",
            out,
        )
    return ExitCode.OK if failures == 0 else ExitCode.ASSERTION_FAILED


def cmd_render(args: argparse.Namespace, config: Config, out: TextIO, err: TextIO) -> int:
    """Render a scene to SVG on ``--out`` or ``out``; returns OK or INPUT_ERROR."""
    scene = _load_scene(args.scene, err)
    if scene is None:
        return ExitCode.INPUT_ERROR
    outcomes = execute_scene(scene, config.verification)
    svg = SceneRenderer(config.render).render(scene, outcomes)
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8")
        logger.info(f"Wrote {args.out}")
    else:
        _emit(svg, out)
    return ExitCode.OK


def limit_configuration(scene: Scene) -> LimitConfiguration:
    """The first quadrilateral or transversal assertion of ``scene`` as a fixed Euclidean figure."""
    line_stmts = {stmt.name: stmt for stmt in scene.statements if isinstance(stmt, LineStmt)}
    for binding in scene.bindings:
        theorem = binding.assertion.theorem
        stmt = line_stmts[binding.line]
        line = (scene.points[stmt.first].z, scene.points[stmt.second].z)
        if theorem == "menelaus_quad":
            vertices = tuple(p.z for p in scene.quads[binding.figure].vertices)
            return LimitConfiguration(LimitFigure.QUAD, vertices, line)
        if theorem == "transversal":
            cevian = scene.cevians[binding.figure]
            vertices = tuple(p.z for p in scene.triangles[cevian.triangle].vertices)
            return LimitConfiguration(LimitFigure.TRANSVERSAL, vertices, line, cevian.t)
    raise DomainError("Scene has no menelaus_quad or transversal assertion to sweep")


def cmd_limit(args: argparse.Namespace, config: Config, out: TextIO, err: TextIO) -> int:
    """
    Sweep the first quadrilateral or transversal figure of a scene over growing s.

    Returns:
        ExitCode.OK when the Euclidean deviation decreases monotonically and ends
        under the threshold, ASSERTION_FAILED otherwise, INPUT_ERROR on bad input
    """
    scene = _load_scene(args.scene, err)
    if scene is None:
        return ExitCode.INPUT_ERROR
    s_values = args.s_values or config.limit.s_values
    threshold = args.threshold if args.threshold is not None else config.limit.threshold
    if list(s_values) != sorted(s_values) or any(s <= 0 for s in s_values):
        _emit("limit: --s values must be positive and ascending", err)
        return ExitCode.INPUT_ERROR

    try:
        rows = euclidean_limit_sweep(limit_configuration(scene), s_values)
    except DomainError as e:
        _emit(f"limit: {e}", err)
        return ExitCode.INPUT_ERROR
    except GyroError as e:
        _emit(f"limit: evaluation failed: {e}", err)
        return ExitCode.ASSERTION_FAILED

    monotone = len(rows) < 2 or is_monotone_decreasing(rows)
    passed = monotone and rows[-1].euclidean_deviation <= threshold
    slope = loglog_slope(rows) if len(rows) >= 2 and all(r.euclidean_deviation > 0 for r in rows) else None

    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "command": ["limit", args.scene],
            "rows": [row.to_dict() for row in rows],
            "monotone": monotone,
            "slope": slope,
            "threshold": threshold,
            "passed": passed,
        }
        _emit(json.dumps(payload, indent=2), out)
    else:
        _emit(f"{'s':>12}  {'gyro deviation':>16}  {'euclidean deviation':>20}", out)
        for row in rows:
            _emit(f"{row.s:>12g}  {row.gyro_deviation:>16.3e}  {row.euclidean_deviation:>20.3e}", out)
        if slope is not None:
            _emit(f"log-log slope {slope:.3f}", out)
    return ExitCode.OK if passed else ExitCode.ASSERTION_FAILED


COMMANDS = {
    "verify": cmd_verify,
    "random": cmd_random,
    "render": cmd_render,
    "limit": cmd_limit,
}


def main(
    argv: Optional[Sequence[str]] = None,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None,
) -> int:
    """Entry point; returns the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.INPUT_ERROR

    try:
        config = apply_env_overrides(load_config(args.config))
    except (FileNotFoundError, ConfigError) as e:
        _emit(f"configuration error: {e}", err)
        return ExitCode.INPUT_ERROR
    except ValueError as e:
        _emit(f"configuration error: invalid environment override: {e}", err)
        return ExitCode.INPUT_ERROR

    if args.log_level:
        config = replace(config, logging=replace(config.logging, level=args.log_level))
    setup_logging(config.logging)
    logger.debug(f"Running {args.command} with {args}")

    return int(COMMANDS[args.command](args, config, out, err))
