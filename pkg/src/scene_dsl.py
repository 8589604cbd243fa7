"""
Line-oriented scene format (``.gyro``).

One statement per line, whitespace separated tokens, ``#`` starts a comment::

    ball 1
    point A 0.3 0
    point B 0 0.4
    line L A B
    triangle T A B C
    quad Q A B C D
    cevian D T 0.4
    assert menelaus_quad deviation<= 1e-9

``cevian D T t`` places the new point D on side BC of triangle T at gyroline
parameter t; only this form is a foot for ``transversal`` assertions.
``cevian D P Q t`` places D on gyroline(P, Q) as a plain point. An assertion is bound to the latest figure of the kind its
theorem needs and to the latest line declared before it.

Parsing recovers after every bad line, so one pass reports every independent
error. Diagnostics carry 1-based line:column spans.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import GyroError, OutsideBallError, SceneError
from .gyroline import Gyroline, gyroline_point, gyroline_through
from .menelaus import VERIFICATION_TOLERANCE, QuadConfig, TriangleConfig
from .mobius_core import UNIT_BALL, BallParam, DiscPoint


logger = logging.getLogger(__name__)

REAL_PATTERN = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
NAME_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_WORD = re.compile(r"\S+")
_DEVIATION_JOINED = re.compile(r"deviation<=(.*)")

THEOREMS = ("menelaus_triangle", "menelaus_quad", "menelaus_converse", "transversal")
THEOREM_ALIASES = {
    "t2": "menelaus_triangle",
    "t3": "menelaus_quad",
    "t4": "menelaus_converse",
    "t4-converse": "menelaus_converse",
    "t5": "transversal",
}
FIGURE_FOR_THEOREM = {
    "menelaus_triangle": "triangle",
    "menelaus_quad": "quad",
    "menelaus_converse": "quad",
    "transversal": "cevian",
}


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    end_column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    span: SourceSpan
    token: Optional[str] = None

    def __str__(self) -> str:
        offending = f" (at {self.token!r})" if self.token is not None else ""
        return f"{self.span}: {self.kind} error: {self.message}{offending}"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class PointStmt:
    name: str
    re: float
    im: float
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class LineStmt:
    name: str
    first: str
    second: str
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TriangleStmt:
    name: str
    vertices: Tuple[str, str, str]
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class QuadStmt:
    name: str
    vertices: Tuple[str, str, str, str]
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CevianStmt:
    name: str
    triangle: str
    t: float
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class OnLineStmt:
    """Point on gyroline(first, second) at parameter t, written ``cevian D P Q t``."""

    name: str
    first: str
    second: str
    t: float
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AssertStmt:
    theorem: str
    bound: float
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


Statement = Union[PointStmt, LineStmt, TriangleStmt, QuadStmt, CevianStmt, OnLineStmt, AssertStmt]


@dataclass(frozen=True)
class Binding:
    """Figure and transversal an assertion applies to."""

    assertion: AssertStmt
    figure: str
    line: str


@dataclass(frozen=True)
class Scene:
    """
    Parsed scene. Equality is AST equality (ball and statements); the
    resolved objects are derived from them.
    """

    ball: BallParam
    statements: Tuple[Statement, ...]
    points: Dict[str, DiscPoint] = field(default_factory=dict, compare=False, repr=False)
    lines: Dict[str, Gyroline] = field(default_factory=dict, compare=False, repr=False)
    triangles: Dict[str, TriangleConfig] = field(default_factory=dict, compare=False, repr=False)
    quads: Dict[str, QuadConfig] = field(default_factory=dict, compare=False, repr=False)
    cevians: Dict[str, CevianStmt] = field(default_factory=dict, compare=False, repr=False)
    bindings: Tuple[Binding, ...] = field(default=(), compare=False, repr=False)

    @property
    def assertions(self) -> List[AssertStmt]:
        return [stmt for stmt in self.statements if isinstance(stmt, AssertStmt)]


def _lex_line(text: str, lineno: int, diagnostics: List[Diagnostic]) -> Optional[List[Token]]:
    tokens: List[Token] = []
    ok = True
    for match in _WORD.finditer(text):
        word, column = match.group(), match.start() + 1
        span = SourceSpan(lineno, column, column + len(word))
        joined = _DEVIATION_JOINED.fullmatch(word)
        if joined:
            tokens.append(Token("NAME", "deviation", SourceSpan(lineno, column, column + 9)))
            tokens.append(Token("OP", "<=", SourceSpan(lineno, column + 9, column + 11)))
            rest = joined.group(1)
            if not rest:
                continue
            word, column = rest, column + 11
            span = SourceSpan(lineno, column, column + len(word))
        if word == "<=":
            tokens.append(Token("OP", word, span))
        elif REAL_PATTERN.fullmatch(word):
            tokens.append(Token("REAL", word, span))
        elif NAME_PATTERN.fullmatch(word):
            tokens.append(Token("NAME", word, span))
        else:
            diagnostics.append(Diagnostic("lexical", "invalid token", span, word))
            ok = False
    return tokens if ok else None


_SHAPES = {
    "ball": ("REAL",),
    "point": ("NAME", "REAL", "REAL"),
    "line": ("NAME", "NAME", "NAME"),
    "triangle": ("NAME", "NAME", "NAME", "NAME"),
    "quad": ("NAME", "NAME", "NAME", "NAME", "NAME"),
    "cevian": ("NAME", "NAME", "REAL"),
    "assert": ("NAME", "deviation", "<=", "REAL"),
}
_CEVIAN_ON_LINE = ("NAME", "NAME", "NAME", "REAL")


def _matches(token: Token, expected: str) -> bool:
    if expected in ("REAL", "NAME"):
        return token.kind == expected
    return token.text == expected


def _check_shape(tokens: List[Token], lineno: int, line_text: str, diagnostics: List[Diagnostic]) -> bool:
    keyword = tokens[0]
    shape = _SHAPES.get(keyword.text) if keyword.kind == "NAME" else None
    if keyword.text == "cevian" and len(tokens) == len(_CEVIAN_ON_LINE) + 1:
        shape = _CEVIAN_ON_LINE
    if shape is None:
        diagnostics.append(Diagnostic("syntax", "unknown statement", keyword.span, keyword.text))
        return False
    args = tokens[1:]
    for position, expected in enumerate(shape):
        if position >= len(args):
            end = len(line_text.rstrip()) + 1
            diagnostics.append(
                Diagnostic("syntax", f"'{keyword.text}' expects {expected} here", SourceSpan(lineno, end, end), "")
            )
            return False
        if not _matches(args[position], expected):
            token = args[position]
            diagnostics.append(Diagnostic("syntax", f"expected {expected}", token.span, token.text))
            return False
    if len(args) > len(shape):
        extra = args[len(shape)]
        diagnostics.append(Diagnostic("syntax", "unexpected trailing token", extra.span, extra.text))
        return False
    return True


class _Resolver:
    """Builds the resolved objects of a scene, collecting semantic diagnostics."""

    def __init__(self, ball: BallParam) -> None:
        self.ball = ball
        self.diagnostics: List[Diagnostic] = []
        self.names: Dict[str, str] = {}
        self.points: Dict[str, DiscPoint] = {}
        self.lines: Dict[str, Gyroline] = {}
        self.triangles: Dict[str, TriangleConfig] = {}
        self.quads: Dict[str, QuadConfig] = {}
        self.cevians: Dict[str, CevianStmt] = {}
        self.bindings: List[Binding] = []
        self.latest: Dict[str, str] = {}

    def error(self, message: str, span: Optional[SourceSpan], token: Optional[str] = None) -> None:
        self.diagnostics.append(Diagnostic("semantic", message, span or SourceSpan(0, 0, 0), token))

    def _declare(self, name: str, kind: str, span: Optional[SourceSpan]) -> bool:
        if name in self.names:
            self.error(f"duplicate name (already a {self.names[name]})", span, name)
            return False
        return True

    def _point(self, name: str, span: Optional[SourceSpan]) -> Optional[DiscPoint]:
        point = self.points.get(name)
        if point is None:
            self.error("unresolved point reference", span, name)
        return point

    def add(self, stmt: Statement) -> None:
        handler = getattr(self, f"_add_{type(stmt).__name__}")
        handler(stmt)

    def _add_PointStmt(self, stmt: PointStmt) -> None:
        if not self._declare(stmt.name, "point", stmt.span):
            return
        try:
            self.points[stmt.name] = DiscPoint(stmt.re, stmt.im, self.ball)
        except GyroError as e:
            message = f"outside ball: {e}" if isinstance(e, OutsideBallError) else f"invalid point: {e}"
            self.error(message, stmt.span, stmt.name)
            return
        self.names[stmt.name] = "point"

    def _add_LineStmt(self, stmt: LineStmt) -> None:
        if not self._declare(stmt.name, "line", stmt.span):
            return
        first, second = self._point(stmt.first, stmt.span), self._point(stmt.second, stmt.span)
        if first is None or second is None:
            return
        try:
            self.lines[stmt.name] = gyroline_through(first, second)
        except GyroError as e:
            self.error(f"invalid line: {e}", stmt.span, stmt.name)
            return
        self.names[stmt.name] = "line"
        self.latest["line"] = stmt.name

    def _add_TriangleStmt(self, stmt: TriangleStmt) -> None:
        self._add_figure(stmt, "triangle", TriangleConfig, self.triangles)

    def _add_QuadStmt(self, stmt: QuadStmt) -> None:
        self._add_figure(stmt, "quad", QuadConfig, self.quads)

    def _add_figure(self, stmt: Union[TriangleStmt, QuadStmt], kind: str, config_type: type, store: Dict) -> None:
        if not self._declare(stmt.name, kind, stmt.span):
            return
        vertices = [self._point(name, stmt.span) for name in stmt.vertices]
        if any(vertex is None for vertex in vertices):
            return
        try:
            store[stmt.name] = config_type(*vertices)
        except GyroError as e:
            self.error(f"invalid {kind}: {e}", stmt.span, stmt.name)
            return
        self.names[stmt.name] = kind
        self.latest[kind] = stmt.name

    def _add_CevianStmt(self, stmt: CevianStmt) -> None:
        if not self._declare(stmt.name, "point", stmt.span):
            return
        triangle = self.triangles.get(stmt.triangle)
        if triangle is None:
            self.error("unresolved triangle reference", stmt.span, stmt.triangle)
            return
        if not math.isfinite(stmt.t):
            self.error("cevian parameter must be finite", stmt.span, repr(stmt.t))
            return
        try:
            self.points[stmt.name] = gyroline_point(triangle.B, triangle.C, stmt.t)
        except GyroError as e:
            self.error(f"invalid cevian: {e}", stmt.span, stmt.name)
            return
        self.cevians[stmt.name] = stmt
        self.names[stmt.name] = "point"
        self.latest["cevian"] = stmt.name

    def _add_OnLineStmt(self, stmt: OnLineStmt) -> None:
        if not self._declare(stmt.name, "point", stmt.span):
            return
        first, second = self._point(stmt.first, stmt.span), self._point(stmt.second, stmt.span)
        if first is None or second is None:
            return
        if not math.isfinite(stmt.t):
            self.error("cevian parameter must be finite", stmt.span, repr(stmt.t))
            return
        try:
            self.points[stmt.name] = gyroline_point(first, second, stmt.t)
        except GyroError as e:
            self.error(f"invalid cevian: {e}", stmt.span, stmt.name)
            return
        self.names[stmt.name] = "point"

    def _add_AssertStmt(self, stmt: AssertStmt) -> None:
        if stmt.theorem not in THEOREMS:
            self.error("unknown theorem", stmt.span, stmt.theorem)
            return
        if not (math.isfinite(stmt.bound) and stmt.bound > 0.0):
            self.error("deviation bound must be positive and finite", stmt.span, repr(stmt.bound))
            return
        kind = FIGURE_FOR_THEOREM[stmt.theorem]
        figure, line = self.latest.get(kind), self.latest.get("line")
        if figure is None:
            self.error(f"no {kind} declared before this assertion", stmt.span, stmt.theorem)
            return
        if line is None:
            self.error("no line declared before this assertion", stmt.span, stmt.theorem)
            return
        self.bindings.append(Binding(stmt, figure, line))


def build_scene(ball: BallParam, statements: Sequence[Statement]) -> Tuple[Scene, List[Diagnostic]]:
    """Resolve statements into a Scene; returns the scene and any semantic diagnostics."""
    resolver = _Resolver(ball)
    for stmt in statements:
        resolver.add(stmt)
    scene = Scene(
        ball,
        tuple(statements),
        resolver.points,
        resolver.lines,
        resolver.triangles,
        resolver.quads,
        resolver.cevians,
        tuple(resolver.bindings),
    )
    return scene, resolver.diagnostics


def _statement(tokens: List[Token]) -> Statement:
    keyword, args = tokens[0].text, [token.text for token in tokens[1:]]
    span = SourceSpan(tokens[0].span.line, tokens[0].span.column, tokens[-1].span.end_column)
    if keyword == "point":
        return PointStmt(args[0], float(args[1]), float(args[2]), span)
    if keyword == "line":
        return LineStmt(args[0], args[1], args[2], span)
    if keyword == "triangle":
        return TriangleStmt(args[0], (args[1], args[2], args[3]), span)
    if keyword == "quad":
        return QuadStmt(args[0], (args[1], args[2], args[3], args[4]), span)
    if keyword == "cevian":
        if len(args) == 4:
            return OnLineStmt(args[0], args[1], args[2], float(args[3]), span)
        return CevianStmt(args[0], args[1], float(args[2]), span)
    theorem = THEOREM_ALIASES.get(args[0].lower(), args[0])
    return AssertStmt(theorem, float(args[3]), span)


def parse(text: str, source: Optional[str] = None) -> Scene:
    """Parse scene text; raises SceneError listing every diagnostic."""
    if text.startswith("\ufeff"):
        text = text[1:]
    diagnostics: List[Diagnostic] = []
    statements: List[Statement] = []
    ball = UNIT_BALL
    ball_seen: Optional[SourceSpan] = None
    first_point: Optional[SourceSpan] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line_text = raw.split("#", 1)[0]
        tokens = _lex_line(line_text, lineno, diagnostics)
        if not tokens or not _check_shape(tokens, lineno, line_text, diagnostics):
            continue
        keyword = tokens[0]
        if keyword.text == "ball":
            s = float(tokens[1].text)
            if ball_seen is not None:
                diagnostics.append(Diagnostic("semantic", f"ball already declared at {ball_seen}", keyword.span, "ball"))
            elif first_point is not None:
                diagnostics.append(Diagnostic("semantic", "ball must precede all points", keyword.span, "ball"))
            elif not (math.isfinite(s) and s > 0.0):
                diagnostics.append(Diagnostic("semantic", "ball radius must be positive", tokens[1].span, tokens[1].text))
            else:
                ball, ball_seen = BallParam(s), keyword.span
            continue
        stmt = _statement(tokens)
        if isinstance(stmt, (PointStmt, CevianStmt, OnLineStmt)) and first_point is None:
            first_point = stmt.span
        statements.append(stmt)

    scene, semantic = build_scene(ball, statements)
    diagnostics.extend(semantic)
    if diagnostics:
        diagnostics.sort(key=lambda d: (d.span.line, d.span.column))
        logger.debug(f"Scene {source or '<text>'} has {len(diagnostics)} diagnostic(s)")
        raise SceneError(diagnostics, source)
    return scene


def parse_file(path: Union[str, Path]) -> Scene:
    path = Path(path)
    try:
        text = path.read_bytes().decode("utf-8-sig")
    except UnicodeDecodeError as e:
        span = SourceSpan(1, 1, 1)
        raise SceneError([Diagnostic("lexical", f"not valid UTF-8: {e.reason}", span)], str(path)) from e
    return parse(text, str(path))


def _stmt_text(stmt: Statement) -> str:
    if isinstance(stmt, PointStmt):
        return f"point {stmt.name} {stmt.re!r} {stmt.im!r}"
    if isinstance(stmt, LineStmt):
        return f"line {stmt.name} {stmt.first} {stmt.second}"
    if isinstance(stmt, TriangleStmt):
        return f"triangle {stmt.name} {' '.join(stmt.vertices)}"
    if isinstance(stmt, QuadStmt):
        return f"quad {stmt.name} {' '.join(stmt.vertices)}"
    if isinstance(stmt, CevianStmt):
        return f"cevian {stmt.name} {stmt.triangle} {stmt.t!r}"
    if isinstance(stmt, OnLineStmt):
        return f"cevian {stmt.name} {stmt.first} {stmt.second} {stmt.t!r}"
    return f"assert {stmt.theorem} deviation<= {stmt.bound!r}"


def unparse(scene: Scene) -> str:
    """Canonical text; floats use the shortest repr that reads back bit-equal."""
    lines = [f"ball {scene.ball.s!r}"]
    lines.extend(_stmt_text(stmt) for stmt in scene.statements)
    return "\n".join(lines) + "\n"


def _checked(ball: BallParam, statements: List[Statement]) -> Scene:
    scene, diagnostics = build_scene(ball, statements)
    if diagnostics:
        raise SceneError(diagnostics, "<generated>")
    return scene


def _line_points(line: Gyroline) -> Tuple[DiscPoint, DiscPoint]:
    return line.anchors if line.anchors is not None else line.sample_points()


def _point_stmts(named: Sequence[Tuple[str, DiscPoint]]) -> List[Statement]:
    return [PointStmt(name, p.re, p.im) for name, p in named]


def triangle_scene(cfg: TriangleConfig, line: Gyroline, bound: float = VERIFICATION_TOLERANCE) -> Scene:
    P, Q = _line_points(line)
    statements = _point_stmts([("A", cfg.A), ("B", cfg.B), ("C", cfg.C), ("P", P), ("Q", Q)])
    statements += [
        TriangleStmt("T", ("A", "B", "C")),
        LineStmt("L", "P", "Q"),
        AssertStmt("menelaus_triangle", bound),
    ]
    return _checked(cfg.ball, statements)


def quad_scene(
    cfg: QuadConfig,
    line: Gyroline,
    bound: float = VERIFICATION_TOLERANCE,
    theorem: str = "menelaus_quad",
) -> Scene:
    P, Q = _line_points(line)
    statements = _point_stmts([("A", cfg.A), ("B", cfg.B), ("C", cfg.C), ("D", cfg.D), ("P", P), ("Q", Q)])
    statements += [
        QuadStmt("F", ("A", "B", "C", "D")),
        LineStmt("L", "P", "Q"),
        AssertStmt(theorem, bound),
    ]
    return _checked(cfg.ball, statements)


def cevian_scene(cfg: TriangleConfig, t: float, line: Gyroline, bound: float = VERIFICATION_TOLERANCE) -> Scene:
    P, Q = _line_points(line)
    statements = _point_stmts([("A", cfg.A), ("B", cfg.B), ("C", cfg.C), ("P", P), ("Q", Q)])
    statements += [
        TriangleStmt("T", ("A", "B", "C")),
        CevianStmt("D", "T", t),
        LineStmt("L", "P", "Q"),
        AssertStmt("transversal", bound),
    ]
    return _checked(cfg.ball, statements)
