"""SVG figures of scenes using drawsvg."""

from __future__ import annotations

import logging
from typing import Iterable, Optional, Tuple

import drawsvg as draw

from .config_loader import RenderConfig
from .gyroline import Gyroline, gyroline_through
from .mobius_core import DiscPoint
from .scene_dsl import Scene
from .scene_exec import AssertionOutcome


logger = logging.getLogger(__name__)

STYLES = {
    "boundary": {"stroke": "#222222", "stroke_width": 1.5, "fill": "none"},
    "side": {"stroke": "#1f4e9c", "stroke_width": 1.5, "fill": "none"},
    "cevian": {"stroke": "#6a3d9a", "stroke_width": 1.2, "fill": "none", "stroke_dasharray": "6,4"},
    "line": {"stroke": "#777777", "stroke_width": 1.0, "fill": "none"},
    "transversal": {"stroke": "#d62728", "stroke_width": 2.5, "fill": "none"},
    "marker": {"fill": "#000000"},
    "intersection": {"fill": "none", "stroke": "#d62728", "stroke_width": 1.5},
    "label": {"fill": "#000000", "font_family": "sans-serif"},
}


class SceneRenderer:
    """Draws the disc of radius s as a circle of ``radius_px`` pixels, y axis up."""

    def __init__(self, config: Optional[RenderConfig] = None) -> None:
        self.config = config or RenderConfig()
        self.size = 2 * (self.config.radius_px + self.config.margin_px)
        self.center = self.size / 2

    def to_screen(self, z: complex, s: float) -> Tuple[float, float]:
        scale = self.config.radius_px / s
        return round(self.center + z.real * scale, 3), round(self.center - z.imag * scale, 3)

    def _arc_path(self, line: Gyroline, start: complex, end: complex, css: str) -> draw.Path:
        s = line.ball.s
        x0, y0 = self.to_screen(start, s)
        x1, y1 = self.to_screen(end, s)
        path = draw.Path(class_=css, **STYLES[css])
        path.M(x0, y0)
        if line.is_diameter:
            path.L(x1, y1)
            return path
        cx, cy = self.to_screen(line.center, s)
        radius = round(line.radius * self.config.radius_px / s, 3)
        # in screen coordinates a positive cross product means a clockwise sweep
        cross = (x1 - x0) * (cy - y0) - (y1 - y0) * (cx - x0)
        path.A(radius, radius, 0, 0, 1 if cross > 0 else 0, x1, y1)
        return path

    def segment(self, p: DiscPoint, q: DiscPoint, css: str) -> draw.Path:
        return self._arc_path(gyroline_through(p, q), p.z, q.z, css)

    def full_line(self, line: Gyroline, css: str) -> draw.Path:
        start, end = line.ideal_endpoints()
        return self._arc_path(line, start, end, css)

    def marker(self, name: str, p: DiscPoint) -> Iterable[draw.DrawingElement]:
        x, y = self.to_screen(p.z, p.ball.s)
        yield draw.Circle(x, y, 4, class_="marker", **STYLES["marker"])
        yield draw.Text(name, 16, round(x + 7, 3), round(y - 7, 3), class_="label", **STYLES["label"])

    def render(self, scene: Scene, outcomes: Iterable[AssertionOutcome] = ()) -> str:
        outcomes = list(outcomes)
        d = draw.Drawing(self.size, self.size)
        d.append(draw.Circle(self.center, self.center, self.config.radius_px, class_="boundary", **STYLES["boundary"]))

        for cfg in scene.triangles.values():
            A, B, C = cfg.vertices
            for p, q in ((A, B), (B, C), (C, A)):
                d.append(self.segment(p, q, "side"))
        for cfg in scene.quads.values():
            A, B, C, D = cfg.vertices
            for p, q in ((A, B), (B, C), (C, D), (D, A)):
                d.append(self.segment(p, q, "side"))
        for name, cevian in scene.cevians.items():
            d.append(self.segment(scene.triangles[cevian.triangle].A, scene.points[name], "cevian"))

        transversals = {binding.line for binding in scene.bindings}
        for name, line in scene.lines.items():
            d.append(self.full_line(line, "transversal" if name in transversals else "line"))

        for name, point in scene.points.items():
            for element in self.marker(name, point):
                d.append(element)

        for outcome in outcomes:
            if outcome.report is None:
                continue
            for record in outcome.report.intersections:
                x, y = self.to_screen(record.point.z, record.point.ball.s)
                d.append(draw.Circle(x, y, 6, class_="intersection", **STYLES["intersection"]))

        logger.debug(f"Rendered scene with {len(scene.points)} points and {len(scene.lines)} lines")
        return d.as_svg()
