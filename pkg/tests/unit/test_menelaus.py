import cmath
import math

import pytest

from conftest import pt
from src.errors import (
    DegenerateInputError,
    DomainError,
    IncidenceError,
    NonTransversalError,
    NotCollinearError,
    VertexProximityError,
)
from src.gyroline import contains, gyroline_param, gyroline_point, gyroline_through
from src.menelaus import (
    LimitConfiguration,
    LimitFigure,
    QuadConfig,
    Theorem,
    TriangleConfig,
    converse_check,
    euclidean_limit_sweep,
    quad_menelaus,
    quad_product_at,
    transversal_product,
    transversal_via_quadrilateral,
    triangle_menelaus,
)
from src.mobius_core import BallParam, DiscPoint


def _running_product(report):
    product = 1.0
    for term in report.ratios:
        product *= term.ratio
    return product


def test_triangle_example(triangle_example):
    cfg, line = triangle_example
    report = triangle_menelaus(cfg, line)

    assert report.theorem is Theorem.MENELAUS_TRIANGLE
    assert [term.label for term in report.ratios] == ["AF/BF", "BD/CD", "CE/AE"]
    assert [record.side for record in report.intersections] == ["AB", "BC", "CA"]
    assert report.product == _running_product(report)
    assert report.product > 0.0
    assert report.deviation <= 1e-9
    assert report.passes()
    for term in report.ratios:
        assert term.numerator.v_gamma > 0.0 and term.denominator.v_gamma > 0.0
    for record in report.intersections:
        assert contains(line, record.point)


def test_triangle_rejects_transversal_through_vertex(triangle_example):
    cfg, _ = triangle_example
    with pytest.raises(VertexProximityError):
        triangle_menelaus(cfg, gyroline_through(cfg.A, pt(-0.1 + 0.3j)))


def test_triangle_config_validation():
    with pytest.raises(DegenerateInputError):
        TriangleConfig(pt(0.1), pt(0.2), pt(0.3))
    with pytest.raises(DegenerateInputError):
        TriangleConfig(pt(0.1), pt(0.1), pt(0.3j))
    with pytest.raises(DegenerateInputError):
        QuadConfig(pt(0.1), pt(0.2), pt(0.3), pt(0.3j))


def test_quad_example(quad_example):
    cfg, line = quad_example
    report = quad_menelaus(cfg, line)

    assert report.theorem is Theorem.MENELAUS_QUAD
    assert [term.label for term in report.ratios] == ["AX/BX", "BY/CY", "CZ/DZ", "DW/AW"]
    assert report.product == _running_product(report)
    assert report.deviation <= 1e-9
    if report.auxiliary is not None:
        assert report.telescoping_residual <= 1e-12

    data = report.to_dict()
    assert data["theorem"] == "T3"
    assert len(data["ratios"]) == 4
    assert "auxiliary" in data and "sub_products" in data


def test_quad_line_missing_a_side(quad_example):
    cfg, _ = quad_example
    with pytest.raises(NonTransversalError):
        quad_menelaus(cfg, gyroline_through(pt(0.05 + 0.1j), pt(-0.1)))


def test_quad_product_at_explicit_points(quad_example):
    cfg, line = quad_example
    report = quad_menelaus(cfg, line)
    X, Y, Z, W = (record.point for record in report.intersections)
    again = quad_product_at(cfg, X, Y, Z, W, auxiliary=report.auxiliary)
    assert again.product == report.product
    assert again.sub_products == report.sub_products


def test_uncorrected_product_differs_from_corrected(quad_example):
    cfg, line = quad_example
    report = quad_menelaus(cfg, line)
    assert abs(report.uncorrected_product() - 1.0) > 1e-6


def test_transversal_example(cevian_example):
    cfg, line = cevian_example
    foot = gyroline_point(cfg.B, cfg.C, 0.4)
    report = transversal_product(cfg, foot, line)

    assert report.theorem is Theorem.TRANSVERSAL
    assert [term.label for term in report.ratios] == ["BD/CD", "CA/NA", "NP/MP", "MA/BA"]
    assert [record.side for record in report.intersections] == ["AB", "AC", "AD"]
    assert report.deviation <= 1e-9

    via_quad = transversal_via_quadrilateral(cfg, foot, line)
    assert abs(via_quad.product - report.product) <= 1e-12


def test_transversal_requires_foot_on_bc(cevian_example):
    cfg, line = cevian_example
    with pytest.raises(IncidenceError):
        transversal_product(cfg, pt(0.0), line)


def test_converse_round_trip(quad_example):
    cfg, line = quad_example
    forward = quad_menelaus(cfg, line)
    X, Y, Z, W = (record.point for record in forward.intersections)

    recovered, report = converse_check(cfg, X, Z, W)
    assert recovered.close_to(Y, 1e-9)
    assert report.theorem is Theorem.CONVERSE
    assert report.deviation <= 1e-9
    assert report.converse.agreement <= 1e-9
    assert report.converse.y_inverted.close_to(Y, 1e-9)
    assert report.to_dict()["theorem"] == "T4"


def test_converse_rejects_non_collinear_points(quad_example):
    cfg, line = quad_example
    X, _, Z, W = (record.point for record in quad_menelaus(cfg, line).intersections)
    D, A = cfg.D, cfg.A
    shifted = gyroline_point(D, A, gyroline_param(D, A, W) + 1e-3)
    with pytest.raises(NotCollinearError):
        converse_check(cfg, X, Z, shifted)

    off_side = pt(W.z + 1e-3j)
    with pytest.raises(IncidenceError):
        converse_check(cfg, X, Z, off_side)


def test_limit_configuration_validation():
    with pytest.raises(DomainError):
        LimitConfiguration(LimitFigure.QUAD, (0.1, 0.2j, -0.3), (0j, 0.1j))
    with pytest.raises(DomainError):
        LimitConfiguration(LimitFigure.TRANSVERSAL, (0.1, 0.2j, -0.3), (0j, 0.1j))

    config = LimitConfiguration(
        LimitFigure.QUAD,
        (0.4, 0.3j, -0.45, -0.2 - 0.3j),
        (0j, 0.5 * cmath.exp(1j * math.radians(85))),
    )
    assert config.extent == pytest.approx(0.5)
    with pytest.raises(DomainError):
        euclidean_limit_sweep(config, [0.4, 10.0])
    with pytest.raises(DomainError):
        euclidean_limit_sweep(config, [])


def test_figure_tolerance_follows_the_figure_in_a_large_ball():
    ball = BallParam(1e9)
    points = [DiscPoint.from_complex(z, ball) for z in (0.4, 0.3j, -0.45, -0.2 - 0.3j)]
    with pytest.raises(DegenerateInputError):
        QuadConfig(*points)

    cfg = QuadConfig(*points, incidence_tol=1e-9)
    assert cfg == QuadConfig(*points, incidence_tol=1e-6)
    with pytest.raises(DegenerateInputError):
        TriangleConfig(points[0], points[1], DiscPoint.from_complex(0.2 + 0.15j, ball), incidence_tol=1e-9)
