import math

import pytest

from conftest import pt, random_points
from src.errors import DegenerateInputError, DomainError, IndeterminateError
from src.gyroline import (
    Gyroline,
    GyrolineKind,
    collinear,
    contains,
    crossing_angle,
    gyrodistance_to_line,
    gyroline_param,
    gyroline_point,
    gyroline_through,
    gyroline_through_points,
    intersect,
    map_gyroline,
    segment_interior,
)
from src.mobius_core import BallParam, DiscIsometry, DiscPoint


ARC_CENTER = 1.25 + 1.25j
ARC_RADIUS = math.sqrt(2.125)


def test_arc_through_two_points():
    line = gyroline_through(pt(0.5), pt(0.5j))
    assert line.kind is GyrolineKind.ARC
    assert line.center == pytest.approx(ARC_CENTER, abs=1e-14)
    assert line.radius == pytest.approx(ARC_RADIUS, abs=1e-14)
    assert line.anchors == (pt(0.5), pt(0.5j))


def test_diameter_through_origin():
    line = gyroline_through(pt(0j), pt(0.3 + 0.3j))
    assert line.is_diameter
    assert line.theta == pytest.approx(math.pi / 4, abs=1e-15)

    horizontal = gyroline_through(pt(-0.5), pt(0.2))
    assert horizontal.is_diameter
    assert horizontal.theta == 0.0


def test_gyroline_through_is_symmetric(rng):
    points = random_points(rng, 400)
    for a, b in zip(points[::2], points[1::2]):
        assert gyroline_through(a, b) == gyroline_through(b, a)


def test_coincident_points_are_rejected():
    with pytest.raises(DegenerateInputError):
        gyroline_through(pt(0.2 + 0.1j), pt(0.2 + 0.1j))


def test_parametrised_points_lie_on_the_gyroline(rng):
    points = random_points(rng, 200, radius=0.9)
    for a, b in zip(points[::2], points[1::2]):
        line = gyroline_through(a, b)
        for t in (-1.0, -0.3, 0.25, 0.5, 0.8, 1.7):
            p = gyroline_point(a, b, t)
            assert contains(line, p)
            assert gyroline_param(a, b, p) == pytest.approx(t, abs=1e-9)


def test_diameters_meet_at_the_origin():
    first = Gyroline.diameter(0.0)
    second = Gyroline.diameter(math.pi / 3)
    assert intersect(first, second) == pt(0j)
    with pytest.raises(IndeterminateError):
        intersect(first, Gyroline.diameter(0.0))


def test_identical_arcs_have_no_unique_intersection():
    line = gyroline_through(pt(0.5), pt(0.5j))
    with pytest.raises(IndeterminateError):
        intersect(line, gyroline_through(pt(0.5j), pt(0.5)))


def test_arc_meets_diameter():
    arc = gyroline_through(pt(0.5), pt(0.5j))
    point = intersect(arc, Gyroline.diameter(0.0))
    assert point.z == pytest.approx(0.5, abs=1e-14)


def test_random_pairs_meet_at_most_once(rng):
    points = random_points(rng, 4000, radius=0.95)
    met = 0
    for a, b, c, d in zip(*[iter(points)] * 4):
        first, second = gyroline_through(a, b), gyroline_through(c, d)
        point = intersect(first, second)
        if point is None:
            assert crossing_angle(first, second) is None
            continue
        met += 1
        assert contains(first, point)
        assert contains(second, point)
    assert met > 0


def test_crossing_angle():
    arc = gyroline_through(pt(0.5), pt(0.5j))
    angle = crossing_angle(Gyroline.diameter(0.0), arc)
    assert math.cos(angle) == pytest.approx(math.sqrt(0.5) / math.sqrt(0.68), abs=1e-12)
    assert crossing_angle(Gyroline.diameter(0.0), Gyroline.diameter(math.pi / 2)) == pytest.approx(math.pi / 2)

    far = gyroline_through(pt(-0.1 + 0.9j), pt(0.1 + 0.9j))
    assert intersect(Gyroline.diameter(0.0), far) is None
    assert crossing_angle(Gyroline.diameter(0.0), far) is None


def test_arc_constructor_checks_orthogonality():
    line = Gyroline.arc(ARC_CENTER, ARC_RADIUS)
    assert contains(line, pt(0.5))
    with pytest.raises(DomainError):
        Gyroline.arc(2.0, 1.0)
    with pytest.raises(DomainError):
        Gyroline.arc(2.0, -1.0)
    with pytest.raises(DomainError):
        Gyroline.diameter(math.pi)


def test_dict_form():
    arc = gyroline_through(pt(0.5), pt(0.5j))
    data = arc.to_dict()
    assert data["kind"] == "arc"
    restored = Gyroline.from_dict(data)
    assert restored.center == pytest.approx(arc.center)
    assert restored.radius == pytest.approx(arc.radius)

    assert Gyroline.from_dict({"kind": "diameter", "theta": 0.5}).theta == 0.5
    with pytest.raises(DomainError):
        Gyroline.from_dict({"kind": "spiral"})
    with pytest.raises(DomainError):
        Gyroline.from_dict({"kind": "arc", "cx": 1.0})


def test_sample_points_and_ideal_endpoints(rng):
    points = random_points(rng, 100, radius=0.9)
    for a, b in zip(points[::2], points[1::2]):
        line = gyroline_through(a, b)
        first, second = line.sample_points()
        assert contains(line, first)
        assert contains(line, second)
        for end in line.ideal_endpoints():
            assert abs(end) == pytest.approx(1.0, abs=1e-12)
            if not line.is_diameter:
                assert abs(end - line.center) == pytest.approx(line.radius, rel=1e-9)


def test_segment_interior():
    a, b = pt(-0.4 + 0.1j), pt(0.3 + 0.2j)
    assert segment_interior(a, b, gyroline_point(a, b, 0.5))
    assert not segment_interior(a, b, gyroline_point(a, b, 1.5))
    assert not segment_interior(a, b, gyroline_point(a, b, -0.2))
    assert not segment_interior(a, b, a)


def test_collinearity():
    a, b = pt(-0.4 + 0.1j), pt(0.3 + 0.2j)
    on_line = [a, b, gyroline_point(a, b, 0.3), gyroline_point(a, b, 2.0)]
    assert collinear(on_line)
    assert gyroline_through_points(on_line) == gyroline_through(a, gyroline_point(a, b, 2.0))
    assert not collinear([a, b, pt(0.0)])


def test_isometry_maps_gyrolines(rng):
    iso = DiscIsometry(pt(0.4 - 0.2j), theta=0.7)
    points = random_points(rng, 60, radius=0.9)
    for a, b, c in zip(*[iter(points)] * 3):
        line = gyroline_through(a, b)
        image = map_gyroline(line, iso)
        assert contains(image, iso(a))
        assert contains(image, iso(b))
        p = gyroline_point(a, b, 0.4)
        assert contains(image, iso(p))


def test_gyrodistance_to_line():
    arc = gyroline_through(pt(0.5), pt(0.5j))
    a = 0.4 * math.sqrt(2.0)
    expected = (1.0 - math.sqrt(0.68)) / a
    assert gyrodistance_to_line(pt(0j), arc) == pytest.approx(expected, abs=1e-13)
    assert gyrodistance_to_line(pt(0.5), arc) == pytest.approx(0.0, abs=1e-12)
    assert gyrodistance_to_line(pt(0j), Gyroline.diameter(1.0)) == pytest.approx(0.0, abs=1e-15)


def test_scaled_ball():
    ball = BallParam(10.0)
    line = gyroline_through(DiscPoint(5.0, 0.0, ball), DiscPoint(0.0, 5.0, ball))
    assert line.center == pytest.approx(10 * ARC_CENTER, abs=1e-12)
    assert line.radius == pytest.approx(10 * ARC_RADIUS, abs=1e-12)
    assert contains(line, DiscPoint(5.0, 0.0, ball))
