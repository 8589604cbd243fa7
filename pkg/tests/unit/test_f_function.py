import numpy as np
import pytest

from src.errors import DomainError
from src.menelaus import (
    f_branch_ranges,
    f_closed,
    f_difference_residual,
    f_eval,
    f_forms,
    invert_f,
)


B_VALUES = (0.2, 0.5, 0.8)


def _grid(b):
    xs = np.linspace(-0.98, 0.98, 10_000)
    return [float(x) for x in xs if abs(x - b) > 1e-3]


def test_known_values():
    assert f_eval(0.0, 0.6) == 0.0
    assert f_eval(0.2, 0.6) == pytest.approx(4.0 / 11.0, rel=1e-14)


def test_pole_and_domain():
    with pytest.raises(DomainError):
        f_eval(0.6, 0.6)
    with pytest.raises(DomainError):
        f_eval(1.0, 0.6)
    with pytest.raises(DomainError):
        f_eval(0.2, 1.2)
    with pytest.raises(DomainError):
        f_eval(float("nan"), 0.5)


def test_difference_identity_example():
    assert f_difference_residual(0.2, -0.1, 0.6) <= 1e-14


@pytest.mark.parametrize("b", B_VALUES)
def test_printed_forms_agree(b):
    for x in _grid(b):
        ratio_form, closed = f_forms(x, b)
        assert abs(ratio_form - closed) <= 1e-12 * max(1.0, abs(closed))


@pytest.mark.parametrize("b", B_VALUES)
def test_difference_identity_on_grid(b):
    xs = _grid(b)
    for x, y in zip(xs[::37], xs[::-53]):
        if x == y:
            continue
        assert f_difference_residual(x, y, b) <= 1e-13


@pytest.mark.parametrize("b", B_VALUES)
def test_strictly_increasing_on_each_branch(b):
    xs = _grid(b)
    left = [f_closed(x, b) for x in xs if x < b]
    right = [f_closed(x, b) for x in xs if x > b]
    assert np.all(np.diff(left) > 0)
    assert np.all(np.diff(right) > 0)


def test_branch_ranges():
    (left_low, left_high), (right_low, right_high) = f_branch_ranges(0.5)
    assert left_low == pytest.approx(-1.0 / 3.0)
    assert left_high == float("inf")
    assert right_low == float("-inf")
    assert right_high == pytest.approx(-3.0)


@pytest.mark.parametrize("b", B_VALUES)
def test_inversion_recovers_x(b):
    for x in (-0.9, -0.3, 0.0, b - 0.05, b + 0.05, 0.95):
        target = f_closed(x, b)
        assert invert_f(target, b) == pytest.approx(x, abs=1e-12)


def test_inversion_rejects_targets_between_branches():
    with pytest.raises(DomainError):
        invert_f(-2.0, 0.5)
    with pytest.raises(DomainError):
        invert_f(1.0, 1.5)
