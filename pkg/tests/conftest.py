from __future__ import annotations

import cmath
from pathlib import Path
import sys

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

import numpy as np
import pytest

from src import settings  # noqa: E402
from src.gyroline import gyroline_through  # noqa: E402
from src.menelaus import QuadConfig, TriangleConfig  # noqa: E402
from src.mobius_core import UNIT_BALL, BallParam, DiscPoint  # noqa: E402


FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


def pt(z: complex, ball: BallParam = UNIT_BALL) -> DiscPoint:
    return DiscPoint.from_complex(z, ball)


def random_points(rng: np.random.Generator, count: int, radius: float = 0.95, ball: BallParam = UNIT_BALL):
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return [pt(ball.s * complex(ri * np.cos(ti), ri * np.sin(ti)), ball) for ri, ti in zip(r, theta)]


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    for name in ("GYRO_TOLERANCE", "GYRO_MAX_RADIUS", "GYRO_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    settings.reset_settings_cache()
    yield
    settings.reset_settings_cache()


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240601))


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def triangle_example():
    cfg = TriangleConfig(pt(0.3), pt(0.4j), pt(-0.35))
    line = gyroline_through(pt(0.1), pt(0.05 + 0.2j))
    return cfg, line


@pytest.fixture
def quad_example():
    cfg = QuadConfig(pt(0.4), pt(0.3j), pt(-0.45), pt(-0.2 - 0.3j))
    line = gyroline_through(pt(0j), pt(0.5 * cmath.exp(1j * cmath.pi * 85 / 180)))
    return cfg, line


@pytest.fixture
def cevian_example():
    cfg = TriangleConfig(pt(0.1 + 0.4j), pt(-0.3 - 0.1j), pt(0.45 - 0.15j))
    line = gyroline_through(pt(-0.05 + 0.15j), pt(0.2 + 0.1j))
    return cfg, line
