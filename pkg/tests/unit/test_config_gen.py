from collections import Counter

import pytest

from conftest import pt
from src.config_gen import (
    CEVIAN_RANGE,
    GenPolicy,
    case_seed,
    gen_cevian_case,
    gen_cevian_config,
    gen_quad_transversal,
    gen_triangle_transversal,
    is_simple_quad,
    make_rng,
)
from src.errors import DomainError, GeneratorExhaustedError
from src.gyroline import gyroline_point
from src.menelaus import QuadConfig, quad_menelaus, transversal_product, triangle_menelaus


def test_case_seeds_are_deterministic_and_distinct():
    seeds = [case_seed(42, index) for index in range(100)]
    assert seeds == [case_seed(42, index) for index in range(100)]
    assert len(set(seeds)) == 100
    assert case_seed(42, 0) != case_seed(43, 0)
    assert all(0 <= seed < 2 ** 64 for seed in seeds)


def test_rng_streams_repeat():
    assert make_rng(7).random(5).tolist() == make_rng(7).random(5).tolist()


def test_policy_validation():
    with pytest.raises(DomainError):
        GenPolicy(seed=-1)
    with pytest.raises(DomainError):
        GenPolicy(seed=1, max_radius=1.2)
    with pytest.raises(DomainError):
        GenPolicy(seed=1, max_retries=0)

    data = GenPolicy(seed=3).to_dict()
    assert data["seed"] == 3
    assert data["ball"] == 1.0
    assert data["max_radius"] == 0.9


def test_triangle_generator_is_deterministic():
    policy = GenPolicy(seed=case_seed(42, 0))
    first = gen_triangle_transversal(policy)
    second = gen_triangle_transversal(policy)
    assert first == second
    assert gen_triangle_transversal(GenPolicy(seed=case_seed(42, 1))) != first

    cfg, line = first
    assert triangle_menelaus(cfg, line).deviation <= 1e-9
    assert all(p.norm <= 0.9 for p in cfg.vertices)


def test_quad_generator_honours_policy():
    stats = Counter()
    cfg, line = gen_quad_transversal(GenPolicy(seed=case_seed(5, 3)), stats)
    report = quad_menelaus(cfg, line, require_auxiliary=True)
    assert report.auxiliary is not None
    assert report.deviation <= 1e-9
    assert report.telescoping_residual <= 1e-12
    assert stats["accepted"] == 1
    assert stats["draws"] >= 1


def test_cevian_generator():
    policy = GenPolicy(seed=case_seed(9, 0))
    cfg, foot, line, t = gen_cevian_case(policy)
    assert CEVIAN_RANGE[0] <= t <= CEVIAN_RANGE[1]
    assert foot == gyroline_point(cfg.B, cfg.C, t)
    assert transversal_product(cfg, foot, line).deviation <= 1e-9
    assert gen_cevian_config(policy) == (cfg, foot, line)


def test_exhausted_generator_reports_histogram():
    stats = Counter()
    policy = GenPolicy(seed=1, vertex_guard=10.0, max_retries=5)
    with pytest.raises(GeneratorExhaustedError) as excinfo:
        gen_triangle_transversal(policy, stats)

    error = excinfo.value
    assert error.kind == "triangle"
    assert error.retries == 5
    assert sum(error.histogram.values()) == 5
    assert stats["draws"] == 5
    assert "accepted" not in stats


def test_simple_quadrilateral_check():
    square = QuadConfig(pt(0.3 + 0.3j), pt(-0.3 + 0.3j), pt(-0.3 - 0.3j), pt(0.3 - 0.3j))
    bow_tie = QuadConfig(pt(0.3 + 0.3j), pt(-0.3 + 0.3j), pt(0.3 - 0.3j), pt(-0.3 - 0.3j))
    assert is_simple_quad(square)
    assert not is_simple_quad(bow_tie)


def test_stress_radius_bounds_every_drawn_point():
    for index in range(20):
        policy = GenPolicy(seed=case_seed(4, index), max_radius=0.99)
        cfg, line = gen_quad_transversal(policy)
        assert is_simple_quad(cfg)
        assert all(p.norm <= 0.99 for p in (*cfg.vertices, *line.anchors))
