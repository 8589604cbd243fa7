"""Converse round trips and the sensitivity of the product to the fourth point."""

from src.config_gen import GenPolicy, case_seed, gen_quad_transversal
from src.gyroline import gyroline_param, gyroline_point
from src.menelaus import converse_check, quad_menelaus, quad_product_at
from src.mobius_core import rapidity


EPSILONS = (1e-4, 1e-3, 1e-2, 1e-1)


def test_converse_round_trips():
    for index in range(200):
        cfg, line = gen_quad_transversal(GenPolicy(seed=case_seed(7, index)))
        X, Y, Z, W = (record.point for record in quad_menelaus(cfg, line).intersections)

        recovered, report = converse_check(cfg, X, Z, W)
        assert recovered.close_to(Y, 1e-9)
        assert report.converse.y_inverted.close_to(Y, 1e-9)
        assert report.converse.agreement <= 1e-9
        assert report.deviation <= 1e-9


def test_displacing_the_fourth_point_breaks_the_identity():
    checked = 0
    index = 0
    while checked < 200 and index < 5000:
        cfg, line = gen_quad_transversal(GenPolicy(seed=case_seed(8, index)))
        index += 1
        X, Y, Z, W = (record.point for record in quad_menelaus(cfg, line).intersections)
        B, C = cfg.B, cfg.C
        t = gyroline_param(B, C, Y)
        span = rapidity(B, C)
        if not (0.05 < t and t + EPSILONS[-1] / span < 0.95):
            continue

        deviations = []
        for eps in EPSILONS:
            moved = gyroline_point(B, C, t + eps / span)
            deviations.append(quad_product_at(cfg, X, moved, Z, W).deviation)
        assert all(later > earlier for earlier, later in zip(deviations, deviations[1:]))
        assert deviations[0] > 0.0
        assert deviations[1] > 10 * 1e-9
        checked += 1
    assert checked == 200
