from fractions import Fraction

import pytest

from occufrac.errors import CapabilityError, DomainError
from occufrac.exactmath import IntPolynomial
from occufrac.graphs import Graph, complete, complete_bipartite, cycle, petersen
from occufrac.hardcore import (
    build_primal,
    check_mean_size_dominance,
    dual_certificate,
    edgeless_config_index,
    empty_config_index,
    enumerate_configs,
    free_neighborhood_distribution,
    objective_scale,
    objective_value,
    ratio_gap_coefficients,
    solver_dual_for_certificate,
    triangle_free_lp,
    uncovered_count_distribution,
)
from occufrac.lp import dual_slacks, solve
from occufrac.polynomials import kdd_occupancy, occupancy

ONE = Fraction(1)
GRID = (Fraction(1, 4), Fraction(1, 2), ONE, Fraction(2), Fraction(4))


def test_enumerate_configs_counts():
    assert len(enumerate_configs(2)) == 4
    assert len(enumerate_configs(3)) == 8
    assert len(enumerate_configs(4)) == 19
    with pytest.raises(CapabilityError):
        enumerate_configs(8)
    with pytest.raises(CapabilityError):
        enumerate_configs(1)


def test_config_order_and_special_entries():
    configs = enumerate_configs(3)
    assert configs[empty_config_index(3)].graph.n == 0
    edgeless = configs[edgeless_config_index(3)]
    assert edgeless.graph.n == 3 and edgeless.graph.edge_count == 0
    sizes = [c.graph.n for c in configs]
    assert sizes == sorted(sizes)
    # deterministic order: rebuilding gives identical keys
    assert [c.key for c in configs] == [c.key for c in enumerate_configs(3)]


def test_config_weights_special_values():
    for d in (2, 3, 4):
        for lam in (Fraction(1, 2), ONE, Fraction(3)):
            configs = enumerate_configs(d)
            empty = configs[empty_config_index(d)]
            edgeless = configs[edgeless_config_index(d)]
            assert empty.vacancy(lam) == 1
            assert empty.crowding(lam, d) == 0
            assert edgeless.vacancy(lam) == 1 / (1 + lam) ** d
            assert edgeless.crowding(lam, d) == 1
            for cfg in configs:
                assert 0 < cfg.vacancy(lam) <= 1


def test_primal_known_value_d2():
    sol = solve(build_primal(2, ONE))
    assert sol.value == Fraction(2, 7)
    support = dict(zip(sol.support, (sol.primal[j] for j in sol.support)))
    assert support == {
        empty_config_index(2): Fraction(3, 7),
        edgeless_config_index(2): Fraction(4, 7),
    }


def test_primal_optimum_closed_form_on_grid():
    for d in (2, 3, 4, 5):
        for lam in GRID:
            sol = solve(build_primal(d, lam))
            assert sol.value == kdd_occupancy(d, lam)
            assert set(sol.support) == {
                empty_config_index(d),
                edgeless_config_index(d),
            }


def test_candidate_point_objective_value():
    # the two-point distribution gives the extremal objective for any d, lam
    for d in (2, 3, 4, 6):
        for lam in (Fraction(2, 5), ONE, Fraction(7, 2)):
            u = Fraction(1) / (1 + lam) ** d
            p_empty = (1 - u) / (2 - u)
            p_edgeless = 1 / (2 - u)
            probs = [Fraction(0)] * len(enumerate_configs(d))
            probs[empty_config_index(d)] = p_empty
            probs[edgeless_config_index(d)] = p_edgeless
            assert objective_value(probs, d, lam) == kdd_occupancy(d, lam)


def test_dual_certificate_known_values():
    report = dual_certificate(2, ONE)
    assert report.dual_values["norm"] == Fraction(8, 7)
    assert report.dual_values["balance"] == Fraction(-1, 7)
    assert report.optimum == Fraction(2, 7)
    assert len(report.tight) == 2

    report3 = dual_certificate(3, ONE)
    assert report3.optimum == Fraction(4, 15)
    strict = [s for _, s in report3.slacks if s > 0]
    assert len(strict) == 6  # 8 configurations, 2 tight


def test_dual_certificate_matches_solver_on_grid():
    for d in (2, 3, 4, 5):
        for lam in GRID:
            report = dual_certificate(d, lam)
            lp = build_primal(d, lam)
            assert report.optimum == solve(lp).value
            slack_report = dual_slacks(lp, solver_dual_for_certificate(d, lam))
            assert slack_report.feasible
            assert slack_report.dual_objective == report.optimum
            # the standard-form slack is the certificate slack rescaled
            scale = objective_scale(lam)
            for (label, s), lp_slack in zip(report.slacks, slack_report.slacks):
                assert lp_slack == scale * s


def test_mean_size_dominance_known_values():
    lhs, rhs = check_mean_size_dominance(Graph(2, [(0, 1)]), 2, ONE)
    assert lhs == 1 and rhs == Fraction(4, 3)
    lhs, rhs = check_mean_size_dominance(Graph(2), 2, ONE)
    assert lhs == rhs
    lhs, rhs = check_mean_size_dominance(complete(3), 3, ONE)
    assert lhs < rhs
    with pytest.raises(DomainError):
        check_mean_size_dominance(Graph(0), 3, ONE)


def test_mean_size_dominance_strict_on_grid():
    for d in (2, 3, 4, 5):
        configs = enumerate_configs(d)
        edgeless = edgeless_config_index(d)
        for lam in GRID:
            for cfg in configs:
                if cfg.graph.n == 0:
                    continue
                lhs, rhs = check_mean_size_dominance(cfg.graph, d, lam)
                if cfg.index == edgeless:
                    assert lhs == rhs
                else:
                    assert lhs < rhs


def test_ratio_gap_coefficients_known_values():
    assert ratio_gap_coefficients(Graph(2, [(0, 1)]), 2) == [0, 0, 2, 0]
    assert all(s == 0 for s in ratio_gap_coefficients(Graph(3), 3))
    assert any(s > 0 for s in ratio_gap_coefficients(complete(3), 3))


def test_ratio_gap_coefficients_match_polynomial_difference():
    # s_k is the coefficient of x^k in (x T')(P - 1) - (x P')(T - 1),
    # where T = (1+x)^d is the edgeless-class independence polynomial
    from occufrac.exactmath import binomial_poly

    for d in (2, 3, 4, 5):
        t_poly = binomial_poly(d)
        for cfg in enumerate_configs(d):
            p_poly = cfg.poly
            diff = (
                t_poly.derivative().shift(1) * (p_poly - IntPolynomial.one())
                - p_poly.derivative().shift(1) * (t_poly - IntPolynomial.one())
            )
            expected = [diff.coefficient(k) for k in range(1, 2 * d + 1)]
            assert ratio_gap_coefficients(cfg.graph, d) == expected
            assert diff.coefficient(0) == 0


def test_ratio_gap_nonnegative_with_positive_entry():
    for d in (2, 3, 4, 5):
        edgeless_poly = enumerate_configs(d)[edgeless_config_index(d)].poly
        for cfg in enumerate_configs(d):
            ss = ratio_gap_coefficients(cfg.graph, d)  # raises on violation
            assert all(s >= 0 for s in ss)
            if cfg.graph.n == 0 or cfg.poly == edgeless_poly:
                assert all(s == 0 for s in ss)
            else:
                assert any(s > 0 for s in ss)


def test_triangle_free_lp_matches_closed_form():
    for d in (2, 3, 4, 5):
        for lam in GRID:
            lp, bound = triangle_free_lp(d, lam)
            assert bound == kdd_occupancy(d, lam)
            sol = solve(lp)
            assert set(sol.support) == {0, d}


def test_triangle_free_feasibility_of_real_graphs():
    for g, d in ((cycle(6), 2), (petersen(), 3)):
        lam = ONE
        law = uncovered_count_distribution(g, lam)
        assert sum(law, Fraction(0)) == 1
        mean = sum((t * p for t, p in enumerate(law)), Fraction(0))
        inv = sum((p / (1 + lam) ** t for t, p in enumerate(law)), Fraction(0))
        assert mean == d * inv
        assert lam / (d * (1 + lam)) * mean == occupancy(g, lam)
        _, bound = triangle_free_lp(d, lam)
        assert lam / (d * (1 + lam)) * mean <= bound


def test_free_neighborhood_distribution_known_values():
    probs = free_neighborhood_distribution(complete_bipartite(2), ONE)
    support = {i: p for i, p in enumerate(probs) if p}
    assert support == {
        empty_config_index(2): Fraction(3, 7),
        edgeless_config_index(2): Fraction(4, 7),
    }

    probs = free_neighborhood_distribution(cycle(6), ONE)
    assert objective_value(probs, 2, ONE) == Fraction(5, 18)

    probs = free_neighborhood_distribution(petersen(), ONE)
    value = objective_value(probs, 3, ONE)
    assert value == occupancy(petersen(), ONE)
    assert value < Fraction(4, 15)


def test_free_neighborhood_distribution_feasible_on_corpus():
    from occufrac.corpus import is_kdd_union, regular_corpus

    for name, g in regular_corpus(10):
        from occufrac.graphs import regular_degree

        d = regular_degree(g)
        for lam in (Fraction(1, 2), ONE):
            probs = free_neighborhood_distribution(g, lam)
            value = objective_value(probs, d, lam)
            bound = kdd_occupancy(d, lam)
            if is_kdd_union(g, d):
                assert value == bound
            else:
                assert value < bound


def test_free_neighborhood_capability_limits():
    with pytest.raises(CapabilityError):
        free_neighborhood_distribution(cycle(16), ONE)
    with pytest.raises(DomainError):
        free_neighborhood_distribution(Graph(3, [(0, 1)]), ONE)


def test_dual_certificate_at_enumeration_cap():
    # beyond the acceptance grid: every class on <= 7 vertices stays
    # strictly slack off the tight pair
    report = dual_certificate(6, ONE)
    assert len(report.slacks) == 209
    report = dual_certificate(7, Fraction(2))
    assert len(report.slacks) == 1253
    assert len(report.tight) == 2


def test_concurrent_certificates_are_consistent():
    # per-job independence: parallel runs reproduce the serial results
    from concurrent.futures import ThreadPoolExecutor

    jobs = [(d, lam) for d in (2, 3, 4) for lam in (Fraction(1, 2), ONE)]
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = list(pool.map(lambda dl: dual_certificate(*dl).optimum, jobs))
    serial = [dual_certificate(d, lam).optimum for d, lam in jobs]
    assert parallel == serial
