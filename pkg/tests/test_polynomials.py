import random
from fractions import Fraction

import pytest

from _oracles import brute_independence_counts, brute_matching_counts, random_graph
from occufrac.errors import CapabilityError, DomainError
from occufrac.exactmath import IntPolynomial
from occufrac.graphs import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    kdd_union,
    petersen,
    prism,
)
from occufrac.polynomials import (
    edge_occupancy,
    event_probability_oracle,
    independence_poly,
    independent_sets,
    kdd_edge_occupancy,
    kdd_independence_poly,
    kdd_matching_poly,
    kdd_occupancy,
    matching_poly,
    matchings,
    occupancy,
    size_distribution,
)

ONE = Fraction(1)


def test_independence_poly_known_values():
    assert independence_poly(complete_bipartite(2)).coeffs == (1, 4, 2)
    assert independence_poly(Graph(1)).coeffs == (1, 1)
    assert independence_poly(cycle(6)).coeffs == (1, 6, 9, 2)
    assert kdd_independence_poly(2).coeffs == (1, 4, 2)


def test_matching_poly_known_values():
    assert matching_poly(complete_bipartite(2)).coeffs == (1, 4, 2)
    assert matching_poly(complete_bipartite(3)).coeffs == (1, 9, 18, 6)
    assert matching_poly(Graph(4)).coeffs == (1,)


def test_polys_match_brute_force_enumeration():
    rng = random.Random(5)
    graphs = [cycle(5), petersen(), prism(3), hypercube(3), complete(5)]
    graphs += [random_graph(rng, rng.randint(1, 8), 0.4) for _ in range(12)]
    for g in graphs:
        assert list(independence_poly(g).coeffs) == brute_independence_counts(g)
        if g.edge_count <= 16:
            assert list(matching_poly(g).coeffs) == brute_matching_counts(g)


def test_disjoint_union_multiplicativity():
    rng = random.Random(9)
    for _ in range(10):
        g1 = random_graph(rng, rng.randint(1, 6), 0.5)
        g2 = random_graph(rng, rng.randint(1, 6), 0.5)
        u = g1.disjoint_union(g2)
        assert independence_poly(u) == independence_poly(g1) * independence_poly(g2)
        assert matching_poly(u) == matching_poly(g1) * matching_poly(g2)


def test_kdd_union_power_identity():
    for d in range(2, 5):
        for copies in range(1, 5):
            n = 2 * d * copies
            if n > 8 * d:
                break
            union = kdd_union(d, n)
            poly = independence_poly(union, budget=max(30, n))
            assert poly == kdd_independence_poly(d) ** copies
            assert matching_poly(union) == kdd_matching_poly(d) ** copies


def test_closed_forms_match_recurrences():
    for d in range(1, 7):
        g = complete_bipartite(d)
        assert independence_poly(g) == kdd_independence_poly(d)
        assert matching_poly(g) == kdd_matching_poly(d)


def test_occupancy_known_values():
    assert occupancy(complete_bipartite(2), ONE) == Fraction(2, 7)
    assert occupancy(cycle(6), ONE) == Fraction(5, 18)
    assert occupancy(Graph(1), ONE) == Fraction(1, 2)
    assert occupancy(cycle(6), ONE) < occupancy(complete_bipartite(2), ONE)


def test_edge_occupancy_known_values():
    assert edge_occupancy(complete_bipartite(2), ONE) == Fraction(2, 7)
    assert edge_occupancy(complete_bipartite(3), ONE) == Fraction(7, 34)
    assert edge_occupancy(cycle(6), ONE) == Fraction(5, 18)


def test_occupancy_closed_forms():
    for d in range(2, 6):
        for lam in (Fraction(1, 3), ONE, Fraction(5, 2)):
            assert occupancy(complete_bipartite(d), lam) == kdd_occupancy(d, lam)
            assert edge_occupancy(complete_bipartite(d), lam) == kdd_edge_occupancy(d, lam)


def test_occupancy_domain_errors():
    with pytest.raises(DomainError):
        occupancy(cycle(4), Fraction(0))
    with pytest.raises(DomainError):
        occupancy(cycle(4), Fraction(-1))
    with pytest.raises(DomainError):
        edge_occupancy(Graph(3), ONE)


def test_budget_capability_errors():
    with pytest.raises(CapabilityError):
        independence_poly(cycle(31))
    with pytest.raises(CapabilityError):
        matching_poly(complete(12))  # 66 edges in one component
    independence_poly(cycle(31), budget=31)


def test_size_distribution_known_values():
    dist = size_distribution(kdd_independence_poly(2), Fraction(2))
    assert dist.probabilities == (
        Fraction(1, 17),
        Fraction(8, 17),
        Fraction(8, 17),
    )
    assert sum(dist.probabilities, Fraction(0)) == 1
    single = size_distribution(IntPolynomial((1,)), Fraction(3))
    assert single.probabilities == (Fraction(1),)


def test_size_distribution_normalizes_on_random_polys():
    rng = random.Random(13)
    for _ in range(20):
        p = IntPolynomial([1] + [rng.randint(0, 9) for _ in range(rng.randint(1, 6))])
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert sum(size_distribution(p, lam).probabilities, Fraction(0)) == 1


def test_oracle_known_values():
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert event_probability_oracle(p3, "hardcore", ONE, lambda s: 0 in s) == Fraction(2, 5)
    assert event_probability_oracle(p3, "hardcore", ONE, lambda s: True) == 1
    k2 = Graph(2, [(0, 1)])
    assert event_probability_oracle(k2, "matching", ONE, lambda m: len(m) == 1) == Fraction(1, 2)


def test_oracle_limit():
    with pytest.raises(CapabilityError):
        event_probability_oracle(cycle(25), "hardcore", ONE, lambda s: True)
    with pytest.raises(CapabilityError):
        event_probability_oracle(complete_bipartite(5), "matching", ONE, lambda m: True)
    # explicit override is allowed
    assert (
        event_probability_oracle(
            complete_bipartite(5), "matching", ONE, lambda m: True, limit=25
        )
        == 1
    )


def test_enumerators_agree_with_polynomials():
    for g in (cycle(7), petersen(), complete_bipartite(3)):
        by_size = {}
        for mask in independent_sets(g):
            by_size[mask.bit_count()] = by_size.get(mask.bit_count(), 0) + 1
        assert [by_size.get(k, 0) for k in range(max(by_size) + 1)] == list(
            independence_poly(g).coeffs
        )
        by_size = {}
        for m in matchings(g):
            by_size[len(m)] = by_size.get(len(m), 0) + 1
        assert [by_size.get(k, 0) for k in range(max(by_size) + 1)] == list(
            matching_poly(g).coeffs
        )


def test_occupancy_equals_oracle_mean():
    for g in (cycle(6), petersen(), complete_bipartite(3), prism(3)):
        for lam in (Fraction(1, 2), ONE):
            mean = sum(
                (
                    event_probability_oracle(g, "hardcore", lam, lambda s, v=v: v in s)
                    for v in range(g.n)
                ),
                Fraction(0),
            ) / g.n
            assert mean == occupancy(g, lam)


def test_occupancy_via_uncovered_probability():
    # occupancy = lam/(1+lam) * mean probability of being uncovered
    for g in (cycle(6), complete_bipartite(3)):
        lam = Fraction(3, 2)
        unc = sum(
            (
                event_probability_oracle(
                    g,
                    "hardcore",
                    lam,
                    lambda s, v=v: not any(u in s for u in g.neighbors(v)),
                )
                for v in range(g.n)
            ),
            Fraction(0),
        ) / g.n
        assert lam / (1 + lam) * unc == occupancy(g, lam)


def test_triangle_free_uncovered_identity():
    # E[Y] = d * E[(1+lam)^-Y] for triangle-free regular graphs
    for g, d in ((cycle(6), 2), (petersen(), 3), (complete_bipartite(3), 3)):
        lam = Fraction(2)
        from occufrac.hardcore import uncovered_count_distribution

        law = uncovered_count_distribution(g, lam)
        mean = sum((t * p for t, p in enumerate(law)), Fraction(0))
        inv = sum((p / (1 + lam) ** t for t, p in enumerate(law)), Fraction(0))
        assert mean == d * inv


def test_mkdd_derivative_identity():
    # M'_{K_{d,d}} = d^2 M_{K_{d-1,d-1}}, the identity behind the
    # edge-occupancy closed form
    for d in range(1, 8):
        assert kdd_matching_poly(d).derivative() == d * d * kdd_matching_poly(d - 1)
