"""The linear program over free-neighborhood distributions for independent
sets in d-regular graphs, with its hand-built dual certificate, plus the
simpler triangle-free relaxation over the uncovered-neighbor count.

The free neighborhood of a vertex v (given an independent set I) is the
subgraph induced by those neighbors of v with no neighbor in I outside
N(v). Columns of the program are isomorphism classes of graphs on at most
d vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapabilityError, CertificateError, DomainError
from .exactmath import IntPolynomial
from .graphs import Graph, canonical_key, isomorphism_classes, regular_degree
from .lp import LinearProgram, LPSolution, make_lp, solve
from .polynomials import independence_poly, independent_sets, mask_to_set, occupancy

MIN_D, MAX_D = 2, 7


@dataclass(frozen=True)
class NeighborhoodConfig:
    """One isomorphism class of possible free neighborhoods."""

    index: int
    graph: Graph
    key: bytes
    poly: IntPolynomial  # independence polynomial of the class

    @property
    def label(self) -> str:
        return f"{self.graph.n}v{self.graph.edge_count}e#{self.index}"

    def vacancy(self, lam: Fraction) -> Fraction:
        """Probability all vertices of the neighborhood are unoccupied: 1/P(lam)."""
        return 1 / self.poly(lam)

    def crowding(self, lam: Fraction, d: int) -> Fraction:
        """(1+lam) P'(lam) / (d P(lam)): scaled mean occupied-neighbor count."""
        return (1 + lam) * self.poly.derivative()(lam) / (d * self.poly(lam))


@lru_cache(maxsize=None)
def enumerate_configs(d: int):
    """All isomorphism classes on 0..d vertices, ordered by vertex count then
    canonical key. Column order of the primal program."""
    if not MIN_D <= d <= MAX_D:
        raise CapabilityError(f"configuration enumeration supports {MIN_D} <= d <= {MAX_D}")
    configs = []
    for n in range(d + 1):
        for key, g in isomorphism_classes(n):
            configs.append(
                NeighborhoodConfig(len(configs), g, key, independence_poly(g))
            )
    return tuple(configs)


def empty_config_index(d: int) -> int:
    return 0


def edgeless_config_index(d: int) -> int:
    """Index of the d-vertex edgeless class (first class on d vertices)."""
    return sum(len(isomorphism_classes(n)) for n in range(d))


def objective_scale(lam: Fraction) -> Fraction:
    return lam / (2 * (1 + lam))


def build_primal(d: int, lam: Fraction) -> LinearProgram:
    """maximize scale * sum p_C (vacancy + crowding)
    s.t. sum p_C = 1 and sum p_C (vacancy - crowding) = 0, p >= 0."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    configs = enumerate_configs(d)
    scale = objective_scale(lam)
    objective = []
    balance = []
    for cfg in configs:
        a = cfg.vacancy(lam)
        b = cfg.crowding(lam, d)
        objective.append(scale * (a + b))
        balance.append(a - b)
    ones = [Fraction(1)] * len(configs)
    return make_lp(objective, [ones, balance], [Fraction(1), Fraction(0)])


@dataclass(frozen=True)
class CertificateReport:
    """Self-contained dual-feasibility ledger: dual variable values, the
    slack of every constraint column, which columns are tight, and the
    certified optimum."""

    dual_values: dict
    slacks: tuple  # (column id, slack) pairs
    tight: tuple  # column ids with slack exactly 0
    optimum: Fraction

    @property
    def feasible(self) -> bool:
        return all(s >= 0 for _, s in self.slacks)


def dual_certificate(d: int, lam: Fraction) -> CertificateReport:
    """Evaluate the two-variable dual candidate and certify optimality.

    With u = (1+lam)^(-d), the prices are norm = 2/(2-u) on the mass
    constraint and balance = 1 - norm on the vacancy/crowding balance; the
    certified optimum is scale * norm. Tight exactly on the empty class and
    the d-vertex edgeless class, strictly slack elsewhere.
    """
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    configs = enumerate_configs(d)
    u = Fraction(1) / (1 + lam) ** d
    norm_price = 2 / (2 - u)
    balance_price = 1 - norm_price
    expected_tight = {empty_config_index(d), edgeless_config_index(d)}
    slacks = []
    tight = []
    for cfg in configs:
        a = cfg.vacancy(lam)
        b = cfg.crowding(lam, d)
        slack = norm_price + balance_price * (a - b) - (a + b)
        slacks.append((cfg.label, slack))
        if slack == 0:
            tight.append(cfg.index)
        elif slack < 0:
            raise CertificateError(
                f"negative dual slack at configuration {cfg.label}", cfg, slack
            )
        elif cfg.index in expected_tight:
            raise CertificateError(
                f"expected tight configuration {cfg.label} has slack {slack}", cfg
            )
    if set(tight) != expected_tight:
        unexpected = [configs[i].label for i in tight if i not in expected_tight]
        raise CertificateError(f"unexpected tight configurations {unexpected}")
    return CertificateReport(
        dual_values={"norm": norm_price, "balance": balance_price},
        slacks=tuple(slacks),
        tight=tuple(configs[i].label for i in sorted(tight)),
        optimum=objective_scale(lam) * norm_price,
    )


def solver_dual_for_certificate(d: int, lam: Fraction):
    """The certificate prices rescaled to the standard-form dual vector."""
    report = dual_certificate(d, lam)
    scale = objective_scale(lam)
    return (scale * report.dual_values["norm"], scale * report.dual_values["balance"])


def check_mean_size_dominance(c: Graph, d: int, lam: Fraction):
    """Mean occupied size conditioned on non-emptiness, compared between the
    class c and the d-vertex edgeless class:

        lam P'(lam) / (P(lam) - 1)  vs  lam d (1+lam)^(d-1) / ((1+lam)^d - 1)

    Returns (lhs, rhs). The inequality lhs < rhs is strict for every class
    other than the edgeless one (where both sides coincide); lhs is
    undefined for the empty graph.
    """
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    if c.n == 0:
        raise DomainError("conditional mean size is undefined for the empty graph")
    if c.n > d:
        raise DomainError("configuration exceeds d vertices")
    p = independence_poly(c)
    lhs = lam * p.derivative()(lam) / (p(lam) - 1)
    rhs = lam * d * (1 + lam) ** (d - 1) / ((1 + lam) ** d - 1)
    return lhs, rhs


def ratio_gap_coefficients(c: Graph, d: int):
    """Integer coefficients s_1..s_2d of the polynomial
    (x T'(x))(P(x) - 1) - (x P'(x))(T(x) - 1), with T = independence
    polynomial of the d-vertex edgeless class and P that of c.

    Each s_k = sum_{i <= k/2} (k - 2i)(t_{k-i} r_i - t_i r_{k-i}) is
    non-negative, and for a nonempty c some s_k is positive unless P = T;
    this is what makes the mean-size dominance strict. (For the empty
    graph the difference vanishes identically and the dominance question
    does not arise.) Violations raise CertificateError.
    """
    from math import comb

    if c.n > d:
        raise DomainError("configuration exceeds d vertices")
    r = independence_poly(c)

    def t(i):
        return comb(d, i)

    out = []
    for k in range(1, 2 * d + 1):
        s = 0
        for i in range(1, k // 2 + 1):
            s += (k - 2 * i) * (t(k - i) * r.coefficient(i) - t(i) * r.coefficient(k - i))
        out.append(s)
    if any(s < 0 for s in out):
        raise CertificateError(f"negative ratio-gap coefficient for {c!r}")
    edgeless = [t(i) for i in range(d + 1)]
    is_edgeless_poly = list(r.coeffs) == edgeless
    if c.n > 0 and not is_edgeless_poly and not any(s > 0 for s in out):
        raise CertificateError(f"ratio-gap coefficients all vanish for {c!r}")
    return out


# ---------------------------------------------------------------------------
# Triangle-free relaxation: distribution of the uncovered-neighbor count

def triangle_free_lp(d: int, lam: Fraction):
    """LP over the law of Y in {0..d}: maximize E[Y] subject to
    E[Y] = d E[(1+lam)^(-Y)]. Returns (program, occupancy_bound) where
    occupancy_bound = lam/(d(1+lam)) * optimum."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    if d < 1:
        raise DomainError("need d >= 1")
    objective = [Fraction(t) for t in range(d + 1)]
    ones = [Fraction(1)] * (d + 1)
    balance = [t - d * Fraction(1, 1) / (1 + lam) ** t for t in range(d + 1)]
    lp = make_lp(objective, [ones, balance], [Fraction(1), Fraction(0)])
    sol = solve(lp)
    if sol.status != "optimal":
        raise CertificateError(f"triangle-free relaxation not optimal: {sol.status}")
    bound = lam / (d * (1 + lam)) * sol.value
    return lp, bound


def uncovered_count_distribution(g: Graph, lam: Fraction):
    """Exact law of the number of uncovered neighbors of a uniform vertex."""
    d = regular_degree(g)
    if d is None:
        raise DomainError("graph must be regular")
    total = Fraction(0)
    weights = [Fraction(0)] * (d + 1)
    for mask in independent_sets(g):
        w = lam ** mask.bit_count()
        total += w
        for v in range(g.n):
            uncovered = sum(1 for u in g.neighbors(v) if not (g.adj[u] & mask))
            weights[uncovered] += w
    return [w / (total * g.n) for w in weights]


# ---------------------------------------------------------------------------
# Empirical free-neighborhood distribution of an actual graph

def free_neighborhood_distribution(g: Graph, lam: Fraction, limit: int = 14):
    """Exact law of the free-neighborhood class of a uniform vertex under
    the hard-core model, as a vector aligned with enumerate_configs(d).

    Verifies on the way out that the vector is a distribution satisfying
    the balance constraint and that both closed forms of the occupancy,
    lam/(1+lam) E[vacancy] and scale-adjusted E[crowding], equal the true
    occupancy of g.
    """
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    d = regular_degree(g)
    if d is None:
        raise DomainError("graph must be regular")
    if g.n > limit:
        raise CapabilityError(f"free-neighborhood oracle capped at {limit} vertices")
    configs = enumerate_configs(d)
    by_key = {cfg.key: cfg.index for cfg in configs}
    weights = [Fraction(0)] * len(configs)
    total = Fraction(0)
    for mask in independent_sets(g):
        w = lam ** mask.bit_count()
        total += w
        iset = mask_to_set(mask)
        for v in range(g.n):
            free = _free_neighborhood(g, v, iset)
            weights[by_key[canonical_key(free)]] += w
    probs = [w / (total * g.n) for w in weights]

    balance = sum(
        (p * (cfg.vacancy(lam) - cfg.crowding(lam, d)) for p, cfg in zip(probs, configs)),
        Fraction(0),
    )
    if sum(probs, Fraction(0)) != 1 or balance != 0:
        raise CertificateError("free-neighborhood law violates the constraints")
    alpha = occupancy(g, lam)
    via_vacancy = (
        lam / (1 + lam)
        * sum((p * cfg.vacancy(lam) for p, cfg in zip(probs, configs)), Fraction(0))
    )
    via_crowding = (
        lam / (1 + lam)
        * sum((p * cfg.crowding(lam, d) for p, cfg in zip(probs, configs)), Fraction(0))
    )
    if via_vacancy != alpha or via_crowding != alpha:
        raise CertificateError("free-neighborhood law does not reproduce occupancy")
    return probs


def _free_neighborhood(g: Graph, v: int, iset: frozenset) -> Graph:
    """Induced subgraph on neighbors of v not blocked by the independent set
    outside N(v). If v itself is occupied the neighborhood is empty."""
    nbrs = list(g.neighbors(v))
    outside = iset.difference(nbrs)  # contains v itself whenever v is occupied
    free = [w for w in nbrs if not any(g.has_edge(w, x) for x in outside)]
    return g.induced(free)


def objective_value(probs, d: int, lam: Fraction) -> Fraction:
    """Program objective of a distribution vector aligned with the columns."""
    configs = enumerate_configs(d)
    scale = objective_scale(lam)
    return sum(
        (
            scale * p * (cfg.vacancy(lam) + cfg.crowding(lam, d))
            for p, cfg in zip(probs, configs)
        ),
        Fraction(0),
    )


def lp_optimum(d: int, lam: Fraction) -> LPSolution:
    return solve(build_primal(d, lam))
