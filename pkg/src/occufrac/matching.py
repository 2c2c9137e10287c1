"""The linear program over edge free-neighborhood configurations for
matchings of d-regular graphs, with the full dual-certificate pipeline:
row prices from a downward recurrence, the telescoping slack profile in
its two forms, and the Laguerre-style polynomial identity behind them.

A configuration is a triple (i, j, k): the number of pendant edges at the
left and right endpoints of the chosen edge and the number of triangles
through it, restricted to i + k <= d-1 and j + k <= d-1 (each endpoint
meets only d-1 other edges).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import CapabilityError, CertificateError, DomainError
from .exactmath import IntPolynomial
from .graphs import Graph, regular_degree
from .hardcore import CertificateReport
from .lp import LinearProgram, make_lp, solve
from .polynomials import (
    edge_occupancy,
    kdd_edge_occupancy,
    kdd_matching_poly,
    matchings,
)


def enumerate_triples(d: int):
    """All admissible (i, j, k) in lexicographic order."""
    if d < 2:
        raise DomainError("need d >= 2")
    return [
        (i, j, k)
        for i in range(d)
        for j in range(d)
        for k in range(d - max(i, j))
    ]


def local_matching_poly(i: int, j: int, k: int) -> IntPolynomial:
    """Matching polynomial of the configuration graph:
    1 + (i+j+2k) x + (k^2 + k(i+j-1) + ij) x^2."""
    _check_triple_shape(i, j, k)
    return IntPolynomial((1, i + j + 2 * k, k * k + k * (i + j - 1) + i * j))


def _check_triple_shape(i, j, k):
    if min(i, j, k) < 0:
        raise DomainError("triple entries must be non-negative")


def _check_triple(i, j, k, d):
    _check_triple_shape(i, j, k)
    if i + k > d - 1 or j + k > d - 1:
        raise DomainError(f"triple ({i},{j},{k}) not admissible for d={d}")


def conditional_partition(i: int, j: int, k: int, lam: Fraction) -> Fraction:
    """Partition function of the local model with the chosen edge added:
    lam + M(lam)."""
    return lam + local_matching_poly(i, j, k)(lam)


def local_edge_occupancy(i: int, j: int, k: int, lam: Fraction, d: int) -> Fraction:
    """Expected fraction of the 2(d-1) incident edges that are matched,
    conditioned on the configuration: lam M' / (2(d-1)(lam + M))."""
    _check_triple(i, j, k, d)
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    m = local_matching_poly(i, j, k)
    return lam * m.derivative()(lam) / (2 * (d - 1) * conditional_partition(i, j, k, lam))


def _star(t: int, lam: Fraction) -> Fraction:
    """Matching partition function of a t-edge star: 1 + t*lam."""
    return 1 + t * lam


def marginal_from_edge(i: int, j: int, k: int, lam: Fraction, d: int):
    """Law of the number of uncovered same-side neighbors of the chosen
    edge, conditioned on the configuration. Vector over t = 0..d-1;
    coinciding case values accumulate."""
    _check_triple(i, j, k, d)
    z = conditional_partition(i, j, k, lam)
    out = [Fraction(0)] * d
    pend = i * lam * _star(j + k, lam) + k * lam * _star(j + k - 1, lam)
    for t, weight in (
        (0, lam),
        (1, pend),
        (i + k, _star(j, lam)),
        (i + k - 1, k * lam),
    ):
        if weight:
            out[t] += weight  # t is in range whenever the weight is nonzero
    return [w / z for w in out]


def marginal_from_neighbor(i: int, j: int, k: int, lam: Fraction, d: int):
    """Law of the number of uncovered neighbors, on the side of the chosen
    edge, of a uniform same-side neighboring edge. Vector over t = 0..d-1."""
    _check_triple(i, j, k, d)
    if d < 2:
        raise DomainError("need d >= 2")
    z = (d - 1) * conditional_partition(i, j, k, lam)
    pend = i * lam * _star(j + k, lam) + k * lam * _star(j + k - 1, lam)
    out = [Fraction(0)] * d
    for t, weight in (
        (0, pend),
        (1, (d - 1) * lam + (d - 2) * pend),
        (i + k - 2, (i + k - 1) * k * lam),
        (i + k - 1, (d - i - k) * k * lam + (i + k) * j * lam),
        (i + k, (d - 1 - i - k) * j * lam + (i + k)),
        (i + k + 1, d - 1 - i - k),
    ):
        if weight:
            out[t] += weight
    return [w / z for w in out]


def build_primal(d: int, lam: Fraction) -> LinearProgram:
    """maximize sum q(i,j,k) * local_edge_occupancy subject to sum q = 1 and,
    for t = 0..d-2, equality of the symmetrized neighbor/edge marginals."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    triples = enumerate_triples(d)
    objective = [local_edge_occupancy(i, j, k, lam, d) for i, j, k in triples]
    rows = [[Fraction(1)] * len(triples)]
    cols = {}
    for i, j, k in triples:
        ge = marginal_from_edge(i, j, k, lam, d)
        gf = marginal_from_neighbor(i, j, k, lam, d)
        cols[(i, j, k)] = (ge, gf)
    for t in range(d - 1):
        row = []
        for i, j, k in triples:
            ge_ij, gf_ij = cols[(i, j, k)]
            ge_ji, gf_ji = cols[(j, i, k)]
            row.append(
                Fraction(1, 2)
                * (gf_ij[t] + gf_ji[t] - ge_ij[t] - ge_ji[t])
            )
        rows.append(row)
    rhs = [Fraction(1)] + [Fraction(0)] * (d - 1)
    return make_lp(objective, rows, rhs)


# ---------------------------------------------------------------------------
# Dual variables

@dataclass(frozen=True)
class MatchingDuals:
    """Row prices for the marginal constraints (index t = 0..d-1, the last
    pinned to 0) plus the certified optimum."""

    d: int
    lam: Fraction
    prices: tuple
    optimum: Fraction

    def price(self, t: int) -> Fraction:
        return self.prices[t]


def dual_row_prices(d: int, lam: Fraction) -> MatchingDuals:
    """Solve the diagonal-configuration equality constraints for the row
    prices: pin price[d-1] = 0, read price[d-2] off the (d-1, d-1, 0)
    constraint, then recurse downward. Verifies every diagonal constraint
    afterwards."""
    if d < 2:
        raise DomainError("need d >= 2")
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    alpha = kdd_edge_occupancy(d, lam)
    prices = [Fraction(0)] * d
    prices[d - 2] = (
        lam + (d - 1) * lam * lam - alpha * _star(d - 1, lam) * _star(d, lam)
    ) / ((d - 1) * lam)
    for i in range(d - 2, 0, -1):
        # diagonal constraint at i, scaled by (d-1), solved for price[i-1]
        rest = (
            alpha * _star(i, lam) * ((d - 1) * _star(i, lam) + i * lam)
            - i * lam * _star(i, lam)
            - prices[i] * (d - 1 - i + i * i * lam)
            + prices[i + 1] * (d - 1 - i)
        )
        prices[i - 1] = -rest / (i * i * lam)
    duals = MatchingDuals(d=d, lam=lam, prices=tuple(prices), optimum=alpha)
    for i in range(d):
        if _diagonal_residual(duals, i) != 0:
            raise CertificateError(f"diagonal constraint {i} violated", i)
    return duals


def _diagonal_residual(duals: MatchingDuals, i: int) -> Fraction:
    """(d-1) times the diagonal equality constraint at (i, i, 0); zero when
    the prices are consistent."""
    d, lam = duals.d, duals.lam
    res = (
        duals.optimum * _star(i, lam) * ((d - 1) * _star(i, lam) + i * lam)
        - i * lam * _star(i, lam)
    )
    if i >= 1:
        res += duals.price(i - 1) * i * i * lam
    res -= duals.price(i) * (d - 1 - i + i * i * lam)
    if i + 1 <= d - 1:
        res += duals.price(i + 1) * (d - 1 - i)
    # for i = d-1 the price[d] coefficient (d-1-i) vanishes
    return res


def standard_dual_vector(duals: MatchingDuals):
    """(optimum, price_0..price_{d-2}) as the dual of build_primal's rows."""
    return (duals.optimum,) + duals.prices[: duals.d - 1]


# ---------------------------------------------------------------------------
# The slack profile F and the per-triple slack L

def slack_profile(t: int, duals: MatchingDuals) -> Fraction:
    """t * [lam (1 - d*optimum) + price_t - price_{t-1}] for 1 <= t <= d-1;
    0 at t = 0."""
    d, lam = duals.d, duals.lam
    if t == 0:
        return Fraction(0)
    if not 1 <= t <= d - 1:
        raise DomainError(f"slack profile defined for 0 <= t <= {d - 1}")
    return t * (
        lam * (1 - d * duals.optimum) + duals.price(t) - duals.price(t - 1)
    )


def slack_profile_explicit(t: int, d: int, lam: Fraction) -> Fraction:
    """Closed form: t(d-1)/M_d * sum_{l=t-1}^{d-2} (d-1-t)!/(l+1-t)! *
    lam^(d-l) * M_l, with M_s the matching polynomial of K_{s,s}."""
    if t == 0:
        return Fraction(0)
    if not 1 <= t <= d - 1:
        raise DomainError(f"slack profile defined for 0 <= t <= {d - 1}")
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    total = Fraction(0)
    for ell in range(t - 1, d - 1):
        total += (
            Fraction(factorial(d - 1 - t), factorial(ell + 1 - t))
            * lam ** (d - ell)
            * kdd_matching_poly(ell)(lam)
        )
    return t * (d - 1) * total / kdd_matching_poly(d)(lam)


def reduced_slack(i: int, j: int, k: int, duals: MatchingDuals) -> Fraction:
    """Simplified dual slack L(i,j,k): zero exactly on the diagonal triples
    (i, i, 0) and strictly positive elsewhere."""
    d, lam = duals.d, duals.lam
    _check_triple(i, j, k, d)
    val = lam * ((i - j) ** 2 + 2 * k) * (1 - d * duals.optimum)
    for a, b in ((i, j), (j, i)):
        for idx, coeff in (
            (a + k - 2, (a + k - 1) * k),
            (a + k - 1, k + (a + k) * (b - a - 2 * k)),
            (a + k, (a + k) * (a + k - b)),
        ):
            if coeff:
                val += duals.price(idx) * coeff
    return val


def raw_slack_scaled(i: int, j: int, k: int, duals: MatchingDuals) -> Fraction:
    """The unsimplified dual slack scaled by 2(d-1)(lam + M): equals
    lam * reduced_slack once the diagonal constraints hold."""
    d, lam = duals.d, duals.lam
    _check_triple(i, j, k, d)
    m = local_matching_poly(i, j, k)
    mprime = m.derivative()(lam)
    val = duals.optimum * (lam * mprime + 2 * (d - 1) * m(lam)) - lam * mprime
    for a, b in ((i, j), (j, i)):
        for idx, coeff in (
            (a + k - 2, (a + k - 1) * k * lam),
            (a + k - 1, (d - a - k) * k * lam + (a + k) * b * lam - (d - 1) * k * lam),
            (a + k, (d - 1 - a - k) * b * lam + a + k - (d - 1) * _star(b, lam)),
            (a + k + 1, d - 1 - a - k),
        ):
            if coeff:
                val += _price_or_zero(duals, idx) * coeff
    return val


def _price_or_zero(duals: MatchingDuals, t: int) -> Fraction:
    if 0 <= t <= duals.d - 1:
        return duals.price(t)
    raise DomainError(f"price index {t} out of range")


def check_dual_constraints(d: int, lam: Fraction) -> CertificateReport:
    """Full dual certificate: verifies the two slack-profile forms agree,
    the raw and simplified slacks differ by the factor lam, the telescoping
    identity, zero slack exactly on the diagonal (i, i, 0) triples, and
    strict positivity everywhere else."""
    duals = dual_row_prices(d, lam)
    profile = [slack_profile(t, duals) for t in range(d)]
    for t in range(1, d):
        if profile[t] != slack_profile_explicit(t, d, lam):
            raise CertificateError(f"slack profile forms disagree at t={t}", t)
    closing = (d - 1) ** 2 * lam * lam * kdd_matching_poly(d - 2)(lam)
    if profile[d - 1] != closing / kdd_matching_poly(d)(lam):
        raise CertificateError("slack profile end value mismatch")

    slacks = []
    tight = []
    values = {}
    for i, j, k in enumerate_triples(d):
        val = reduced_slack(i, j, k, duals)
        values[(i, j, k)] = val
        if raw_slack_scaled(i, j, k, duals) != lam * val:
            raise CertificateError(
                f"raw and simplified slacks inconsistent at ({i},{j},{k})"
            )
        label = f"({i},{j},{k})"
        slacks.append((label, val))
        if i == j and k == 0:
            if val != 0:
                raise CertificateError(f"diagonal triple {label} has slack {val}")
            tight.append(label)
        elif val <= 0:
            raise CertificateError(f"non-diagonal triple {label} has slack {val}")
    for i, j, k in enumerate_triples(d):
        if i >= 1 and j >= 1:
            step = (
                values[(i - 1, j - 1, k + 1)]
                - values[(i, j, k)]
                - (profile[i + k] - profile[i + k - 1])
                - (profile[j + k] - profile[j + k - 1])
            )
            if step != 0:
                raise CertificateError(
                    f"telescoping identity fails at ({i},{j},{k})"
                )
        if k == 0 and values[(i, j, k)] != (j - i) * (profile[j] - profile[i]):
            raise CertificateError(f"profile difference form fails at ({i},{j},0)")
    dual_values = {"optimum": duals.optimum}
    for t in range(d - 1):
        dual_values[f"price_{t}"] = duals.price(t)
    return CertificateReport(
        dual_values=dual_values,
        slacks=tuple(slacks),
        tight=tuple(tight),
        optimum=duals.optimum,
    )


def check_monotone_profile(d: int, lam: Fraction) -> dict:
    """Strict monotonicity of the slack profile plus the positivity of the
    normalized increments and the crude star bound M_t > t lam M_{t-1}."""
    if d < 3:
        raise DomainError("profile monotonicity needs d >= 3")
    duals = dual_row_prices(d, lam)
    profile = [slack_profile(t, duals) for t in range(d)]
    increments = []
    for t in range(1, d - 1):
        inc = profile[t + 1] - profile[t]
        if inc <= 0:
            raise CertificateError(f"profile not increasing at t={t}")
        normalized = (
            kdd_matching_poly(d)(lam)
            / (d - 1)
            * inc
            / factorial(d - 2 - t)
        )
        if normalized <= 0:
            raise CertificateError(f"normalized increment not positive at t={t}")
        increments.append(normalized)
    crude = []
    for t in range(1, d + 1):
        lhs = kdd_matching_poly(t)(lam)
        rhs = t * lam * kdd_matching_poly(t - 1)(lam)
        if lhs <= rhs:
            raise CertificateError(f"crude star bound fails at t={t}")
        crude.append((lhs, rhs))
    return {"profile": profile, "increments": increments, "crude": crude}


def check_profile_recurrence(d: int, lam: Fraction) -> bool:
    """(d-1-t) F(t+1) = (t+1)[t lam F(t) + (d-1) lam - (d-1) alpha (1+(d+t)lam)]
    for t = 1..d-2, with alpha the extremal edge occupancy."""
    duals = dual_row_prices(d, lam)
    alpha = duals.optimum
    for t in range(1, d - 1):
        lhs = (d - 1 - t) * slack_profile(t + 1, duals)
        rhs = (t + 1) * (
            t * lam * slack_profile(t, duals)
            + (d - 1) * lam
            - (d - 1) * alpha * _star(d + t, lam)
        )
        if lhs != rhs:
            return False
    return True


def laguerre_identity_residual(d: int) -> IntPolynomial:
    """M_d - (1 + (2d-1)x) M_{d-1} + (d-1)^2 x^2 M_{d-2} as a polynomial;
    identically zero for every d >= 2."""
    if d < 2:
        raise DomainError("need d >= 2")
    beta = IntPolynomial((1, 2 * d - 1))
    correction = ((d - 1) ** 2) * kdd_matching_poly(d - 2).shift(2)
    return kdd_matching_poly(d) - beta * kdd_matching_poly(d - 1) + correction


def laguerre_identity_holds(d: int) -> bool:
    return laguerre_identity_residual(d).is_zero


# ---------------------------------------------------------------------------
# Empirical configuration distribution of an actual graph

def edge_neighborhood_distribution(g: Graph, lam: Fraction, limit: int = 20):
    """Exact law of the (i, j, k) configuration of a uniform oriented edge
    under the monomer-dimer model, as a dict keyed by triple.

    Verifies that all marginal constraint rows hold exactly and that the
    objective reproduces the edge occupancy of g.
    """
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    d = regular_degree(g)
    if d is None or d < 2:
        raise DomainError("graph must be d-regular with d >= 2")
    if g.edge_count > limit:
        raise CapabilityError(f"edge-neighborhood oracle capped at {limit} edges")
    edges = g.edges()
    weights: dict = {}
    total = Fraction(0)
    for matching in matchings(g):
        w = lam ** len(matching)
        total += w
        matched_mask = 0
        for u, v in matching:
            matched_mask |= 1 << u | 1 << v
        for u, v in edges:
            for left, right in ((u, v), (v, u)):
                triple = _edge_triple(g, left, right, matching, matched_mask)
                weights[triple] = weights.get(triple, Fraction(0)) + w
    denom = total * len(edges) * 2
    law = {t: w / denom for t, w in sorted(weights.items())}

    if sum(law.values(), Fraction(0)) != 1:
        raise CertificateError("edge-neighborhood law does not sum to 1")
    for t in range(d - 1):
        row = Fraction(0)
        for (i, j, k), q in law.items():
            row += q * Fraction(1, 2) * (
                marginal_from_neighbor(i, j, k, lam, d)[t]
                + marginal_from_neighbor(j, i, k, lam, d)[t]
                - marginal_from_edge(i, j, k, lam, d)[t]
                - marginal_from_edge(j, i, k, lam, d)[t]
            )
        if row != 0:
            raise CertificateError(f"marginal constraint row t={t} violated")
    objective = sum(
        (q * local_edge_occupancy(i, j, k, lam, d) for (i, j, k), q in law.items()),
        Fraction(0),
    )
    if objective != edge_occupancy(g, lam):
        raise CertificateError("edge-neighborhood law misses the edge occupancy")
    return law


def _edge_triple(g: Graph, left: int, right: int, matching, matched_mask: int):
    """Configuration (i, j, k) of the oriented edge (left, right): a
    neighboring edge survives iff its far endpoint is not matched by an
    edge avoiding both endpoints of the chosen edge."""
    ends = 1 << left | 1 << right

    def free(w):
        if not (matched_mask >> w & 1):
            return True
        for a, b in matching:
            if a == w or b == w:
                return (1 << a | 1 << b) & ends != 0
        return False

    i = j = k = 0
    left_mask = g.adj[left] & ~ends
    right_mask = g.adj[right] & ~ends
    both = left_mask & right_mask
    m = both
    while m:
        low = m & -m
        if free(low.bit_length() - 1):
            k += 1
        m ^= low
    m = left_mask & ~both
    while m:
        low = m & -m
        if free(low.bit_length() - 1):
            i += 1
        m ^= low
    m = right_mask & ~both
    while m:
        low = m & -m
        if free(low.bit_length() - 1):
            j += 1
        m ^= low
    return (i, j, k)
