"""Tree fixed point and the lower occupancy bound, correlation checks for
same-side vertices of bipartite graphs, given-size counting bounds, mode
probabilities, and the empirical ratio conjecture report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError
from .exactmath import IntPolynomial
from .graphs import Graph, bipartition, is_vertex_transitive, kdd_union, regular_degree
from .polynomials import (
    event_probability_oracle,
    independence_poly,
    kdd_independence_poly,
    kdd_matching_poly,
    matching_poly,
    occupancy,
    size_distribution,
)

DEFAULT_TOLERANCE = Fraction(1, 10**9)
MAX_TIGHTENINGS = 12


@dataclass(frozen=True)
class TreeOccupancy:
    """Rational bracket around the occupancy fraction of the translation
    invariant hard-core measure on the infinite d-regular tree."""

    d: int
    lam: Fraction
    alpha_low: Fraction
    alpha_high: Fraction
    tolerance: Fraction

    @property
    def width(self) -> Fraction:
        return self.alpha_high - self.alpha_low


def _tree_gap(alpha: Fraction, d: int, lam: Fraction) -> Fraction:
    """alpha/(lam(1-alpha)) - ((1-2 alpha)/(1-alpha))^d; strictly increasing
    on (0, 1/2), so it brackets a unique root."""
    return alpha / (lam * (1 - alpha)) - ((1 - 2 * alpha) / (1 - alpha)) ** d


def tree_occupancy(d: int, lam: Fraction, tolerance: Fraction = DEFAULT_TOLERANCE) -> TreeOccupancy:
    """Bisect the fixed-point equation exactly; the returned bracket has
    width <= tolerance, straddles the sign change, and sits inside (0, 1/2)."""
    if d < 2:
        raise DomainError("need d >= 2")
    if lam <= 0 or tolerance <= 0:
        raise DomainError("fugacity and tolerance must be positive")
    lo, hi = Fraction(0), Fraction(1, 2)
    while hi - lo > tolerance or lo == 0:
        mid = (lo + hi) / 2
        g = _tree_gap(mid, d, lam)
        if g < 0:
            lo = mid
        elif g > 0:
            hi = mid
        else:
            # rational root hit exactly: shrink symmetrically around it
            quarter = min(tolerance / 4, (hi - lo) / 4, mid / 2)
            lo, hi = mid - quarter, mid + quarter
            break
    return TreeOccupancy(d=d, lam=lam, alpha_low=lo, alpha_high=hi, tolerance=tolerance)


def uniqueness_threshold(d: int) -> Fraction:
    """(d-1)^(d-1) / (d-2)^d for d >= 3."""
    if d < 3:
        raise DomainError("uniqueness threshold needs d >= 3")
    return Fraction((d - 1) ** (d - 1), (d - 2) ** d)


@dataclass(frozen=True)
class LowerBoundVerdict:
    status: str  # "pass" | "fail" | "inconclusive"
    alpha: Fraction
    bracket: TreeOccupancy


def verify_lower_bound(
    g: Graph,
    lam: Fraction,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    assume_vertex_transitive: bool = False,
) -> LowerBoundVerdict:
    """Check occupancy(g) > tree occupancy: exact value against a rational
    bracket, tightening the bracket 16x whenever the value falls inside it."""
    d = regular_degree(g)
    if d is None:
        raise DomainError("graph must be regular")
    if bipartition(g) is None:
        raise DomainError("graph must be bipartite")
    if not assume_vertex_transitive and not is_vertex_transitive(g):
        raise DomainError("graph must be vertex-transitive")
    alpha = occupancy(g, lam)
    tol = tolerance
    for _ in range(MAX_TIGHTENINGS):
        bracket = tree_occupancy(d, lam, tol)
        if alpha > bracket.alpha_high:
            return LowerBoundVerdict("pass", alpha, bracket)
        if alpha < bracket.alpha_low:
            return LowerBoundVerdict("fail", alpha, bracket)
        tol /= 16
    return LowerBoundVerdict("inconclusive", alpha, bracket)


# ---------------------------------------------------------------------------
# Same-side correlation (FKG-style) checks

@dataclass(frozen=True)
class CorrelationVerdict:
    joint: Fraction
    product: Fraction
    strict_expected: bool
    ok: bool


def fkg_check(g: Graph, vertices, lam: Fraction, mode: str = "occupied") -> CorrelationVerdict:
    """Exact check that same-side vertices of a bipartite graph are
    positively correlated, for occupation or uncoveredness, with strictness
    whenever two of them share a connected component."""
    if mode not in ("occupied", "uncovered"):
        raise DomainError(f"unknown mode {mode!r}")
    sides = bipartition(g)
    if sides is None:
        raise DomainError("graph must be bipartite")
    vs = list(vertices)
    if len(vs) < 2:
        raise DomainError("need at least two vertices")
    if not (set(vs) <= set(sides[0]) or set(vs) <= set(sides[1])):
        raise DomainError("vertices must lie on one side of the bipartition")

    if mode == "occupied":
        def event(target):
            return lambda iset: all(v in iset for v in target)
    else:
        def event(target):
            return lambda iset: all(
                not any(u in iset for u in g.neighbors(v)) for v in target
            )

    joint = event_probability_oracle(g, "hardcore", lam, event(vs))
    product = Fraction(1)
    for v in vs:
        product *= event_probability_oracle(g, "hardcore", lam, event([v]))
    comp_of = {}
    for idx, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = idx
    strict = lam > 0 and len({comp_of[v] for v in vs}) < len(vs)
    ok = joint > product if strict else joint >= product
    return CorrelationVerdict(joint=joint, product=product, strict_expected=strict, ok=ok)


# ---------------------------------------------------------------------------
# Counting by size

def counts(g: Graph):
    """(independent-set counts, matching counts) by size, as int lists."""
    return list(independence_poly(g).coeffs), list(matching_poly(g).coeffs)


def lampick_lambda(p: IntPolynomial, k: int):
    """The fugacity equalizing Pr[size = k] and Pr[size = k+1], and the
    resulting Pr[size = k] (which log-concavity makes the mode)."""
    ck, ck1 = p.coefficient(k), p.coefficient(k + 1)
    if ck <= 0 or ck1 <= 0:
        raise DomainError(f"coefficients {k} and {k + 1} must be positive")
    lam = Fraction(ck, ck1)
    prob = ck * lam**k / p(lam)
    return lam, prob


def mode_probability_exceeds_half_inv_sqrt(prob: Fraction, n: int) -> bool:
    """prob > 1/(2 sqrt(n)), decided in integers by squaring."""
    return 4 * n * prob.numerator**2 > prob.denominator**2


def mode_probability_bound_check(d: int, n: int, model: str = "hardcore"):
    """For every size 1 <= k <= n/2, pick the equalizing fugacity (for the
    top size, the one equalizing k-1 and k) and check the mode probability
    beats 1/(2 sqrt(n)). Returns the per-k (lam, prob) list."""
    if n % (2 * d):
        raise DomainError(f"2d = {2 * d} must divide n = {n}")
    copies = n // (2 * d)
    if model == "hardcore":
        p = kdd_independence_poly(d) ** copies
    elif model == "matching":
        p = kdd_matching_poly(d) ** copies
    else:
        raise DomainError(f"unknown model {model!r}")
    out = []
    for k in range(1, n // 2 + 1):
        if p.coefficient(k + 1) > 0:
            lam, _ = lampick_lambda(p, k)
        else:
            # top size: the defining equation has no solution; the adjacent
            # ratio still makes k a mode by log-concavity
            lam = Fraction(p.coefficient(k - 1), p.coefficient(k))
        prob = p.coefficient(k) * lam**k / p(lam)
        if not mode_probability_exceeds_half_inv_sqrt(prob, n):
            raise DomainError(f"mode probability bound fails at k={k}")
        out.append((k, lam, prob))
    return out


def log_concavity_check(p: IntPolynomial, lam: Fraction) -> bool:
    """Pr[size=j]^2 >= Pr[size=j+1] Pr[size=j-1] across the distribution."""
    dist = size_distribution(p, lam)
    return all(
        dist[j] ** 2 >= dist[j + 1] * dist[j - 1] for j in range(1, len(dist) - 1)
    )


def binomial_base_inequalities(d: int) -> bool:
    """C(d,j)^2 > C(d,j-1) C(d,j+1) and its matching analogue
    C(d,j)^4 j!^2 > C(d,j-1)^2 (j-1)! C(d,j+1)^2 (j+1)! for 1 <= j <= d-1."""
    for j in range(1, d):
        if comb(d, j) ** 2 <= comb(d, j - 1) * comb(d, j + 1):
            return False
        lhs = comb(d, j) ** 4 * factorial(j) ** 2
        rhs = comb(d, j - 1) ** 2 * factorial(j - 1) * comb(d, j + 1) ** 2 * factorial(j + 1)
        if lhs <= rhs:
            return False
    return True


def variance_check(d: int, lam: Fraction):
    """Exact size variances on K_{d,d} for both models, checked against the
    d/4 bound (one quarter of the vertex count over two)."""
    bound = Fraction(d, 4)
    var_hc = size_distribution(kdd_independence_poly(d), lam).variance()
    var_md = size_distribution(kdd_matching_poly(d), lam).variance()
    return {
        "hardcore": var_hc,
        "matching": var_md,
        "bound": bound,
        "ok": var_hc <= bound and var_md <= bound,
    }


@dataclass(frozen=True)
class GivenSizeVerdict:
    applicable: bool
    ok: bool
    d: int | None = None
    failures: tuple = ()


def given_size_bound(g: Graph) -> GivenSizeVerdict:
    """i_k(G) <= 2 sqrt(n) i_k(H) and m_k(G) <= 2 sqrt(n) m_k(H) for every k,
    where H is the disjoint union of n/(2d) copies of K_{d,d}; compared in
    integers after squaring. Not applicable unless 2d divides n."""
    d = regular_degree(g)
    if d is None:
        raise DomainError("graph must be regular")
    n = g.n
    if n % (2 * d):
        return GivenSizeVerdict(applicable=False, ok=True, d=d)
    h = kdd_union(d, n)
    failures = []
    for label, gv, hv in (
        ("independent", independence_poly(g), independence_poly(h)),
        ("matching", matching_poly(g), matching_poly(h)),
    ):
        for k in range(max(gv.degree, hv.degree) + 1):
            if gv.coefficient(k) ** 2 > 4 * n * hv.coefficient(k) ** 2:
                failures.append((label, k))
    return GivenSizeVerdict(applicable=True, ok=not failures, d=d, failures=tuple(failures))


def ratio_conjecture_report(corpus, d: int, n: int):
    """Per-size maxima of the successive count ratios over a corpus of
    d-regular n-vertex graphs, reporting whether the K_{d,d} union attains
    each maximum. Purely empirical; never raises on a counterexample."""
    if n % (2 * d):
        raise DomainError(f"2d = {2 * d} must divide n = {n}")
    h = kdd_union(d, n)
    named = list(corpus)
    polys = {}
    for name, g in named:
        if regular_degree(g) != d or g.n != n:
            raise DomainError(f"corpus graph {name} is not {d}-regular on {n} vertices")
        polys[name] = (independence_poly(g), matching_poly(g))
    h_polys = (independence_poly(h), matching_poly(h))
    report = {}
    for which, idx in (("independent", 0), ("matching", 1)):
        rows = []
        hp = h_polys[idx]
        max_k = max(polys[name][idx].degree for name, _ in named)
        for k in range(1, max(max_k, hp.degree) + 1):
            ratios = {}
            for name, _ in named:
                p = polys[name][idx]
                if p.coefficient(k - 1) > 0 and p.coefficient(k) > 0:
                    ratios[name] = Fraction(p.coefficient(k), p.coefficient(k - 1))
            if hp.coefficient(k - 1) > 0 and hp.coefficient(k) > 0:
                h_ratio = Fraction(hp.coefficient(k), hp.coefficient(k - 1))
            else:
                h_ratio = None
            if not ratios:
                continue
            best = max(ratios.values())
            rows.append(
                {
                    "k": k,
                    "max": best,
                    "achievers": sorted(nm for nm, r in ratios.items() if r == best),
                    "extremal_candidate": h_ratio,
                    "candidate_attains_max": h_ratio is not None and h_ratio >= best,
                }
            )
        report[which] = rows
    return report


def monomer_entropy(d: int, rho: Fraction, n: int) -> float:
    """log(m_{floor(rho n)}(H)) / n for the n-vertex K_{d,d} union."""
    if not 0 <= rho <= Fraction(1, 2):
        raise DomainError("rho must lie in [0, 1/2]")
    if n % (2 * d):
        raise DomainError(f"2d = {2 * d} must divide n = {n}")
    k = int(rho * n)
    m = matching_poly(kdd_union(d, n)).coefficient(k)
    if m == 0:
        raise DomainError(f"no matchings of size {k} in the reference graph")
    return math.log(m) / n


def monomer_entropy_table(d: int, rho: Fraction, n_max: int):
    """(n, entropy) rows for n = 2d, 4d, ..., n_max: a convergence display."""
    rows = []
    n = 2 * d
    while n <= n_max:
        rows.append((n, monomer_entropy(d, rho, n)))
        n += 2 * d
    return rows
