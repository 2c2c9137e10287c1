"""Independence and matching polynomials, occupancy fractions, size
distributions, and a brute-force probability oracle for the hard-core and
monomer-dimer models. Everything is exact.

"Matching polynomial" throughout means the generating polynomial
sum_k m_k * x^k counting matchings by size, not the signed characteristic
version.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import CapabilityError, DomainError
from .exactmath import IntPolynomial, binomial_poly
from .graphs import CANONICAL_LIMIT, Graph, canonical_key, label_key

INDEPENDENCE_BUDGET = 30
MATCHING_BUDGET = 40
ORACLE_LIMIT = 24

# Memo tables keyed by component key. Inserts are idempotent (same key, same
# polynomial), so plain dicts are safe to share between threads under the GIL.
_IND_MEMO: dict = {}
_MATCH_MEMO: dict = {}


def _component_key(g: Graph) -> bytes:
    if g.n <= CANONICAL_LIMIT:
        return b"c" + canonical_key(g)
    return b"l" + label_key(g)


def independence_poly(g: Graph, budget: int = INDEPENDENCE_BUDGET) -> IntPolynomial:
    """Independence polynomial: coefficient of x^k counts independent k-sets.

    Deletion recurrence P(G) = P(G - v) + x * P(G - N[v]) with the pivot at
    a maximum-degree vertex (smallest label on ties), memoized per connected
    component.
    """
    if g.n > budget:
        raise CapabilityError(
            f"independence_poly budget is {budget} vertices, got {g.n}"
        )
    return _split_components(g, _independence_component)


def matching_poly(g: Graph, budget: int = MATCHING_BUDGET) -> IntPolynomial:
    """Matching generating polynomial: coefficient of x^k counts k-matchings.

    Edge recurrence M(G) = M(G - e) + x * M(G - u - v) on a pivot edge at a
    maximum-degree vertex, memoized per connected component. The budget
    applies per component, which is where the recursion cost lives.
    """
    for comp in g.components():
        sub = g.induced(comp)
        if sub.edge_count > budget:
            raise CapabilityError(
                f"matching_poly budget is {budget} edges per component,"
                f" got {sub.edge_count}"
            )
    return _split_components(g, _matching_component)


def _split_components(g: Graph, component_fn) -> IntPolynomial:
    poly = IntPolynomial.one()
    for comp in g.components():
        poly = poly * component_fn(g.induced(comp))
    return poly


def _independence_component(g: Graph) -> IntPolynomial:
    # connected input; isolated vertex base case gives (1 + x)
    if g.n == 0:
        return IntPolynomial.one()
    if g.n == 1:
        return IntPolynomial((1, 1))
    key = _component_key(g)
    cached = _IND_MEMO.get(key)
    if cached is not None:
        return cached
    pivot = max(range(g.n), key=lambda v: (g.degree(v), -v))
    without_v = _split_components(g.delete_vertices([pivot]), _independence_component)
    closed = [pivot] + list(g.neighbors(pivot))
    without_nbhd = _split_components(
        g.delete_vertices(closed), _independence_component
    )
    poly = without_v + without_nbhd.shift(1)
    _IND_MEMO[key] = poly
    return poly


def _matching_component(g: Graph) -> IntPolynomial:
    if g.edge_count == 0:
        return IntPolynomial.one()
    key = _component_key(g)
    cached = _MATCH_MEMO.get(key)
    if cached is not None:
        return cached
    u = max(range(g.n), key=lambda v: (g.degree(v), -v))
    v = next(g.neighbors(u))
    without_e = _split_components(g.delete_edge(u, v), _matching_component)
    without_uv = _split_components(g.delete_vertices([u, v]), _matching_component)
    poly = without_e + without_uv.shift(1)
    _MATCH_MEMO[key] = poly
    return poly


def kdd_independence_poly(d: int) -> IntPolynomial:
    """Independence polynomial of K_{d,d}: 2(1+x)^d - 1."""
    if d <= 0:
        raise DomainError("need d >= 1")
    return 2 * binomial_poly(d) - IntPolynomial.one()


def kdd_matching_poly(d: int) -> IntPolynomial:
    """Matching polynomial of K_{d,d}: sum_k C(d,k)^2 k! x^k. K_{0,0} gives 1."""
    if d < 0:
        raise DomainError("need d >= 0")
    return IntPolynomial(comb(d, k) ** 2 * factorial(k) for k in range(d + 1))


# ---------------------------------------------------------------------------
# Occupancy fractions

def occupancy(g: Graph, lam: Fraction) -> Fraction:
    """Expected fraction of vertices in the weighted random independent set:
    lam * P'(lam) / (n * P(lam))."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    if g.n == 0:
        raise DomainError("occupancy needs a nonempty graph")
    p = independence_poly(g)
    return lam * p.derivative()(lam) / (g.n * p(lam))


def edge_occupancy(g: Graph, lam: Fraction) -> Fraction:
    """Expected fraction of edges in the weighted random matching:
    lam * M'(lam) / (|E| * M(lam))."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    m = g.edge_count
    if m == 0:
        raise DomainError("edge_occupancy needs at least one edge")
    p = matching_poly(g)
    return lam * p.derivative()(lam) / (m * p(lam))


def kdd_occupancy(d: int, lam: Fraction) -> Fraction:
    """Closed form lam(1+lam)^(d-1) / (2(1+lam)^d - 1)."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    return lam * (1 + lam) ** (d - 1) / (2 * (1 + lam) ** d - 1)


def kdd_edge_occupancy(d: int, lam: Fraction) -> Fraction:
    """lam * M_{K_{d-1,d-1}}(lam) / M_{K_{d,d}}(lam)."""
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    return lam * kdd_matching_poly(d - 1)(lam) / kdd_matching_poly(d)(lam)


# ---------------------------------------------------------------------------
# Size distributions

@dataclass(frozen=True)
class SizeDistribution:
    """Probabilities of each size k under weights c_k * lam^k / Z."""

    probabilities: tuple
    fugacity: Fraction

    def __post_init__(self):
        if sum(self.probabilities, Fraction(0)) != 1:
            raise DomainError("size distribution must sum to 1")

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.probabilities):
            return self.probabilities[k]
        return Fraction(0)

    def __len__(self):
        return len(self.probabilities)

    def mean(self) -> Fraction:
        return sum((k * p for k, p in enumerate(self.probabilities)), Fraction(0))

    def variance(self) -> Fraction:
        mu = self.mean()
        second = sum(
            (k * k * p for k, p in enumerate(self.probabilities)), Fraction(0)
        )
        return second - mu * mu


def size_distribution(poly: IntPolynomial, lam: Fraction) -> SizeDistribution:
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    if poly.is_zero:
        raise DomainError("zero polynomial has no size distribution")
    total = poly(lam)
    probs = tuple(
        Fraction(poly.coefficient(k)) * lam**k / total
        for k in range(poly.degree + 1)
    )
    return SizeDistribution(probs, lam)


# ---------------------------------------------------------------------------
# Exhaustive enumeration and the probability oracle

def independent_sets(g: Graph):
    """Yield every independent set as a vertex bitmask (including 0)."""

    # depth-first: extend sets only with vertices above the current maximum,
    # skipping blocked ones, so each set is produced exactly once
    def extend(mask, allowed, start):
        for v in range(start, g.n):
            if not (allowed >> v & 1):
                continue
            new_mask = mask | 1 << v
            yield new_mask
            yield from extend(new_mask, allowed & ~g.adj[v], v + 1)

    yield 0
    yield from extend(0, (1 << g.n) - 1, 0)


def matchings(g: Graph):
    """Yield every matching as a frozenset of (u, v) edges with u < v."""
    edge_list = g.edges()

    def extend(chosen, used_mask, start):
        for idx in range(start, len(edge_list)):
            u, v = edge_list[idx]
            if used_mask >> u & 1 or used_mask >> v & 1:
                continue
            new = chosen + [(u, v)]
            yield frozenset(new)
            yield from extend(new, used_mask | 1 << u | 1 << v, idx + 1)

    yield frozenset()
    yield from extend([], 0, 0)


def mask_to_set(mask: int) -> frozenset:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def event_probability_oracle(
    g: Graph,
    model: str,
    lam: Fraction,
    predicate,
    limit: int = ORACLE_LIMIT,
) -> Fraction:
    """Exact probability of an event under the hard-core or monomer-dimer
    model, by full enumeration.

    `predicate` receives a frozenset of vertices (hardcore) or of (u, v)
    edges (matching). The default size cap keeps enumeration at desk scale;
    pass a larger `limit` explicitly to override it.
    """
    if lam <= 0:
        raise DomainError("fugacity must be positive")
    total = Fraction(0)
    hit = Fraction(0)
    if model == "hardcore":
        if g.n > limit:
            raise CapabilityError(f"oracle limit is {limit} vertices, got {g.n}")
        for mask in independent_sets(g):
            w = lam ** mask.bit_count()
            total += w
            if predicate(mask_to_set(mask)):
                hit += w
    elif model == "matching":
        if g.edge_count > limit:
            raise CapabilityError(
                f"oracle limit is {limit} edges, got {g.edge_count}"
            )
        for matching in matchings(g):
            w = lam ** len(matching)
            total += w
            if predicate(matching):
                hit += w
    else:
        raise DomainError(f"unknown model {model!r}")
    return hit / total


def clear_memo_tables():
    """Drop memoized polynomials (mainly for benchmarks and tests)."""
    _IND_MEMO.clear()
    _MATCH_MEMO.clear()
