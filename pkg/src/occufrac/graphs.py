"""Simple undirected graphs: representation, parsing, named families,
canonical forms and structural predicates.

Adjacency is stored as one bitmask per vertex, which keeps the deletion
recurrences and subset enumerations fast. Graphs are immutable; all
mutating-style operations return new instances.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import CapabilityError, DomainError, FormatError

CANONICAL_LIMIT = 10
TRANSITIVITY_LIMIT = 16


class Graph:
    """Simple undirected graph on vertices 0..n-1 (no loops, no multi-edges)."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise DomainError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def _from_adj(cls, adj) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "n", len(adj))
        object.__setattr__(g, "adj", tuple(adj))
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int):
        m = self.adj[v]
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.neighbors(u) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def induced(self, vertices) -> "Graph":
        """Subgraph induced by `vertices`, relabeled 0..k-1 in the given order."""
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for i, v in enumerate(vs):
            for w in self.neighbors(v):
                j = index.get(w)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph._from_adj(adj)

    def delete_vertices(self, vertices) -> "Graph":
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        return self.induced(keep)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise DomainError(f"edge ({u},{v}) not present")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._from_adj(adj)

    def relabel(self, perm) -> "Graph":
        """Image under the permutation v -> perm[v]."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for w in self.neighbors(v):
                m |= 1 << perm[w]
            adj[perm[v]] = m
        return Graph._from_adj(adj)

    def components(self):
        """Vertex lists of connected components, each sorted, in order of minimum."""
        seen = 0
        out = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            frontier = 1 << start
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= self.adj[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~comp
            seen |= comp
            out.append(_mask_vertices(comp))
        return out

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        adj = list(self.adj) + [m << shift for m in other.adj]
        return Graph._from_adj(adj)

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _mask_vertices(mask: int):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# Parsers

def parse_graph6(text: str) -> Graph:
    """Decode a short-format graph6 string (n < 63)."""
    s = text.strip()
    if not s:
        raise FormatError("empty graph6 string at byte offset 0")
    header = ord(s[0])
    if header == 126:
        raise FormatError(
            "long-format graph6 (n >= 63) not supported, header byte offset 0"
        )
    if not 63 <= header <= 125:
        raise FormatError(f"bad graph6 header byte {header} at byte offset 0")
    n = header - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    data = s[1:]
    if len(data) != nbytes:
        raise FormatError(
            f"graph6 body for n={n} needs {nbytes} bytes, got {len(data)}"
            f" (byte offset {1 + min(len(data), nbytes)})"
        )
    bits = []
    for i, ch in enumerate(data):
        b = ord(ch) - 63
        if not 0 <= b < 64:
            raise FormatError(f"bad graph6 data byte at byte offset {1 + i}")
        bits.extend((b >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError(f"nonzero padding bits at byte offset {len(s) - 1}")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    """Encode a graph (n < 63) as a short-format graph6 string."""
    if g.n >= 63:
        raise CapabilityError("graph6 short format requires n < 63")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return "".join(chars)


def parse_edge_list(text: str) -> Graph:
    """Parse "n" on the first line then one "u v" edge per line."""
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise FormatError("line 1: expected vertex count")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise FormatError(f"line 1: bad vertex count {lines[0].strip()!r}") from None
    if n < 0:
        raise FormatError("line 1: vertex count must be non-negative")
    seen = set()
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        s = ln.strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {s!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {s!r}") from None
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: vertex out of range 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Named families

def complete_bipartite(d: int) -> Graph:
    """K_{d,d}: vertices 0..d-1 on the left, d..2d-1 on the right."""
    if d <= 0:
        raise DomainError("complete_bipartite needs d >= 1")
    return Graph(2 * d, [(u, d + v) for u in range(d) for v in range(d)])


def kdd_union(d: int, n: int) -> Graph:
    """Disjoint union of n/(2d) copies of K_{d,d}; requires 2d | n."""
    if d <= 0 or n <= 0:
        raise DomainError("kdd_union needs positive d and n")
    if n % (2 * d):
        raise DomainError(f"2d = {2 * d} must divide n = {n}")
    edges = []
    for block in range(n // (2 * d)):
        base = block * 2 * d
        edges.extend(
            (base + u, base + d + v) for u in range(d) for v in range(d)
        )
    return Graph(n, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    if n <= 0:
        raise DomainError("complete needs n >= 1")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def hypercube(k: int) -> Graph:
    if k <= 0:
        raise DomainError("hypercube needs k >= 1")
    n = 1 << k
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(k) if v < v ^ (1 << b)]
    return Graph(n, edges)


def prism(n: int) -> Graph:
    """Circular ladder: two n-cycles 0..n-1 and n..2n-1 joined by rungs."""
    if n < 3:
        raise DomainError("prism needs n >= 3")
    edges = [(v, (v + 1) % n) for v in range(n)]
    edges += [(n + v, n + (v + 1) % n) for v in range(n)]
    edges += [(v, n + v) for v in range(n)]
    return Graph(2 * n, edges)


def petersen() -> Graph:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    return Graph(10, outer + spokes + inner)


_FAMILIES = {
    "complete_bipartite": (complete_bipartite, 1),
    "kdd": (complete_bipartite, 1),
    "H": (kdd_union, 2),
    "hdn": (kdd_union, 2),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "hypercube": (hypercube, 1),
    "prism": (prism, 1),
    "petersen": (petersen, 0),
}


def generate(family: str, *params: int) -> Graph:
    """Build a named graph family with a fixed deterministic labeling."""
    if family not in _FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    fn, arity = _FAMILIES[family]
    if len(params) != arity:
        raise DomainError(f"family {family!r} takes {arity} parameter(s)")
    return fn(*params)


# ---------------------------------------------------------------------------
# Canonical form
#
# The key is the lexicographically smallest upper-triangle bit string over
# all relabelings whose position degrees are non-decreasing. Branch and
# bound on the growing bit prefix, with candidates deduplicated per twin
# class (swapping twins is an automorphism, so one branch suffices).

def _twin_classes(g: Graph):
    """Class id per vertex; u, v share a class iff swapping them is an
    automorphism (N(u) - v == N(v) - u). The relation is transitive."""
    reps = {}
    cls = [0] * g.n
    for v in range(g.n):
        found = None
        for u in reps:
            if (g.adj[u] & ~(1 << v)) == (g.adj[v] & ~(1 << u)):
                found = u
                break
        if found is None:
            reps[v] = len(reps)
            cls[v] = reps[v]
        else:
            cls[v] = reps[found]
    return cls


def canonical_key(g: Graph, limit: int = CANONICAL_LIMIT) -> bytes:
    """Isomorphism-invariant key: equal keys iff isomorphic (n <= limit)."""
    if g.n > limit:
        raise CapabilityError(
            f"canonical_key supports at most {limit} vertices, got {g.n}"
        )
    n = g.n
    if n <= 1:
        return bytes([n])
    degrees = [g.degree(v) for v in range(n)]
    twins = _twin_classes(g)
    best: list | None = None

    def search(placed, placed_mask, prefix):
        nonlocal best
        depth = len(placed)
        if depth == n:
            if best is None or prefix < best:
                best = list(prefix)
            return
        last_deg = degrees[placed[-1]] if placed else -1
        tried = set()
        cands = []
        for v in range(n):
            if placed_mask >> v & 1:
                continue
            if degrees[v] < last_deg:
                continue
            if twins[v] in tried:
                continue
            tried.add(twins[v])
            bits = 0
            for p in placed:
                bits = bits << 1 | (g.adj[v] >> p & 1)
            cands.append((bits, degrees[v], v))
        cands.sort()
        for bits, _deg, v in cands:
            prefix.append(bits)
            # best is re-read each iteration: it may tighten under our feet
            if best is None or prefix <= best[: depth + 1]:
                search(placed + [v], placed_mask | 1 << v, prefix)
            prefix.pop()

    search([], 0, [])
    assert best is not None
    bits = []
    for depth, val in enumerate(best):
        bits.extend((val >> shift) & 1 for shift in range(depth - 1, -1, -1))
    packed = bytearray([n])
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = byte << 1 | b
        byte <<= max(0, 8 - len(bits[i : i + 8]))
        packed.append(byte)
    return bytes(packed)


def label_key(g: Graph) -> bytes:
    """Labeling-dependent fallback key for graphs above the canonical limit."""
    out = bytearray()
    out += g.n.to_bytes(2, "big")
    for m in g.adj:
        out += m.to_bytes((g.n + 7) // 8 or 1, "big")
    return bytes(out)


# ---------------------------------------------------------------------------
# Predicates

def regular_degree(g: Graph):
    """The common degree d if g is regular (n >= 1), else None."""
    if g.n == 0:
        return None
    d = g.degree(0)
    return d if all(g.degree(v) == d for v in range(g.n)) else None


def is_d_regular(g: Graph, d: int) -> bool:
    return g.n > 0 and regular_degree(g) == d


def bipartition(g: Graph):
    """BFS 2-coloring: (side0, side1) as sorted lists, or None if odd cycle."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    side0 = [v for v in range(g.n) if color[v] == 0]
    side1 = [v for v in range(g.n) if color[v] == 1]
    return side0, side1


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def is_triangle_free(g: Graph) -> bool:
    for u in range(g.n):
        for v in g.neighbors(u):
            if v > u and g.adj[u] & g.adj[v]:
                return False
    return True


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(g.components()) == 1


def _extend_automorphism(g: Graph, perm: list, used: int, v: int) -> bool:
    """Backtracking: can the partial map perm[0..v-1] extend to an automorphism?"""
    n = g.n
    if v == n:
        return True
    deg_v = g.degree(v)
    for img in range(n):
        if used >> img & 1:
            continue
        if g.degree(img) != deg_v:
            continue
        ok = True
        for w in range(v):
            if g.has_edge(v, w) != g.has_edge(img, perm[w]):
                ok = False
                break
        if ok:
            perm.append(img)
            if _extend_automorphism(g, perm, used | 1 << img, v + 1):
                return True
            perm.pop()
    return False


def vertex_orbit(g: Graph, v: int = 0, limit: int = TRANSITIVITY_LIMIT):
    """Orbit of vertex v under the full automorphism group (exhaustive)."""
    if g.n > limit:
        raise CapabilityError(
            f"automorphism orbit supports at most {limit} vertices, got {g.n};"
            " pass an explicit vertex-transitivity assertion instead"
        )
    orbit = []
    for target in range(g.n):
        if g.degree(target) != g.degree(v):
            continue
        perm = [target]
        if v == 0:
            if _extend_automorphism(g, perm, 1 << target, 1):
                orbit.append(target)
        else:
            raise DomainError("vertex_orbit is implemented for v = 0")
    return orbit


def is_vertex_transitive(g: Graph, limit: int = TRANSITIVITY_LIMIT) -> bool:
    if g.n == 0:
        return True
    return len(vertex_orbit(g, 0, limit)) == g.n


# ---------------------------------------------------------------------------
# Isomorphism classes on a fixed number of vertices

@lru_cache(maxsize=None)
def isomorphism_classes(n: int):
    """All isomorphism classes on exactly n vertices, sorted by canonical key.

    Grown incrementally: every n-vertex class arises from an (n-1)-vertex
    class by attaching one new vertex, so extending representatives with
    every neighborhood subset and deduplicating by key is exhaustive.
    """
    if n > 7:
        raise CapabilityError("isomorphism class enumeration capped at 7 vertices")
    if n == 0:
        return ((canonical_key(Graph(0)), Graph(0)),)
    seen = {}
    for _, g in isomorphism_classes(n - 1):
        for mask in range(1 << (n - 1)):
            adj = list(g.adj) + [mask]
            for w in _mask_vertices(mask):
                adj[w] |= 1 << (n - 1)
            h = Graph._from_adj(adj)
            key = canonical_key(h)
            if key not in seen:
                seen[key] = h
    return tuple(sorted(seen.items()))


def graph_class_count(n: int) -> int:
    return len(isomorphism_classes(n))
