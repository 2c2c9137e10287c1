import random

import pytest

from occufrac.errors import CapabilityError, DomainError, FormatError
from occufrac.graphs import (
    Graph,
    bipartition,
    canonical_key,
    complete,
    complete_bipartite,
    cycle,
    generate,
    graph_class_count,
    hypercube,
    is_connected,
    is_d_regular,
    is_triangle_free,
    is_vertex_transitive,
    kdd_union,
    parse_edge_list,
    parse_graph6,
    petersen,
    prism,
    to_graph6,
)


def test_parse_graph6_known_values():
    assert parse_graph6("A_").edges() == [(0, 1)]
    assert parse_graph6("A?").edges() == []
    g = parse_graph6("C~")
    assert g.n == 4 and g.edge_count == 6


@pytest.mark.parametrize(
    "bad",
    ["", "~??", "A", "A_X", chr(30) + "_"],
)
def test_parse_graph6_errors_name_offset(bad):
    with pytest.raises(FormatError) as err:
        parse_graph6(bad)
    assert "offset" in str(err.value) or "byte" in str(err.value)


def test_graph6_roundtrip_corpus():
    from occufrac.corpus import regular_corpus

    graphs = [
        cycle(5),
        hypercube(4),
        Graph(1),
        Graph(0),
    ] + [g for _, g in regular_corpus(12)]
    for g in graphs:
        assert parse_graph6(to_graph6(g)) == g


def test_parse_edge_list():
    assert parse_edge_list("2\n0 1") == Graph(2, [(0, 1)])
    assert parse_edge_list("3\n0 1\n1 2") == Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(FormatError, match="line 2"):
        parse_edge_list("3\n0 0")
    with pytest.raises(FormatError, match="line 3"):
        parse_edge_list("3\n0 1\n1 0")
    with pytest.raises(FormatError, match="line 2"):
        parse_edge_list("2\n0 5")


def test_generate_families():
    assert generate("complete_bipartite", 2) == complete_bipartite(2)
    g = generate("H", 2, 8)
    assert [len(c) for c in g.components()] == [4, 4]
    with pytest.raises(DomainError):
        generate("H", 2, 6)
    with pytest.raises(DomainError):
        generate("cycle", 2)
    with pytest.raises(DomainError):
        generate("nonsense", 1)
    assert generate("petersen").n == 10


def test_kdd_is_cycle4():
    assert canonical_key(complete_bipartite(2)) == canonical_key(cycle(4))


def test_canonical_key_distinguishes():
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert canonical_key(p3) != canonical_key(complete(3))
    # same degree sequence, non-isomorphic: C6 vs two triangles
    two_triangles = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert canonical_key(cycle(6)) != canonical_key(two_triangles)


def test_canonical_key_relabel_invariance():
    rng = random.Random(3)
    graphs = [
        petersen(),
        cycle(7),
        prism(4),
        complete_bipartite(3),
        Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (0, 5)]),
    ]
    for g in graphs:
        base = canonical_key(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_key(g.relabel(perm)) == base


def test_canonical_key_capability_limit():
    with pytest.raises(CapabilityError):
        canonical_key(cycle(11))
    canonical_key(cycle(11), limit=11)  # explicit override works


def test_predicates_known_values():
    c6 = cycle(6)
    assert is_d_regular(c6, 2)
    assert bipartition(c6) is not None
    assert is_triangle_free(c6)
    assert is_vertex_transitive(c6)

    p = petersen()
    assert is_d_regular(p, 3)
    assert bipartition(p) is None
    assert is_triangle_free(p)
    assert is_vertex_transitive(p)

    k4 = complete(4)
    assert is_d_regular(k4, 3)
    assert bipartition(k4) is None
    assert not is_triangle_free(k4)


def test_vertex_transitivity_negative():
    path = Graph(3, [(0, 1), (1, 2)])
    assert not is_vertex_transitive(path)
    with pytest.raises(CapabilityError):
        is_vertex_transitive(cycle(17))


def test_bipartition_witness_is_proper():
    for g in (cycle(8), hypercube(3), kdd_union(2, 8), prism(6)):
        side0, side1 = bipartition(g)
        assert sorted(side0 + side1) == list(range(g.n))
        for u, v in g.edges():
            assert (u in side0) != (v in side0)


def test_connectivity():
    assert is_connected(petersen())
    assert not is_connected(kdd_union(2, 8))


def test_complete_bipartite_regular_bipartite():
    for d in range(1, 6):
        g = complete_bipartite(d)
        assert is_d_regular(g, d)
        assert bipartition(g) is not None


def test_class_counts_match_known_sequence():
    assert [graph_class_count(n) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


def test_hypercube_prism():
    assert is_d_regular(hypercube(3), 3)
    assert is_d_regular(prism(5), 3)
    assert prism(4).n == 8


def test_graph_is_immutable_and_hashable():
    g = cycle(4)
    with pytest.raises(AttributeError):
        g.n = 5
    assert hash(g) == hash(cycle(4))
    assert g in {cycle(4)}


def test_graph_rejects_bad_edges():
    with pytest.raises(DomainError):
        Graph(3, [(0, 0)])
    with pytest.raises(DomainError):
        Graph(3, [(0, 5)])
    with pytest.raises(DomainError):
        Graph(-1)


def test_kdd_union_recognizer():
    from occufrac.corpus import is_kdd_union

    assert is_kdd_union(complete_bipartite(3), 3)
    assert is_kdd_union(kdd_union(2, 12), 2)
    assert is_kdd_union(cycle(4), 2)  # C4 is K_{2,2}
    assert not is_kdd_union(cycle(8), 2)
    assert not is_kdd_union(cycle(6), 2)
    assert not is_kdd_union(complete(4), 3)
    assert not is_kdd_union(complete_bipartite(3), 2)


def test_parse_graph6_rejects_nonzero_padding():
    # n=3 uses 3 data bits; the trailing 3 bits must be zero
    with pytest.raises(FormatError, match="padding"):
        parse_graph6("B~")
