import pytest
from hypothesis import given, strategies as st

from gkverify.factored import factor, product
from gkverify.groups import order, parse_group, sporadic, sporadic_names
from gkverify.primegraph import build_graph, graph_of, group_order_components, order_components, to_dot

T_VALUES = {
    "M12": 2, "J2": 2, "McL": 2, "He": 2, "Ru": 2, "HN": 2, "Co1": 2, "Co3": 2, "Fi22": 2,
    "M11": 3, "M23": 3, "M24": 3, "J3": 3, "HS": 3, "Suz": 3, "Th": 3, "Co2": 3, "Fi23": 3, "B": 3,
    "M22": 4, "J1": 4, "ON": 4, "Ly": 4, "Fi24'": 4, "M": 4,
    "J4": 6,
}


def brute_components(spectrum):
    """Union-find over primes, independent of the library's graph code."""
    parent = {}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for k in spectrum:
        ps = factor(k).primes
        for p in ps:
            parent.setdefault(p, p)
        for p in ps[1:]:
            parent[find(p)] = find(ps[0])
    groups = {}
    for p in parent:
        groups.setdefault(find(p), set()).add(p)
    return {frozenset(g) for g in groups.values()}


def test_m11_components():
    g = graph_of(sporadic("M11"))
    assert g.components == ((2, 3), (5,), (11,))
    assert group_order_components(sporadic("M11")) == tuple(map(factor, (144, 5, 11)))


@pytest.mark.parametrize("name", sporadic_names())
def test_component_counts(name):
    assert graph_of(sporadic(name)).component_count == T_VALUES[name]


@pytest.mark.parametrize("name", sporadic_names())
def test_components_match_union_find(name):
    from gkverify.groups import sporadic_records
    spec = sporadic_records()[name].spectrum
    assert set(map(frozenset, build_graph(spec).components)) == brute_components(spec)


@pytest.mark.parametrize("name", sporadic_names())
def test_order_components_factor_the_order(name):
    g = sporadic(name)
    parts = group_order_components(g)
    assert product(parts) == order(g)
    assert all(a.coprime_to(b) for i, a in enumerate(parts) for b in parts[i + 1:])
    assert 2 in parts[0]


def test_trivial_spectra():
    assert build_graph([1, 2]).components == ((2,),)
    assert build_graph([1]).components == ()
    with pytest.raises(ValueError):
        build_graph([0, 2])


def test_graph_needs_sporadic():
    with pytest.raises(ValueError):
        graph_of(parse_group("A5"))


def test_order_components_checks_vertices():
    with pytest.raises(ValueError):
        order_components(build_graph([2, 3]), factor(30))


def test_dot_output():
    dot = to_dot(graph_of(sporadic("M11")), "M11")
    assert dot.startswith('graph "M11" {')
    assert dot.count("subgraph cluster_") == 3
    assert '"2" -- "3";' in dot


@given(st.sets(st.integers(1, 500), min_size=1, max_size=25))
def test_components_partition_vertices(spectrum):
    g = build_graph(spectrum)
    flat = [p for c in g.components for p in c]
    assert sorted(flat) == list(g.vertices)
    assert set(map(frozenset, g.components)) == brute_components(spectrum)
    if 2 in g.vertices:
        assert 2 in g.components[0]
    tail = [c[0] for c in g.components if 2 not in c]
    assert tail == sorted(tail)
