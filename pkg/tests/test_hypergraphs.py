import itertools
import random

import pytest

from balmatch.genrandom import MarketGenConfig, random_market
from balmatch.hypergraphs import (
    HyperCycle,
    Hypergraph,
    acceptable_set_hypergraph,
    check_hypergraph_balanced,
    check_odd_cycle_condition,
    firm_worker_hypergraph,
)
from balmatch.market import acceptable_sets
from balmatch.matrices import is_balanced, matrix_of_sets


def brute_bad_odd_cycle(h):
    """Reference search: try every vertex sequence and edge assignment."""
    edges = list(h.edges)
    for k in range(3, len(h.vertices) + 1, 2):
        for vs in itertools.permutations(h.vertices, k):
            for es in itertools.permutations(range(len(edges)), k):
                ok = True
                for i in range(k):
                    a, b = vs[i], vs[(i + 1) % k]
                    label, members = edges[es[i]]
                    if a not in members or b not in members:
                        ok = False
                        break
                    if len(members & set(vs)) != 2:
                        ok = False
                        break
                if ok:
                    return True
    return False


class TestHypergraphShape:
    def test_duplicate_edge_content_rejected(self):
        with pytest.raises(ValueError):
            Hypergraph(
                vertices=("a", "b"),
                edges=(("e1", frozenset({"a", "b"})), ("e2", frozenset({"a", "b"}))),
            )

    def test_edge_outside_vertices_rejected(self):
        with pytest.raises(ValueError):
            Hypergraph(vertices=("a",), edges=(("e1", frozenset({"a", "z"})),))


class TestHyperCycle:
    def test_degenerate_two_cycle_allowed_by_shape(self):
        # k = 2 is a valid alternating cycle shape, just never a witness
        c = HyperCycle(
            vertices=("a", "b"),
            edges=(
                ("e1", frozenset({"a", "b"})),
                ("e2", frozenset({"a", "b", "c"})),
            ),
        )
        assert c.length == 2

    def test_nonadjacent_vertices_rejected(self):
        with pytest.raises(ValueError):
            HyperCycle(
                vertices=("a", "b", "c"),
                edges=(
                    ("e1", frozenset({"a", "b"})),
                    ("e2", frozenset({"b", "c"})),
                    ("e3", frozenset({"a", "b"})),  # must contain c and a
                ),
            )


class TestMarketHypergraphs:
    def test_acceptable_set_hypergraph_drops_singletons(self, two_firms):
        h = acceptable_set_hypergraph(two_firms)
        contents = {members for _, members in h.edges}
        assert frozenset({"w1"}) not in contents
        assert frozenset({"w1", "w2", "w3"}) in contents

    def test_firm_worker_edges_include_firm(self, singleton_clash):
        h = firm_worker_hypergraph(singleton_clash)
        contents = {members for _, members in h.edges}
        assert frozenset({"f1", "w1", "w2"}) in contents
        assert frozenset({"f2", "w1"}) in contents


class TestOddCycleCondition:
    def test_triangle_of_pairs_fails(self, cyclic3):
        cert = check_odd_cycle_condition(acceptable_set_hypergraph(cyclic3))
        assert not cert.ok
        assert cert.cycle.length == 3

    def test_covering_triple_saves_triangle(self, triangle_tu):
        # the odd cycle through the pair sets includes a set holding all
        # three of its workers, so the condition holds
        cert = check_odd_cycle_condition(acceptable_set_hypergraph(triangle_tu))
        assert cert.ok

    def test_fan_passes(self, fan):
        assert check_odd_cycle_condition(acceptable_set_hypergraph(fan)).ok

    def test_firm_worker_clash_fails(self, singleton_clash):
        cert = check_hypergraph_balanced(firm_worker_hypergraph(singleton_clash))
        assert not cert.ok
        assert cert.cycle.length == 3
        # the witness alternates firms and workers
        assert set(cert.cycle.vertices) == {"f2", "w1", "w2"}

    def test_witness_recheck(self, any_market):
        cert = check_odd_cycle_condition(acceptable_set_hypergraph(any_market))
        if cert.ok:
            return
        c = cert.cycle
        assert c.length >= 3 and c.length % 2 == 1
        vs = set(c.vertices)
        for _, members in c.edges:
            assert len(members & vs) == 2

    def test_matches_brute_force(self):
        rng = random.Random(8)
        for _ in range(80):
            m = random_market(rng, MarketGenConfig(max_workers=4, max_firms=3))
            h = acceptable_set_hypergraph(m)
            assert check_odd_cycle_condition(h).ok == (not brute_bad_odd_cycle(h))

    def test_consistent_with_matrix_balancedness(self):
        # a bad odd cycle in the acceptable-set hypergraph is exactly an
        # odd two-per-line submatrix of the acceptable-set matrix
        rng = random.Random(9)
        for _ in range(120):
            m = random_market(rng, MarketGenConfig(max_workers=4, max_firms=3))
            sets, seen = [], set()
            for f in m.firms:
                for s in acceptable_sets(f, m):
                    if s not in seen:
                        seen.add(s)
                        sets.append(s)
            mat = matrix_of_sets(sets, m.workers)
            hyper_ok = check_odd_cycle_condition(acceptable_set_hypergraph(m)).ok
            assert hyper_ok == is_balanced(mat).ok
