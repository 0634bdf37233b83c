import random
from itertools import combinations

import pytest

from fgred.formats import parse
from fgred.generators import gen_cnf, gen_digraph, gen_hypergraph
from fgred.model import (
    CspInstance,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
)
from fgred.oracles import (
    OracleGuardError,
    bf_apsp,
    bf_exact_csp,
    bf_hyperclique,
    bf_hyperclique_exact,
    bf_hypercycle,
    bf_kcycle_detect,
    bf_max_ksat,
    bf_min_clique,
    bf_min_kcycle,
    bf_radius,
    bf_shortest_cycle,
    bf_wiener,
    check_witness,
    radius_via_apsp,
)


def undirected(n, pairs):
    edges = []
    for u, v, w in pairs:
        edges.append((u, v, w))
        edges.append((v, u, w))
    return WeightedDigraph(n, edges)


def complete_pair_hypergraph(n, weight=1):
    return UniformHypergraph(n, 2, [(p, weight, 0) for p in combinations(range(n), 2)])


class TestMinClique:
    def test_k4_all_ones(self):
        assert bf_min_clique(complete_pair_hypergraph(4), 3).weight == 3

    def test_k5_minus_edge_none(self):
        h = UniformHypergraph(
            5, 2,
            [(p, 1, 0) for p in combinations(range(5), 2) if p != (1, 3)],
        )
        assert not bf_min_clique(h, 5).found

    def test_recount_matches(self):
        rng = random.Random(7)
        h = UniformHypergraph(
            8, 2,
            [(p, rng.randint(-5, 5), 0) for p in combinations(range(8), 2) if rng.random() < 0.7],
        )
        result = bf_min_clique(h, 4)
        # independent recount in a different enumeration order
        pairs = h.index()
        best = None
        for combo in combinations(reversed(range(8)), 4):
            try:
                total = sum(pairs[tuple(sorted(p))][0] for p in combinations(combo, 2))
            except KeyError:
                continue
            best = total if best is None else min(best, total)
        assert (result.weight if result.found else None) == best

    def test_witness_checks(self):
        h = complete_pair_hypergraph(4)
        result = bf_min_clique(h, 3)
        assert check_witness(h, result.witness) is None


class TestCycles:
    def test_triangle_weights(self):
        g = WeightedDigraph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)])
        assert bf_min_kcycle(g, 3).weight == 6

    def test_four_cycle_has_no_triangle(self):
        g = WeightedDigraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
        assert not bf_min_kcycle(g, 3).found

    def test_order_independent(self):
        g = gen_digraph(10, 30, -5, 5, seed=3)
        result = bf_min_kcycle(g, 5)
        # relabel nodes and re-solve; weights must agree
        relabel = list(range(10))
        random.Random(1).shuffle(relabel)
        g2 = WeightedDigraph(10, [(relabel[u], relabel[v], w) for u, v, w in g.edges])
        result2 = bf_min_kcycle(g2, 5)
        assert result.found == result2.found
        if result.found:
            assert result.weight == result2.weight

    def test_shortest_cycle_two_disjoint(self):
        g = WeightedDigraph(
            6,
            [(0, 1, 2), (1, 2, 2), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)],
        )
        assert bf_shortest_cycle(g).weight == 3

    def test_shortest_cycle_acyclic(self):
        g = WeightedDigraph(4, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
        assert not bf_shortest_cycle(g).found

    def test_shortest_equals_min_over_lengths(self):
        g = gen_digraph(9, 30, -4, 4, seed=11)
        best = None
        for k in range(2, 10):
            r = bf_min_kcycle(g, k)
            if r.found and (best is None or r.weight < best):
                best = r.weight
        r = bf_shortest_cycle(g)
        assert (r.weight if r.found else None) == best

    def test_two_cycles_counted(self):
        g = WeightedDigraph(2, [(0, 1, 1), (1, 0, 1)])
        assert bf_shortest_cycle(g).weight == 2

    def test_detect_ignores_weights(self):
        g = WeightedDigraph(3, [(0, 1, -9), (1, 2, 5), (2, 0, 0)])
        assert bf_kcycle_detect(g, 3).found

    def test_canonical_witness(self):
        g = WeightedDigraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
        assert bf_min_kcycle(g, 3).witness.items[0] == 0

    def test_node_guard(self):
        with pytest.raises(OracleGuardError):
            bf_min_kcycle(WeightedDigraph(100, []), 3)


class TestHypergraphs:
    def test_complete_3uniform(self):
        h = UniformHypergraph(5, 3, [(c, 1, 0) for c in combinations(range(5), 3)])
        assert bf_hyperclique(h, 4).weight == 4  # C(4,3) unit hyperedges

    def test_missing_edge_kills_clique(self):
        edges = [(c, 1, 0) for c in combinations(range(4), 3)]
        h = UniformHypergraph(4, 3, edges[:-1])
        assert not bf_hyperclique(h, 4).found

    def test_exact_variant(self):
        h = UniformHypergraph(5, 3, [(c, 2, 0) for c in combinations(range(5), 3)])
        assert bf_hyperclique_exact(h, 4, 8).found
        assert not bf_hyperclique_exact(h, 4, 9).found

    def test_planted_hypercycle(self):
        length, k = 5, 3
        windows = [
            tuple(sorted(((i + j) % length) for j in range(k)))
            for i in range(length)
        ]
        h = UniformHypergraph(5, 3, [(w, i + 1, 0) for i, w in enumerate(windows)])
        result = bf_hypercycle(h, 5)
        assert result.found and result.weight == sum(range(1, 6))
        assert check_witness(h, result.witness) is None

    def test_hypercycle_missing_window(self):
        length, k = 5, 3
        windows = [
            tuple(sorted(((i + j) % length) for j in range(k)))
            for i in range(length)
        ]
        h = UniformHypergraph(5, 3, [(w, 1, 0) for w in windows[:-1]])
        assert not bf_hypercycle(h, 5).found


class TestDistances:
    def test_path_wiener_radius(self):
        g = undirected(3, [(0, 1, 1), (1, 2, 1)])
        assert bf_wiener(g) == 8
        assert bf_radius(g) == 1

    def test_single_node(self):
        g = WeightedDigraph(1, [])
        assert bf_wiener(g) == 0
        assert bf_radius(g) == 0

    def test_apsp_matches_per_source(self):
        g = undirected(8, [(i, (i + 1) % 8, i + 1) for i in range(8)])
        matrix = bf_apsp(g)
        assert radius_via_apsp(matrix) == bf_radius(g)

    def test_apsp_matches_floyd_warshall(self):
        g = gen_digraph(8, 30, 0, 9, seed=17)
        matrix = bf_apsp(g)
        n = g.node_count
        dist = [[0 if i == j else float("inf") for j in range(n)] for i in range(n)]
        for u, v, w in g.edges:
            dist[u][v] = min(dist[u][v], w)
        for mid in range(n):
            for i in range(n):
                for j in range(n):
                    via = dist[i][mid] + dist[mid][j]
                    if via < dist[i][j]:
                        dist[i][j] = via
        assert matrix == dist

    def test_negative_cycle_guard(self):
        g = WeightedDigraph(2, [(0, 1, -3), (1, 0, 1)])
        with pytest.raises(ValueError):
            bf_apsp(g)

    def test_disconnected_errors(self):
        g = WeightedDigraph(2, [])
        with pytest.raises(ValueError):
            bf_radius(g)
        with pytest.raises(ValueError):
            bf_wiener(g)


class TestMaxSat:
    def test_contradiction(self):
        f = parse("p cnf 1 2\n1 0\n-1 0\n")
        assert bf_max_ksat(f)[0] == 1

    def test_empty_formula(self):
        f = CspInstance(3, [])
        count, witness = bf_max_ksat(f)
        assert count == 0 and len(witness.items) == 3

    def test_recount(self):
        f = gen_cnf(10, 20, 3, seed=5)
        count, witness = bf_max_ksat(f)
        assert f.satisfied_count(witness.items) == count

    def test_exact_csp(self):
        f = gen_cnf(6, 8, 3, seed=9)
        count, witness = bf_max_ksat(f)
        hit = bf_exact_csp(f, count, sum(witness.items))
        assert hit.found

    def test_exact_csp_infeasible(self):
        f = gen_cnf(4, 4, 2, seed=1)
        assert not bf_exact_csp(f, f.clause_count + 1, 0).found


class TestCheckWitness:
    def test_valid_triangle(self):
        g = WeightedDigraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
        assert check_witness(g, Witness("cycle", (0, 1, 2), 3)) is None

    def test_repeated_vertex(self):
        g = WeightedDigraph(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 0, 1)])
        assert "not simple" in check_witness(g, Witness("cycle", (0, 1, 0, 1), 4))

    def test_weight_off_by_one(self):
        h = complete_pair_hypergraph(4)
        assert "weight mismatch" in check_witness(h, Witness("clique", (0, 1, 2), 4))

    def test_every_oracle_result_passes(self):
        g = gen_digraph(9, 25, -6, 6, seed=21)
        for k in (3, 4, 5):
            r = bf_min_kcycle(g, k)
            if r.found:
                assert check_witness(g, r.witness) is None
        h = gen_hypergraph(8, 3, 20, seed=2)
        r = bf_hyperclique(h, 4)
        if r.found:
            assert check_witness(h, r.witness) is None
