import math

import pytest

from fgred.generators import gen_clique_instance, gen_hypergraph, gen_layered, gen_planted_kcycle
from fgred.model import CircleLayeredGraph, UniformHypergraph, WeightedDigraph
from fgred.oracles import (
    bf_hyperclique,
    bf_hypercycle,
    bf_min_clique,
    bf_min_kcycle,
    bf_shortest_cycle,
    check_witness,
)
from fgred.reduce_cycle import (
    clique_to_cycle,
    clique_to_cycle_direct,
    color_code,
    detect_kcycle_via_shortest_cycle,
    gamma,
    hyperclique_to_hypercycle,
    hypercycle_to_digraph,
    min_kcycle_via_negative_search,
    min_kcycle_via_shortest_cycle,
    repeat_color_code,
    shift_layered,
    split_layer,
)


class TestGamma:
    def test_values(self):
        assert gamma(5, 2) == 3
        assert gamma(3, 2) == 2
        assert gamma(7, 3) == 5

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            gamma(3, 3)
        with pytest.raises(ValueError):
            gamma(4, 1)


class TestColorCoding:
    def test_aligned_coloring_preserves_cycle(self):
        k = 5
        g = WeightedDigraph(k, [(i, (i + 1) % k, i) for i in range(k)])
        lg = color_code(g, k, list(range(k)))
        assert lg.graph.edge_count == k
        assert bf_min_kcycle(lg.graph, k).found

    def test_acyclic_stays_acyclic(self):
        g = WeightedDigraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])

        def solver(lg):
            return bf_min_kcycle(lg.graph, 3)

        assert not repeat_color_code(g, 3, seed=5, solver=solver, trials=200).found

    def test_planted_cycle_found(self):
        g, planted = gen_planted_kcycle(12, 30, 5, -8, 8, seed=4)

        def solver(lg):
            return bf_min_kcycle(lg.graph, 5)

        result = repeat_color_code(g, 5, seed=10, solver=solver)
        assert result.found and result.weight == planted
        assert check_witness(g, result.witness) is None


class TestSplitLayer:
    def test_layered_triangle(self):
        tri = CircleLayeredGraph(
            WeightedDigraph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)]), 3, [0, 1, 2]
        )
        out = split_layer(tri)
        assert out.instance.k == 4
        four = bf_min_kcycle(out.instance.graph, 4)
        assert four.found and four.weight == 6
        pulled = out.pullback(four.witness)
        assert check_witness(tri.graph, pulled) is None

    def test_empty_split_layer(self):
        lg = CircleLayeredGraph(WeightedDigraph(2, []), 3, [0, 2])
        out = split_layer(lg)
        assert out.instance.graph.edge_count == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_oracle_equivalence(self, seed):
        lg = gen_layered(3 + seed % 2, 3, -5, 5, seed)
        out = split_layer(lg)
        src = bf_min_kcycle(lg.graph, lg.k)
        dst = bf_min_kcycle(out.instance.graph, lg.k + 1)
        assert src.found == dst.found
        if src.found:
            assert src.weight == dst.weight

    def test_size_bounds(self):
        lg = gen_layered(4, 3, -2, 2, seed=3)
        out = split_layer(lg)
        assert out.instance.graph.node_count <= 2 * lg.graph.node_count
        assert out.instance.graph.edge_count <= lg.graph.node_count + lg.graph.edge_count


def complete_partite_k5():
    return gen_clique_instance(5, 1, 1, 1, seed=0)


class TestHypercliqueToHypercycle:
    def test_k5_unit_weights(self):
        out = hyperclique_to_hypercycle(complete_partite_k5())
        assert out.info["gamma"] == 3
        result = bf_hypercycle(out.instance, 5)
        assert result.found and result.weight == 10

    def test_k5_minus_edge(self):
        base = complete_partite_k5()
        edges = [e for e in base.hyperedges if e[0] != (1, 3)]
        h = UniformHypergraph(5, 2, edges, base.part_of)
        out = hyperclique_to_hypercycle(h)
        assert not bf_hypercycle(out.instance, 5).found

    def test_output_arity(self):
        h = gen_hypergraph(10, 2, 16, seed=2, parts=5)
        out = hyperclique_to_hypercycle(h)
        assert out.instance.k == gamma(5, 2) == 3

    def test_weight_bound_respected(self):
        h = gen_hypergraph(12, 3, 30, seed=5, parts=5, wmin=-7, wmax=7)
        out = hyperclique_to_hypercycle(h)
        bound = out.info["weight_bound"]
        assert all(abs(w1) <= bound for _, w1, _ in out.instance.hyperedges)

    @pytest.mark.parametrize("seed", range(10))
    def test_oracle_equivalence(self, seed):
        k = 2 if seed % 2 == 0 else 3
        l = 4 + seed % 3
        h = gen_hypergraph(l + seed % 4, k, 14, seed=seed, parts=l, wmin=-6, wmax=6)
        out = hyperclique_to_hypercycle(h)
        src = bf_hyperclique(h, l)
        dst = bf_hypercycle(out.instance, l)
        assert src.found == dst.found
        if src.found:
            assert src.weight == dst.weight


class TestHypercycleToDigraph:
    def test_layer_sizes_and_edges(self):
        h = gen_hypergraph(10, 3, 25, seed=1, parts=5)
        out = hypercycle_to_digraph(h)
        sizes = out.info["layer_sizes"]
        parts = h.parts()
        for i, size in enumerate(sizes):
            expected = len(parts[i]) * len(parts[(i + 1) % 5])
            assert size == expected

    def test_planted_hypercycle(self):
        k, lam = 5, 3
        windows = [
            tuple(sorted(((i + j) % k) for j in range(lam))) for i in range(k)
        ]
        h = UniformHypergraph(
            5, 3, [(w, i + 1, 0) for i, w in enumerate(windows)],
            part_of=list(range(5)),
        )
        out = hypercycle_to_digraph(h)
        result = bf_min_kcycle(out.instance.graph, 5)
        assert result.found and result.weight == 15
        pulled = out.pullback(result.witness)
        assert check_witness(h, pulled) is None

    def test_empty_hyperedges(self):
        h = UniformHypergraph(5, 3, [], part_of=list(range(5)))
        out = hypercycle_to_digraph(h)
        assert out.instance.graph.edge_count == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_oracle_equivalence(self, seed):
        k = 4 + seed % 3
        lam = 2 + seed % 2
        h = gen_hypergraph(k + seed % 3, lam, 18, seed=seed, parts=k, wmin=-5, wmax=5)
        out = hypercycle_to_digraph(h)
        src = bf_hypercycle(h, k, aligned=True)
        dst = bf_min_kcycle(out.instance.graph, k)
        assert src.found == dst.found
        if src.found:
            assert src.weight == dst.weight


class TestCliqueToCycle:
    def test_density_counts(self):
        h = gen_clique_instance(5, 3, -8, 8, seed=7)
        out = clique_to_cycle(h)
        assert out.info["node_count"] == 5 * 9          # k * n^2
        assert out.info["edge_count"] <= 5 * 27         # k * n^3

    def test_planted_negative_clique(self):
        base = gen_clique_instance(5, 2, 0, 0, seed=3)
        chosen = {0, 2, 4, 6, 8}
        edges = []
        planted = 0
        for nodes, w, _ in base.hyperedges:
            if set(nodes) <= chosen:
                w = -1
                planted += w
            edges.append((nodes, w, 0))
        h = UniformHypergraph(10, 2, edges, base.part_of)
        out = clique_to_cycle(h)
        result = bf_min_kcycle(out.instance.graph, 5)
        assert result.found and result.weight == planted == -10

    def test_no_clique_no_cycle(self):
        h = gen_clique_instance(5, 2, 1, 1, seed=1, pair_probability=0.3)
        if bf_min_clique(h, 5).found:
            pytest.skip("random instance happened to hold a clique")
        out = clique_to_cycle(h)
        assert not bf_min_kcycle(out.instance.graph, 5).found

    @pytest.mark.parametrize("seed", range(6))
    def test_pipeline_and_direct_agree(self, seed):
        k = 3 if seed % 2 == 0 else 5
        h = gen_clique_instance(k, 2, -8, 8, seed=seed)
        src = bf_min_clique(h, k)
        pipe = clique_to_cycle(h)
        direct = clique_to_cycle_direct(h)
        r1 = bf_min_kcycle(pipe.instance.graph, k)
        r2 = bf_min_kcycle(direct.instance.graph, k)
        assert r1.found == r2.found == src.found
        if src.found:
            assert pipe.invert_weight(r1.weight) == src.weight
            assert direct.invert_weight(r2.weight) == src.weight


class TestCliqueToCycleDirect:
    def test_k3_doubles_weight(self):
        h = gen_clique_instance(3, 2, -4, 4, seed=5)
        out = clique_to_cycle_direct(h)
        assert out.scale == 2
        src = bf_min_clique(h, 3)
        dst = bf_min_kcycle(out.instance.graph, 3)
        assert dst.weight == 2 * src.weight

    def test_k5_planted(self):
        base = gen_clique_instance(5, 2, 1, 1, seed=9)
        chosen = {1, 3, 5, 7, 9}
        edges = []
        for nodes, w, _ in base.hyperedges:
            if set(nodes) <= chosen:
                w = 0
            edges.append((nodes, w, 0))
        # planted clique weight 4 after raising one pair back to 4
        edges = [
            (nodes, 4 if set(nodes) == {1, 3} else w, extra)
            for nodes, w, extra in edges
        ]
        h = UniformHypergraph(10, 2, edges, base.part_of)
        src = bf_min_clique(h, 5)
        assert src.weight == 4
        out = clique_to_cycle_direct(h)
        assert out.scale == math.factorial(3)
        dst = bf_min_kcycle(out.instance.graph, 5)
        assert dst.weight == 24

    def test_rejects_even_k(self):
        h = gen_clique_instance(4, 2, -1, 1, seed=2)
        with pytest.raises(ValueError):
            clique_to_cycle_direct(h)

    def test_pullback(self):
        h = gen_clique_instance(5, 2, -6, 6, seed=11)
        out = clique_to_cycle_direct(h)
        dst = bf_min_kcycle(out.instance.graph, 5)
        pulled = out.pullback(dst.witness)
        assert check_witness(h, pulled) is None


class TestShiftToShortestCycle:
    def test_shift_example(self):
        lg = CircleLayeredGraph(
            WeightedDigraph(3, [(0, 1, -5), (1, 2, 5), (2, 0, -2)]), 3, [0, 1, 2]
        )
        out = shift_layered(lg)
        assert out.shift == 4 * 3 * 5
        assert bf_shortest_cycle(out.instance.graph).weight == 58

    def test_zero_weights_use_unit_shift(self):
        lg = CircleLayeredGraph(
            WeightedDigraph(3, [(0, 1, 0), (1, 2, 0), (2, 0, 0)]), 3, [0, 1, 2]
        )
        out = shift_layered(lg)
        assert out.info["per_edge_shift"] == 1
        assert bf_shortest_cycle(out.instance.graph).weight == 3

    def test_all_zero_shift_value(self):
        lg = gen_layered(3, 2, 0, 0, seed=2)
        out = shift_layered(lg)
        result = bf_shortest_cycle(out.instance.graph)
        src = bf_min_kcycle(lg.graph, 3)
        if src.found:
            assert result.weight == out.shift

    def test_driver_matches_oracle(self):
        g, planted = gen_planted_kcycle(10, 24, 4, -6, 6, seed=8)
        result = min_kcycle_via_shortest_cycle(g, 4, seed=3, shortest_cycle_solver=bf_shortest_cycle)
        assert result.found and result.weight == planted

    def test_detect_unweighted(self):
        g, _ = gen_planted_kcycle(10, 22, 5, 1, 4, seed=6)
        assert detect_kcycle_via_shortest_cycle(g, 5, seed=2, shortest_cycle_solver=bf_shortest_cycle)
        acyclic = WeightedDigraph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)])
        assert not detect_kcycle_via_shortest_cycle(
            acyclic, 3, seed=2, shortest_cycle_solver=bf_shortest_cycle, trials=100
        )


class TestNegativeSearch:
    @staticmethod
    def neg_solver(k):
        def solver(lg):
            result = bf_min_kcycle(lg.graph, k)
            return result.found and result.weight < 0

        return solver

    def test_all_ones(self):
        lg = CircleLayeredGraph(
            WeightedDigraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]), 3, [0, 1, 2]
        )
        result, probes = min_kcycle_via_negative_search(lg, 3, 1, self.neg_solver(3))
        assert result.weight == 3
        assert probes <= math.ceil(math.log2(2 * 1 * 3 + 2))

    def test_planted_negative(self):
        lg = CircleLayeredGraph(
            WeightedDigraph(
                6,
                [(0, 2, -1), (2, 4, -1), (4, 0, -1), (0, 3, 4), (3, 5, 2), (5, 1, 1)],
            ),
            3,
            [0, 0, 1, 1, 2, 2],
        )
        result, probes = min_kcycle_via_negative_search(lg, 3, 4, self.neg_solver(3))
        assert result.weight == -3
        assert probes <= math.ceil(math.log2(2 * 4 * 3 + 2))

    def test_no_cycle(self):
        lg = CircleLayeredGraph(WeightedDigraph(3, [(0, 1, 1)]), 3, [0, 1, 2])
        result, _ = min_kcycle_via_negative_search(lg, 3, 4, self.neg_solver(3))
        assert not result.found

    @pytest.mark.parametrize("seed", range(10))
    def test_probe_budget_and_exactness(self, seed):
        k = 3 + seed % 3
        lg = gen_layered(k, 3, -8, 8, seed=seed * 13)
        bound = max(lg.graph.weight_bound(), 1)
        result, probes = min_kcycle_via_negative_search(lg, k, bound, self.neg_solver(k))
        assert probes <= math.ceil(math.log2(2 * bound * k + 2))
        oracle = bf_min_kcycle(lg.graph, k)
        assert result.found == oracle.found
        if oracle.found:
            assert result.weight == oracle.weight
