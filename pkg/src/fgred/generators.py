"""Deterministic instance generators: pure functions of (parameters, seed)."""

from __future__ import annotations

import random
from itertools import combinations

from .model import (
    CircleLayeredGraph,
    CspInstance,
    UniformHypergraph,
    WeightedDigraph,
    require_valid,
)
from .formats import clause_polynomial


def gen_digraph(n: int, m: int, wmin: int, wmax: int, seed: int) -> WeightedDigraph:
    if n < 0 or m < 0 or m > n * (n - 1):
        raise ValueError("bad digraph parameters")
    rng = random.Random(("digraph", n, m, wmin, wmax, seed).__repr__())
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            chosen.add((u, v))
    edges = [(u, v, rng.randint(wmin, wmax)) for u, v in sorted(chosen)]
    return require_valid(WeightedDigraph(n, edges))


def gen_planted_kcycle(
    n: int, m: int, k: int, wmin: int, wmax: int, seed: int
) -> tuple[WeightedDigraph, int]:
    """Random digraph holding a k-cycle strictly cheaper than any other;
    returns (graph, planted weight)."""
    if k < 3 or k > n:
        raise ValueError("bad planted-cycle parameters")
    rng = random.Random(("planted-kcycle", n, m, k, wmin, wmax, seed).__repr__())
    nodes = rng.sample(range(n), k)
    planted = {
        (nodes[i], nodes[(i + 1) % k]): wmin - 1 for i in range(k)
    }
    chosen = dict(planted)
    while len(chosen) < max(m, k):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v and (u, v) not in chosen:
            chosen[(u, v)] = rng.randint(wmin, wmax)
    edges = [(u, v, w) for (u, v), w in sorted(chosen.items())]
    return require_valid(WeightedDigraph(n, edges)), k * (wmin - 1)


def gen_layered(
    k: int, max_per_layer: int, wmin: int, wmax: int, seed: int,
    edge_probability: float = 0.5,
) -> CircleLayeredGraph:
    """Random circle-layered graph with every layer nonempty."""
    rng = random.Random(("layered", k, max_per_layer, wmin, wmax, seed).__repr__())
    sizes = [rng.randint(1, max_per_layer) for _ in range(k)]
    layer_of = []
    for i, s in enumerate(sizes):
        layer_of.extend([i] * s)
    n = len(layer_of)
    layers = [[v for v in range(n) if layer_of[v] == i] for i in range(k)]
    edges = []
    for i in range(k):
        for u in layers[i]:
            for v in layers[(i + 1) % k]:
                if rng.random() < edge_probability:
                    edges.append((u, v, rng.randint(wmin, wmax)))
    return require_valid(CircleLayeredGraph(WeightedDigraph(n, edges), k, layer_of))


def gen_clique_instance(
    parts: int, per_part: int, wmin: int, wmax: int, seed: int,
    pair_probability: float = 1.0,
) -> UniformHypergraph:
    """Random weighted k-partite clique instance (2-uniform hypergraph)."""
    rng = random.Random(("clique", parts, per_part, wmin, wmax, seed).__repr__())
    part_of = []
    for i in range(parts):
        part_of.extend([i] * per_part)
    n = len(part_of)
    hyperedges = []
    for a, b in combinations(range(n), 2):
        if part_of[a] != part_of[b] and rng.random() < pair_probability:
            hyperedges.append(((a, b), rng.randint(wmin, wmax), 0))
    return require_valid(UniformHypergraph(n, 2, hyperedges, part_of))


def gen_planted_kclique(
    parts: int, per_part: int, wmin: int, wmax: int, seed: int
) -> tuple[UniformHypergraph, int]:
    """Complete k-partite instance with one clique strictly cheapest."""
    rng = random.Random(("planted-kclique", parts, per_part, wmin, wmax, seed).__repr__())
    base = gen_clique_instance(parts, per_part, wmin, wmax, seed)
    chosen = [rng.randrange(per_part) + i * per_part for i in range(parts)]
    chosen_set = set(chosen)
    pair_count = parts * (parts - 1) // 2
    hyperedges = []
    planted_weight = 0
    for nodes, w, _ in base.hyperedges:
        if set(nodes) <= chosen_set:
            w = wmin - 1
            planted_weight += w
        hyperedges.append((nodes, w, 0))
    assert planted_weight == pair_count * (wmin - 1)
    return (
        require_valid(UniformHypergraph(base.node_count, 2, hyperedges, base.part_of)),
        planted_weight,
    )


def gen_hypergraph(
    n: int, k: int, m: int, seed: int,
    parts: int = 0, wmin: int = -4, wmax: int = 4,
) -> UniformHypergraph:
    """Random k-uniform hypergraph, optionally partitioned into `parts`."""
    rng = random.Random(("hypergraph", n, k, m, parts, wmin, wmax, seed).__repr__())
    part_of = None
    if parts:
        if n < parts:
            raise ValueError("need at least one node per part")
        assignment = list(range(parts)) + [rng.randrange(parts) for _ in range(n - parts)]
        rng.shuffle(assignment)
        part_of = assignment
    candidates = []
    for combo in combinations(range(n), k):
        if part_of is not None:
            ps = [part_of[v] for v in combo]
            if len(set(ps)) != k:
                continue
        candidates.append(combo)
    rng.shuffle(candidates)
    chosen = sorted(candidates[: min(m, len(candidates))])
    hyperedges = [(combo, rng.randint(wmin, wmax), 0) for combo in chosen]
    return require_valid(UniformHypergraph(n, k, hyperedges, part_of))


def gen_cnf(n: int, m: int, k: int, seed: int) -> CspInstance:
    """Random k-CNF over n variables."""
    if k > n:
        raise ValueError("clause width exceeds variable count")
    rng = random.Random(("cnf", n, m, k, seed).__repr__())
    clauses = []
    for _ in range(m):
        variables = rng.sample(range(1, n + 1), k)
        literals = tuple(v if rng.random() < 0.5 else -v for v in variables)
        clauses.append(clause_polynomial(n, literals))
    return require_valid(CspInstance(n, clauses))
