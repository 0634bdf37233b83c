"""Clique <-> cycle reduction chain, plus the negative-cycle binary search.

Every reduction returns a ReductionOutput carrying the target instance, an
affine weight map (target optimum = scale * source optimum + shift), and a
total pullback from target witnesses to source witnesses.  Size formulas are
exact equalities asserted at construction time, not O(.) bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Optional

import numpy as np

from .model import (
    CircleLayeredGraph,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
    canonical_cycle,
    canonical_hypercycle,
    checked_i64,
    require_valid,
    tuple_index,
    tuple_unindex,
)
from .oracles import NONE_RESULT, SolveResult


@dataclass
class ReductionOutput:
    instance: object
    pullback: Callable[[Witness], Witness]
    scale: int = 1
    shift: int = 0
    info: dict = field(default_factory=dict)

    def invert_weight(self, target_weight: int) -> int:
        """Source optimum from a target optimum; exact division enforced."""
        delta = target_weight - self.shift
        if delta % self.scale:
            raise ValueError(
                f"target weight {target_weight} not reachable by map "
                f"(scale {self.scale}, shift {self.shift})"
            )
        return delta // self.scale


def gamma(l: int, k: int) -> int:
    """Arity of the hypercycle image of an (l, k)-hyperclique instance."""
    if k < 2 or l <= k:
        raise ValueError("gamma needs l > k >= 2")
    return l - math.ceil(l / k) + 1


def default_trials(k: int, n: int) -> int:
    return math.ceil(3 * (k**k) * math.log(n + 2))


# ---------------------------------------------------------------------------
# color coding


def color_code(g: WeightedDigraph, k: int, coloring) -> CircleLayeredGraph:
    """Keep exactly the edges whose colors step forward by 1 mod k."""
    if k < 3:
        raise ValueError("layer count below 3")
    coloring = tuple(int(c) for c in coloring)
    kept = [
        (u, v, w)
        for u, v, w in g.edges
        if coloring[v] == (coloring[u] + 1) % k
    ]
    return CircleLayeredGraph(WeightedDigraph(g.node_count, kept), k, coloring)


def repeat_color_code(
    g: WeightedDigraph,
    k: int,
    seed: int,
    solver: Callable[[CircleLayeredGraph], SolveResult],
    trials: Optional[int] = None,
) -> SolveResult:
    """Best solver result over `trials` independent uniform colorings.

    One-sided: any cycle reported lives in a subgraph of g, so it is a
    genuine k-cycle of g with its exact weight regardless of the coloring.
    """
    if trials is None:
        trials = default_trials(k, g.node_count)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    colorings = rng.integers(0, k, size=(trials, g.node_count), dtype=np.int64)
    best: Optional[SolveResult] = None
    if g.edge_count:
        sources = np.array([u for u, _, _ in g.edges])
        targets = np.array([v for _, v, _ in g.edges])
    for t in range(trials):
        coloring = colorings[t]
        if g.edge_count:
            # a k-cycle needs every consecutive layer transition present
            kept = coloring[targets] == (coloring[sources] + 1) % k
            if not kept.any():
                continue
            transitions = np.zeros(k, dtype=np.int64)
            np.add.at(transitions, coloring[sources][kept] % k, 1)
            if (transitions == 0).any():
                continue
        else:
            continue
        result = solver(color_code(g, k, coloring))
        if result.found and (
            best is None
            or not best.found
            or (result.weight, result.witness.items)
            < (best.weight, best.witness.items)
        ):
            best = result
    return best if best is not None else NONE_RESULT


# ---------------------------------------------------------------------------
# layer splitting (k -> k+1)


def split_layer(lg: CircleLayeredGraph) -> ReductionOutput:
    """Split one layer's nodes into in/out pairs joined by weight-0 edges,
    turning every k-cycle into a (k+1)-cycle of identical weight."""
    require_valid(lg)
    g = lg.graph
    k = lg.k
    split = 1  # the second layer, matching the construction's choice
    split_nodes = [v for v in range(g.node_count) if lg.layer_of[v] == split]
    out_id = {v: g.node_count + i for i, v in enumerate(split_nodes)}

    def new_layer(v: int) -> int:
        layer = lg.layer_of[v]
        return layer if layer < split else layer + 1

    n_new = g.node_count + len(split_nodes)
    layer_of = [0] * n_new
    for v in range(g.node_count):
        layer_of[v] = new_layer(v) if lg.layer_of[v] != split else split
    for v, ov in out_id.items():
        layer_of[ov] = split + 1

    edges = []
    for u, v, w in g.edges:
        uu = u if lg.layer_of[u] != split else out_id[u]
        edges.append((uu, v, w))
    edges.extend((v, out_id[v], 0) for v in split_nodes)
    target = require_valid(
        CircleLayeredGraph(WeightedDigraph(n_new, edges), k + 1, layer_of)
    )
    assert target.graph.node_count <= 2 * g.node_count
    assert target.graph.edge_count <= g.node_count + g.edge_count

    def pullback(w: Witness) -> Witness:
        merged = [v for v in w.items if v < g.node_count]
        return Witness("cycle", canonical_cycle(merged), w.claimed_weight)

    return ReductionOutput(target, pullback, 1, 0, {"split_layer": split})


# ---------------------------------------------------------------------------
# hyperclique -> hypercycle


def _cyclic_gap(a: int, b: int, l: int) -> int:
    """Numbers strictly between a and b walking clockwise a -> b on [0, l)."""
    return (b - a - 1) % l


def _responsible_start(part_tuple: tuple[int, ...], l: int) -> int:
    """Start part of the arc responsible for this sorted part tuple.

    The arc begins at the member whose predecessor gap is largest; ties go
    to the smallest starting index.
    """
    k = len(part_tuple)
    best_gap = -1
    best_start = None
    for j in range(k):
        prev = part_tuple[(j - 1) % k]
        gap = _cyclic_gap(prev, part_tuple[j], l)
        if gap > best_gap:
            best_gap = gap
            best_start = part_tuple[j]
    return best_start


def hyperclique_to_hypercycle(h: UniformHypergraph) -> ReductionOutput:
    """Image of an l-partite k-uniform instance as a gamma-uniform hypergraph
    on the same nodes whose l-hypercycles are exactly the l-hypercliques.

    Big hyperedges span gamma consecutive parts and exist when every k-subset
    is a source hyperedge; each source hyperedge's weight lands on the big
    hyperedges starting at its responsibility arc, so weights are counted
    exactly once per hypercycle.
    """
    require_valid(h)
    if h.part_of is None:
        raise ValueError("hyperclique reduction needs an l-partite instance")
    l = h.part_count()
    k = h.k
    g_arity = gamma(l, k)
    parts = h.parts()
    index = h.index()
    source_bound = max((abs(w1) for _, w1, _ in h.hyperedges), default=0)
    out_bound = math.comb(g_arity, k) * source_bound
    checked_i64(out_bound, "hypercycle weight bound")

    # weight assignment: source edge -> (start part, fixed node per part)
    assigned: dict[tuple[int, tuple[tuple[int, int], ...]], int] = {}
    for nodes, w1, _ in h.hyperedges:
        part_tuple = tuple(sorted(h.part_of[v] for v in nodes))
        start = _responsible_start(part_tuple, l)
        fixed = tuple(sorted((h.part_of[v], v) for v in nodes))
        key = (start, fixed)
        assigned[key] = assigned.get(key, 0) + w1

    big_edges = []
    for start in range(l):
        window = [(start + i) % l for i in range(g_arity)]
        for choice in product(*(parts[p] for p in window)):
            if not _window_is_clique(choice, index, k):
                continue
            part_of_node = {p: v for p, v in zip(window, choice)}
            weight = 0
            for sub in combinations(range(g_arity), k):
                sub_parts = tuple(sorted(window[i] for i in sub))
                if _responsible_start(sub_parts, l) != start:
                    continue
                fixed = tuple(sorted((p, part_of_node[p]) for p in sub_parts))
                weight += assigned.get((start, fixed), 0)
            assert abs(weight) <= out_bound
            big_edges.append((tuple(sorted(choice)), weight, 0))

    target = require_valid(
        UniformHypergraph(h.node_count, g_arity, big_edges, h.part_of)
    )

    def pullback(w: Witness) -> Witness:
        return Witness("hyperclique", tuple(sorted(w.items)), w.claimed_weight)

    return ReductionOutput(
        target, pullback, 1, 0,
        {"gamma": g_arity, "weight_bound": out_bound},
    )


def _window_is_clique(choice, index, k) -> bool:
    for sub in combinations(sorted(choice), k):
        if sub not in index:
            return False
    return True


# ---------------------------------------------------------------------------
# hypercycle -> directed cycle


def hypercycle_to_digraph(h: UniformHypergraph) -> ReductionOutput:
    """k-partite lambda-uniform hypercycle instance as a k-circle-layered
    digraph whose k-cycles are the k-hypercycles, weight for weight.

    Layer i holds all (lambda-1)-tuples over parts i..i+lambda-2; adjacent
    tuples overlap and the edge exists exactly when the joint lambda-set is
    a hyperedge, carrying that hyperedge's weight.
    """
    require_valid(h)
    if h.part_of is None:
        raise ValueError("hypercycle reduction needs a partitioned instance")
    k = h.part_count()
    lam = h.k
    if lam >= k:
        raise ValueError("arity must be below the part count")
    parts = h.parts()
    sizes = [len(p) for p in parts]
    index = h.index()

    windows = [[(i + j) % k for j in range(lam - 1)] for i in range(k)]
    layer_sizes = [math.prod(sizes[p] for p in win) for win in windows]
    offsets = [0]
    for s in layer_sizes:
        offsets.append(offsets[-1] + s)
    n_new = offsets[-1]

    layer_of = []
    for i in range(k):
        layer_of.extend([i] * layer_sizes[i])

    def node_id(layer: int, choice: tuple[int, ...]) -> int:
        local = tuple(parts[p].index(v) for p, v in zip(windows[layer], choice))
        return offsets[layer] + tuple_index([sizes[p] for p in windows[layer]], local)

    def decode(node: int) -> tuple[int, tuple[int, ...]]:
        layer = next(i for i in range(k) if offsets[i] <= node < offsets[i + 1])
        local = tuple_unindex(
            [sizes[p] for p in windows[layer]], node - offsets[layer]
        )
        return layer, tuple(parts[p][c] for p, c in zip(windows[layer], local))

    edges = []
    for i in range(k):
        nxt = (i + 1) % k
        ext_part = windows[nxt][-1]
        for choice in product(*(parts[p] for p in windows[i])):
            src = node_id(i, choice)
            for v_new in parts[ext_part]:
                joint = tuple(sorted(choice + (v_new,)))
                if len(set(joint)) != lam:
                    continue
                entry = index.get(joint)
                if entry is None:
                    continue
                dst = node_id(nxt, choice[1:] + (v_new,))
                edges.append((src, dst, entry[0]))

    target = require_valid(
        CircleLayeredGraph(WeightedDigraph(n_new, edges), k, layer_of)
    )
    for i in range(k):
        assert layer_sizes[i] == math.prod(sizes[p] for p in windows[i])

    def pullback(w: Witness) -> Witness:
        by_layer = {}
        for node in w.items:
            layer, choice = decode(node)
            by_layer[layer] = choice[0] if choice else None
        if lam == 2:
            # 1-tuples carry the part-i vertex directly
            ordered = [by_layer[i] for i in range(k)]
        else:
            ordered = [by_layer[i] for i in range(k)]
        return Witness(
            "hypercycle", canonical_hypercycle(ordered), w.claimed_weight
        )

    return ReductionOutput(
        target, pullback, 1, 0,
        {"layer_sizes": layer_sizes, "node_count": n_new,
         "edge_count": len(edges)},
    )


# ---------------------------------------------------------------------------
# clique -> cycle (composed pipeline and the direct factorial construction)


def clique_to_cycle(h: UniformHypergraph) -> ReductionOutput:
    """Composed pipeline: k-partite weighted clique instance -> hypercycle
    image -> k-circle-layered digraph; min k-cycle weight equals min
    k-clique weight exactly."""
    require_valid(h)
    if h.k != 2 or h.part_of is None:
        raise ValueError("clique instance must be a 2-uniform partite hypergraph")
    k = h.part_count()
    if k < 3:
        raise ValueError("clique size below 3")
    stage1 = hyperclique_to_hypercycle(h)
    stage2 = hypercycle_to_digraph(stage1.instance)

    def pullback(w: Witness) -> Witness:
        hyper = stage2.pullback(w)
        return stage1.pullback(hyper)

    info = {
        "gamma": stage1.info["gamma"],
        "layer_sizes": stage2.info["layer_sizes"],
        "node_count": stage2.info["node_count"],
        "edge_count": stage2.info["edge_count"],
    }
    return ReductionOutput(stage2.instance, pullback, 1, 0, info)


def clique_to_cycle_direct(h: UniformHypergraph) -> ReductionOutput:
    """Direct construction for odd k: tuple nodes are (k-1)/2 consecutive
    clique vertices; edge weights scale pair weights by L!/(L-t) so every
    k-cycle weighs exactly L! times its clique, L = (k+1)/2."""
    require_valid(h)
    if h.k != 2 or h.part_of is None:
        raise ValueError("clique instance must be a 2-uniform partite hypergraph")
    k = h.part_count()
    if k < 3 or k % 2 == 0:
        raise ValueError("direct construction needs odd k >= 3")
    big_l = (k + 1) // 2
    tuple_len = big_l - 1
    parts = h.parts()
    sizes = [len(p) for p in parts]
    index = h.index()
    factorial = math.factorial(big_l)

    windows = [[(i + j) % k for j in range(tuple_len)] for i in range(k)]
    layer_sizes = [math.prod(sizes[p] for p in win) for win in windows]
    offsets = [0]
    for s in layer_sizes:
        offsets.append(offsets[-1] + s)

    def node_id(layer: int, choice) -> int:
        local = tuple(parts[p].index(v) for p, v in zip(windows[layer], choice))
        return offsets[layer] + tuple_index([sizes[p] for p in windows[layer]], local)

    def decode(node: int):
        layer = next(i for i in range(k) if offsets[i] <= node < offsets[i + 1])
        local = tuple_unindex([sizes[p] for p in windows[layer]], node - offsets[layer])
        return layer, tuple(parts[p][c] for p, c in zip(windows[layer], local))

    source_bound = max((abs(w1) for _, w1, _ in h.hyperedges), default=0)
    checked_i64(source_bound * factorial * big_l * big_l, "direct edge weight bound")

    layer_of = []
    for i in range(k):
        layer_of.extend([i] * layer_sizes[i])

    edges = []
    for i in range(k):
        nxt = (i + 1) % k
        ext_part = windows[nxt][-1] if tuple_len else (nxt + tuple_len - 1) % k
        for choice in product(*(parts[p] for p in windows[i])):
            for v_new in parts[ext_part]:
                window_nodes = choice + (v_new,)  # ordered L-tuple of clique nodes
                if len(set(window_nodes)) != big_l:
                    continue
                weight = 0
                ok = True
                for a, b in combinations(range(big_l), 2):
                    pw = index.get(tuple(sorted((window_nodes[a], window_nodes[b]))))
                    if pw is None:
                        ok = False
                        break
                    t = b - a  # cyclic distance; b - a <= L - 1 = (k-1)/2
                    weight += pw[0] * (factorial // (big_l - t))
                if not ok:
                    continue
                src = node_id(i, choice)
                dst = node_id(nxt, window_nodes[1:])
                edges.append((src, dst, checked_i64(weight, "direct edge weight")))

    target = require_valid(
        CircleLayeredGraph(
            WeightedDigraph(offsets[-1], edges), k, layer_of
        )
    )

    def pullback(w: Witness) -> Witness:
        chosen = set()
        for node in w.items:
            _, choice = decode(node)
            chosen.update(choice)
        if w.claimed_weight % factorial:
            raise ValueError("direct-construction weight not divisible by L!")
        return Witness(
            "clique", tuple(sorted(chosen)), w.claimed_weight // factorial
        )

    return ReductionOutput(
        target, pullback, factorial, 0,
        {"L": big_l, "layer_sizes": layer_sizes,
         "node_count": offsets[-1], "edge_count": len(edges)},
    )


# ---------------------------------------------------------------------------
# min k-cycle -> shortest cycle


def shift_layered(lg: CircleLayeredGraph, weight_bound: Optional[int] = None) -> ReductionOutput:
    """Add 4W to every edge of a k-circle-layered graph.

    Any ck-cycle with c >= 2 then weighs at least 6kW while k-cycles stay at
    or below 5kW, so the shortest cycle is the min k-cycle shifted by 4kW.
    A zero weight bound degenerates the separation, so the shift becomes
    4W+1 = 1 there.
    """
    require_valid(lg)
    w_bound = lg.graph.weight_bound() if weight_bound is None else int(weight_bound)
    if w_bound < lg.graph.weight_bound():
        raise ValueError("declared weight bound below actual weights")
    per_edge = 4 * w_bound if w_bound > 0 else 1
    checked_i64(per_edge * (lg.k + 1) * max(lg.graph.node_count, 1), "shift bound")
    g = lg.graph
    shifted = WeightedDigraph(
        g.node_count, [(u, v, w + per_edge) for u, v, w in g.edges]
    )
    target = CircleLayeredGraph(shifted, lg.k, lg.layer_of)
    shift_total = lg.k * per_edge

    def pullback(w: Witness) -> Witness:
        return Witness("cycle", w.items, w.claimed_weight - shift_total)

    return ReductionOutput(
        target, pullback, 1, shift_total,
        {"per_edge_shift": per_edge, "weight_bound": w_bound},
    )


def min_kcycle_via_shortest_cycle(
    g: WeightedDigraph,
    k: int,
    seed: int,
    shortest_cycle_solver: Callable[[WeightedDigraph], SolveResult],
    trials: Optional[int] = None,
) -> SolveResult:
    """Color-code, shift, ask a shortest-cycle solver, and invert the map.

    A reported cycle is accepted only when it has exactly k nodes, which the
    shift guarantees for the optimum whenever a k-cycle survives a trial.
    """
    w_bound = g.weight_bound()

    def layered_solver(lg: CircleLayeredGraph) -> SolveResult:
        shifted = shift_layered(lg, w_bound)
        result = shortest_cycle_solver(shifted.instance.graph)
        if not result.found or len(result.witness.items) != k:
            return NONE_RESULT
        pulled = shifted.pullback(result.witness)
        return SolveResult("found", pulled.claimed_weight, pulled)

    return repeat_color_code(g, k, seed, layered_solver, trials)


def detect_kcycle_via_shortest_cycle(
    g: WeightedDigraph,
    k: int,
    seed: int,
    shortest_cycle_solver: Callable[[WeightedDigraph], SolveResult],
    trials: Optional[int] = None,
) -> bool:
    """Unweighted detection: in a layered graph a shortest cycle has length
    k exactly when a k-cycle exists."""
    unit = WeightedDigraph(g.node_count, [(u, v, 1) for u, v, _ in g.edges])

    def layered_solver(lg: CircleLayeredGraph) -> SolveResult:
        result = shortest_cycle_solver(lg.graph)
        if result.found and result.weight == k:
            return SolveResult(
                "found", 0, Witness("cycle", result.witness.items, 0)
            )
        return NONE_RESULT

    outcome = repeat_color_code(unit, k, seed, layered_solver, trials)
    return outcome.found


# ---------------------------------------------------------------------------
# negative-cycle binary search


def probe_layered(lg: CircleLayeredGraph, probe: int) -> CircleLayeredGraph:
    """Subtract `probe` from every layer-0 -> layer-1 edge."""
    g = lg.graph
    edges = [
        (u, v, w - probe if lg.layer_of[u] == 0 else w)
        for u, v, w in g.edges
    ]
    return CircleLayeredGraph(WeightedDigraph(g.node_count, edges), lg.k, lg.layer_of)


def min_kcycle_via_negative_search(
    lg: CircleLayeredGraph,
    k: int,
    weight_bound: int,
    negative_kcycle_solver: Callable[[CircleLayeredGraph], bool],
) -> tuple[SolveResult, int]:
    """Exact minimum k-cycle weight from a negative-k-cycle decider.

    Bisects the outcome space {-Rk..Rk, none}; each probe T asks whether a
    k-cycle of weight < T exists after shifting the first layer by -T.
    Returns (result, probe_count); probe_count <= ceil(log2(2Rk+2)).
    """
    if lg.k != k:
        raise ValueError("layer count must equal the cycle length")
    r = int(weight_bound)
    if r < lg.graph.weight_bound():
        raise ValueError("declared weight bound below actual weights")
    lo, hi = -r * k, r * k + 1  # hi encodes "no k-cycle"
    probes = 0
    probe_log: list[tuple[int, bool]] = []

    def ask(threshold: int) -> bool:
        nonlocal probes
        probes += 1
        answer = bool(negative_kcycle_solver(probe_layered(lg, threshold)))
        probe_log.append((threshold, answer))
        return answer

    while lo < hi:
        mid = (lo + hi) // 2
        if ask(mid + 1):  # minimum <= mid
            hi = mid
        else:
            lo = mid + 1
    probe_log.sort()
    seen_true = False
    for _, answer in probe_log:
        if answer:
            seen_true = True
        elif seen_true:
            raise ValueError("solver inconsistency: non-monotone answers")
    if lo == r * k + 1:
        return NONE_RESULT, probes
    return SolveResult("found", lo, None), probes
