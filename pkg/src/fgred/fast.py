"""Minimum Weight k-Cycle at the conditional-lower-bound exponent, plus the
density self-reduction.

The solver runs the two-phase scheme: shortest k-cycles through every
high-degree node via color-coded layered relaxation, then meet-in-the-middle
over short paths with color-disjoint interiors on the low-degree remainder.
Heavy inner loops run on numpy arrays so the benchmark sizes stay tractable;
witnesses are re-derived exactly for the winning coordinates.  Soundness is
unconditional: anything returned is a genuine simple k-cycle at its exact
weight, whatever the random colorings did.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .model import WeightedDigraph, Witness, canonical_cycle
from .oracles import NONE_RESULT, SolveResult

MAX_SAFE_SUM = 2**52  # float64 stays exact well past any k * W we allow
PATH_CHUNK_ROWS = 1 << 17  # bounds expansion memory at chunk * max-degree rows


@dataclass
class AlgoStats:
    delta: int = 0
    heavy_node_count: int = 0
    paths_enumerated: int = 0  # max completed paths per trial and color class
    relaxations: int = 0
    trials_used: int = 0

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "heavy_node_count": self.heavy_node_count,
            "paths_enumerated": self.paths_enumerated,
            "relaxations": self.relaxations,
            "trials_used": self.trials_used,
        }


def default_color_trials(k: int, n: int) -> int:
    return math.ceil(3 * (k**k) * math.log(n + 2))


def default_redblue_trials(k: int, n: int) -> int:
    return math.ceil(3 * (2**k) * math.log(n + 2))


def iceil_root(m: int, q: int) -> int:
    """Exact ceil(m ** (1/q)) for nonnegative integers."""
    if m <= 0:
        return 0
    d = max(1, round(m ** (1.0 / q)))
    while d**q < m:
        d += 1
    while d > 1 and (d - 1) ** q >= m:
        d -= 1
    return d


def _edge_arrays(g: WeightedDigraph):
    us = np.fromiter((u for u, _, _ in g.edges), dtype=np.int64, count=g.edge_count)
    vs = np.fromiter((v for _, v, _ in g.edges), dtype=np.int64, count=g.edge_count)
    ws = np.fromiter((w for _, _, w in g.edges), dtype=np.float64, count=g.edge_count)
    return us, vs, ws


def _guard_weights(g: WeightedDigraph, k: int):
    if k * (g.weight_bound() + 1) >= MAX_SAFE_SUM:
        raise ValueError("weights too large for exact float64 accumulation")


# ---------------------------------------------------------------------------
# phase 1: shortest k-cycle through a source


def shortest_kcycle_through(
    g: WeightedDigraph,
    s: int,
    k: int,
    seed: int,
    trials: Optional[int] = None,
    stats: Optional[AlgoStats] = None,
) -> SolveResult:
    """Best simple k-cycle through s over colored-DAG relaxation trials.

    Per trial every node draws a color in 1..k with s forced to 1; only
    edges stepping colors forward by one survive (no wrap), so the colored
    graph is acyclic and one relaxation sweep per color level is exact even
    with negative weights.  The cycle closes over in-edges of s colored k.
    """
    if k < 3:
        raise ValueError("cycle length below 3")
    _guard_weights(g, k)
    n, m = g.node_count, g.edge_count
    if m == 0:
        return NONE_RESULT
    if trials is None:
        trials = default_color_trials(k, n)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    colorings = rng.integers(1, k + 1, size=(trials, n), dtype=np.int64)
    colorings[:, s] = 1
    best = _closed_weights_for_source(g, s, k, colorings, stats)
    if best is None:
        return NONE_RESULT
    weight, trial = best
    cycle = _rederive_cycle(g, s, k, colorings[trial])
    assert cycle is not None and len(cycle) == k
    w = int(weight)
    if stats is not None:
        stats.trials_used += trials
    return SolveResult("found", w, Witness("cycle", canonical_cycle(cycle), w))


def _closed_weights_for_source(g, s, k, colorings, stats=None):
    """Vectorized over trials: min closed k-cycle weight through s, with the
    winning trial index; None when every trial fails."""
    n, m = g.node_count, g.edge_count
    us, vs, ws = _edge_arrays(g)
    trials = colorings.shape[0]
    dist = np.full((trials, n), np.inf)
    dist[:, s] = 0.0
    relax = 0
    for level in range(1, k):
        valid = (colorings[:, us] == level) & (colorings[:, vs] == level + 1)
        t_idx, e_idx = np.nonzero(valid)
        if t_idx.size == 0:
            continue
        relax += t_idx.size
        cand = dist[t_idx, us[e_idx]] + ws[e_idx]
        np.minimum.at(dist, (t_idx, vs[e_idx]), cand)
    into_s = vs == s
    if not into_s.any():
        return None
    u_in = us[into_s]
    w_in = ws[into_s]
    closing = colorings[:, u_in] == k
    totals = np.where(closing, dist[:, u_in] + w_in[None, :], np.inf)
    per_trial = totals.min(axis=1)
    best_trial = int(per_trial.argmin())
    if stats is not None:
        stats.relaxations += int(relax)
    if not np.isfinite(per_trial[best_trial]):
        return None
    return per_trial[best_trial], best_trial


def _rederive_cycle(g, s, k, coloring) -> Optional[list[int]]:
    """Exact predecessor-tracking rerun for one coloring; returns the node
    list of the best closed k-cycle through s, or None."""
    n = g.node_count
    dist = [math.inf] * n
    pred = [-1] * n
    dist[s] = 0
    by_level: dict[int, list] = {}
    for u, v, w in g.edges:
        if coloring[v] == coloring[u] + 1:
            by_level.setdefault(coloring[u], []).append((u, v, w))
    for level in range(1, k):
        for u, v, w in by_level.get(level, ()):  # acyclic: levels in order
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                pred[v] = u
    best = None
    for u, v, w in g.edges:
        if v == s and coloring[u] == k and dist[u] + w != math.inf:
            cand = dist[u] + w
            if best is None or cand < best[0]:
                best = (cand, u)
    if best is None:
        return None
    node = best[1]
    path = [node]
    while node != s:
        node = pred[node]
        path.append(node)
    path.reverse()
    return path if len(path) == k else None


# ---------------------------------------------------------------------------
# phase 2: red/blue meet in the middle


def _sorted_out_edges(n, us, vs, ws):
    order = np.argsort(us, kind="stable")
    us_s, vs_s, ws_s = us[order], vs[order], ws[order]
    starts = np.searchsorted(us_s, np.arange(n))
    counts = np.searchsorted(us_s, np.arange(n), side="right") - starts
    return us_s, vs_s, ws_s, starts, counts


def enumerate_bounded_paths(
    g: WeightedDigraph,
    length: int,
    internal_ok: Optional[np.ndarray] = None,
    stats: Optional[AlgoStats] = None,
) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
    """Min-weight table over simple `length`-edge paths, keyed by ordered
    endpoint pair.

    Interior nodes must satisfy `internal_ok` (endpoints are unconstrained);
    the streaming per-pair minimum bounds memory by distinct endpoint pairs.
    """
    n, m = g.node_count, g.edge_count
    if m == 0 or length < 1:
        return {}
    us, vs, ws = _edge_arrays(g)
    rows = _enumerate_path_rows(n, (us, vs, ws), length, internal_ok, stats)
    if rows is None:
        return {}
    nodes, weights = rows
    key = nodes[:, 0] * n + nodes[:, -1]
    order = np.lexsort((weights, key))
    key_sorted = key[order]
    firsts = np.ones(len(order), dtype=bool)
    firsts[1:] = key_sorted[1:] != key_sorted[:-1]
    picks = order[firsts]
    table = {}
    for row in picks:
        path = tuple(int(x) for x in nodes[row])
        table[(path[0], path[-1])] = (int(weights[row]), path)
    return table


def _enumerate_path_rows(n, edge_arrays, length, internal_ok, stats=None):
    """All simple `length`-edge paths as (node-matrix, weights); interiors
    filtered by `internal_ok` during expansion."""
    us, vs, ws = edge_arrays
    us_s, vs_s, ws_s, starts, counts = _sorted_out_edges(n, us, vs, ws)
    nodes = np.stack([us, vs], axis=1)
    weights = ws.copy()
    completed = 0
    for _ in range(length - 1):
        if nodes.shape[0] == 0:
            break
        if internal_ok is not None:
            keep = internal_ok[nodes[:, -1]]
            nodes, weights = nodes[keep], weights[keep]
        if nodes.shape[0] == 0:
            break
        chunks_nodes, chunks_weights = [], []
        for lo in range(0, nodes.shape[0], PATH_CHUNK_ROWS):
            block = slice(lo, lo + PATH_CHUNK_ROWS)
            ends = nodes[block, -1]
            cnt = counts[ends]
            total = int(cnt.sum())
            if total == 0:
                continue
            row_of = np.repeat(np.arange(ends.shape[0]), cnt)
            offsets = np.concatenate(([0], np.cumsum(cnt)))
            within = np.arange(total) - offsets[row_of]
            eidx = starts[ends[row_of]] + within
            new_node = vs_s[eidx]
            base = nodes[block][row_of]
            simple = (base != new_node[:, None]).all(axis=1)
            chunks_nodes.append(
                np.concatenate([base[simple], new_node[simple, None]], axis=1)
            )
            chunks_weights.append(weights[block][row_of][simple] + ws_s[eidx][simple])
        if not chunks_nodes:
            return None
        nodes = np.concatenate(chunks_nodes, axis=0)
        weights = np.concatenate(chunks_weights)
    if nodes.shape[0] == 0:
        return None
    completed = nodes.shape[0]
    if stats is not None:
        stats.paths_enumerated = max(stats.paths_enumerated, int(completed))
    return nodes, weights


def _join_tables(x_table, y_table):
    """Best cycle from complementary (a->b, b->a) path pairs."""
    best = None
    for (a, b), (wx, px) in x_table.items():
        if a == b:
            continue
        hit = y_table.get((b, a))
        if hit is None:
            continue
        wy, py = hit
        total = wx + wy
        cycle = canonical_cycle(px[:-1] + py[:-1])
        if best is None or (total, cycle) < (best[0], best[1]):
            best = (total, cycle)
    return best


def min_weight_kcycle(
    g: WeightedDigraph,
    k: int,
    seed: int,
    heavy_trials: Optional[int] = None,
    rb_trials: Optional[int] = None,
) -> tuple[SolveResult, AlgoStats]:
    """Exact-whp minimum weight simple k-cycle with work accounting.

    Phase 1 sweeps every node of degree >= Delta with the colored-relaxation
    routine (colorings shared across sources per trial so the level masks
    are computed once).  Phase 2 removes those nodes, 2-colors the rest per
    trial, enumerates ceil(k/2)-edge red-interior and floor(k/2)-edge
    blue-interior shortest-path tables, and joins complementary endpoint
    pairs.  Delta = ceil(m^(1/ceil(k/2))) balances the phases.
    """
    if k < 3:
        raise ValueError("cycle length below 3")
    _guard_weights(g, k)
    stats = AlgoStats()
    n, m = g.node_count, g.edge_count
    if m == 0:
        return NONE_RESULT, stats
    half_up = math.ceil(k / 2)
    delta = max(2, iceil_root(m, half_up))
    stats.delta = delta
    out_deg = [0] * n
    in_deg = [0] * n
    for u, v, _ in g.edges:
        out_deg[u] += 1
        in_deg[v] += 1
    heavy = [v for v in range(n) if out_deg[v] >= delta or in_deg[v] >= delta]
    stats.heavy_node_count = len(heavy)
    assert stats.heavy_node_count <= 2 * m / delta

    if heavy_trials is None:
        heavy_trials = default_color_trials(k, n)
    if rb_trials is None:
        rb_trials = default_redblue_trials(k, n)

    seeds = np.random.SeedSequence(seed).spawn(2)
    best: Optional[tuple[int, tuple[int, ...]]] = None

    def offer(weight, cycle):
        nonlocal best
        cand = (int(weight), canonical_cycle(cycle))
        if best is None or cand < best:
            best = cand

    # phase 1: heavy sources, batched over (source, trial)
    if heavy:
        rng = np.random.default_rng(seeds[0])
        colorings = rng.integers(1, k + 1, size=(heavy_trials, n), dtype=np.int64)
        stats.trials_used += heavy_trials
        hit = _heavy_phase(g, heavy, k, colorings, stats)
        if hit is not None:
            weight, source, trial = hit
            cycle = _rederive_cycle(g, source, k, colorings[trial])
            if cycle is not None:
                offer(weight, cycle)

    # phase 2: light subgraph, red/blue split paths
    light_edges = [
        (u, v, w)
        for u, v, w in g.edges
        if out_deg[u] < delta and in_deg[u] < delta
        and out_deg[v] < delta and in_deg[v] < delta
    ]
    if light_edges:
        light = WeightedDigraph(n, light_edges)
        rng = np.random.default_rng(seeds[1])
        reds = rng.integers(0, 2, size=(rb_trials, n), dtype=np.int64).astype(bool)
        stats.trials_used += rb_trials
        lx, ly = half_up, k - half_up
        for t in range(rb_trials):
            x_table = enumerate_bounded_paths(light, lx, reds[t], stats)
            if not x_table:
                continue
            if ly >= 2:
                y_table = enumerate_bounded_paths(light, ly, ~reds[t], stats)
            else:
                y_table = enumerate_bounded_paths(light, ly, None, stats)
            joined = _join_tables(x_table, y_table)
            if joined is not None:
                offer(*joined)

    if best is None:
        return NONE_RESULT, stats
    weight, cycle = best
    return (
        SolveResult("found", weight, Witness("cycle", cycle, weight)),
        stats,
    )


def _heavy_phase(g, heavy, k, colorings, stats):
    """Batched colored relaxation from every heavy source; colorings are
    shared across sources within a trial (no color-1 forcing), so each
    level's surviving edge list is computed once per trial."""
    n = g.node_count
    us, vs, ws = _edge_arrays(g)
    sources = np.asarray(heavy)
    trials = colorings.shape[0]
    in_lists: dict[int, list[int]] = {}
    for idx, v in enumerate(vs):
        in_lists.setdefault(int(v), []).append(idx)
    best = None
    relax = 0
    for t in range(trials):
        coloring = colorings[t]
        level_edges = {}
        step = coloring[vs] - coloring[us]
        surviving = step == 1
        for level in range(1, k):
            mask = surviving & (coloring[us] == level)
            level_edges[level] = np.nonzero(mask)[0]
        dist = np.full((sources.shape[0], n), np.inf)
        start_ok = coloring[sources] == 1
        dist[np.nonzero(start_ok)[0], sources[start_ok]] = 0.0
        if not start_ok.any():
            continue
        n_src = sources.shape[0]
        src_rows = np.arange(n_src)
        for level in range(1, k):
            eidx = level_edges[level]
            if eidx.size == 0:
                continue
            relax += eidx.size * n_src
            cand = dist[:, us[eidx]] + ws[eidx][None, :]
            rows = np.repeat(src_rows, eidx.size)
            cols = np.tile(vs[eidx], n_src)
            np.minimum.at(dist, (rows, cols), cand.ravel())
        # close cycles back at each source
        for si, s in enumerate(sources):
            if not start_ok[si]:
                continue
            for eidx in in_lists.get(int(s), ()):  # in-edges of s
                u = int(us[eidx])
                if coloring[u] != k:
                    continue
                total = dist[si, u] + ws[eidx]
                if np.isfinite(total) and (best is None or total < best[0]):
                    best = (total, int(s), t)
    stats.relaxations += relax
    return best


# ---------------------------------------------------------------------------
# density self-reduction


def density_self_reduction(
    g: WeightedDigraph,
    k: int,
    c: int,
    g_param: int,
    solver: Callable[[WeightedDigraph, int, int], SolveResult],
    seed: int = 0,
    max_retries: int = 12,
) -> tuple[SolveResult, dict]:
    """Solve min k-cycle by degree peeling plus c-coloring.

    Nodes of degree above g_param * m / n are solved through directly and
    removed; the rest get one of c colors and every cyclic color tuple's
    induced subgraph goes to `solver`.  A coloring is accepted only when no
    color class or class pair exceeds its expected-size threshold; otherwise
    the coloring is redrawn (the thresholds hold only in expectation), and
    after `max_retries` the direct solver runs on the whole remainder.
    """
    if c < 1 or g_param < 1:
        raise ValueError("c and g must be at least 1")
    n, m = g.node_count, g.edge_count
    if m == 0:
        return NONE_RESULT, {"retries": 0, "fallback": False}
    coloring_seeds = np.random.SeedSequence((seed, 1)).spawn(max_retries)
    degree = [0] * n
    for u, v, _ in g.edges:
        degree[u] += 1
        degree[v] += 1
    cutoff = g_param * m / n
    heavy = [v for v in range(n) if degree[v] > cutoff]
    best: Optional[SolveResult] = None

    def offer(result: SolveResult):
        nonlocal best
        if result.found and (
            best is None or not best.found
            or (result.weight, result.witness.items)
            < (best.weight, best.witness.items)
        ):
            best = result

    for i, s in enumerate(heavy):
        offer(shortest_kcycle_through(g, s, k, seed * 1000003 + i))
    heavy_set = set(heavy)
    light_edges = [
        (u, v, w) for u, v, w in g.edges if u not in heavy_set and v not in heavy_set
    ]
    light = WeightedDigraph(n, light_edges)
    if not light_edges:
        return (best if best is not None else NONE_RESULT), {
            "retries": 0, "fallback": False,
        }
    class_cap = n * math.log(n + 1) / c
    pair_cap_sq = (m * m * g_param, c**3)  # |E_ij|^2 * c^3 <= m^2 * g

    retries = 0
    fallback = False
    accepted_coloring = None
    for attempt in range(max_retries):
        rng = np.random.default_rng(coloring_seeds[attempt])
        coloring = rng.integers(0, c, size=n, dtype=np.int64)
        class_sizes = np.bincount(coloring, minlength=c)
        if (class_sizes > class_cap).any() and c > 1:
            retries += 1
            continue
        pair_counts: dict[tuple[int, int], int] = {}
        for u, v, _ in light_edges:
            key = (int(coloring[u]), int(coloring[v]))
            pair_counts[key] = pair_counts.get(key, 0) + 1
        lhs, rhs = pair_cap_sq
        if any(cnt * cnt * rhs > lhs for cnt in pair_counts.values()):
            retries += 1
            continue
        accepted_coloring = coloring
        break
    if accepted_coloring is None:
        fallback = True
        offer(solver(light, k, seed))
        return (best if best is not None else NONE_RESULT), {
            "retries": retries, "fallback": True,
        }

    from itertools import product as _product

    coloring = accepted_coloring
    seen_sets: set[frozenset] = set()
    node_colors = coloring.tolist()
    for tup in _product(range(c), repeat=k):
        colors = frozenset(tup)
        if colors in seen_sets:
            continue
        seen_sets.add(colors)
        keep_set = {v for v in range(n) if node_colors[v] in colors}
        sub_edges = [
            (u, v, w) for u, v, w in light_edges if u in keep_set and v in keep_set
        ]
        if len(sub_edges) < k:
            continue
        offer(solver(WeightedDigraph(n, sub_edges), k, seed))
    return (best if best is not None else NONE_RESULT), {
        "retries": retries, "fallback": fallback,
    }
