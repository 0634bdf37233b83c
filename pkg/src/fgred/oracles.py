"""Brute-force reference solvers and witness checkers.

Every solver enumerates exhaustively, returns the lexicographically smallest
witness among optimal ones (cycles canonicalized min-node-first), and is
guarded by explicit size caps rather than cleverness.  These are the ground
truth for all reduction tests; nothing here is performance-sensitive beyond
staying runnable at desk scale.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

from .model import (
    CircleLayeredGraph,
    CspInstance,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
    canonical_cycle,
    canonical_hypercycle,
)

MAX_SUBSET_NODES = 16          # clique / hyperclique / hypercycle enumeration
MAX_CYCLE_NODES = 64           # cycle DFS works on larger sparse graphs
MAX_CYCLE_EXPANSIONS = 5_000_000
MAX_ASSIGNMENT_BITS = 24

INF = float("inf")


class OracleGuardError(ValueError):
    """Instance exceeds the brute-force enumeration caps."""


@dataclass(frozen=True)
class SolveResult:
    status: str                      # "found" | "none"
    weight: Optional[int] = None
    witness: Optional[Witness] = None

    @property
    def found(self) -> bool:
        return self.status == "found"


NONE_RESULT = SolveResult("none")


def _better(best, candidate):
    """Min weight, ties broken by lexicographically smaller witness items."""
    if best is None:
        return candidate
    bw, bi = best
    cw, ci = candidate
    if cw < bw or (cw == bw and ci < bi):
        return candidate
    return best


# ---------------------------------------------------------------------------
# cliques


def _pair_weights(instance) -> tuple[int, dict[frozenset, int]]:
    """View an instance as an undirected pair-weight map."""
    if isinstance(instance, UniformHypergraph):
        if instance.k != 2:
            raise ValueError("clique oracle needs a 2-uniform hypergraph")
        return instance.node_count, {
            frozenset(nodes): w1 for nodes, w1, _ in instance.hyperedges
        }
    if isinstance(instance, WeightedDigraph):
        pairs: dict[frozenset, int] = {}
        for u, v, w in instance.edges:
            key = frozenset((u, v))
            if key in pairs and pairs[key] != w:
                raise ValueError(f"conflicting weights for undirected pair {set(key)}")
            pairs[key] = w
        return instance.node_count, pairs
    raise TypeError(f"no pair-weight view for {type(instance).__name__}")


def bf_min_clique(instance, size: int, mode: str = "min") -> SolveResult:
    """Optimal k-clique by exhaustive enumeration over vertex subsets."""
    n, pairs = _pair_weights(instance)
    if n > MAX_SUBSET_NODES:
        raise OracleGuardError(f"clique enumeration capped at {MAX_SUBSET_NODES} nodes")
    if size < 2:
        raise ValueError("clique size below 2")
    sign = 1 if mode == "min" else -1
    best = None
    for combo in combinations(range(n), size):
        total = 0
        ok = True
        for a, b in combinations(combo, 2):
            w = pairs.get(frozenset((a, b)))
            if w is None:
                ok = False
                break
            total += w
        if ok:
            best = _better(best, (sign * total, combo))
    if best is None:
        return NONE_RESULT
    weight = sign * best[0]
    return SolveResult("found", weight, Witness("clique", best[1], weight))


# ---------------------------------------------------------------------------
# cycles


def _cycle_search(g: WeightedDigraph, lengths, mode: str = "min"):
    """Enumerate simple directed cycles whose length is in `lengths`.

    Each cycle is counted once by rooting it at its minimum node; a global
    expansion budget guards against dense blowups.
    """
    if g.node_count > MAX_CYCLE_NODES:
        raise OracleGuardError(f"cycle enumeration capped at {MAX_CYCLE_NODES} nodes")
    lengths = set(lengths)
    if not lengths:
        return None
    max_len = max(lengths)
    sign = 1 if mode == "min" else -1
    adj = g.adjacency()
    weight_of = g.edge_weight_map()
    best = None
    budget = MAX_CYCLE_EXPANSIONS
    path: list[int] = []
    on_path = [False] * g.node_count

    # accumulate real weights; sign only affects comparisons
    def dfs_weighted(start: int, node: int, total: int):
        nonlocal best, budget
        budget -= 1
        if budget < 0:
            raise OracleGuardError("cycle enumeration budget exhausted")
        depth = len(path)
        if depth in lengths:
            back = weight_of.get((node, start))
            if back is not None:
                best_candidate = (sign * (total + back), tuple(path))
                best = _better(best, best_candidate)
        if depth == max_len:
            return
        for nxt, w in adj[node]:
            if nxt > start and not on_path[nxt]:
                on_path[nxt] = True
                path.append(nxt)
                dfs_weighted(start, nxt, total + w)
                path.pop()
                on_path[nxt] = False

    for start in range(g.node_count):
        path.clear()
        path.append(start)
        on_path[start] = True
        dfs_weighted(start, start, 0)
        on_path[start] = False
    if best is None:
        return None
    return sign * best[0], best[1]


def bf_min_kcycle(g: WeightedDigraph, k: int, mode: str = "min") -> SolveResult:
    """Optimal simple directed cycle on exactly k vertices."""
    if k < 2:
        raise ValueError("cycle length below 2")
    hit = _cycle_search(g, {k}, mode)
    if hit is None:
        return NONE_RESULT
    weight, nodes = hit
    return SolveResult("found", weight, Witness("cycle", canonical_cycle(nodes), weight))


def bf_kcycle_detect(g: WeightedDigraph, k: int) -> SolveResult:
    """Unweighted detection: any simple directed k-cycle (weights ignored)."""
    stripped = WeightedDigraph(g.node_count, [(u, v, 0) for u, v, _ in g.edges])
    return bf_min_kcycle(stripped, k)


def bf_shortest_cycle(g: WeightedDigraph) -> SolveResult:
    """Minimum-weight simple directed cycle of any length (2-cycles included)."""
    hit = _cycle_search(g, range(2, g.node_count + 1))
    if hit is None:
        return NONE_RESULT
    weight, nodes = hit
    return SolveResult("found", weight, Witness("cycle", canonical_cycle(nodes), weight))


# ---------------------------------------------------------------------------
# hypergraphs


def bf_hyperclique(h: UniformHypergraph, size: int, mode: str = "min") -> SolveResult:
    """Optimal set of `size` nodes whose every k-subset is a hyperedge."""
    if size <= h.k:
        raise ValueError("hyperclique size must exceed the arity")
    index = h.index()
    sign = 1 if mode == "min" else -1
    best = None

    def consider(combo):
        nonlocal best
        total = 0
        for sub in combinations(combo, h.k):
            entry = index.get(tuple(sub))
            if entry is None:
                return
            total += entry[0]
        best = _better(best, (sign * total, tuple(combo)))

    if h.part_of is not None and h.part_count() == size:
        for combo in product(*h.parts()):
            consider(tuple(sorted(combo)))
    else:
        if h.node_count > MAX_SUBSET_NODES:
            raise OracleGuardError(
                f"hyperclique enumeration capped at {MAX_SUBSET_NODES} nodes"
            )
        for combo in combinations(range(h.node_count), size):
            consider(combo)
    if best is None:
        return NONE_RESULT
    weight = sign * best[0]
    return SolveResult("found", weight, Witness("hyperclique", best[1], weight))


def bf_hyperclique_exact(h: UniformHypergraph, size: int, target: int) -> SolveResult:
    """Any `size`-hyperclique whose total w1 equals `target` exactly."""
    if size <= h.k:
        raise ValueError("hyperclique size must exceed the arity")
    index = h.index()
    candidates = []
    if h.part_of is not None and h.part_count() == size:
        pools = product(*h.parts())
    else:
        if h.node_count > MAX_SUBSET_NODES:
            raise OracleGuardError(
                f"hyperclique enumeration capped at {MAX_SUBSET_NODES} nodes"
            )
        pools = combinations(range(h.node_count), size)
    for combo in pools:
        combo = tuple(sorted(combo))
        total = 0
        ok = True
        for sub in combinations(combo, h.k):
            entry = index.get(tuple(sub))
            if entry is None:
                ok = False
                break
            total += entry[0]
        if ok and total == target:
            candidates.append(combo)
    if not candidates:
        return NONE_RESULT
    pick = min(candidates)
    return SolveResult("found", target, Witness("hyperclique", pick, target))


def bf_hypercycle(
    h: UniformHypergraph, length: int, mode: str = "min", aligned: bool = False
) -> SolveResult:
    """Optimal tight hypercycle: `length` distinct vertices, every cyclic
    window of k consecutive vertices a hyperedge.

    DFS over positions with window checks as soon as each window completes,
    rooted at the minimum vertex so each cycle appears a bounded number of
    times; the reflected traversal yields the same windows, so ties resolve
    to the reflection-canonical witness.

    With `aligned`, position j is restricted to part (p0 + j) mod length of
    a partitioned hypergraph: the part-ordered hypercycles that layered
    digraph images represent (reflections carry equal weight either way).
    """
    k = h.k
    if length < k:
        raise ValueError("hypercycle length below the arity")
    if h.node_count > MAX_SUBSET_NODES and h.part_of is None:
        raise OracleGuardError(
            f"hypercycle enumeration capped at {MAX_SUBSET_NODES} nodes"
        )
    if aligned and (h.part_of is None or h.part_count() != length):
        raise ValueError("aligned mode needs one part per position")
    index = h.index()
    sign = 1 if mode == "min" else -1
    best = None
    nodes = range(h.node_count)
    chosen: list[int] = []
    used = [False] * h.node_count

    def window_weight(window) -> Optional[int]:
        entry = index.get(tuple(sorted(window)))
        return None if entry is None else entry[0]

    def extend(total: int):
        nonlocal best
        pos = len(chosen)
        if pos == length:
            # wrap windows: those starting at positions length-k+1 .. length-1
            for start in range(length - k + 1, length):
                window = [chosen[(start + i) % length] for i in range(k)]
                w = window_weight(window)
                if w is None:
                    return
                total += sign * w
            best = _better(best, (total, canonical_hypercycle(chosen)))
            return
        start_node = chosen[0]
        if aligned:
            part = (h.part_of[start_node] + pos) % length
        for v in nodes:
            if used[v] or v < start_node:
                continue
            if aligned and h.part_of[v] != part:
                continue
            chosen.append(v)
            used[v] = True
            add = 0
            ok = True
            if len(chosen) >= k:
                window = chosen[len(chosen) - k:]
                w = window_weight(window)
                if w is None:
                    ok = False
                else:
                    add = sign * w
            if ok:
                extend(total + add)
            chosen.pop()
            used[v] = False

    for root in nodes:
        chosen.clear()
        chosen.append(root)
        used[root] = True
        extend(0)
        used[root] = False
    if best is None:
        return NONE_RESULT
    weight = sign * best[0]
    return SolveResult("found", weight, Witness("hypercycle", best[1], weight))


# ---------------------------------------------------------------------------
# distances


def _single_source(g: WeightedDigraph, source: int, adj=None) -> list:
    """Exact distances from `source`; Dijkstra when weights are nonnegative,
    Bellman-Ford relaxations (with negative-cycle detection) otherwise."""
    if adj is None:
        adj = g.adjacency()
    n = g.node_count
    if all(w >= 0 for _, _, w in g.edges):
        dist = [INF] * n
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist
    dist = [INF] * n
    dist[source] = 0
    for _ in range(n):
        changed = False
        for u, v, w in g.edges:
            if dist[u] != INF and dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            return dist
    raise ValueError("negative cycle reachable; distances undefined")


def bf_apsp(g: WeightedDigraph) -> list[list]:
    """Exact all-pairs distance matrix (INF for unreachable pairs)."""
    adj = g.adjacency()
    return [_single_source(g, s, adj) for s in range(g.node_count)]


def radius_via_apsp(matrix: Sequence[Sequence]) -> int:
    """Min over rows of the row maximum."""
    if not matrix:
        raise ValueError("radius of an empty graph is undefined")
    best = None
    for row in matrix:
        ecc = max(row)
        if best is None or ecc < best:
            best = ecc
    if best is INF:
        raise ValueError("graph is disconnected; radius undefined")
    return best


def bf_radius(g: WeightedDigraph) -> int:
    return radius_via_apsp(bf_apsp(g))


def bf_wiener(g: WeightedDigraph) -> int:
    """Sum of exact distances over all ordered vertex pairs."""
    total = 0
    for row in bf_apsp(g):
        for d in row:
            if d == INF:
                raise ValueError("graph is disconnected; Wiener index undefined")
            total += d
    return total


# ---------------------------------------------------------------------------
# CSP


def bf_max_ksat(f: CspInstance) -> tuple[int, Witness]:
    """Exact maximum satisfied-clause count over all assignments."""
    n = f.variable_count
    if n > MAX_ASSIGNMENT_BITS:
        raise OracleGuardError(f"assignment enumeration capped at {MAX_ASSIGNMENT_BITS} bits")
    tables = _clause_tables(f)
    best_count = -1
    best_bits: tuple[int, ...] = ()
    for bits in product((0, 1), repeat=n):
        count = _evaluate_tables(tables, bits)
        if count > best_count:
            best_count = count
            best_bits = bits
    return best_count, Witness("assignment", best_bits, best_count)


def bf_exact_csp(f: CspInstance, target_clause_sum: int, target_value_sum: int) -> SolveResult:
    """First assignment (lex order) with given clause total and popcount."""
    n = f.variable_count
    if n > MAX_ASSIGNMENT_BITS:
        raise OracleGuardError(f"assignment enumeration capped at {MAX_ASSIGNMENT_BITS} bits")
    tables = _clause_tables(f)
    for bits in product((0, 1), repeat=n):
        if sum(bits) != target_value_sum:
            continue
        if _evaluate_tables(tables, bits) == target_clause_sum:
            return SolveResult(
                "found", target_clause_sum,
                Witness("assignment", bits, target_clause_sum),
            )
    return NONE_RESULT


def _clause_tables(f: CspInstance):
    """Precompute (support, truth table) per clause for fast evaluation."""
    tables = []
    for p in f.clauses:
        support = p.support()
        rows = []
        assignment = [0] * f.variable_count
        for mask in range(1 << len(support)):
            for j, v in enumerate(support):
                assignment[v] = (mask >> j) & 1
            rows.append(p.evaluate(assignment))
        for v in support:
            assignment[v] = 0
        tables.append((support, rows))
    return tables


def _evaluate_tables(tables, bits) -> int:
    total = 0
    for support, rows in tables:
        mask = 0
        for j, v in enumerate(support):
            if bits[v]:
                mask |= 1 << j
        total += rows[mask]
    return total


# ---------------------------------------------------------------------------
# witness checking


def check_witness(instance, witness: Witness) -> Optional[str]:
    """Verify structure and exact weight; return a failure reason or None."""
    kind = witness.kind
    if kind == "clique":
        try:
            _, pairs = _pair_weights(instance)
        except (TypeError, ValueError) as exc:
            return str(exc)
        items = witness.items
        if len(set(items)) != len(items):
            return "repeated vertex in clique"
        total = 0
        for a, b in combinations(items, 2):
            w = pairs.get(frozenset((a, b)))
            if w is None:
                return f"missing clique pair ({a}, {b})"
            total += w
        if total != witness.claimed_weight:
            return f"weight mismatch: recomputed {total}"
        return None
    if kind == "cycle":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        if not isinstance(g, WeightedDigraph):
            return "cycle witness needs a digraph instance"
        items = witness.items
        if len(items) < 2:
            return "cycle too short"
        if len(set(items)) != len(items):
            return "not simple"
        weight_of = g.edge_weight_map()
        total = 0
        for i, u in enumerate(items):
            v = items[(i + 1) % len(items)]
            w = weight_of.get((u, v))
            if w is None:
                return f"missing edge ({u}, {v})"
            total += w
        if total != witness.claimed_weight:
            return f"weight mismatch: recomputed {total}"
        return None
    if kind == "hyperclique":
        if not isinstance(instance, UniformHypergraph):
            return "hyperclique witness needs a hypergraph instance"
        index = instance.index()
        items = witness.items
        if len(set(items)) != len(items):
            return "repeated vertex in hyperclique"
        total = 0
        for sub in combinations(sorted(items), instance.k):
            entry = index.get(tuple(sub))
            if entry is None:
                return f"missing hyperedge {sub}"
            total += entry[0]
        if total != witness.claimed_weight:
            return f"weight mismatch: recomputed {total}"
        return None
    if kind == "hypercycle":
        if not isinstance(instance, UniformHypergraph):
            return "hypercycle witness needs a hypergraph instance"
        index = instance.index()
        items = witness.items
        if len(set(items)) != len(items):
            return "not simple"
        if len(items) < instance.k:
            return "hypercycle shorter than the arity"
        total = 0
        for start in range(len(items)):
            window = tuple(
                sorted(items[(start + i) % len(items)] for i in range(instance.k))
            )
            entry = index.get(window)
            if entry is None:
                return f"missing window hyperedge {window}"
            total += entry[0]
        if total != witness.claimed_weight:
            return f"weight mismatch: recomputed {total}"
        return None
    if kind == "assignment":
        if not isinstance(instance, CspInstance):
            return "assignment witness needs a CSP instance"
        if len(witness.items) != instance.variable_count:
            return "assignment length mismatch"
        if any(b not in (0, 1) for b in witness.items):
            return "assignment holds non-bits"
        total = instance.satisfied_count(witness.items)
        if total != witness.claimed_weight:
            return f"weight mismatch: recomputed {total}"
        return None
    return f"unknown witness kind {kind!r}"
