"""Exact integer graph, hypergraph and boolean-formula data types.

All types are immutable after construction and hold exact integers only.
Validation is a pure function returning the first violated invariant, so
malformed instances can be built and inspected; the factory helpers raise
instead.  Every weight is audited against a signed 64-bit range at
construction time so that composed gadget constants cannot overflow a
machine-integer implementation downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

I64_MIN = -(2**63)
I64_MAX = 2**63 - 1


class OverflowGuardError(ValueError):
    """A weight or derived constant left the checked 64-bit range."""


def checked_i64(value: int, context: str = "value") -> int:
    if not (I64_MIN <= value <= I64_MAX):
        raise OverflowGuardError(f"{context} {value} outside signed 64-bit range")
    return value


@dataclass(frozen=True)
class WeightedDigraph:
    """Simple directed graph with exact integer edge weights."""

    node_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __init__(self, node_count: int, edges: Iterable[Sequence[int]]):
        object.__setattr__(self, "node_count", int(node_count))
        object.__setattr__(
            self, "edges", tuple((int(u), int(v), int(w)) for u, v, w in edges)
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weight_bound(self) -> int:
        """Largest |w| over all edges (0 for an edgeless graph)."""
        return max((abs(w) for _, _, w in self.edges), default=0)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.node_count)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
        return adj

    def in_adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.node_count)]
        for u, v, w in self.edges:
            adj[v].append((u, w))
        return adj

    def edge_weight_map(self) -> dict[tuple[int, int], int]:
        return {(u, v): w for u, v, w in self.edges}


@dataclass(frozen=True)
class CircleLayeredGraph:
    """A WeightedDigraph whose edges go only from layer i to layer i+1 mod k."""

    graph: WeightedDigraph
    k: int
    layer_of: tuple[int, ...]

    def __init__(self, graph: WeightedDigraph, k: int, layer_of: Sequence[int]):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "layer_of", tuple(int(c) for c in layer_of))

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, layer in enumerate(self.layer_of):
            out[layer].append(v)
        return out


@dataclass(frozen=True)
class UniformHypergraph:
    """k-uniform hypergraph, optionally partitioned, with dual integer weights."""

    node_count: int
    k: int
    hyperedges: tuple[tuple[tuple[int, ...], int, int], ...]
    part_of: Optional[tuple[int, ...]] = None

    def __init__(
        self,
        node_count: int,
        k: int,
        hyperedges: Iterable[tuple],
        part_of: Optional[Sequence[int]] = None,
    ):
        norm = []
        for entry in hyperedges:
            if len(entry) == 2:
                nodes, w1 = entry
                w2 = 0
            else:
                nodes, w1, w2 = entry
            norm.append((tuple(sorted(int(x) for x in nodes)), int(w1), int(w2)))
        object.__setattr__(self, "node_count", int(node_count))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "hyperedges", tuple(norm))
        object.__setattr__(
            self,
            "part_of",
            None if part_of is None else tuple(int(p) for p in part_of),
        )

    @property
    def edge_count(self) -> int:
        return len(self.hyperedges)

    def part_count(self) -> int:
        if self.part_of is None:
            return 0
        return max(self.part_of) + 1 if self.part_of else 0

    def parts(self) -> list[list[int]]:
        count = self.part_count()
        out: list[list[int]] = [[] for _ in range(count)]
        if self.part_of is not None:
            for v, p in enumerate(self.part_of):
                out[p].append(v)
        return out

    def index(self) -> dict[tuple[int, ...], tuple[int, int]]:
        """Sorted node-set -> (w1, w2); O(1) membership for oracles."""
        return {nodes: (w1, w2) for nodes, w1, w2 in self.hyperedges}


@dataclass(frozen=True)
class MultilinearPolynomial:
    """Integer-coefficient multilinear polynomial over boolean variables.

    Terms map frozen variable subsets (of size <= degree) to nonzero
    coefficients; the empty set holds the constant term.
    """

    variable_count: int
    degree: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __init__(self, variable_count: int, degree: int, terms):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        norm = {}
        for subset, coef in items:
            key = tuple(sorted(int(v) for v in subset))
            coef = int(coef)
            if coef != 0:
                norm[key] = norm.get(key, 0) + coef
        cleaned = tuple(sorted((k, c) for k, c in norm.items() if c != 0))
        object.__setattr__(self, "variable_count", int(variable_count))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "terms", cleaned)

    def term_map(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def support(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for subset, _ in self.terms:
            seen.update(subset)
        return tuple(sorted(seen))

    def evaluate(self, assignment: Sequence[int]) -> int:
        total = 0
        for subset, coef in self.terms:
            if all(assignment[v] for v in subset):
                total += coef
        return total

    @classmethod
    def from_function(cls, variable_count, support, fn, degree=None):
        """Unique multilinear polynomial agreeing with `fn` on the support.

        `fn` receives a dict var->bit for the support variables.  Built by
        the subset (Moebius) transform over the 2^|support| truth table and
        re-verified against every table row before returning.
        """
        support = tuple(sorted(int(v) for v in support))
        s = len(support)
        if s > 20:
            raise ValueError("support too large for truth-table transform")
        table = []
        for mask in range(1 << s):
            bits = {support[i]: (mask >> i) & 1 for i in range(s)}
            table.append(int(fn(bits)))
        coeffs: dict[tuple[int, ...], int] = {}
        for mask in range(1 << s):
            total = 0
            sub = mask
            # iterate submasks of mask
            while True:
                sign = -1 if (bin(mask ^ sub).count("1") % 2) else 1
                total += sign * table[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & mask
            if total:
                coeffs[tuple(support[i] for i in range(s) if (mask >> i) & 1)] = total
        deg = degree if degree is not None else max((len(t) for t in coeffs), default=0)
        poly = cls(variable_count, deg, coeffs)
        for mask in range(1 << s):
            assignment = [0] * variable_count
            for i in range(s):
                assignment[support[i]] = (mask >> i) & 1
            if poly.evaluate(assignment) != table[mask]:
                raise AssertionError("subset transform failed verification")
        return poly


@dataclass(frozen=True)
class CspInstance:
    """Formula whose clauses are 0/1-valued degree-<=k polynomials."""

    variable_count: int
    clauses: tuple[MultilinearPolynomial, ...]
    target_value_sum: Optional[int] = None  # K_v
    target_clause_sum: Optional[int] = None  # K_p

    def __init__(self, variable_count, clauses, target_value_sum=None, target_clause_sum=None):
        object.__setattr__(self, "variable_count", int(variable_count))
        object.__setattr__(self, "clauses", tuple(clauses))
        object.__setattr__(
            self,
            "target_value_sum",
            None if target_value_sum is None else int(target_value_sum),
        )
        object.__setattr__(
            self,
            "target_clause_sum",
            None if target_clause_sum is None else int(target_clause_sum),
        )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def satisfied_count(self, assignment: Sequence[int]) -> int:
        return sum(p.evaluate(assignment) for p in self.clauses)


WITNESS_KINDS = ("clique", "cycle", "hyperclique", "hypercycle", "assignment")


@dataclass(frozen=True)
class Witness:
    """Typed solution carried backward through every reduction."""

    kind: str
    items: tuple[int, ...]
    claimed_weight: int

    def __init__(self, kind: str, items: Sequence[int], claimed_weight: int):
        object.__setattr__(self, "kind", str(kind))
        object.__setattr__(self, "items", tuple(int(x) for x in items))
        object.__setattr__(self, "claimed_weight", int(claimed_weight))


def canonical_cycle(nodes: Sequence[int]) -> tuple[int, ...]:
    """Rotate a directed cycle so its minimum node comes first."""
    nodes = tuple(nodes)
    pivot = nodes.index(min(nodes))
    return nodes[pivot:] + nodes[:pivot]


def canonical_hypercycle(nodes: Sequence[int]) -> tuple[int, ...]:
    """Min-first rotation, reflection-deduplicated (hyperedges are unordered)."""
    forward = canonical_cycle(nodes)
    backward = canonical_cycle(tuple(reversed(nodes)))
    return min(forward, backward)


# ---------------------------------------------------------------------------
# validation


def validate(instance) -> Optional[str]:
    """Return the first violated invariant as a string, or None when ok."""
    if isinstance(instance, WeightedDigraph):
        return _validate_digraph(instance)
    if isinstance(instance, CircleLayeredGraph):
        return _validate_layered(instance)
    if isinstance(instance, UniformHypergraph):
        return _validate_hypergraph(instance)
    if isinstance(instance, MultilinearPolynomial):
        return _validate_polynomial(instance)
    if isinstance(instance, CspInstance):
        return _validate_csp(instance)
    if isinstance(instance, Witness):
        return _validate_witness_shape(instance)
    return f"unknown instance type {type(instance).__name__}"


def _validate_digraph(g: WeightedDigraph) -> Optional[str]:
    if g.node_count < 0:
        return "negative node count"
    seen: set[tuple[int, int]] = set()
    for u, v, w in g.edges:
        if not (0 <= u < g.node_count and 0 <= v < g.node_count):
            return f"node id out of range on edge ({u}, {v})"
        if u == v:
            return f"self-loop at node {u}"
        if (u, v) in seen:
            return f"duplicate edge ({u}, {v})"
        seen.add((u, v))
        if not (I64_MIN <= w <= I64_MAX):
            return f"weight overflow on edge ({u}, {v})"
    return None


def _validate_layered(lg: CircleLayeredGraph) -> Optional[str]:
    base = _validate_digraph(lg.graph)
    if base is not None:
        return base
    if lg.k < 3:
        return "layer count below 3"
    if len(lg.layer_of) != lg.graph.node_count:
        return "layer map size mismatch"
    for v, layer in enumerate(lg.layer_of):
        if not (0 <= layer < lg.k):
            return f"layer index out of range at node {v}"
    for u, v, _ in lg.graph.edges:
        if lg.layer_of[v] != (lg.layer_of[u] + 1) % lg.k:
            return f"layer constraint violated on edge ({u}, {v})"
    return None


def _validate_hypergraph(h: UniformHypergraph) -> Optional[str]:
    if h.k < 2:
        return "arity below 2"
    if h.part_of is not None and len(h.part_of) != h.node_count:
        return "part map size mismatch"
    seen: set[tuple[int, ...]] = set()
    for nodes, w1, w2 in h.hyperedges:
        if len(nodes) != h.k:
            return f"hyperedge {nodes} has size {len(nodes)}, expected {h.k}"
        if len(set(nodes)) != h.k:
            return f"hyperedge {nodes} repeats a node"
        if any(not (0 <= x < h.node_count) for x in nodes):
            return f"node id out of range in hyperedge {nodes}"
        if nodes in seen:
            return f"duplicate hyperedge {nodes}"
        seen.add(nodes)
        if h.part_of is not None:
            parts = [h.part_of[x] for x in nodes]
            if len(set(parts)) != len(parts):
                return f"hyperedge {nodes} holds two nodes of one part"
        for w in (w1, w2):
            if not (I64_MIN <= w <= I64_MAX):
                return f"weight overflow in hyperedge {nodes}"
    return None


def _validate_polynomial(p: MultilinearPolynomial) -> Optional[str]:
    for subset, coef in p.terms:
        if len(subset) > p.degree:
            return f"term {subset} exceeds degree {p.degree}"
        if coef == 0:
            return f"stored zero coefficient for term {subset}"
        if any(not (0 <= v < p.variable_count) for v in subset):
            return f"variable out of range in term {subset}"
        if len(set(subset)) != len(subset):
            return f"repeated variable in term {subset}"
    return None


def _validate_csp(f: CspInstance) -> Optional[str]:
    for i, p in enumerate(f.clauses):
        bad = _validate_polynomial(p)
        if bad is not None:
            return f"clause {i}: {bad}"
        if p.variable_count != f.variable_count:
            return f"clause {i}: variable count mismatch"
        support = p.support()
        if len(support) <= 16:
            assignment = [0] * f.variable_count
            for mask in range(1 << len(support)):
                for j, v in enumerate(support):
                    assignment[v] = (mask >> j) & 1
                if p.evaluate(assignment) not in (0, 1):
                    return f"clause {i} is not 0/1-valued"
            for v in support:
                assignment[v] = 0
    return None


def _validate_witness_shape(w: Witness) -> Optional[str]:
    if w.kind not in WITNESS_KINDS:
        return f"unknown witness kind {w.kind!r}"
    if w.kind == "assignment" and any(b not in (0, 1) for b in w.items):
        return "assignment witness holds non-bits"
    return None


def require_valid(instance):
    """Raise ValueError on the first violated invariant; return the instance."""
    bad = validate(instance)
    if bad is not None:
        raise ValueError(bad)
    return instance


# ---------------------------------------------------------------------------
# canonical tuple encoding


def tuple_index(parts: Sequence[int], choice: Sequence[int]) -> int:
    """Mixed-radix index of a per-part choice; first component most significant."""
    if len(parts) != len(choice):
        raise ValueError("choice length must match part count")
    idx = 0
    for size, c in zip(parts, choice):
        if not (0 <= c < size):
            raise ValueError(f"component {c} out of range for part of size {size}")
        idx = idx * size + c
    return idx


def tuple_unindex(parts: Sequence[int], index: int) -> tuple[int, ...]:
    """Inverse of tuple_index."""
    total = math.prod(parts)
    if not (0 <= index < max(total, 1)) or total == 0:
        raise ValueError(f"index {index} out of range for parts {tuple(parts)}")
    out = []
    for size in reversed(parts):
        out.append(index % size)
        index //= size
    return tuple(reversed(out))
