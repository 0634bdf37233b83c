"""Boolean clauses to polynomials, CSPs to dual-weighted hypercliques,
weight-guess unweighting, and the composed Max-k-SAT -> cycle pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator, Optional

from .model import (
    CspInstance,
    MultilinearPolynomial,
    UniformHypergraph,
    Witness,
    checked_i64,
    require_valid,
)
from .oracles import NONE_RESULT, SolveResult
from .reduce_cycle import (
    ReductionOutput,
    gamma,
    hyperclique_to_hypercycle,
    hypercycle_to_digraph,
)

GUESS_CAP = 200_000


def clause_to_polynomial(
    variable_count: int, support, truth: Callable[[dict], int]
) -> MultilinearPolynomial:
    """Unique multilinear polynomial matching a clause's truth table.

    Subset (Moebius) transform over the 2^|support| table; from_function
    re-verifies every row before returning.
    """
    return MultilinearPolynomial.from_function(variable_count, support, truth)


def or_clause_polynomial(variable_count: int, literals) -> MultilinearPolynomial:
    from .formats import clause_polynomial

    return clause_polynomial(variable_count, tuple(literals))


def coefficient_bounds_check(p: MultilinearPolynomial) -> Optional[tuple]:
    """Verify the degree-g coefficient bound [-2^(g-1), 2^(g-1)] and the 0/1
    constant term for a boolean-valued polynomial; returns the offending
    (term, coefficient) or None.
    """
    support = p.support()
    if len(support) <= 16:
        assignment = [0] * p.variable_count
        for mask in range(1 << len(support)):
            for j, v in enumerate(support):
                assignment[v] = (mask >> j) & 1
            if p.evaluate(assignment) not in (0, 1):
                raise ValueError("polynomial is not boolean-valued")
    for subset, coef in p.terms:
        g = len(subset)
        if g == 0:
            if coef not in (0, 1):
                return (subset, coef)
        elif not (-(2 ** (g - 1)) <= coef <= 2 ** (g - 1)):
            return (subset, coef)
    return None


# ---------------------------------------------------------------------------
# group split and the hyperclique compilation


@dataclass(frozen=True)
class GroupSplit:
    group_count: int          # l
    group_size: int           # padded n / l
    padded_variable_count: int
    real_variable_count: int

    def group_of(self, var: int) -> int:
        return var // self.group_size

    def variables_of(self, group: int) -> range:
        return range(group * self.group_size, (group + 1) * self.group_size)

    def node_id(self, group: int, bits: int) -> int:
        return group * (1 << self.group_size) + bits

    def decode_node(self, node: int) -> tuple[int, int]:
        return divmod(node, 1 << self.group_size)


def make_group_split(n: int, l: int) -> GroupSplit:
    padded = l * math.ceil(n / l) if n else l
    return GroupSplit(l, padded // l, padded, n)


def _lex_first_superset(groups: tuple[int, ...], l: int, k: int) -> tuple[int, ...]:
    """Lexicographically first sorted k-subset of [0, l) containing `groups`."""
    chosen = set(groups)
    g = 0
    while len(chosen) < k:
        if g not in chosen:
            chosen.add(g)
        g += 1
    return tuple(sorted(chosen))


def csp_to_hyperclique(
    f: CspInstance, l: int, k: Optional[int] = None, node_cap: int = 1 << 14
) -> ReductionOutput:
    """Compile a degree-k CSP into an l-partite k-uniform hypergraph with
    dual weights.

    One node per (group, group assignment); a hyperedge for every k groups
    and one node each.  W1 collects each monomial exactly once at its
    lexicographically-first covering group-set; W2 collects each group's
    real-variable popcount at that group's lexicographically-first k-set.
    Every full assignment corresponds to one pad-free l-hyperclique with
    totals (sum of clause polynomials, popcount).
    """
    require_valid(f)
    degree = max((max((len(t) for t, _ in p.terms), default=0) for p in f.clauses), default=0)
    if k is None:
        k = max(degree, 2)
    elif k < degree:
        raise ValueError(f"arity {k} below clause degree {degree}")
    if l <= k:
        raise ValueError(f"group count {l} must exceed clause degree {k}")
    split = make_group_split(f.variable_count, l)
    b = split.group_size
    if l * (1 << b) > node_cap:
        raise ValueError("group assignments exceed the node cap")

    # monomials of sum p_i, keyed by responsible group-set
    by_edge_class: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
    constant_total = 0
    for p in f.clauses:
        for subset, coef in p.terms:
            if not subset:
                constant_total += coef
                continue
            groups = tuple(sorted({split.group_of(v) for v in subset}))
            owner = _lex_first_superset(groups, l, k)
            by_edge_class.setdefault(owner, []).append((subset, coef))
    base_class = tuple(range(k))
    if constant_total:
        by_edge_class.setdefault(base_class, []).append(((), constant_total))

    # W2 ownership: group j is collected by lex-first k-set containing {j}
    w2_owner = {j: _lex_first_superset((j,), l, k) for j in range(l)}

    m = f.clause_count
    n = f.variable_count
    w1_bound = m * max(n, 1) ** k * (2**k)
    checked_i64(w1_bound, "W1 bound")
    real_mask_by_group = []
    for j in range(l):
        mask = 0
        for t, v in enumerate(split.variables_of(j)):
            if v < n:
                mask |= 1 << t
        real_mask_by_group.append(mask)

    hyperedges = []
    for groups in combinations(range(l), k):
        monomials = by_edge_class.get(groups, [])
        w2_groups = [j for j in groups if w2_owner[j] == groups]
        for bits in product(range(1 << b), repeat=k):
            values = {}
            for j, bit in zip(groups, bits):
                for t, v in enumerate(split.variables_of(j)):
                    values[v] = (bit >> t) & 1
            w1 = 0
            for subset, coef in monomials:
                if all(values[v] for v in subset):
                    w1 += coef
            w2 = 0
            for j, bit in zip(groups, bits):
                if j in w2_groups:
                    w2 += bin(bit & real_mask_by_group[j]).count("1")
            assert abs(w1) <= w1_bound
            assert 0 <= w2 <= k * b
            nodes = [split.node_id(j, bit) for j, bit in zip(groups, bits)]
            hyperedges.append((nodes, w1, w2))

    part_of = []
    for j in range(l):
        part_of.extend([j] * (1 << b))
    target = require_valid(
        UniformHypergraph(l * (1 << b), k, hyperedges, part_of)
    )

    def pullback(w: Witness) -> Witness:
        assignment = [0] * split.padded_variable_count
        for node in w.items:
            group, bits = split.decode_node(node)
            for t, v in enumerate(split.variables_of(group)):
                assignment[v] = (bits >> t) & 1
        return Witness("assignment", assignment[:n], w.claimed_weight)

    def assignment_to_nodes(assignment) -> tuple[int, ...]:
        padded = list(assignment) + [0] * (split.padded_variable_count - n)
        nodes = []
        for j in range(l):
            bits = 0
            for t, v in enumerate(split.variables_of(j)):
                if padded[v]:
                    bits |= 1 << t
            nodes.append(split.node_id(j, bits))
        return tuple(nodes)

    info = {
        "split": split,
        "k": k,
        "w1_bound": w1_bound,
        "w2_total_bound": k * split.padded_variable_count // l,
        "assignment_to_nodes": assignment_to_nodes,
    }
    return ReductionOutput(target, pullback, 1, 0, info)


def max_csp_via_hyperclique(
    f: CspInstance,
    l: int,
    max_hyperclique_solver: Callable[[UniformHypergraph, int], SolveResult],
) -> tuple[int, Witness]:
    """Maximize the satisfied-clause total via a max-hyperclique solver."""
    reduction = csp_to_hyperclique(f, l)
    result = max_hyperclique_solver(reduction.instance, l)
    if not result.found:
        raise ValueError("hyperclique solver found no full assignment clique")
    pulled = reduction.pullback(result.witness)
    return result.weight, pulled


def separation_multiplier(f: CspInstance, l: int, k: int) -> int:
    """Factor keeping popcounts in low order next to clause totals.

    The construction's 2*C(l,k)*ceil(n/l) always exceeds the popcount bound
    n; if it ever failed to, the smallest power of two above n would be used
    instead.  Both are checked here.
    """
    b = math.ceil(f.variable_count / l) if f.variable_count else 1
    literal = 2 * math.comb(l, k) * b
    w2_max = f.variable_count
    if literal > w2_max:
        return literal
    fallback = 1 << (w2_max.bit_length())
    assert fallback > w2_max
    return fallback


def exact_csp_via_hyperclique(
    f: CspInstance,
    l: int,
    exact_solver: Callable[[UniformHypergraph, int, int], SolveResult],
) -> Optional[Witness]:
    """Find an assignment hitting both targets (K_p clauses, K_v popcount)
    via one exact-weight hyperclique query on combined weights."""
    if f.target_clause_sum is None or f.target_value_sum is None:
        raise ValueError("instance carries no exact-weight targets")
    if not (0 <= f.target_value_sum <= f.variable_count):
        raise ValueError("K_v outside [0, n]")
    reduction = csp_to_hyperclique(f, l)
    h = reduction.instance
    k = reduction.info["k"]
    mult = separation_multiplier(f, l, k)
    combined = [
        (nodes, checked_i64(w1 * mult + w2, "combined weight"), 0)
        for nodes, w1, w2 in h.hyperedges
    ]
    h_combined = UniformHypergraph(h.node_count, h.k, combined, h.part_of)
    target = f.target_clause_sum * mult + f.target_value_sum
    result = exact_solver(h_combined, l, target)
    if not result.found:
        return None
    pulled = reduction.pullback(result.witness)
    bits = pulled.items
    assert f.satisfied_count(bits) == f.target_clause_sum
    assert sum(bits) == f.target_value_sum
    return Witness("assignment", bits, f.target_clause_sum)


# ---------------------------------------------------------------------------
# weighted -> unweighted by guessing


def unweight_by_guessing(
    h: UniformHypergraph,
    l: int,
    mode: str = "max",
    target: Optional[int] = None,
    cap: int = GUESS_CAP,
) -> Iterator[tuple[UniformHypergraph, dict[tuple[int, ...], int]]]:
    """Yield weight-stripped instances, one per guess of each edge class's
    weight.

    Classes are the k-subsets of parts; guesses range over the distinct w1
    weights actually present per class.  Max mode descends by guess total;
    exact mode yields only totals equal to `target`.
    """
    if h.part_of is None:
        raise ValueError("guessing needs a partitioned hypergraph")
    if mode not in ("max", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and target is None:
        raise ValueError("exact mode needs a target total")
    classes: dict[tuple[int, ...], dict[int, list]] = {}
    for nodes, w1, w2 in h.hyperedges:
        cls = tuple(sorted(h.part_of[v] for v in nodes))
        classes.setdefault(cls, {}).setdefault(w1, []).append((nodes, w1, w2))
    class_keys = sorted(classes)
    combos = math.prod(len(classes[c]) for c in class_keys)
    if combos > cap:
        raise ValueError(f"guess combinations {combos} exceed cap {cap}")
    vectors = []
    for values in product(*(sorted(classes[c]) for c in class_keys)):
        vectors.append((sum(values), values))
    vectors.sort(key=lambda item: (-item[0], item[1]))
    for total, values in vectors:
        if mode == "exact" and total != target:
            continue
        kept = []
        for cls, value in zip(class_keys, values):
            kept.extend((nodes, 0, 0) for nodes, _, _ in classes[cls][value])
        guess = dict(zip(class_keys, values))
        yield (
            UniformHypergraph(h.node_count, h.k, kept, h.part_of),
            guess,
        )


def solve_by_guessing(
    h: UniformHypergraph,
    l: int,
    detector: Callable[[UniformHypergraph, int], SolveResult],
    mode: str = "max",
    target: Optional[int] = None,
) -> SolveResult:
    """Run an unweighted hyperclique detector over the guess sequence."""
    for stripped, guess in unweight_by_guessing(h, l, mode, target):
        hit = detector(stripped, l)
        if hit.found:
            total = sum(guess.values())
            return SolveResult(
                "found", total, Witness("hyperclique", hit.witness.items, total)
            )
    return NONE_RESULT


# ---------------------------------------------------------------------------
# Max-k-SAT -> directed cycle


def maxksat_to_cycle(f: CspInstance, l: int) -> ReductionOutput:
    """Compose CSP -> hyperclique -> hypercycle -> circle-layered digraph.

    The digraph's maximum-weight l-cycle weight equals the maximum satisfied
    count, and the pullback decodes the full assignment.
    """
    stage1 = csp_to_hyperclique(f, l)
    stage2 = hyperclique_to_hypercycle(stage1.instance)
    stage3 = hypercycle_to_digraph(stage2.instance)

    def pullback(w: Witness) -> Witness:
        hypercycle = stage3.pullback(w)
        hyperclique = stage2.pullback(hypercycle)
        return stage1.pullback(hyperclique)

    k = stage1.info["k"]
    info = {
        "gamma": stage2.info["gamma"],
        "clause_degree": k,
        "node_count": stage3.info["node_count"],
        "edge_count": stage3.info["edge_count"],
        "split": stage1.info["split"],
    }
    return ReductionOutput(stage3.instance, pullback, 1, 0, info)


def max_ksat_via_cycle(
    f: CspInstance,
    l: int,
    max_cycle_solver: Callable[[object, int], SolveResult],
) -> tuple[int, Witness]:
    reduction = maxksat_to_cycle(f, l)
    result = max_cycle_solver(reduction.instance, l)
    if not result.found:
        raise ValueError("cycle solver found no full-assignment cycle")
    pulled = reduction.pullback(result.witness)
    return result.weight, pulled
