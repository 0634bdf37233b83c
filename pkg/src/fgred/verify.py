"""Seeded oracle-equivalence campaigns for every reduction.

Each campaign draws a random source instance, applies the reduction, solves
both sides by brute force, compares through the declared weight map (or
decision threshold), and checks the pulled-back witness.  A mismatch record
carries everything needed to reproduce: the campaign seed, the trial index,
and the emitted instance text, which is also written to the failure cache.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import formats, generators, oracles, reduce_csp, reduce_cycle, reduce_distance
from .fast import density_self_reduction, min_weight_kcycle
from .model import CircleLayeredGraph, WeightedDigraph

CACHE_ENV = "FGRED_CACHE_DIR"


@dataclass
class CampaignReport:
    name: str
    trials: int
    mismatches: int
    first_failure: Optional[dict] = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def _cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, ".fgred-cache"))


def _record_failure(name: str, seed: int, trial: int, instance, expected, got) -> dict:
    detail = {
        "seed": seed,
        "trial": trial,
        "expected": expected,
        "got": got,
    }
    try:
        text = formats.emit(instance)
    except (TypeError, ValueError):
        text = repr(instance)
    path = _cache_dir() / f"{name}-seed{seed}-trial{trial}.txt"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        detail["instance_path"] = str(path)
    except OSError:
        detail["instance_path"] = None
    return detail


def _status_weight(result) -> tuple:
    return (result.status, result.weight if result.found else None)


# ---------------------------------------------------------------------------
# individual campaign trial functions: return None (pass) or (instance,
# expected, got)


def _trial_clique_cycle(seed, trial, corrupt=False):
    k = 3 if trial % 2 == 0 else 5
    per_part = 2 + trial % 2
    h = generators.gen_clique_instance(k, per_part, -8, 8, seed * 100003 + trial)
    reduction = reduce_cycle.clique_to_cycle(h)
    target = reduction.instance.graph
    if corrupt:
        target = WeightedDigraph(
            target.node_count, [(u, v, w + 1) for u, v, w in target.edges]
        )
    source = oracles.bf_min_clique(h, k)
    image = oracles.bf_min_kcycle(target, k)
    if source.found != image.found:
        return h, _status_weight(source), _status_weight(image)
    if source.found:
        if reduction.invert_weight(image.weight) != source.weight:
            return h, source.weight, image.weight
        pulled = reduction.pullback(image.witness)
        bad = oracles.check_witness(h, pulled)
        if bad is not None:
            return h, "valid pullback witness", bad
    return None


def _trial_clique_cycle_direct(seed, trial):
    k = 3 if trial % 2 == 0 else 5
    per_part = 2 + trial % 2
    h = generators.gen_clique_instance(k, per_part, -8, 8, seed * 100003 + trial)
    reduction = reduce_cycle.clique_to_cycle_direct(h)
    source = oracles.bf_min_clique(h, k)
    image = oracles.bf_min_kcycle(reduction.instance.graph, k)
    if source.found != image.found:
        return h, _status_weight(source), _status_weight(image)
    if source.found:
        if image.weight != reduction.scale * source.weight:
            return h, reduction.scale * source.weight, image.weight
        pulled = reduction.pullback(image.witness)
        bad = oracles.check_witness(h, pulled)
        if bad is not None:
            return h, "valid pullback witness", bad
    return None


def _trial_hyperclique_hypercycle(seed, trial):
    k = 2 if trial % 2 == 0 else 3
    l = (4, 5, 6)[trial % 3]
    if l <= k:
        l = k + 2
    n = l + (trial % 2) * l  # one or two nodes per part on average
    h = generators.gen_hypergraph(
        n, k, m=trial % 17 + 4, seed=seed * 7919 + trial, parts=l, wmin=-6, wmax=6
    )
    reduction = reduce_cycle.hyperclique_to_hypercycle(h)
    assert reduction.instance.k == reduce_cycle.gamma(l, k)
    source = oracles.bf_hyperclique(h, l)
    image = oracles.bf_hypercycle(reduction.instance, l)
    if source.found != image.found:
        return h, _status_weight(source), _status_weight(image)
    if source.found and source.weight != image.weight:
        return h, source.weight, image.weight
    return None


def _trial_hypercycle_digraph(seed, trial):
    k = (4, 5, 6)[trial % 3]
    lam = 2 + trial % 2
    if lam >= k:
        lam = k - 1
    h = generators.gen_hypergraph(
        k + trial % 4, lam, m=trial % 23 + 4, seed=seed * 31 + trial,
        parts=k, wmin=-5, wmax=5,
    )
    reduction = reduce_cycle.hypercycle_to_digraph(h)
    source = oracles.bf_hypercycle(h, k, aligned=True)
    image = oracles.bf_min_kcycle(reduction.instance.graph, k)
    if source.found != image.found:
        return h, _status_weight(source), _status_weight(image)
    if source.found:
        if source.weight != image.weight:
            return h, source.weight, image.weight
        pulled = reduction.pullback(image.witness)
        bad = oracles.check_witness(h, pulled)
        if bad is not None:
            return h, "valid pullback witness", bad
    return None


def _trial_split_layer(seed, trial):
    k = 3 + trial % 3
    lg = generators.gen_layered(k, 3, -6, 6, seed * 131 + trial)
    reduction = reduce_cycle.split_layer(lg)
    source = oracles.bf_min_kcycle(lg.graph, k)
    image = oracles.bf_min_kcycle(reduction.instance.graph, k + 1)
    if source.found != image.found:
        return lg, _status_weight(source), _status_weight(image)
    if source.found:
        if source.weight != image.weight:
            return lg, source.weight, image.weight
        pulled = reduction.pullback(image.witness)
        bad = oracles.check_witness(lg.graph, pulled)
        if bad is not None:
            return lg, "valid pullback witness", bad
    return None


def _trial_shortest_cycle(seed, trial):
    k = 3 + trial % 3
    lg = generators.gen_layered(k, 3, -7, 7, seed * 257 + trial)
    reduction = reduce_cycle.shift_layered(lg)
    source = oracles.bf_min_kcycle(lg.graph, k)
    image = oracles.bf_shortest_cycle(reduction.instance.graph)
    if not source.found:
        if image.found and image.weight < 6 * lg.k * max(lg.graph.weight_bound(), 1):
            return lg, "no short cycle", image.weight
        return None
    expected = source.weight + reduction.shift
    if not image.found or image.weight != expected:
        return lg, expected, _status_weight(image)
    return None


def _trial_negative_search(seed, trial):
    k = 3 + trial % 3
    lg = generators.gen_layered(k, 3, -8, 8, seed * 389 + trial)
    bound = max(lg.graph.weight_bound(), 1)

    def neg_solver(probed: CircleLayeredGraph) -> bool:
        result = oracles.bf_min_kcycle(probed.graph, k)
        return result.found and result.weight < 0

    result, probes = reduce_cycle.min_kcycle_via_negative_search(lg, k, bound, neg_solver)
    import math

    if probes > math.ceil(math.log2(2 * bound * k + 2)):
        return lg, "probe budget", probes
    source = oracles.bf_min_kcycle(lg.graph, k)
    if source.found != result.found:
        return lg, _status_weight(source), _status_weight(result)
    if source.found and source.weight != result.weight:
        return lg, source.weight, result.weight
    return None


def _trial_radius(seed, trial, weighted=True):
    k = 3 if trial % 2 == 0 else 5
    lg = generators.gen_layered(k, 3, -4, 4, seed * 449 + trial)
    source = oracles.bf_min_kcycle(lg.graph, k)
    if weighted:
        bound = max(lg.graph.weight_bound(), 1)
        expected = source.found and source.weight < 0
        gadget = reduce_distance.build_radius_gadget_weighted(lg, k, bound)
        bad = reduce_distance.audit_radius_constants(gadget, k, bound)
        if bad is not None:
            return lg, "constants audit", bad
        got = oracles.bf_radius(gadget.graph) < gadget.threshold
    else:
        expected = source.found
        got = reduce_distance.detect_kcycle_via_radius(lg, k, oracles.bf_radius)
    if got != expected:
        return lg, expected, got
    return None


def _trial_wiener(seed, trial, weighted=True):
    k = 3 if trial % 2 == 0 else 5
    lg = generators.gen_layered(k, 3, -4, 4, seed * 521 + trial)
    source = oracles.bf_min_kcycle(lg.graph, k)
    if weighted:
        bound = max(lg.graph.weight_bound(), 1)
        pair_sum, threshold = reduce_distance.wiener_pair_sum_weighted(
            lg, k, bound, oracles.bf_wiener
        )
        expected = source.found and source.weight < 0
    else:
        pair_sum, threshold = reduce_distance.wiener_pair_sum_unweighted(
            lg, k, oracles.bf_wiener
        )
        expected = source.found
    got = pair_sum < threshold
    if got != expected:
        return lg, expected, got
    if not expected and pair_sum != threshold:
        return lg, threshold, pair_sum
    return None


def _trial_csp_hyperclique(seed, trial):
    n = 4 + trial % 4
    m = 4 + trial % 6
    f = generators.gen_cnf(n, m, 3, seed * 607 + trial)
    l = (4, 5, 6)[trial % 3]
    expected, _ = oracles.bf_max_ksat(f)
    got, witness = reduce_csp.max_csp_via_hyperclique(
        f, l, lambda h, size: oracles.bf_hyperclique(h, size, mode="max")
    )
    if got != expected:
        return f, expected, got
    if f.satisfied_count(witness.items) != expected:
        return f, expected, f.satisfied_count(witness.items)
    return None


def _trial_maxsat_cycle(seed, trial):
    n = 4 + trial % 2
    m = 3 + trial % 4
    f = generators.gen_cnf(n, m, 3, seed * 761 + trial)
    l = 4 + trial % 2
    expected, _ = oracles.bf_max_ksat(f)

    def solver(lg, length):
        return oracles.bf_min_kcycle(lg.graph, length, mode="max")

    got, witness = reduce_csp.max_ksat_via_cycle(f, l, solver)
    if got != expected:
        return f, expected, got
    if f.satisfied_count(witness.items) != expected:
        return f, expected, f.satisfied_count(witness.items)
    return None


def _trial_fast_kcycle(seed, trial):
    import random as _random

    rng = _random.Random(seed * 881 + trial)
    n = rng.randint(5, 12)
    m = rng.randint(n, min(n * (n - 1), 3 * n))
    g = generators.gen_digraph(n, m, -8, 8, seed * 881 + trial)
    k = (3, 4, 5)[trial % 3]
    expected = oracles.bf_min_kcycle(g, k)
    got, stats = min_weight_kcycle(g, k, seed=seed + trial)
    if expected.found != got.found:
        return g, _status_weight(expected), _status_weight(got)
    if expected.found and expected.weight != got.weight:
        return g, expected.weight, got.weight
    if got.found:
        bad = oracles.check_witness(g, got.witness)
        if bad is not None:
            return g, "valid witness", bad
    return None


def _trial_color_coding(seed, trial):
    g, planted = generators.gen_planted_kcycle(12, 30, 5, -8, 8, seed * 977 + trial)

    def solver(lg):
        return oracles.bf_min_kcycle(lg.graph, 5)

    found = reduce_cycle.repeat_color_code(g, 5, seed=seed + trial, solver=solver)
    if not found.found or found.weight != planted:
        return g, planted, _status_weight(found)
    return None


def _trial_density(seed, trial):
    g = generators.gen_digraph(10, 25, -6, 6, seed * 1069 + trial)
    k = (3, 4, 5)[trial % 3]
    expected = oracles.bf_min_kcycle(g, k)

    def solver(sub, length, _seed):
        return oracles.bf_min_kcycle(sub, length)

    result, _info = density_self_reduction(
        g, k, c=2, g_param=2, solver=solver, seed=seed + trial
    )
    if expected.found != result.found:
        return g, _status_weight(expected), _status_weight(result)
    if expected.found and expected.weight != result.weight:
        return g, expected.weight, result.weight
    return None


CAMPAIGNS: dict[str, Callable] = {
    "clique-cycle": _trial_clique_cycle,
    "clique-cycle-direct": _trial_clique_cycle_direct,
    "hyperclique-hypercycle": _trial_hyperclique_hypercycle,
    "hypercycle-digraph": _trial_hypercycle_digraph,
    "split-layer": _trial_split_layer,
    "shortest-cycle": _trial_shortest_cycle,
    "negative-search": _trial_negative_search,
    "radius-weighted": lambda s, t: _trial_radius(s, t, weighted=True),
    "radius-unweighted": lambda s, t: _trial_radius(s, t, weighted=False),
    "wiener-weighted": lambda s, t: _trial_wiener(s, t, weighted=True),
    "wiener-unweighted": lambda s, t: _trial_wiener(s, t, weighted=False),
    "csp-hyperclique": _trial_csp_hyperclique,
    "maxsat-cycle": _trial_maxsat_cycle,
    "fast-kcycle": _trial_fast_kcycle,
    "color-coding": _trial_color_coding,
    "density": _trial_density,
}


def run_campaign(
    name: str, trials: int, seed: int, corrupt: bool = False
) -> CampaignReport:
    """Run one registered campaign; failures land in the cache directory."""
    if name not in CAMPAIGNS:
        raise ValueError(f"unknown reduction campaign {name!r}")
    fn = CAMPAIGNS[name]
    start = time.monotonic()
    mismatches = 0
    first_failure = None
    for trial in range(trials):
        if corrupt and name == "clique-cycle":
            outcome = _trial_clique_cycle(seed, trial, corrupt=True)
        else:
            outcome = fn(seed, trial)
        if outcome is not None:
            mismatches += 1
            if first_failure is None:
                instance, expected, got = outcome
                first_failure = _record_failure(name, seed, trial, instance, expected, got)
    return CampaignReport(
        name=name,
        trials=trials,
        mismatches=mismatches,
        first_failure=first_failure,
        wall_time=time.monotonic() - start,
    )
