from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgred.formats import parse
from fgred.generators import gen_cnf
from fgred.model import CspInstance, MultilinearPolynomial, UniformHypergraph, Witness
from fgred.oracles import (
    bf_exact_csp,
    bf_hyperclique,
    bf_hyperclique_exact,
    bf_max_ksat,
    bf_min_kcycle,
    check_witness,
)
from fgred.reduce_csp import (
    clause_to_polynomial,
    coefficient_bounds_check,
    csp_to_hyperclique,
    exact_csp_via_hyperclique,
    max_csp_via_hyperclique,
    max_ksat_via_cycle,
    maxksat_to_cycle,
    or_clause_polynomial,
    separation_multiplier,
    solve_by_guessing,
    unweight_by_guessing,
)


def max_solver(h, size):
    return bf_hyperclique(h, size, mode="max")


def exact_solver(h, size, target):
    return bf_hyperclique_exact(h, size, target)


class TestClausePolynomials:
    def test_single_literal(self):
        p = or_clause_polynomial(1, (1,))
        assert p.term_map() == {(0,): 1}

    def test_two_literal_or(self):
        p = or_clause_polynomial(2, (1, 2))
        assert p.term_map() == {(0,): 1, (1,): 1, (0, 1): -1}

    def test_three_literal_or(self):
        p = or_clause_polynomial(3, (1, 2, 3))
        assert p.term_map() == {
            (0,): 1, (1,): 1, (2,): 1,
            (0, 1): -1, (0, 2): -1, (1, 2): -1,
            (0, 1, 2): 1,
        }

    def test_general_truth_table(self):
        p = clause_to_polynomial(3, (0, 2), lambda bits: int(bits[0] == bits[2]))
        for a, c in product((0, 1), repeat=2):
            assert p.evaluate([a, 0, c]) == int(a == c)


class TestCoefficientBounds:
    def test_three_or(self):
        assert coefficient_bounds_check(or_clause_polynomial(3, (1, 2, 3))) is None

    def test_parity_tight(self):
        parity = MultilinearPolynomial.from_function(2, (0, 1), lambda b: b[0] ^ b[1])
        assert coefficient_bounds_check(parity) is None
        assert parity.term_map()[(0, 1)] == -2  # hits the degree-2 bound

    def test_constant_one(self):
        p = MultilinearPolynomial(1, 0, {(): 1})
        assert coefficient_bounds_check(p) is None

    def test_rejects_non_boolean(self):
        p = MultilinearPolynomial(1, 1, {(0,): 2})
        with pytest.raises(ValueError):
            coefficient_bounds_check(p)

    def test_all_three_variable_functions(self):
        for table in range(1 << 8):
            p = MultilinearPolynomial.from_function(
                3, (0, 1, 2),
                lambda bits, t=table: (t >> (bits[0] | bits[1] << 1 | bits[2] << 2)) & 1,
            )
            assert coefficient_bounds_check(p) is None


class TestCspToHyperclique:
    def test_empty_formula_node_count(self):
        f = CspInstance(4, [])
        out = csp_to_hyperclique(f, 4, k=3)
        assert out.instance.node_count == 4 * 2
        result = bf_hyperclique(out.instance, 4, mode="max")
        assert result.found and result.weight == 0

    def test_groups_of_one(self):
        f = gen_cnf(6, 8, 3, seed=1)
        out = csp_to_hyperclique(f, 6)
        best = bf_hyperclique(out.instance, 6, mode="max")
        assert best.weight == bf_max_ksat(f)[0]

    def test_w2_is_popcount(self):
        f = gen_cnf(4, 5, 2, seed=2)
        out = csp_to_hyperclique(f, 4, k=3)
        to_nodes = out.info["assignment_to_nodes"]
        index = out.instance.index()
        from itertools import combinations

        for bits in product((0, 1), repeat=4):
            nodes = to_nodes(bits)
            w2 = sum(
                index[tuple(sorted(sub))][1]
                for sub in combinations(sorted(nodes), out.instance.k)
            )
            assert w2 == sum(bits)

    def test_bijection_and_w1(self):
        f = gen_cnf(6, 7, 3, seed=3)
        out = csp_to_hyperclique(f, 4)
        to_nodes = out.info["assignment_to_nodes"]
        index = out.instance.index()
        from itertools import combinations

        seen = set()
        for bits in product((0, 1), repeat=6):
            nodes = to_nodes(bits)
            assert nodes not in seen
            seen.add(nodes)
            w1 = sum(
                index[tuple(sorted(sub))][0]
                for sub in combinations(sorted(nodes), out.instance.k)
            )
            assert w1 == f.satisfied_count(bits)
            pulled = out.pullback(Witness("hyperclique", nodes, w1))
            assert pulled.items == bits

    def test_weight_bounds(self):
        f = gen_cnf(8, 12, 3, seed=4)
        out = csp_to_hyperclique(f, 5)
        bound = out.info["w1_bound"]
        assert all(abs(w1) <= bound for _, w1, _ in out.instance.hyperedges)
        split = out.info["split"]
        assert all(
            0 <= w2 <= out.instance.k * split.group_size
            for _, _, w2 in out.instance.hyperedges
        )

    def test_monomial_single_counting(self):
        # every monomial of sum p_i lands in exactly one edge class
        f = gen_cnf(6, 9, 3, seed=6)
        out = csp_to_hyperclique(f, 5)
        total = {}
        for p in f.clauses:
            for subset, coef in p.terms:
                total[subset] = total.get(subset, 0) + coef
        total = {k: v for k, v in total.items() if v != 0}
        # reconstruct from the compiled instance by summing every class
        # weight over one reference assignment of all ones
        ones = (1,) * 6
        compiled = out.info["assignment_to_nodes"](ones)
        index = out.instance.index()
        from itertools import combinations

        w1 = sum(
            index[tuple(sorted(sub))][0]
            for sub in combinations(sorted(compiled), out.instance.k)
        )
        assert w1 == sum(p.evaluate(ones) for p in f.clauses)


class TestMaxAndExactPaths:
    def test_forced_contradiction(self):
        f = parse("p cnf 1 2\n1 0\n-1 0\n")
        best, witness = max_csp_via_hyperclique(f, 4, max_solver)
        assert best == 1
        assert check_witness(f, Witness("assignment", witness.items, 1)) is None

    def test_satisfiable_formula(self):
        f = parse("p cnf 3 2\n1 2 0\n-1 3 0\n")
        best, _ = max_csp_via_hyperclique(f, 4, max_solver)
        assert best == 2

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_oracle(self, seed):
        f = gen_cnf(5 + seed % 3, 6 + seed, 3, seed=seed)
        expected, _ = bf_max_ksat(f)
        got, witness = max_csp_via_hyperclique(f, (4, 5, 6)[seed % 3], max_solver)
        assert got == expected
        assert f.satisfied_count(witness.items) == expected

    def test_exact_popcount_only(self):
        f = CspInstance(4, [], target_value_sum=2, target_clause_sum=0)
        witness = exact_csp_via_hyperclique(f, 4, exact_solver)
        assert witness is not None and sum(witness.items) == 2

    @pytest.mark.parametrize("seed", range(6))
    def test_exact_planted(self, seed):
        base = gen_cnf(5, 6, 3, seed=seed + 50)
        count, assignment = bf_max_ksat(base)
        f = CspInstance(
            5, base.clauses,
            target_value_sum=sum(assignment.items),
            target_clause_sum=count,
        )
        witness = exact_csp_via_hyperclique(f, 4, exact_solver)
        assert witness is not None
        assert f.satisfied_count(witness.items) == count
        assert sum(witness.items) == sum(assignment.items)

    def test_exact_infeasible(self):
        base = gen_cnf(4, 4, 2, seed=3)
        f = CspInstance(4, base.clauses, target_value_sum=0,
                        target_clause_sum=base.clause_count + 1)
        assert exact_csp_via_hyperclique(f, 4, exact_solver) is None

    def test_separation_multiplier_exceeds_popcount(self):
        for n, l in ((4, 4), (7, 5), (10, 6)):
            f = CspInstance(n, [])
            assert separation_multiplier(f, l, 3) > n


class TestGuessing:
    def test_uniform_class_weights_single_vector(self):
        f = CspInstance(4, [])
        out = csp_to_hyperclique(f, 4, k=3)
        vectors = list(unweight_by_guessing(out.instance, 4))
        assert len(vectors) == 1

    def test_stripped_instances_unweighted(self):
        f = gen_cnf(4, 4, 3, seed=7)
        out = csp_to_hyperclique(f, 4)
        for stripped, _guess in unweight_by_guessing(out.instance, 4):
            assert all(w1 == 0 and w2 == 0 for _, w1, w2 in stripped.hyperedges)
            break

    @pytest.mark.parametrize("seed", range(5))
    def test_guessing_agrees_with_weighted(self, seed):
        f = gen_cnf(4, 3 + seed, 3, seed=seed + 70)
        out = csp_to_hyperclique(f, 4)
        weighted = bf_hyperclique(out.instance, 4, mode="max")

        def detector(h, size):
            return bf_hyperclique(
                UniformHypergraph(
                    h.node_count, h.k,
                    [(nodes, 1, 0) for nodes, _, _ in h.hyperedges],
                    h.part_of,
                ),
                size, mode="max",
            )

        guessed = solve_by_guessing(out.instance, 4, detector, mode="max")
        assert guessed.found and guessed.weight == weighted.weight

    def test_exact_mode_unreachable_target(self):
        f = gen_cnf(4, 3, 3, seed=77)
        out = csp_to_hyperclique(f, 4)
        big = 10**9
        assert not any(True for _ in unweight_by_guessing(out.instance, 4, "exact", big))

    def test_cap_enforced(self):
        f = gen_cnf(8, 14, 3, seed=5)
        out = csp_to_hyperclique(f, 4)
        with pytest.raises(ValueError):
            list(unweight_by_guessing(out.instance, 4, cap=1))


class TestMaxSatToCycle:
    def cycle_solver(self, lg, size):
        return bf_min_kcycle(lg.graph, size, mode="max")

    def test_gamma_for_l4_k3(self):
        f = gen_cnf(4, 3, 3, seed=8)
        out = maxksat_to_cycle(f, 4)
        assert out.info["gamma"] == 3

    def test_empty_formula_zero_cycles(self):
        f = CspInstance(4, [])
        out = maxksat_to_cycle(f, 4)
        best = bf_min_kcycle(out.instance.graph, 4, mode="max")
        assert best.found and best.weight == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_end_to_end_matches_oracle(self, seed):
        f = gen_cnf(4, 3 + seed % 3, 3, seed=seed + 30)
        expected, _ = bf_max_ksat(f)
        got, witness = max_ksat_via_cycle(f, 4 + seed % 2, self.cycle_solver)
        assert got == expected
        assert f.satisfied_count(witness.items) == expected

    def test_unsatisfiable_below_m(self):
        f = parse("p cnf 1 2\n1 0\n-1 0\n")
        got, _ = max_ksat_via_cycle(f, 4, self.cycle_solver)
        assert got == 1 < f.clause_count


@given(st.integers(0, 2**16 - 1))
@settings(max_examples=200, deadline=None)
def test_coefficient_bounds_random_four_variable_functions(table):
    p = MultilinearPolynomial.from_function(
        4, (0, 1, 2, 3),
        lambda bits: (table >> (bits[0] | bits[1] << 1 | bits[2] << 2 | bits[3] << 3)) & 1,
    )
    assert coefficient_bounds_check(p) is None
