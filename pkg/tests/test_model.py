import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgred.model import (
    CircleLayeredGraph,
    MultilinearPolynomial,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
    OverflowGuardError,
    canonical_cycle,
    canonical_hypercycle,
    checked_i64,
    tuple_index,
    tuple_unindex,
    validate,
)


def triangle():
    return WeightedDigraph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])


class TestValidate:
    def test_triangle_ok(self):
        assert validate(triangle()) is None

    def test_self_loop(self):
        g = WeightedDigraph(2, [(0, 0, 1)])
        assert "self-loop" in validate(g)

    def test_duplicate_edge(self):
        g = WeightedDigraph(2, [(0, 1, 1), (0, 1, 2)])
        assert "duplicate" in validate(g)

    def test_out_of_range(self):
        g = WeightedDigraph(2, [(0, 5, 1)])
        assert "out of range" in validate(g)

    def test_layer_constraint(self):
        lg = CircleLayeredGraph(WeightedDigraph(3, [(0, 1, 1)]), 3, [0, 0, 1])
        assert "layer constraint" in validate(lg)

    def test_valid_layered(self):
        lg = CircleLayeredGraph(triangle(), 3, [0, 1, 2])
        assert validate(lg) is None

    def test_hypergraph_duplicate_set(self):
        h = UniformHypergraph(4, 2, [((0, 1), 1, 0), ((1, 0), 2, 0)])
        assert "duplicate" in validate(h)

    def test_hypergraph_partite_violation(self):
        h = UniformHypergraph(4, 2, [((0, 1), 1, 0)], part_of=[0, 0, 1, 1])
        assert "two nodes of one part" in validate(h)

    def test_polynomial_degree_violation(self):
        p = MultilinearPolynomial(3, 1, {(0, 1): 2})
        assert "exceeds degree" in validate(p)

    def test_witness_kind(self):
        assert validate(Witness("nonsense", (), 0)) is not None
        assert validate(Witness("cycle", (0, 1, 2), 3)) is None


class TestTupleIndex:
    def test_mixed_radix(self):
        # enumerate all 6 tuples of parts (2, 3) in mixed-radix order
        order = [(a, b) for a in range(2) for b in range(3)]
        for i, t in enumerate(order):
            assert tuple_index((2, 3), t) == i
        assert tuple_index((2, 3), (1, 2)) == 5

    def test_single_part_identity(self):
        assert tuple_index((5,), (3,)) == 3

    def test_inverse(self):
        assert tuple_unindex((2, 3), 5) == (1, 2)

    def test_roundtrip_everywhere(self):
        parts = (3, 2, 4)
        for idx in range(24):
            assert tuple_index(parts, tuple_unindex(parts, idx)) == idx

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            tuple_index((2, 3), (2, 0))
        with pytest.raises(ValueError):
            tuple_unindex((2, 3), 6)


class TestOverflowGuard:
    def test_in_range(self):
        assert checked_i64(2**62) == 2**62

    def test_overflow_raises(self):
        with pytest.raises(OverflowGuardError):
            checked_i64(2**63)


class TestCanonicalization:
    def test_cycle_rotation(self):
        assert canonical_cycle((2, 0, 1)) == (0, 1, 2)

    def test_hypercycle_reflection(self):
        a = canonical_hypercycle((0, 3, 1, 2))
        b = canonical_hypercycle((0, 2, 1, 3))  # reversal of the same cycle
        assert a == b


class TestPolynomial:
    def test_evaluate(self):
        p = MultilinearPolynomial(2, 2, {(0,): 1, (1,): 1, (0, 1): -1})
        values = [p.evaluate([a, b]) for a in (0, 1) for b in (0, 1)]
        assert values == [0, 1, 1, 1]  # OR truth table

    def test_from_function_parity(self):
        p = MultilinearPolynomial.from_function(2, (0, 1), lambda bits: bits[0] ^ bits[1])
        assert p.term_map() == {(0,): 1, (1,): 1, (0, 1): -2}

    def test_zero_coefficients_dropped(self):
        p = MultilinearPolynomial(2, 2, {(0,): 0, (1,): 2})
        assert p.term_map() == {(1,): 2}


@given(
    st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.integers(0, n - 1),
                st.integers(-100, 100),
            ),
            max_size=12,
        ).map(lambda edges: (n, edges))
    )
)
@settings(max_examples=80, deadline=None)
def test_validate_never_raises(case):
    n, edges = case
    validate(WeightedDigraph(n, edges))
