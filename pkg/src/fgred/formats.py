"""Text serialization for all domain types.

Formats are UTF-8, LF, space-separated, with '#' comments.  parse(emit(x))
is a field-for-field identity.  Errors carry line and column positions.
"""

from __future__ import annotations

from typing import Optional

from .model import (
    CircleLayeredGraph,
    CspInstance,
    MultilinearPolynomial,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
    require_valid,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class _Lines:
    """Comment-stripping tokenizer that tracks line/column positions."""

    def __init__(self, text: str):
        self.rows: list[tuple[int, list[tuple[int, str]]]] = []
        for lineno, raw in enumerate(text.split("\n"), start=1):
            body = raw.split("#", 1)[0]
            tokens = []
            col = 1
            for tok in body.split(" "):
                if tok.strip():
                    tokens.append((col, tok.strip()))
                col += len(tok) + 1
            if tokens:
                self.rows.append((lineno, tokens))
        self.pos = 0

    def next_row(self, what: str) -> tuple[int, list[tuple[int, str]]]:
        if self.pos >= len(self.rows):
            last = self.rows[-1][0] if self.rows else 1
            raise ParseError(f"unexpected end of input, expected {what}", last + 1)
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def exhausted(self) -> bool:
        return self.pos >= len(self.rows)

    def expect_end(self):
        if not self.exhausted():
            lineno, tokens = self.rows[self.pos]
            raise ParseError("trailing content after instance", lineno, tokens[0][0])


def _ints(lineno, tokens, count, what) -> list[int]:
    if count is not None and len(tokens) != count:
        raise ParseError(
            f"expected {count} {what} tokens, found {len(tokens)}", lineno,
            tokens[0][0] if tokens else 1,
        )
    out = []
    for col, tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"bad {what} token {tok!r}", lineno, col) from None
    return out


# ---------------------------------------------------------------------------
# digraph / layered / hypergraph


def emit_digraph(g: WeightedDigraph) -> str:
    lines = [f"digraph {g.node_count} {g.edge_count}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def emit_layered(lg: CircleLayeredGraph) -> str:
    g = lg.graph
    lines = [f"layered {g.node_count} {g.edge_count} {lg.k}"]
    lines.append(" ".join(str(c) for c in lg.layer_of) if lg.layer_of else "")
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(line for line in lines if line != "") + "\n"


def emit_hypergraph(h: UniformHypergraph) -> str:
    head = f"hypergraph {h.node_count} {h.k} {h.edge_count}"
    if h.part_of is not None:
        head += f" {h.part_count()}"
    lines = [head]
    if h.part_of is not None and h.node_count:
        lines.append(" ".join(str(p) for p in h.part_of))
    for nodes, w1, w2 in h.hyperedges:
        row = " ".join(str(x) for x in nodes) + f" {w1}"
        if w2 != 0:
            row += f" {w2}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def _parse_edge_rows(src: _Lines, m: int, n: int):
    edges = []
    for _ in range(m):
        lineno, tokens = src.next_row("edge line")
        u, v, w = _ints(lineno, tokens, 3, "edge")
        edges.append((u, v, w))
    return edges


def parse_digraph(src: _Lines) -> WeightedDigraph:
    lineno, tokens = src.next_row("digraph header")
    if tokens[0][1] != "digraph":
        raise ParseError(f"expected 'digraph', found {tokens[0][1]!r}", lineno, tokens[0][0])
    n, m = _ints(lineno, tokens[1:], 2, "header")
    return require_valid(WeightedDigraph(n, _parse_edge_rows(src, m, n)))


def parse_layered(src: _Lines) -> CircleLayeredGraph:
    lineno, tokens = src.next_row("layered header")
    if tokens[0][1] != "layered":
        raise ParseError(f"expected 'layered', found {tokens[0][1]!r}", lineno, tokens[0][0])
    n, m, k = _ints(lineno, tokens[1:], 3, "header")
    if n > 0:
        lineno, tokens = src.next_row("layer line")
        layer_of = _ints(lineno, tokens, n, "layer")
    else:
        layer_of = []
    g = WeightedDigraph(n, _parse_edge_rows(src, m, n))
    return require_valid(CircleLayeredGraph(g, k, layer_of))


def parse_hypergraph(src: _Lines) -> UniformHypergraph:
    lineno, tokens = src.next_row("hypergraph header")
    if tokens[0][1] != "hypergraph":
        raise ParseError(
            f"expected 'hypergraph', found {tokens[0][1]!r}", lineno, tokens[0][0]
        )
    nums = _ints(lineno, tokens[1:], None, "header")
    if len(nums) not in (3, 4):
        raise ParseError("hypergraph header takes 3 or 4 numbers", lineno, tokens[0][0])
    n, k, m = nums[:3]
    part_of = None
    if len(nums) == 4:
        if n > 0:
            lineno, tokens = src.next_row("part line")
            part_of = _ints(lineno, tokens, n, "part")
        else:
            part_of = []
    hyperedges = []
    for _ in range(m):
        lineno, tokens = src.next_row("hyperedge line")
        nums = _ints(lineno, tokens, None, "hyperedge")
        if len(nums) == k + 1:
            hyperedges.append((nums[:k], nums[k], 0))
        elif len(nums) == k + 2:
            hyperedges.append((nums[:k], nums[k], nums[k + 1]))
        else:
            raise ParseError(
                f"hyperedge line takes {k} node ids plus one or two weights",
                lineno, tokens[0][0],
            )
    return require_valid(UniformHypergraph(n, k, hyperedges, part_of))


# ---------------------------------------------------------------------------
# CNF (DIMACS) and the polynomial CSP format


def clause_polynomial(variable_count: int, literals: tuple[int, ...]) -> MultilinearPolynomial:
    """OR-clause over DIMACS literals as its unique multilinear polynomial."""
    support = sorted({abs(lit) - 1 for lit in literals})

    def fn(bits):
        for lit in literals:
            value = bits[abs(lit) - 1]
            if (lit > 0 and value) or (lit < 0 and not value):
                return 1
        return 0

    return MultilinearPolynomial.from_function(
        variable_count, support, fn, degree=len(support)
    )


def parse_cnf(src: _Lines) -> CspInstance:
    lineno, tokens = src.next_row("DIMACS header")
    while tokens[0][1] == "c":
        lineno, tokens = src.next_row("DIMACS header")
    if tokens[0][1] != "p" or len(tokens) < 2 or tokens[1][1] != "cnf":
        raise ParseError("expected 'p cnf <vars> <clauses>'", lineno, tokens[0][0])
    n, m = _ints(lineno, tokens[2:], 2, "header")
    clauses = []
    pending: list[int] = []
    while len(clauses) < m:
        lineno, tokens = src.next_row("clause line")
        if tokens[0][1] == "c":
            continue
        for lit in _ints(lineno, tokens, None, "literal"):
            if lit == 0:
                clauses.append(clause_polynomial(n, tuple(pending)))
                pending = []
                if len(clauses) == m:
                    break
            else:
                if not (1 <= abs(lit) <= n):
                    raise ParseError(f"literal {lit} out of range", lineno, tokens[0][0])
                pending.append(lit)
    return require_valid(CspInstance(n, clauses))


def emit_cnf(f: CspInstance) -> str:
    """DIMACS output; only valid for instances whose clauses are OR-clauses."""
    lines = [f"p cnf {f.variable_count} {f.clause_count}"]
    for p in f.clauses:
        literals = _polynomial_as_clause(p)
        if literals is None:
            raise ValueError("clause polynomial is not an OR-clause; use csp format")
        lines.append(" ".join(str(l) for l in literals) + " 0")
    return "\n".join(lines) + "\n"


def _polynomial_as_clause(p: MultilinearPolynomial) -> Optional[tuple[int, ...]]:
    support = p.support()
    if len(support) > 16:
        return None
    for signs in range(1 << len(support)):
        literals = tuple(
            (v + 1) if not (signs >> i) & 1 else -(v + 1)
            for i, v in enumerate(support)
        )
        if clause_polynomial(p.variable_count, literals).terms == p.terms:
            return literals
    return None


def emit_csp(f: CspInstance) -> str:
    lines = [f"csp {f.variable_count} {f.clause_count}"]
    if f.target_clause_sum is not None and f.target_value_sum is not None:
        lines[0] += f" {f.target_clause_sum} {f.target_value_sum}"
    for p in f.clauses:
        terms = []
        for subset, coef in p.terms:
            if subset:
                terms.append("*".join([str(coef)] + [str(v + 1) for v in subset]))
            else:
                terms.append(str(coef))
        lines.append(" + ".join(terms) if terms else "0")
    return "\n".join(lines) + "\n"


def parse_csp(src: _Lines) -> CspInstance:
    lineno, tokens = src.next_row("csp header")
    if tokens[0][1] != "csp":
        raise ParseError(f"expected 'csp', found {tokens[0][1]!r}", lineno, tokens[0][0])
    nums = _ints(lineno, tokens[1:], None, "header")
    if len(nums) == 2:
        n, m = nums
        kp = kv = None
    elif len(nums) == 4:
        n, m, kp, kv = nums
    else:
        raise ParseError("csp header takes 2 or 4 numbers", lineno, tokens[0][0])
    clauses = []
    for _ in range(m):
        lineno, tokens = src.next_row("polynomial line")
        text_cols = tokens
        terms: dict[tuple[int, ...], int] = {}
        # terms joined by '+'; each '<coef>*<v1>[*<v2>...]' or bare '<coef>'
        chunks: list[list[tuple[int, str]]] = [[]]
        for col, tok in text_cols:
            if tok == "+":
                chunks.append([])
            else:
                chunks[-1].append((col, tok))
        for chunk in chunks:
            if len(chunk) != 1:
                where = chunk[0] if chunk else text_cols[0]
                raise ParseError("malformed polynomial term", lineno, where[0])
            col, tok = chunk[0]
            pieces = tok.split("*")
            try:
                coef = int(pieces[0])
                variables = tuple(int(x) - 1 for x in pieces[1:])
            except ValueError:
                raise ParseError(f"bad term token {tok!r}", lineno, col) from None
            if any(not (0 <= v < n) for v in variables):
                raise ParseError(f"variable out of range in {tok!r}", lineno, col)
            if coef != 0:
                key = tuple(sorted(variables))
                terms[key] = terms.get(key, 0) + coef
        degree = max((len(t) for t in terms), default=0)
        clauses.append(MultilinearPolynomial(n, degree, terms))
    return require_valid(CspInstance(n, clauses, kv, kp))


# ---------------------------------------------------------------------------
# witness


def emit_witness(w: Witness) -> str:
    lines = [f"witness {w.kind} {w.claimed_weight}"]
    lines.append(" ".join(str(x) for x in w.items) if w.items else "")
    return "\n".join(line for line in lines if line != "") + "\n"


def parse_witness(src: _Lines) -> Witness:
    lineno, tokens = src.next_row("witness header")
    if tokens[0][1] != "witness":
        raise ParseError(f"expected 'witness', found {tokens[0][1]!r}", lineno, tokens[0][0])
    if len(tokens) != 3:
        raise ParseError("witness header takes variant and weight", lineno, tokens[0][0])
    kind = tokens[1][1]
    (weight,) = _ints(lineno, tokens[2:], 1, "weight")
    items: list[int] = []
    if not src.exhausted():
        lineno, tokens = src.next_row("witness items")
        items = _ints(lineno, tokens, None, "item")
    return require_valid(Witness(kind, items, weight))


# ---------------------------------------------------------------------------
# dispatch

_PARSERS = {
    "digraph": parse_digraph,
    "layered": parse_layered,
    "hypergraph": parse_hypergraph,
    "p": parse_cnf,
    "c": parse_cnf,
    "csp": parse_csp,
    "witness": parse_witness,
}


def parse(text: str):
    """Parse any instance text by its header keyword."""
    src = _Lines(text)
    if not src.rows:
        raise ParseError("empty input", 1)
    head = src.rows[0][1][0][1]
    parser = _PARSERS.get(head)
    if parser is None:
        raise ParseError(f"unknown instance header {head!r}", src.rows[0][0], src.rows[0][1][0][0])
    out = parser(src)
    src.expect_end()
    return out


def emit(instance) -> str:
    if isinstance(instance, CircleLayeredGraph):
        return emit_layered(instance)
    if isinstance(instance, WeightedDigraph):
        return emit_digraph(instance)
    if isinstance(instance, UniformHypergraph):
        return emit_hypergraph(instance)
    if isinstance(instance, CspInstance):
        return emit_csp(instance)
    if isinstance(instance, Witness):
        return emit_witness(instance)
    raise TypeError(f"cannot emit {type(instance).__name__}")
