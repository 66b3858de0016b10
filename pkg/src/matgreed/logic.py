"""3CNF formulas and boolean circuits: parsing, printing, evaluation, brute force."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import DomainTooLargeError, MatgreedError

BRUTE_FORCE_CAP = 24

TruthAssignment = tuple  # tuple[bool, ...], entry i is the value of variable i+1


class ParseError(MatgreedError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CnfFormula:
    """A 3CNF formula; shorter clauses are padded by repeating their first literal."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        norm = []
        for clause in self.clauses:
            clause = tuple(int(lit) for lit in clause)
            if not clause:
                raise ValueError("empty clause")
            if len(clause) > 3:
                raise ValueError(f"clause {clause} has more than 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")
            norm.append(clause + (clause[0],) * (3 - len(clause)))
        object.__setattr__(self, "clauses", tuple(norm))


def parse_dimacs(text: str) -> CnfFormula:
    n = m = None
    clauses: list[list[int]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf" or not parts[2].isdigit() or not parts[3].isdigit():
                raise ParseError(f"malformed header {line!r}", lineno)
            n, m = int(parts[2]), int(parts[3])
            if n < 1:
                raise ParseError("header must declare at least one variable", lineno)
            continue
        if n is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"invalid literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                if len(current) > 3:
                    raise ParseError(f"clause with {len(current)} literals; only 3CNF is accepted", lineno)
                clauses.append(current)
                current = []
                continue
            if abs(lit) > n:
                raise ParseError(f"variable {abs(lit)} exceeds declared count {n}", lineno)
            current.append(lit)
    if n is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0", last_line)
    if len(clauses) != m:
        raise ParseError(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(tuple(c) for c in clauses))


def format_dimacs(formula: CnfFormula) -> str:
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in formula.clauses]
    return "\n".join(lines) + "\n"


def _check_assignment(z: Sequence[bool], n: int) -> None:
    if len(z) != n:
        raise ValueError(f"assignment has {len(z)} values, expected {n}")


def eval_cnf(formula: CnfFormula, z: Sequence[bool]) -> bool:
    _check_assignment(z, formula.num_vars)
    return all(any(z[lit - 1] if lit > 0 else not z[-lit - 1] for lit in clause) for clause in formula.clauses)


def brute_force_sat(formula: CnfFormula, cap: int = BRUTE_FORCE_CAP) -> Optional[TruthAssignment]:
    """Lexicographically smallest satisfying assignment (False < True), or None."""
    if formula.num_vars > cap:
        raise DomainTooLargeError(f"{formula.num_vars} variables exceed the brute-force cap {cap}")
    for z in itertools.product((False, True), repeat=formula.num_vars):
        if eval_cnf(formula, z):
            return z
    return None


GATE_ARITY = {"AND": 2, "OR": 2, "NOT": 1}


@dataclass(frozen=True)
class Gate:
    op: str
    operands: tuple[int, ...]


@dataclass(frozen=True)
class BoolCircuit:
    """Fan-in <= 2 circuit over {AND, OR, NOT}.

    Wires ``0..num_inputs-1`` are the inputs x1..xn; gate ``j`` drives wire
    ``num_inputs + j``.  The output is always a gate wire: a circuit whose output
    would be an input wire gets an ``OR x x`` buffer gate when normalized.
    """

    num_inputs: int
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self):
        if self.num_inputs < 1:
            raise ValueError("a circuit needs at least one input")
        gates = tuple(g if isinstance(g, Gate) else Gate(g[0], tuple(g[1])) for g in self.gates)
        object.__setattr__(self, "gates", gates)
        for j, g in enumerate(gates):
            wire = self.num_inputs + j
            if g.op not in GATE_ARITY:
                raise ValueError(f"unknown gate {g.op!r}")
            if len(g.operands) != GATE_ARITY[g.op]:
                raise ValueError(f"{g.op} takes {GATE_ARITY[g.op]} operands")
            if any(not 0 <= w < wire for w in g.operands):
                raise ValueError(f"gate {j} references a wire that is not earlier")
        if not 0 <= self.output < self.num_inputs + len(gates):
            raise ValueError("output is not a valid wire")

    @property
    def size(self) -> int:
        """|e|: inputs plus gates."""
        return self.num_inputs + len(self.gates)

    def normalized(self) -> "BoolCircuit":
        if self.output >= self.num_inputs:
            return self
        buf = Gate("OR", (self.output, self.output))
        return BoolCircuit(self.num_inputs, self.gates + (buf,), self.num_inputs + len(self.gates))


def eval_circuit(circuit: BoolCircuit, z: Sequence[bool]) -> bool:
    _check_assignment(z, circuit.num_inputs)
    values = [bool(v) for v in z]
    for g in circuit.gates:
        a = values[g.operands[0]]
        if g.op == "NOT":
            values.append(not a)
        elif g.op == "AND":
            values.append(a and values[g.operands[1]])
        else:
            values.append(a or values[g.operands[1]])
    return values[circuit.output]


_INPUT = re.compile(r"x([1-9]\d*)$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_circuit(text: str) -> BoolCircuit:
    """Parse lines ``name = OP a [b]`` ending with ``out = wire``.

    Inputs are referenced as ``x1..xn``.  An optional ``inputs N`` line fixes
    n; otherwise n is the largest input index mentioned.  Statements may also
    be separated by ``;``.  ``#`` starts a comment.
    """
    stmts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        for part in line.split(";"):
            part = part.strip()
            if part:
                stmts.append((lineno, part))
    declared = None
    max_input = 0
    parsed = []
    for lineno, stmt in stmts:
        m = re.fullmatch(r"inputs\s+(\d+)", stmt)
        if m:
            if declared is not None or parsed:
                raise ParseError("'inputs' must come first and only once", lineno)
            declared = int(m.group(1))
            if declared < 1:
                raise ParseError("a circuit needs at least one input", lineno)
            continue
        if "=" not in stmt:
            raise ParseError(f"expected 'name = ...', got {stmt!r}", lineno)
        lhs, rhs = (s.strip() for s in stmt.split("=", 1))
        toks = rhs.split()
        if not toks:
            raise ParseError("empty right-hand side", lineno)
        for tok in toks[1:] if toks[0].upper() in GATE_ARITY else toks:
            im = _INPUT.match(tok)
            if im:
                max_input = max(max_input, int(im.group(1)))
        parsed.append((lineno, lhs, toks))
    n = declared if declared is not None else max_input
    if n < 1:
        raise ParseError("circuit references no inputs")
    if max_input > n:
        raise ParseError(f"input x{max_input} exceeds declared count {n}")

    wires = {f"x{i}": i - 1 for i in range(1, n + 1)}
    gates: list[Gate] = []
    output = None

    def wire(tok, lineno):
        if tok not in wires:
            raise ParseError(f"reference to undefined wire {tok!r}", lineno)
        return wires[tok]

    for lineno, lhs, toks in parsed:
        if output is not None:
            raise ParseError("statements after 'out'", lineno)
        if lhs == "out":
            if len(toks) != 1:
                raise ParseError("'out' takes a single wire", lineno)
            output = wire(toks[0], lineno)
            continue
        if not _NAME.match(lhs) or _INPUT.match(lhs):
            raise ParseError(f"invalid gate name {lhs!r}", lineno)
        if lhs in wires:
            raise ParseError(f"wire {lhs!r} defined twice", lineno)
        op = toks[0].upper()
        if op not in GATE_ARITY:
            raise ParseError(f"unknown gate {toks[0]!r}", lineno)
        if len(toks) - 1 != GATE_ARITY[op]:
            raise ParseError(f"{op} takes {GATE_ARITY[op]} operands, got {len(toks) - 1}", lineno)
        gates.append(Gate(op, tuple(wire(t, lineno) for t in toks[1:])))
        wires[lhs] = n + len(gates) - 1
    if output is None:
        raise ParseError("missing 'out = ...' line")
    return BoolCircuit(n, tuple(gates), output).normalized()


def format_circuit(circuit: BoolCircuit) -> str:
    n = circuit.num_inputs

    def name(w):
        return f"x{w + 1}" if w < n else f"g{w - n + 1}"

    lines = [f"inputs {n}"]
    for j, g in enumerate(circuit.gates):
        lines.append(f"g{j + 1} = {g.op} " + " ".join(name(w) for w in g.operands))
    lines.append(f"out = {name(circuit.output)}")
    return "\n".join(lines) + "\n"


def assignment_from_true_set(n: int, true_vars: Sequence[int]) -> TruthAssignment:
    """Assignment with exactly the 0-based variables in ``true_vars`` set."""
    z = [False] * n
    for i in true_vars:
        z[i] = True
    return tuple(z)


def brute_force_weighted_sat(circuit: BoolCircuit, k: int, cap: int = BRUTE_FORCE_CAP) -> Optional[TruthAssignment]:
    """A satisfying assignment with exactly ``k`` true variables, or None.

    Candidates are tried in lexicographic order of their sorted true-variable
    indices, so ``x1`` true comes before ``x2`` true.
    """
    n = circuit.num_inputs
    if n > cap:
        raise DomainTooLargeError(f"{n} variables exceed the brute-force cap {cap}")
    if not 0 <= k <= n:
        return None
    for combo in itertools.combinations(range(n), k):
        z = assignment_from_true_set(n, combo)
        if eval_circuit(circuit, z):
            return z
    return None
