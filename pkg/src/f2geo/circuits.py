"""AND/XOR netlists realizing GF(2) products as digital circuits.

compile_bilinear turns a structure-constant tensor into the product
V x V -> V on 2n input wires; compile_linear is the XOR-only map
V (x) V -> V on n^2 tensor-component wires; compile_pi is the canonical map
V x V -> V (x) V made of exactly n^2 AND gates.  Composing pi with the
linear netlist reproduces the bilinear one on every input.

Text format (one construct per line, LF-terminated, topological order):

    input <name>
    output <name>
    <out> = AND <in1> <in2>
    <out> = XOR <in1> <in2>

"const0" is a pseudo-wire that always reads 0 and needs no declaration;
an output with no terms is emitted as "<out> = XOR const0 const0".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import StructureConstants, generic_names


class UndefinedWire(KeyError):
    """Simulation hit a wire with no defined value."""


@dataclass(frozen=True)
class Gate:
    out: str
    op: str  # "AND" | "XOR"
    in1: str
    in2: str


@dataclass(frozen=True)
class Netlist:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    outputs: tuple[str, ...]

    def validate(self) -> None:
        defined = set(self.inputs) | {"const0"}
        for g in self.gates:
            if g.in1 not in defined or g.in2 not in defined:
                raise UndefinedWire(f"gate {g.out} uses an undefined wire")
            if g.out in defined:
                raise ValueError(f"wire {g.out} defined twice")
            defined.add(g.out)
        for o in self.outputs:
            if o not in defined:
                raise UndefinedWire(f"output {o} never defined")

    def to_text(self) -> str:
        lines = [f"input {w}" for w in self.inputs]
        lines += [f"output {w}" for w in self.outputs]
        lines += [f"{g.out} = {g.op} {g.in1} {g.in2}" for g in self.gates]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Netlist":
        inputs, outputs, gates = [], [], []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("input "):
                inputs.append(line.split()[1])
            elif line.startswith("output "):
                outputs.append(line.split()[1])
            else:
                out, eq, op, in1, in2 = line.split()
                if eq != "=" or op not in ("AND", "XOR"):
                    raise ValueError(f"bad gate line {line!r}")
                gates.append(Gate(out, op, in1, in2))
        return cls(tuple(inputs), tuple(gates), tuple(outputs))

    def count_gates(self, op: str) -> int:
        return sum(1 for g in self.gates if g.op == op)


def simulate(nl: Netlist, inputs: Mapping[str, int]) -> dict[str, int]:
    """Evaluate the netlist; returns the output wire values."""
    values: dict[str, int] = {"const0": 0}
    for w in nl.inputs:
        if w not in inputs:
            raise UndefinedWire(f"missing input {w}")
        values[w] = inputs[w] & 1
    for g in nl.gates:
        try:
            a, b = values[g.in1], values[g.in2]
        except KeyError as exc:
            raise UndefinedWire(str(exc)) from exc
        values[g.out] = (a & b) if g.op == "AND" else (a ^ b)
    try:
        return {w: values[w] for w in nl.outputs}
    except KeyError as exc:
        raise UndefinedWire(str(exc)) from exc


def _xor_chain(terms: Sequence[str], out: str, fresh) -> list[Gate]:
    """Left-associated XOR chain ending in the named output wire."""
    if not terms:
        return [Gate(out, "XOR", "const0", "const0")]
    if len(terms) == 1:
        return [Gate(out, "XOR", terms[0], "const0")]
    gates = []
    acc = terms[0]
    for t in terms[1:-1]:
        w = fresh()
        gates.append(Gate(w, "XOR", acc, t))
        acc = w
    gates.append(Gate(out, "XOR", acc, terms[-1]))
    return gates


def compile_bilinear(v: StructureConstants, names: Sequence[str] | None = None) -> Netlist:
    """V x V -> V: out_r = XOR over set V^{mu nu}_r of AND(a_mu, b_nu)."""
    n = v.n
    names = list(names or generic_names(n))
    a = [f"a_{nm}" for nm in names]
    b = [f"b_{nm}" for nm in names]
    outs = [f"out_{nm}" for nm in names]
    gates: list[Gate] = []
    counter = iter(range(10**6))

    def fresh() -> str:
        return f"w{next(counter)}"

    # One AND per used (mu, nu) pair, shared across outputs.
    ands: dict[tuple[int, int], str] = {}
    for mu in range(n):
        for nu in range(n):
            if any(v.entry(mu, nu, r) for r in range(n)):
                w = fresh()
                ands[(mu, nu)] = w
                gates.append(Gate(w, "AND", a[mu], b[nu]))
    for r in range(n):
        terms = [ands[(mu, nu)] for mu in range(n) for nu in range(n) if v.entry(mu, nu, r)]
        gates.extend(_xor_chain(terms, outs[r], fresh))
    nl = Netlist(tuple(a + b), tuple(gates), tuple(outs))
    nl.validate()
    return nl


def compile_linear(v: StructureConstants, names: Sequence[str] | None = None) -> Netlist:
    """V (x) V -> V on tensor-component wires; XOR gates only."""
    n = v.n
    names = list(names or generic_names(n))
    tens = [[f"E_{names[i]}_{names[j]}" for j in range(n)] for i in range(n)]
    outs = [f"out_{nm}" for nm in names]
    gates: list[Gate] = []
    counter = iter(range(10**6))

    def fresh() -> str:
        return f"w{next(counter)}"

    for r in range(n):
        terms = [tens[mu][nu] for mu in range(n) for nu in range(n) if v.entry(mu, nu, r)]
        gates.extend(_xor_chain(terms, outs[r], fresh))
    nl = Netlist(tuple(w for row in tens for w in row), tuple(gates), tuple(outs))
    nl.validate()
    return nl


def compile_pi(n: int, names: Sequence[str] | None = None) -> Netlist:
    """Canonical map V x V -> V (x) V: E_{mu nu} = AND(a_mu, b_nu); n^2 AND gates."""
    if n < 1:
        raise ValueError("n >= 1")
    names = list(names or generic_names(n))
    a = [f"a_{nm}" for nm in names]
    b = [f"b_{nm}" for nm in names]
    outs = [f"E_{names[i]}_{names[j]}" for i in range(n) for j in range(n)]
    gates = [
        Gate(f"E_{names[i]}_{names[j]}", "AND", a[i], b[j])
        for i in range(n)
        for j in range(n)
    ]
    nl = Netlist(tuple(a + b), tuple(gates), tuple(outs))
    nl.validate()
    return nl


def table_product(v: StructureConstants, a: int, b: int) -> int:
    """Product of coefficient vectors straight from the tensor (oracle side)."""
    return v.product_of_vectors(a, b)


def vector_inputs(names: Sequence[str], prefix: str, vec: int) -> dict[str, int]:
    return {f"{prefix}_{nm}": (vec >> i) & 1 for i, nm in enumerate(names)}
