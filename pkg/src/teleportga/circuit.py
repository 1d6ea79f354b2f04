"""Circuit representation, file formats, QFT generation and decomposition."""

from __future__ import annotations

import random
import string
from collections import Counter
from dataclasses import dataclass, field

SINGLE_QUBIT = frozenset({"X", "Y", "Z", "H", "S", "Sdg", "T", "Tdg", "Rk", "RkDg"})
# diagonal in the computational basis
DIAGONAL = frozenset({"Z", "S", "Sdg", "T", "Tdg", "Rk", "RkDg"})
MULTI_QUBIT = frozenset({"CNOT", "CRk", "Toffoli", "MCT", "Fredkin"})
BASIC = SINGLE_QUBIT | {"CNOT"}


class CircuitError(ValueError):
    """Malformed circuit or unsupported operation on a circuit."""


class ParseError(CircuitError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Gate:
    """One circuit element.

    ``kind`` is a label from SINGLE_QUBIT or MULTI_QUBIT. Fredkin is the only
    kind with two targets; every other gate has exactly one. ``k`` is the
    phase order for Rk, RkDg and CRk (R_k = diag(1, exp(2*pi*i / 2**k))).
    """

    kind: str
    controls: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    k: int | None = None

    def __post_init__(self):
        kind = self.kind
        if kind not in SINGLE_QUBIT and kind not in MULTI_QUBIT:
            raise CircuitError(f"unknown gate kind {kind!r}")
        ops = self.qubits
        if len(set(ops)) != len(ops):
            raise CircuitError(f"{kind} has repeated operands {ops}")
        if any(q < 0 for q in ops):
            raise CircuitError(f"{kind} has a negative qubit index")
        nc, nt = len(self.controls), len(self.targets)
        expected = {
            "CNOT": (nc == 1, nt == 1),
            "CRk": (nc == 1, nt == 1),
            "Toffoli": (nc == 2, nt == 1),
            "MCT": (nc >= 3, nt == 1),
            "Fredkin": (nc == 1, nt == 2),
        }.get(kind, (nc == 0, nt == 1))
        if not all(expected):
            raise CircuitError(f"{kind} cannot have {nc} controls and {nt} targets")
        if kind in ("Rk", "RkDg", "CRk"):
            if self.k is None or self.k < 1:
                raise CircuitError(f"{kind} needs a phase order k >= 1")
        elif self.k is not None:
            raise CircuitError(f"{kind} takes no phase order")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    @property
    def target(self) -> int:
        return self.targets[-1]

    @property
    def control(self) -> int:
        return self.controls[0]

    @property
    def is_single(self) -> bool:
        return self.kind in SINGLE_QUBIT

    @property
    def is_cnot(self) -> bool:
        return self.kind == "CNOT"

    @property
    def label(self) -> str:
        if self.k is not None:
            return f"{self.kind}({self.k})"
        return self.kind

    def __str__(self):
        if self.is_single:
            return f"{self.label}(q{self.target})"
        ctl = ",".join(f"q{c}" for c in self.controls)
        tgt = ",".join(f"q{t}" for t in self.targets)
        return f"{self.label}({ctl};{tgt})"


def single(label: str, q: int, k: int | None = None) -> Gate:
    return Gate(label, (), (q,), k)


def cnot(c: int, t: int) -> Gate:
    return Gate("CNOT", (c,), (t,))


def toffoli(c1: int, c2: int, t: int) -> Gate:
    return Gate("Toffoli", (c1, c2), (t,))


def mct(controls, t: int) -> Gate:
    controls = tuple(controls)
    if len(controls) == 1:
        return cnot(controls[0], t)
    if len(controls) == 2:
        return toffoli(controls[0], controls[1], t)
    return Gate("MCT", controls, (t,))


def fredkin(c: int, a: int, b: int) -> Gate:
    return Gate("Fredkin", (c,), (a, b))


def crk(k: int, c: int, t: int) -> Gate:
    return Gate("CRk", (c,), (t,), k)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``n_qubits`` wires.

    Gate index is the position in ``gates``. ``variables`` holds wire names
    read from or written to ``.real`` files; it takes no part in equality.
    """

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = "circuit"
    variables: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_qubits < 0:
            raise CircuitError("n_qubits must be non-negative")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, g in enumerate(self.gates):
            if any(q >= self.n_qubits for q in g.qubits):
                raise CircuitError(f"gate {i} ({g}) addresses a qubit outside 0..{self.n_qubits - 1}")
        if self.variables is not None and len(self.variables) != self.n_qubits:
            raise CircuitError("variables must name every qubit exactly once")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __getitem__(self, i):
        return self.gates[i]

    @property
    def is_basic(self) -> bool:
        return all(g.kind in BASIC for g in self.gates)

    def with_gates(self, gates) -> Circuit:
        return Circuit(self.n_qubits, tuple(gates), self.name, self.variables)


# ---------------------------------------------------------------------------
# RevLib .real

_REAL_IGNORED = {".version", ".inputs", ".outputs", ".constants", ".garbage",
                 ".inputbus", ".outputbus", ".state", ".module", ".define", ".enddefine"}


def parse_real(text: str, name: str = "circuit") -> Circuit:
    numvars = None
    variables: list[str] | None = None
    index: dict[str, int] = {}
    gates: list[Gate] = []
    state = "header"

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()

        if state == "done":
            raise ParseError("content after .end", lineno)

        if head.startswith("."):
            if head == ".numvars":
                if len(tokens) != 2 or not tokens[1].isdigit():
                    raise ParseError(".numvars expects one integer", lineno)
                numvars = int(tokens[1])
            elif head == ".variables":
                variables = tokens[1:]
                if len(set(variables)) != len(variables):
                    raise ParseError("duplicate variable name", lineno)
                index = {v: i for i, v in enumerate(variables)}
            elif head == ".begin":
                if state != "header":
                    raise ParseError("duplicate .begin", lineno)
                if variables is None:
                    raise ParseError(".begin before .variables", lineno)
                if numvars is None:
                    numvars = len(variables)
                if numvars != len(variables):
                    raise ParseError(f".numvars {numvars} but {len(variables)} variables declared", lineno)
                state = "body"
            elif head == ".end":
                if state != "body":
                    raise ParseError(".end without .begin", lineno)
                state = "done"
            elif head in _REAL_IGNORED:
                if state != "header":
                    raise ParseError(f"{tokens[0]} inside the gate section", lineno)
            else:
                raise ParseError(f"unknown directive {tokens[0]}", lineno)
            continue

        if state != "body":
            raise ParseError(f"gate line {tokens[0]!r} outside .begin/.end", lineno)
        kind, arity = head[0], head[1:]
        if kind not in "tf" or not arity.isdigit():
            raise ParseError(f"unsupported gate {tokens[0]!r}", lineno)
        arity = int(arity)
        operands = tokens[1:]
        if len(operands) != arity:
            raise ParseError(f"{tokens[0]} expects {arity} operands, got {len(operands)}", lineno)
        for v in operands:
            if v not in index:
                raise ParseError(f"undeclared variable {v!r}", lineno)
        if len(set(operands)) != len(operands):
            raise ParseError("duplicate operand", lineno)
        qs = [index[v] for v in operands]
        if kind == "t":
            if arity < 1:
                raise ParseError("t gate needs at least one operand", lineno)
            gates.append(single("X", qs[0]) if arity == 1 else mct(qs[:-1], qs[-1]))
        else:
            if arity != 3:
                raise ParseError("only f3 Fredkin gates are supported", lineno)
            gates.append(fredkin(*qs))

    if state == "header":
        raise ParseError("missing .begin")
    if state == "body":
        raise ParseError("missing .end")
    return Circuit(numvars, tuple(gates), name, tuple(variables))


def default_variables(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"x{i}" for i in range(n))


def serialize_real(c: Circuit) -> str:
    names = c.variables or default_variables(c.n_qubits)
    lines = []
    for i, g in enumerate(c.gates):
        if g.kind == "X":
            ops = g.qubits
        elif g.kind in ("CNOT", "Toffoli", "MCT"):
            ops = g.qubits
        elif g.kind == "Fredkin":
            lines.append("f3 " + " ".join(names[q] for q in g.qubits))
            continue
        else:
            raise CircuitError(f"gate {i} ({g}) is not representable in .real; use the .dqc format")
        lines.append(f"t{len(ops)} " + " ".join(names[q] for q in ops))
    header = [
        ".version 1.0",
        f".numvars {c.n_qubits}",
        ".variables " + " ".join(names),
        ".begin",
    ]
    return "\n".join(header + lines + [".end"]) + "\n"


# ---------------------------------------------------------------------------
# native .dqc format: one gate per line, qubit indices, phase order first

_NATIVE_SINGLE = {"x": "X", "y": "Y", "z": "Z", "h": "H", "s": "S", "sdg": "Sdg",
                  "t": "T", "tdg": "Tdg"}
_NATIVE_NAME = {v: k for k, v in _NATIVE_SINGLE.items()}


def parse_native(text: str, name: str = "circuit") -> Circuit:
    n = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        op = op.lower()
        if op == "name":
            name = " ".join(args)
            continue
        if op == "qubits":
            if n is not None or len(args) != 1 or not args[0].isdigit():
                raise ParseError("expected a single 'qubits N' line", lineno)
            n = int(args[0])
            continue
        if n is None:
            raise ParseError("gate before 'qubits N' header", lineno)
        try:
            vals = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"non-integer operand in {line!r}", lineno) from None
        try:
            if op in _NATIVE_SINGLE and len(vals) == 1:
                g = single(_NATIVE_SINGLE[op], vals[0])
            elif op in ("rk", "rkdg") and len(vals) == 2:
                g = single("Rk" if op == "rk" else "RkDg", vals[1], vals[0])
            elif op == "cnot" and len(vals) == 2:
                g = cnot(*vals)
            elif op == "crk" and len(vals) == 3:
                g = crk(*vals)
            elif op == "toffoli" and len(vals) == 3:
                g = toffoli(*vals)
            elif op == "mct" and len(vals) >= 4:
                g = Gate("MCT", tuple(vals[:-1]), (vals[-1],))
            elif op == "fredkin" and len(vals) == 3:
                g = fredkin(*vals)
            else:
                raise ParseError(f"unknown gate line {line!r}", lineno)
        except ParseError:
            raise
        except CircuitError as exc:
            raise ParseError(str(exc), lineno) from None
        if any(q >= n for q in g.qubits):
            raise ParseError(f"qubit index out of range 0..{n - 1}", lineno)
        gates.append(g)
    if n is None:
        raise ParseError("missing 'qubits N' header")
    return Circuit(n, tuple(gates), name)


def serialize_native(c: Circuit) -> str:
    lines = [f"name {c.name}", f"qubits {c.n_qubits}"]
    for g in c.gates:
        if g.kind in _NATIVE_NAME:
            lines.append(f"{_NATIVE_NAME[g.kind]} {g.target}")
        elif g.kind in ("Rk", "RkDg"):
            lines.append(f"{g.kind.lower()} {g.k} {g.target}")
        elif g.kind == "CRk":
            lines.append(f"crk {g.k} {g.control} {g.target}")
        else:
            lines.append(f"{g.kind.lower()} " + " ".join(map(str, g.qubits)))
    return "\n".join(lines) + "\n"


def load_circuit(path) -> Circuit:
    """Read a ``.real`` or ``.dqc`` file, chosen by extension."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".real":
        return parse_real(text, name=path.stem)
    if path.suffix == ".dqc":
        return parse_native(text, name=path.stem)
    raise CircuitError(f"{path}: unknown circuit format (expected .real or .dqc)")


def save_circuit(c: Circuit, path) -> None:
    from pathlib import Path

    path = Path(path)
    text = serialize_real(c) if path.suffix == ".real" else serialize_native(c)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# generators

def generate_qft(n: int, decompose: bool = True) -> Circuit:
    """QFT on ``n`` qubits without the final swap layer.

    Qubit i gets H followed by controlled-R_{j-i+1} from every later qubit j.
    Controlled phases are expanded into basic gates unless ``decompose`` is
    False.
    """
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    gates: list[Gate] = []
    for i in range(n):
        gates.append(single("H", i))
        for j in range(i + 1, n):
            g = crk(j - i + 1, j, i)
            gates.extend(_decompose_crk(g) if decompose else [g])
    return Circuit(n, tuple(gates), f"qft{n}")


def parity_chain(n: int, target: int = 0) -> Circuit:
    """CNOT from every other qubit into ``target``, in qubit order."""
    gates = [cnot(q, target) for q in range(n) if q != target]
    return Circuit(n, tuple(gates), f"parity{n}", default_variables(n))


def random_basic_circuit(n_qubits: int, n_gates: int, rng: random.Random,
                         p_cnot: float = 0.5, labels=("H", "X", "Z", "S", "T", "Tdg", "Rk")) -> Circuit:
    gates = []
    for _ in range(n_gates):
        if n_qubits >= 2 and rng.random() < p_cnot:
            c, t = rng.sample(range(n_qubits), 2)
            gates.append(cnot(c, t))
        else:
            label = rng.choice(labels)
            k = rng.randint(2, 5) if label in ("Rk", "RkDg") else None
            gates.append(single(label, rng.randrange(n_qubits), k))
    return Circuit(n_qubits, tuple(gates), "random")


# ---------------------------------------------------------------------------
# decomposition to CNOT + single-qubit gates

def _decompose_crk(g: Gate) -> list[Gate]:
    c, t, k = g.control, g.target, g.k
    return [
        single("Rk", c, k + 1),
        single("Rk", t, k + 1),
        cnot(c, t),
        single("RkDg", t, k + 1),
        cnot(c, t),
    ]


def _decompose_toffoli(a: int, b: int, c: int) -> list[Gate]:
    return [
        single("H", c),
        cnot(b, c), single("Tdg", c),
        cnot(a, c), single("T", c),
        cnot(b, c), single("Tdg", c),
        cnot(a, c), single("T", b), single("T", c),
        single("H", c),
        cnot(a, b), single("T", a), single("Tdg", b),
        cnot(a, b),
    ]


def expand_mct(g: Gate, n_qubits: int, index: int | None = None) -> list[Gate]:
    """Rewrite an MCT into Toffoli and CNOT gates using one borrowed qubit.

    The lowest-index qubit not touched by the gate serves as the ancilla. Its
    state is restored, so it may hold live data. Toffolis are left intact.
    """
    controls, t = g.controls, g.target
    if len(controls) <= 2:
        return [mct(controls, t)]
    used = set(g.qubits)
    idle = next((q for q in range(n_qubits) if q not in used), None)
    if idle is None:
        where = f"gate {index}" if index is not None else "gate"
        raise CircuitError(f"{where} ({g}): MCT with {len(controls)} controls needs an idle qubit "
                           f"(n_qubits >= {len(controls) + 2})")
    half = (len(controls) + 1) // 2
    first, second = controls[:half], controls[half:]
    to_target = mct(second + (idle,), t)
    to_ancilla = mct(first, idle)
    out = []
    for sub in (to_target, to_ancilla, to_target, to_ancilla):
        out.extend(expand_mct(sub, n_qubits, index))
    return out


def decompose_gate(g: Gate, n_qubits: int, index: int | None = None) -> list[Gate]:
    if g.kind in BASIC:
        return [g]
    if g.kind == "CRk":
        return _decompose_crk(g)
    if g.kind == "Toffoli":
        return _decompose_toffoli(g.controls[0], g.controls[1], g.target)
    if g.kind == "Fredkin":
        c, (a, b) = g.control, g.targets
        return [cnot(b, a), *_decompose_toffoli(c, a, b), cnot(b, a)]
    if g.kind == "MCT":
        out = []
        for sub in expand_mct(g, n_qubits, index):
            out.extend(decompose_gate(sub, n_qubits, index))
        return out
    raise CircuitError(f"cannot decompose {g}")


def decompose_to_basic(c: Circuit) -> Circuit:
    if c.is_basic:
        return c
    gates = []
    for i, g in enumerate(c.gates):
        gates.extend(decompose_gate(g, c.n_qubits, i))
    return c.with_gates(gates)


def gate_counts(c: Circuit) -> dict:
    hist = Counter(g.kind for g in c.gates)
    return {"m_t": len(c.gates), "kinds": dict(sorted(hist.items()))}
