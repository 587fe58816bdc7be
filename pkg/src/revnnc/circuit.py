"""Circuit intermediate representation and Boolean/4-valued simulation.

Two gate layers exist and never mix inside one circuit:

* reversible gates -- multiple-control Toffoli, multiple-control Fredkin, Peres;
* elementary gates -- NOT, CNOT, controlled-V and controlled-V+.

Elementary circuits are simulated over the four values {0, 1, V0, V1}, where
``V0 = V|0>`` and ``V1 = V|1>``. Starting from a Boolean basis input the state
stays a product of these four values as long as every control that fires is
Boolean, so the model is exact for the circuits this package produces.

Line 0 is the top line and the most significant bit of a truth-table index.
"""
from __future__ import annotations

import enum
import string
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence, Union

from .errors import ControlNotBoolean, LayerMismatch, NotABijection, NotBooleanReversible

DEFAULT_MAX_WIDTH = 16


class Layer(str, enum.Enum):
    REVERSIBLE = "reversible"
    ELEMENTARY = "elementary"


class FourVal(enum.IntEnum):
    ZERO = 0
    ONE = 1
    V0 = 2
    V1 = 3

    @property
    def is_boolean(self) -> bool:
        return self <= FourVal.ONE


_NOT = (FourVal.ONE, FourVal.ZERO, FourVal.V1, FourVal.V0)
_V = (FourVal.V0, FourVal.V1, FourVal.ONE, FourVal.ZERO)
_VDAG = (FourVal.V1, FourVal.V0, FourVal.ZERO, FourVal.ONE)


def apply_not(v: FourVal) -> FourVal:
    return _NOT[v]


def apply_v(v: FourVal) -> FourVal:
    return _V[v]


def apply_vdag(v: FourVal) -> FourVal:
    return _VDAG[v]


# --------------------------------------------------------------------------- gates


@dataclass(frozen=True)
class Toffoli:
    """``t_m(C, t)``: inverts ``target`` iff all ``controls`` are 1."""

    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        _check_distinct(self.controls + (self.target,), self)

    @property
    def lines(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset(self.controls)

    @property
    def target_lines(self) -> frozenset[int]:
        return frozenset((self.target,))

    def mapped(self, perm: Sequence[int]) -> "Toffoli":
        return Toffoli(tuple(perm[c] for c in self.controls), perm[self.target])

    def same_function(self, other) -> bool:
        return (
            isinstance(other, Toffoli)
            and self.target == other.target
            and set(self.controls) == set(other.controls)
        )

    def __str__(self) -> str:
        return f"t{len(self.controls)}({{{','.join(map(str, self.controls))}}},{self.target})"


@dataclass(frozen=True)
class Fredkin:
    """``f_m(C, {t1, t2})``: swaps the two targets iff all controls are 1."""

    controls: tuple[int, ...]
    targets: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        if len(self.targets) != 2:
            raise ValueError("a Fredkin gate has exactly two targets")
        # targets are an unordered pair
        object.__setattr__(self, "targets", tuple(sorted(self.targets)))
        _check_distinct(self.controls + self.targets, self)

    @property
    def lines(self) -> tuple[int, ...]:
        return self.controls + self.targets

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset(self.controls)

    @property
    def target_lines(self) -> frozenset[int]:
        return frozenset(self.targets)

    def mapped(self, perm: Sequence[int]) -> "Fredkin":
        return Fredkin(tuple(perm[c] for c in self.controls), (perm[self.targets[0]], perm[self.targets[1]]))

    def same_function(self, other) -> bool:
        return (
            isinstance(other, Fredkin)
            and self.targets == other.targets
            and set(self.controls) == set(other.controls)
        )

    def __str__(self) -> str:
        return f"f{len(self.controls)}({{{','.join(map(str, self.controls))}}},{self.targets})"


@dataclass(frozen=True)
class Peres:
    """``t2({control, target1}, target2)`` followed by ``t1({control}, target1)``."""

    control: int
    target1: int
    target2: int

    def __post_init__(self):
        _check_distinct((self.control, self.target1, self.target2), self)

    @property
    def lines(self) -> tuple[int, ...]:
        return (self.control, self.target1, self.target2)

    @property
    def controls(self) -> tuple[int, ...]:
        return (self.control,)

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset((self.control,))

    @property
    def target_lines(self) -> frozenset[int]:
        return frozenset((self.target1, self.target2))

    def mapped(self, perm: Sequence[int]) -> "Peres":
        return Peres(perm[self.control], perm[self.target1], perm[self.target2])

    def same_function(self, other) -> bool:
        return self == other

    def cascade(self) -> tuple[Toffoli, Toffoli]:
        return (
            Toffoli((self.control, self.target1), self.target2),
            Toffoli((self.control,), self.target1),
        )

    def __str__(self) -> str:
        return f"P({self.control},{self.target1},{self.target2})"


ReversibleGate = Union[Toffoli, Fredkin, Peres]


class Op(str, enum.Enum):
    X = "X"
    CX = "CX"
    CV = "CV"
    CVD = "CVD"

    @property
    def inverse(self) -> "Op":
        if self is Op.CV:
            return Op.CVD
        if self is Op.CVD:
            return Op.CV
        return self


@dataclass(frozen=True, order=True)
class ElementaryGate:
    op: Op
    target: int
    control: int | None = None

    def __post_init__(self):
        if self.op is Op.X:
            if self.control is not None:
                raise ValueError("NOT takes no control")
        elif self.control is None:
            raise ValueError(f"{self.op.value} needs a control line")
        elif self.control == self.target:
            raise ValueError(f"{self.op.value} control and target coincide")

    @property
    def is_two_qubit(self) -> bool:
        return self.control is not None

    @property
    def lines(self) -> tuple[int, ...]:
        return (self.target,) if self.control is None else (self.control, self.target)

    @property
    def control_lines(self) -> frozenset[int]:
        return frozenset() if self.control is None else frozenset((self.control,))

    @property
    def target_lines(self) -> frozenset[int]:
        return frozenset((self.target,))

    def mapped(self, perm: Sequence[int]) -> "ElementaryGate":
        control = None if self.control is None else perm[self.control]
        return ElementaryGate(self.op, perm[self.target], control)

    def shifted(self, offset: int) -> "ElementaryGate":
        control = None if self.control is None else self.control + offset
        return ElementaryGate(self.op, self.target + offset, control)

    def inverse(self) -> "ElementaryGate":
        return ElementaryGate(self.op.inverse, self.target, self.control)

    def __str__(self) -> str:
        if self.control is None:
            return f"X({self.target})"
        return f"{self.op.value}({self.control},{self.target})"


def X(target: int) -> ElementaryGate:
    return ElementaryGate(Op.X, target)


def CX(control: int, target: int) -> ElementaryGate:
    return ElementaryGate(Op.CX, target, control)


def CV(control: int, target: int) -> ElementaryGate:
    return ElementaryGate(Op.CV, target, control)


def CVD(control: int, target: int) -> ElementaryGate:
    return ElementaryGate(Op.CVD, target, control)


Gate = Union[Toffoli, Fredkin, Peres, ElementaryGate]


def _check_distinct(lines: tuple[int, ...], gate) -> None:
    if len(set(lines)) != len(lines):
        raise ValueError(f"gate {type(gate).__name__}{lines} uses a line twice")
    if any(l < 0 for l in lines):
        raise ValueError(f"negative line index in {type(gate).__name__}{lines}")


# ------------------------------------------------------------------------- circuit


@dataclass(frozen=True)
class LineInfo:
    name: str
    constant: int | None = None
    garbage: bool = False

    def __post_init__(self):
        if self.constant not in (None, 0, 1):
            raise ValueError(f"constant must be 0, 1 or None, got {self.constant!r}")


def default_names(width: int) -> tuple[str, ...]:
    if width <= 26:
        return tuple(string.ascii_lowercase[:width])
    return tuple(f"x{i}" for i in range(width))


@dataclass(frozen=True)
class Circuit:
    """An immutable gate cascade on ``width`` lines.

    ``input_signals`` / ``output_signals`` name the logical signal entering and
    leaving each physical line; ``None`` means "the line's own name". Passes that
    reorder lines record the reordering there, which is also what the ``.inputs``
    and ``.outputs`` header lines of a ``.real`` file carry.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    layer: Layer | None = None
    lines: tuple[LineInfo, ...] | None = None
    input_signals: tuple[str, ...] | None = None
    output_signals: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("circuit width must be positive")
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        layer = self.layer
        if layer is None:
            layer = Layer.ELEMENTARY if gates and all(isinstance(g, ElementaryGate) for g in gates) else Layer.REVERSIBLE
        layer = Layer(layer)
        object.__setattr__(self, "layer", layer)
        for g in gates:
            is_elem = isinstance(g, ElementaryGate)
            if is_elem != (layer is Layer.ELEMENTARY):
                raise LayerMismatch(f"gate {g} does not belong to a {layer.value} circuit")
            if max(g.lines) >= self.width:
                raise ValueError(f"gate {g} references a line outside width {self.width}")
        lines = self.lines
        if lines is None:
            lines = tuple(LineInfo(name) for name in default_names(self.width))
        lines = tuple(lines)
        if len(lines) != self.width:
            raise ValueError("line metadata length differs from width")
        if len({l.name for l in lines}) != self.width:
            raise ValueError("line names must be unique")
        object.__setattr__(self, "lines", lines)
        for attr in ("input_signals", "output_signals"):
            sig = getattr(self, attr)
            if sig is not None:
                sig = tuple(sig)
                if len(sig) != self.width:
                    raise ValueError(f"{attr} length differs from width")
                object.__setattr__(self, attr, sig)

    # -- metadata
    @property
    def names(self) -> tuple[str, ...]:
        return tuple(l.name for l in self.lines)

    @property
    def n(self) -> int:
        return self.width

    @property
    def n_c(self) -> int:
        return sum(1 for l in self.lines if l.constant is not None)

    @property
    def n_g(self) -> int:
        return sum(1 for l in self.lines if l.garbage)

    @property
    def inputs(self) -> tuple[str, ...]:
        return self.input_signals if self.input_signals is not None else self.names

    @property
    def outputs(self) -> tuple[str, ...]:
        return self.output_signals if self.output_signals is not None else self.names

    @property
    def output_permutation(self) -> tuple[int, ...] | None:
        """``perm[j]`` = physical line where the signal entering line ``j`` leaves.

        ``None`` for the identity, or when input and output signal names are not
        the same set (e.g. RevLib files naming outputs ``f1 f2 ...``).
        """
        ins, outs = self.inputs, self.outputs
        if set(ins) != set(outs):
            return None
        where = {name: j for j, name in enumerate(outs)}
        perm = tuple(where[name] for name in ins)
        return None if perm == tuple(range(self.width)) else perm

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates: Iterable[Gate], layer: Layer | None = None) -> "Circuit":
        return Circuit(self.width, tuple(gates), layer or self.layer, self.lines, self.input_signals, self.output_signals)


def as_elementary(circuit: Circuit) -> Circuit:
    """Reinterpret a NOT/CNOT-only reversible circuit on the elementary layer."""
    if circuit.layer is Layer.ELEMENTARY:
        return circuit
    out = []
    for g in circuit.gates:
        if not isinstance(g, Toffoli) or len(g.controls) > 1:
            raise LayerMismatch(f"{g} is not an elementary gate")
        out.append(X(g.target) if not g.controls else CX(g.controls[0], g.target))
    return Circuit(circuit.width, out, Layer.ELEMENTARY, circuit.lines, circuit.input_signals, circuit.output_signals)


# ---------------------------------------------------------------------- simulation


def bits_of(index: int, width: int) -> list[int]:
    return [(index >> (width - 1 - l)) & 1 for l in range(width)]


def index_of(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def simulate_reversible(circuit: Circuit, inputs: Sequence[int]) -> tuple[int, ...]:
    if circuit.layer is not Layer.REVERSIBLE:
        raise LayerMismatch("simulate_reversible needs a reversible circuit")
    if len(inputs) != circuit.width:
        raise ValueError("input length differs from circuit width")
    state = [int(b) & 1 for b in inputs]
    for g in circuit.gates:
        if isinstance(g, Toffoli):
            if all(state[c] for c in g.controls):
                state[g.target] ^= 1
        elif isinstance(g, Fredkin):
            if all(state[c] for c in g.controls):
                a, b = g.targets
                state[a], state[b] = state[b], state[a]
        else:
            if state[g.control] and state[g.target1]:
                state[g.target2] ^= 1
            if state[g.control]:
                state[g.target1] ^= 1
    return tuple(state)


def _is_swap_triple(gates: Sequence[ElementaryGate], k: int) -> bool:
    if k + 2 >= len(gates):
        return False
    a, b, c = gates[k], gates[k + 1], gates[k + 2]
    if not (a.op is Op.CX and b.op is Op.CX and c.op is Op.CX):
        return False
    return a == c and b.control == a.target and b.target == a.control


def simulate_elementary(circuit: Circuit, inputs: Sequence[FourVal | int]) -> tuple[FourVal, ...]:
    """Run the circuit left to right over {0, 1, V0, V1}.

    Three alternating CNOTs on one line pair are exactly a SWAP and are executed
    as one, so SWAPs inserted by routing may move lines that currently hold V0/V1.

    Raises:
        ControlNotBoolean: a controlled gate saw V0/V1 on its control line.
    """
    if circuit.layer is not Layer.ELEMENTARY:
        raise LayerMismatch("simulate_elementary needs an elementary circuit")
    if len(inputs) != circuit.width:
        raise ValueError("input length differs from circuit width")
    state = [FourVal(v) for v in inputs]
    gates = circuit.gates
    k = 0
    while k < len(gates):
        g = gates[k]
        if _is_swap_triple(gates, k):
            i, j = g.control, g.target
            state[i], state[j] = state[j], state[i]
            k += 3
            continue
        if g.op is Op.X:
            state[g.target] = _NOT[state[g.target]]
        else:
            c = state[g.control]
            if not c.is_boolean:
                raise ControlNotBoolean(k, g, c)
            if c is FourVal.ONE:
                table = _NOT if g.op is Op.CX else _V if g.op is Op.CV else _VDAG
                state[g.target] = table[state[g.target]]
        k += 1
    return tuple(state)


def extract_permutation(circuit: Circuit, max_width: int = DEFAULT_MAX_WIDTH) -> tuple[int, ...]:
    """Truth table of the circuit as a tuple ``perm[i] = output index``.

    Raises:
        NotBooleanReversible: an elementary circuit leaves V0/V1 on some output,
            hits a non-Boolean control, or is not a bijection.
    """
    n = circuit.width
    if n > max_width:
        raise ValueError(f"width {n} exceeds the simulation bound {max_width}")
    table = []
    for i in range(1 << n):
        bits = bits_of(i, n)
        if circuit.layer is Layer.REVERSIBLE:
            table.append(index_of(simulate_reversible(circuit, bits)))
            continue
        try:
            out = simulate_elementary(circuit, bits)
        except ControlNotBoolean as exc:
            raise NotBooleanReversible(f"input {i:0{n}b}: {exc}", i) from exc
        if not all(v.is_boolean for v in out):
            raise NotBooleanReversible(f"input {i:0{n}b} produces a non-Boolean output", i)
        table.append(index_of(out))
    if len(set(table)) != len(table):
        raise NotBooleanReversible("circuit does not realize a bijection")
    return tuple(table)


def _signal_positions(signals: Sequence[str]) -> dict[str, int]:
    pos = {name: j for j, name in enumerate(signals)}
    if len(pos) != len(signals):
        raise ValueError(f"duplicate signal names in {tuple(signals)}")
    return pos


def counterexample(c1: Circuit, c2: Circuit, modulo_permutation: bool = False) -> int | None:
    """First input index (in ``c1``'s line order) where the circuits differ, or None.

    With ``modulo_permutation`` the lines are aligned through the input/output
    signal names, so a circuit whose lines were reordered by a pass is compared
    signal by signal with its source.
    """
    if c1.width != c2.width:
        raise ValueError(f"width mismatch: {c1.width} vs {c2.width}")
    n = c1.width
    p1 = extract_permutation(c1)
    p2 = extract_permutation(c2)
    if not modulo_permutation:
        for i in range(1 << n):
            if p1[i] != p2[i]:
                return i
        return None
    in1, in2 = _signal_positions(c1.inputs), _signal_positions(c2.inputs)
    out1, out2 = _signal_positions(c1.outputs), _signal_positions(c2.outputs)
    if in1.keys() != in2.keys() or out1.keys() != out2.keys():
        raise ValueError("circuits cannot be aligned: signal names differ")
    for i in range(1 << n):
        x = bits_of(i, n)
        y = [0] * n
        for name, j in in1.items():
            y[in2[name]] = x[j]
        o1 = bits_of(p1[i], n)
        o2 = bits_of(p2[index_of(y)], n)
        if any(o1[j] != o2[out2[name]] for name, j in out1.items()):
            return i
    return None


def equivalent(c1: Circuit, c2: Circuit, modulo_permutation: bool = False) -> bool:
    return counterexample(c1, c2, modulo_permutation) is None


def check_bijection(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotABijection(f"{perm} is not a permutation of 0..{n - 1}")
    return perm


def invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def apply_line_relabeling(circuit: Circuit, perm: Sequence[int]) -> Circuit:
    """Move line ``i`` to position ``perm[i]``; gates, metadata and signals follow."""
    perm = check_bijection(perm, circuit.width)
    inv = invert(perm)
    lines = tuple(circuit.lines[inv[j]] for j in range(circuit.width))

    def move(sig):
        return None if sig is None else tuple(sig[inv[j]] for j in range(circuit.width))

    return Circuit(
        circuit.width,
        tuple(g.mapped(perm) for g in circuit.gates),
        circuit.layer,
        lines,
        move(circuit.input_signals),
        move(circuit.output_signals),
    )


def reflection(width: int) -> tuple[int, ...]:
    return tuple(range(width - 1, -1, -1))


def all_inputs(width: int):
    return product((0, 1), repeat=width)
