"""Standard decomposition of reversible gates into NOT, CNOT, V and V+."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from .circuit import CV, CVD, CX, Circuit, ElementaryGate, Fredkin, Layer, Peres, Toffoli, X
from .errors import InsufficientFreeLines, LayerMismatch

AncillaPolicy = Literal["use-free-lines", "fail-if-insufficient"]


@dataclass(frozen=True)
class DecompositionOptions:
    """``use-free-lines`` borrows an idle line (restored afterwards) for t_m with
    m >= 3; ``fail-if-insufficient`` refuses any gate that would need one."""

    ancilla_policy: AncillaPolicy = "use-free-lines"


DEFAULT_OPTIONS = DecompositionOptions()


def decompose_toffoli2(controls: Sequence[int], target: int) -> list[ElementaryGate]:
    a, b = controls
    c = target
    return [CV(b, c), CX(a, b), CVD(b, c), CX(a, b), CV(a, c)]


def orient_controls(controls: Sequence[int], target: int) -> tuple[int, int]:
    """Order two controls so the one nearest the target comes second.

    The second control drives three of the five gates, so this ordering gives
    the smallest nearest-neighbor cost; ties keep the given order.
    """
    a, b = controls
    if abs(a - target) < abs(b - target):
        return b, a
    return a, b


def decompose_peres(control: int, t1: int, t2: int) -> list[ElementaryGate]:
    a, b, c = control, t1, t2
    return [CV(b, c), CX(a, b), CVD(b, c), CV(a, c)]


def free_line(used: Sequence[int], width: int) -> int | None:
    busy = set(used)
    return next((h for h in range(width) if h not in busy), None)


def lower_toffoli(controls: Sequence[int], target: int, width: int,
                  options: DecompositionOptions = DEFAULT_OPTIONS) -> list[Toffoli]:
    """Rewrite t_m into Toffoli gates with at most two controls.

    Splits the controls into C1 (first ceil(m/2)) and C2 and borrows an idle
    line h: t(C1, h), t(C2+h, t), t(C1, h), t(C2+h, t). h may hold any value;
    it is restored on every input.
    """
    controls = tuple(controls)
    m = len(controls)
    if m <= 2:
        return [Toffoli(controls, target)]
    gate = Toffoli(controls, target)
    if options.ancilla_policy == "fail-if-insufficient":
        raise InsufficientFreeLines(gate, width)
    h = free_line(controls + (target,), width)
    if h is None:
        raise InsufficientFreeLines(gate, width)
    k = math.ceil(m / 2)
    c1, c2 = controls[:k], controls[k:] + (h,)
    first = lower_toffoli(c1, h, width, options)
    second = lower_toffoli(c2, target, width, options)
    return first + second + first + second


def lower_gate(gate, width: int, options: DecompositionOptions = DEFAULT_OPTIONS) -> list:
    """Rewrite one reversible gate into t0/t1/t2 Toffolis and Peres gates."""
    if isinstance(gate, Toffoli):
        return lower_toffoli(gate.controls, gate.target, width, options)
    if isinstance(gate, Peres):
        return [gate]
    if isinstance(gate, Fredkin):
        t1, t2 = gate.targets
        if not gate.controls:
            return [Toffoli((t1,), t2), Toffoli((t2,), t1), Toffoli((t1,), t2)]
        try:
            inner = lower_toffoli(gate.controls + (t1,), t2, width, options)
        except InsufficientFreeLines:
            raise InsufficientFreeLines(gate, width) from None
        return [Toffoli((t2,), t1)] + inner + [Toffoli((t2,), t1)]
    raise TypeError(f"not a reversible gate: {gate!r}")


def elementary_of(gate) -> list[ElementaryGate]:
    if isinstance(gate, Peres):
        return decompose_peres(gate.control, gate.target1, gate.target2)
    m = len(gate.controls)
    if m == 0:
        return [X(gate.target)]
    if m == 1:
        return [CX(gate.controls[0], gate.target)]
    return decompose_toffoli2(orient_controls(gate.controls, gate.target), gate.target)


def decompose_mct(controls: Sequence[int], target: int, width: int,
                  options: DecompositionOptions = DEFAULT_OPTIONS) -> list[ElementaryGate]:
    out: list[ElementaryGate] = []
    for g in lower_toffoli(controls, target, width, options):
        out.extend(elementary_of(g))
    return out


def decompose_fredkin(controls: Sequence[int], targets: Sequence[int], width: int,
                      options: DecompositionOptions = DEFAULT_OPTIONS) -> list[ElementaryGate]:
    out: list[ElementaryGate] = []
    for g in lower_gate(Fredkin(tuple(controls), tuple(targets)), width, options):
        out.extend(elementary_of(g))
    return out


def decompose_gate(gate, width: int, options: DecompositionOptions = DEFAULT_OPTIONS) -> list[ElementaryGate]:
    out: list[ElementaryGate] = []
    for g in lower_gate(gate, width, options):
        out.extend(elementary_of(g))
    return out


def decompose_circuit(circuit: Circuit, options: DecompositionOptions | None = None) -> Circuit:
    if circuit.layer is not Layer.REVERSIBLE:
        raise LayerMismatch("decompose_circuit needs a reversible circuit")
    options = options or DEFAULT_OPTIONS
    gates: list[ElementaryGate] = []
    for g in circuit.gates:
        gates.extend(decompose_gate(g, circuit.width, options))
    return circuit.with_gates(gates, Layer.ELEMENTARY)
