"""Passes that turn circuits into nearest-neighbor-optimal (NNC = 0) circuits.

Every SWAP a pass inserts acts on two adjacent lines and is emitted as three
CNOTs, so the quantum cost of a pass result is simply its gate count.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .circuit import CX, Circuit, ElementaryGate, Layer, apply_line_relabeling, equivalent
from .decompose import DecompositionOptions, decompose_circuit, elementary_of, lower_gate
from .errors import LayerMismatch, MacroVerificationFailed
from .metrics import gate_nnc, nnc

STRATEGIES = ("naive", "macro", "global", "local", "global-local")


@dataclass(frozen=True)
class PassResult:
    """Output of one pass.

    ``input_relabeling[l]`` is the physical line that carries source line ``l``
    (global reordering); ``output_permutation[l]`` is the physical line where
    the value of line ``l`` of the (relabeled) circuit ends up (local reordering).
    """

    circuit: Circuit
    strategy: str
    input_relabeling: tuple[int, ...] | None = None
    output_permutation: tuple[int, ...] | None = None
    restored_swaps: int = 0

    @property
    def qc(self) -> int:
        return len(self.circuit.gates)

    @property
    def nnc(self) -> int:
        return nnc(self.circuit)


def swap_gates(i: int, j: int) -> list[ElementaryGate]:
    if abs(i - j) != 1:
        raise ValueError(f"SWAP({i},{j}) is not adjacent")
    return [CX(i, j), CX(j, i), CX(i, j)]


def _require_elementary(circuit: Circuit) -> None:
    if circuit.layer is not Layer.ELEMENTARY:
        raise LayerMismatch("pass needs an elementary circuit; decompose first")


def _identity_or(perm: Sequence[int]) -> tuple[int, ...] | None:
    perm = tuple(perm)
    return None if perm == tuple(range(len(perm))) else perm


def route_gate(g: ElementaryGate) -> list[ElementaryGate]:
    """Move the control next to the target with adjacent SWAPs, apply, move back."""
    d = gate_nnc(g)
    if d <= 0:
        return [g]
    step = 1 if g.target > g.control else -1
    swaps: list[ElementaryGate] = []
    pos = g.control
    for _ in range(d):
        swaps += swap_gates(pos, pos + step)
        pos += step
    moved = ElementaryGate(g.op, g.target, pos)
    return swaps + [moved] + swaps[::-1]


def naive_pass(circuit: Circuit) -> PassResult:
    _require_elementary(circuit)
    gates: list[ElementaryGate] = []
    for g in circuit.gates:
        gates += route_gate(g)
    return PassResult(circuit.with_gates(gates), "naive")


# ------------------------------------------------------------------ reordering


def compute_impacts(circuit: Circuit) -> tuple[Fraction, ...]:
    """Share of the total NNC caused by each line; each gate splits its NNC evenly."""
    _require_elementary(circuit)
    imp = [Fraction(0)] * circuit.width
    for g in circuit.gates:
        v = gate_nnc(g)
        if v > 0:
            imp[g.control] += Fraction(v, 2)
            imp[g.target] += Fraction(v, 2)
    return tuple(imp)


def middle_line(n: int) -> int:
    return n // 2


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[i], perm[j] = j, i
    return tuple(perm)


def global_reorder(circuit: Circuit) -> tuple[Circuit, tuple[int, ...]]:
    """Greedily swap the highest-impact line with the middle line while NNC drops.

    Returns the relabeled circuit and the accumulated relabeling.
    """
    _require_elementary(circuit)
    n = circuit.width
    mid = middle_line(n)
    sigma = tuple(range(n))
    current, cost = circuit, nnc(circuit)
    while cost > 0:
        imp = compute_impacts(current)
        ranked = sorted((i for i in range(n) if i != mid), key=lambda i: (-imp[i], i))
        if not ranked or imp[ranked[0]] == 0:
            break
        tau = transposition(n, ranked[0], mid)
        trial = apply_line_relabeling(current, tau)
        trial_cost = nnc(trial)
        if trial_cost >= cost:
            break
        current, cost = trial, trial_cost
        sigma = tuple(tau[s] for s in sigma)
    return current, sigma


def global_reorder_pass(circuit: Circuit) -> PassResult:
    relabeled, sigma = global_reorder(circuit)
    routed = naive_pass(relabeled).circuit
    return PassResult(routed, "global", input_relabeling=_identity_or(sigma))


def local_reorder_pass(circuit: Circuit, restore_order: bool = False) -> PassResult:
    """Insert SWAPs in front of non-adjacent gates and keep the new line order.

    ``pos[l]`` tracks the physical line currently holding line ``l``. With
    ``restore_order`` the final ordering is undone by adjacent SWAPs.
    """
    _require_elementary(circuit)
    n = circuit.width
    pos = list(range(n))
    occ = list(range(n))
    gates: list[ElementaryGate] = []

    def swap(p: int, q: int) -> None:
        gates.extend(swap_gates(p, q))
        a, b = occ[p], occ[q]
        occ[p], occ[q] = b, a
        pos[a], pos[b] = q, p

    for g in circuit.gates:
        if g.control is None:
            gates.append(g.mapped(pos))
            continue
        pc, pt = pos[g.control], pos[g.target]
        step = 1 if pt > pc else -1
        while abs(pt - pc) > 1:
            swap(pc, pc + step)
            pc += step
        gates.append(g.mapped(pos))

    restored = 0
    if restore_order:
        for line in range(n):
            while pos[line] > line:
                swap(pos[line] - 1, pos[line])
                restored += 1

    outputs = list(circuit.outputs)
    moved = [None] * n
    for line in range(n):
        moved[pos[line]] = outputs[line]
    perm = _identity_or(pos)
    out_signals = circuit.output_signals if perm is None else tuple(moved)
    result = Circuit(n, gates, Layer.ELEMENTARY, circuit.lines, circuit.input_signals, out_signals)
    return PassResult(result, "local", output_permutation=perm, restored_swaps=restored)


def combined_pass(circuit: Circuit, restore_order: bool = False) -> PassResult:
    relabeled, sigma = global_reorder(circuit)
    local = local_reorder_pass(relabeled, restore_order)
    return PassResult(
        local.circuit,
        "global-local",
        input_relabeling=_identity_or(sigma),
        output_permutation=local.output_permutation,
        restored_swaps=local.restored_swaps,
    )


# ---------------------------------------------------------------------- macros


def macro_pass(circuit: Circuit, library, options: DecompositionOptions | None = None) -> PassResult:
    """Decompose with macros where a pattern matches, naive routing elsewhere.

    Gates are first lowered to t0/t1/t2 Toffolis and Peres gates, so macros
    also apply inside Fredkin and multiple-control decompositions. A macro is
    used only when it is cheaper than routing the same gates naively.
    """
    if circuit.layer is not Layer.REVERSIBLE:
        raise LayerMismatch("macro_pass needs a reversible circuit")
    options = options or DecompositionOptions()
    n = circuit.width
    lowered = [lg for g in circuit.gates for lg in lower_gate(g, n, options)]
    checked: set[tuple[str, int]] = set()
    gates: list[ElementaryGate] = []
    k = 0
    while k < len(lowered):
        hit = library.find(lowered, k, n)
        if hit is not None:
            macro, offset = hit
            span = lowered[k:k + len(macro.pattern)]
            fallback = [r for g in span for e in elementary_of(g) for r in route_gate(e)]
            if macro.cost < len(fallback):
                if (macro.name, len(macro.realization)) not in checked:
                    _check_macro(macro)
                    checked.add((macro.name, len(macro.realization)))
                gates += [g.shifted(offset) for g in macro.realization]
                k += len(span)
                continue
        for e in elementary_of(lowered[k]):
            gates += route_gate(e)
        k += 1
    return PassResult(circuit.with_gates(gates, Layer.ELEMENTARY), "macro")


def _check_macro(macro) -> None:
    real = macro.realization_circuit()
    if nnc(real) != 0 or not equivalent(macro.pattern_circuit(), real):
        raise MacroVerificationFailed(f"macro {macro.name} does not realize its pattern")


# ---------------------------------------------------------------------- driver


def run_strategy(circuit: Circuit, strategy: str, library=None, restore_order: bool = False,
                 options: DecompositionOptions | None = None) -> PassResult:
    """Run one named strategy on a reversible (or elementary) circuit."""
    if strategy == "macro":
        if circuit.layer is not Layer.REVERSIBLE:
            raise LayerMismatch("the macro strategy needs a reversible circuit")
        if library is None:
            from .macros import default_library

            library = default_library()
        return macro_pass(circuit, library, options)
    elementary = decompose_circuit(circuit, options) if circuit.layer is Layer.REVERSIBLE else circuit
    passes: dict[str, Callable[[], PassResult]] = {
        "naive": lambda: naive_pass(elementary),
        "global": lambda: global_reorder_pass(elementary),
        "local": lambda: local_reorder_pass(elementary, restore_order),
        "global-local": lambda: combined_pass(elementary, restore_order),
    }
    if strategy not in passes:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES + ('best',))}")
    return passes[strategy]()


def best_of(circuit: Circuit, library=None, restore_order: bool = False,
            options: DecompositionOptions | None = None) -> tuple[PassResult, str]:
    """Run every strategy and keep the cheapest; ties go to the earlier strategy."""
    best: PassResult | None = None
    for name in STRATEGIES:
        if name == "macro" and circuit.layer is not Layer.REVERSIBLE:
            continue
        result = run_strategy(circuit, name, library, restore_order, options)
        if best is None or result.qc < best.qc:
            best = result
    return best, best.strategy
