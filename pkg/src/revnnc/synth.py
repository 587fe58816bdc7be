"""Minimal-gate-count synthesis over the adjacent-only elementary library.

The search state is the 4-valued output of every Boolean input, packed into a
single integer as bit planes: for line ``l`` the "x" plane at offset ``2l*W``
and the "v" plane at offset ``(2l+1)*W``, where ``W = 2**n`` and bit ``i`` of
each plane belongs to input ``i``. Encoding per value is ``(v, x)``:
ZERO=(0,0), ONE=(0,1), V0=(1,0), V1=(1,1). Gate sequences whose controls ever
hold V0/V1 are pruned.

:func:`synthesize_minimal` runs a bidirectional breadth-first search that
meets in the middle; :func:`synthesize_iddfs` is a plain iterative-deepening
search over per-input value tuples, kept as an independent cross-check.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .circuit import (
    CV,
    CVD,
    CX,
    Circuit,
    ElementaryGate,
    FourVal,
    Layer,
    Op,
    X,
    apply_not,
    apply_v,
    apply_vdag,
    bits_of,
    check_bijection,
    extract_permutation,
)
from .errors import NotFound

log = logging.getLogger(__name__)

MAX_SYNTH_WIDTH = 4
DEFAULT_MAX_COST = 20


def adjacent_gate_library(n: int) -> list[ElementaryGate]:
    """All NOTs plus CNOT/CV/CV+ in both orientations on every adjacent pair.

    The list order is the canonical gate order used for tie-breaking.
    """
    if n < 1:
        raise ValueError("n must be positive")
    gates = [X(i) for i in range(n)]
    for i in range(n - 1):
        for c, t in ((i, i + 1), (i + 1, i)):
            gates += [CX(c, t), CV(c, t), CVD(c, t)]
    return gates


@dataclass(frozen=True)
class SynthesisTarget:
    width: int
    permutation: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.width <= MAX_SYNTH_WIDTH:
            raise ValueError(f"exact synthesis supports 1..{MAX_SYNTH_WIDTH} lines, got {self.width}")
        object.__setattr__(self, "permutation", check_bijection(self.permutation, 1 << self.width))

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "SynthesisTarget":
        return cls(circuit.width, extract_permutation(circuit))


class _Planes:
    """Gate action on packed bit-plane states for one width."""

    def __init__(self, n: int):
        self.n = n
        self.W = 1 << n
        self.mask = (1 << self.W) - 1

    def _x(self, s: int, line: int) -> int:
        return (s >> (2 * line * self.W)) & self.mask

    def _v(self, s: int, line: int) -> int:
        return (s >> ((2 * line + 1) * self.W)) & self.mask

    def state_of(self, perm: Sequence[int]) -> int:
        n, s = self.n, 0
        for line in range(n):
            plane = 0
            for i, out in enumerate(perm):
                if (out >> (n - 1 - line)) & 1:
                    plane |= 1 << i
            s |= plane << (2 * line * self.W)
        return s

    def apply(self, s: int, g: ElementaryGate) -> int | None:
        W, t = self.W, g.target
        if g.op is Op.X:
            return s ^ (self.mask << (2 * t * W))
        if self._v(s, g.control):
            return None
        m = self._x(s, g.control)
        if g.op is Op.CX:
            return s ^ (m << (2 * t * W))
        v = self._v(s, t)
        nv = v ^ m
        dx = (v & m) if g.op is Op.CV else (nv & m)
        return s ^ (dx << (2 * t * W)) ^ (m << ((2 * t + 1) * W))


def _circuit(n: int, gates: Sequence[ElementaryGate]) -> Circuit:
    return Circuit(n, tuple(gates), Layer.ELEMENTARY)


def synthesize_minimal(target: SynthesisTarget, max_cost: int = DEFAULT_MAX_COST) -> Circuit:
    """Smallest adjacent-only circuit realizing ``target``.

    Among all circuits of minimal gate count the lexicographically smallest
    gate sequence (in :func:`adjacent_gate_library` order) is returned.

    Raises:
        NotFound: no realization with at most ``max_cost`` gates.
    """
    n = target.width
    planes = _Planes(n)
    lib = adjacent_gate_library(n)
    inv = [g.inverse() for g in lib]
    start = planes.state_of(range(1 << n))
    goal = planes.state_of(target.permutation)
    if start == goal:
        return _circuit(n, [])

    # forward: state -> (previous state, gate index); backward: state -> (gate index, next state)
    fwd: dict[int, tuple[int, int] | None] = {start: None}
    bwd: dict[int, tuple[int, int] | None] = {goal: None}
    f_layer, b_layer = [start], [goal]
    a = b = 0
    while True:
        if a + b >= max_cost or not f_layer or not b_layer:
            raise NotFound(max_cost)
        if len(f_layer) <= len(b_layer):
            new = []
            for s in f_layer:
                for gi, g in enumerate(lib):
                    u = planes.apply(s, g)
                    if u is not None and u not in fwd:
                        fwd[u] = (s, gi)
                        new.append(u)
            f_layer, a = new, a + 1
            meet = [u for u in new if u in bwd]
        else:
            new = []
            for gi, g in enumerate(inv):
                for s in b_layer:
                    u = planes.apply(s, g)
                    if u is not None and u not in bwd:
                        bwd[u] = (gi, s)
                        new.append(u)
            b_layer, b = new, b + 1
            meet = [u for u in new if u in fwd]
        log.debug("radius %d+%d: %d forward, %d backward states", a, b, len(fwd), len(bwd))
        if meet:
            break

    def path(m: int) -> tuple[int, ...]:
        prefix = []
        s = m
        while fwd[s] is not None:
            s, gi = fwd[s]
            prefix.append(gi)
        prefix.reverse()
        s = m
        while bwd[s] is not None:
            gi, s = bwd[s]
            prefix.append(gi)
        return tuple(prefix)

    best = min(path(m) for m in meet)
    return _circuit(n, [lib[gi] for gi in best])


# ------------------------------------------------------------- plain iterative deepening


def _step(values: tuple[FourVal, ...], g: ElementaryGate) -> tuple[FourVal, ...] | None:
    out = list(values)
    if g.op is Op.X:
        out[g.target] = apply_not(out[g.target])
        return tuple(out)
    c = values[g.control]
    if not c.is_boolean:
        return None
    if c is FourVal.ONE:
        f = {Op.CX: apply_not, Op.CV: apply_v, Op.CVD: apply_vdag}[g.op]
        out[g.target] = f(out[g.target])
    return tuple(out)


def synthesize_iddfs(target: SynthesisTarget, max_cost: int = DEFAULT_MAX_COST) -> Circuit:
    """Depth-first search of every gate sequence of length 0, 1, 2, ...

    Exponential in the answer; meant for cross-checking small instances.
    """
    n = target.width
    lib = adjacent_gate_library(n)
    start = tuple(tuple(FourVal(b) for b in bits_of(i, n)) for i in range(1 << n))
    goal = tuple(tuple(FourVal(b) for b in bits_of(p, n)) for p in target.permutation)

    def dfs(state, depth, seq):
        if depth == 0:
            return list(seq) if state == goal else None
        for g in lib:
            nxt = []
            for row in state:
                r = _step(row, g)
                if r is None:
                    break
                nxt.append(r)
            else:
                seq.append(g)
                found = dfs(tuple(nxt), depth - 1, seq)
                if found is not None:
                    return found
                seq.pop()
        return None

    for k in range(max_cost + 1):
        found = dfs(start, k, [])
        if found is not None:
            return _circuit(n, found)
    raise NotFound(max_cost)
