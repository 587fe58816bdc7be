"""Pre-computed nearest-neighbor-optimal realizations of small gate patterns.

A macro pairs a reversible gate pattern on consecutive lines ``a, b, c, d``
(positions 0..width-1) with a minimal elementary realization that uses only
adjacent gates. The shipped library holds the 13 configurations of the
classic table: six gate shapes together with their vertical reflections, plus
the self-symmetric ``t2({a,c},b)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .circuit import Circuit, ElementaryGate, Layer, Peres, equivalent, reflection
from .decompose import decompose_circuit
from .errors import MacroVerificationFailed, RealParseError, RevNNCError
from .metrics import nnc
from .realfile import _gate_tokens, _parse_gate, _to_elementary
from .synth import DEFAULT_MAX_COST, SynthesisTarget, synthesize_minimal

SYMBOLS = "abcd"
FORMAT_TAG = "revnnc-macros"


def parse_pattern(tokens: Sequence[str], width: int) -> tuple:
    index = {s: i for i, s in enumerate(SYMBOLS[:width])}
    out = []
    for k, line in enumerate(tokens, start=1):
        mnemonic, *args = line.split()
        g = _parse_gate(mnemonic, args, index, k)
        if isinstance(g, ElementaryGate):
            raise RealParseError(k, f"pattern gate {line!r} must be reversible")
        out.append(g)
    return tuple(out)


def parse_realization(tokens: Sequence[str], width: int) -> tuple[ElementaryGate, ...]:
    index = {str(i): i for i in range(width)}
    out = []
    for k, line in enumerate(tokens, start=1):
        mnemonic, *args = line.split()
        out.append(_to_elementary(_parse_gate(mnemonic, args, index, k), k))
    return tuple(out)


def format_pattern(pattern: Iterable) -> list[str]:
    return [_gate_tokens(g, SYMBOLS) for g in pattern]


def format_realization(gates: Iterable[ElementaryGate]) -> list[str]:
    return [_gate_tokens(g, [str(i) for i in range(4)]) for g in gates]


def expand_peres(pattern: Iterable) -> list:
    """Replace every Peres gate by its t2 + t1 cascade."""
    out = []
    for g in pattern:
        out.extend(g.cascade() if isinstance(g, Peres) else [g])
    return out


def naive_cost(pattern: Sequence, width: int) -> int:
    """Cost of the pattern under standard decomposition plus SWAP insertion.

    Peres gates are taken as their Toffoli + CNOT cascade here, which is how the
    naive column of the macro table is counted.
    """
    from .passes import naive_pass

    rev = Circuit(width, tuple(expand_peres(pattern)), Layer.REVERSIBLE)
    return naive_pass(decompose_circuit(rev)).qc


@dataclass(frozen=True)
class Macro:
    name: str
    width: int
    pattern: tuple
    realization: tuple[ElementaryGate, ...]
    cost: int
    naive_cost: int

    @property
    def improvement(self) -> Fraction:
        return 1 - Fraction(self.cost, self.naive_cost)

    def pattern_circuit(self) -> Circuit:
        return Circuit(self.width, self.pattern, Layer.REVERSIBLE)

    def realization_circuit(self) -> Circuit:
        return Circuit(self.width, self.realization, Layer.ELEMENTARY)

    def reflected(self) -> "Macro":
        r = reflection(self.width)
        return Macro(
            f"{self.name}~",
            self.width,
            tuple(g.mapped(r) for g in self.pattern),
            tuple(g.mapped(r) for g in self.realization),
            self.cost,
            self.naive_cost,
        )

    def match(self, gates: Sequence, start: int, width: int) -> int | None:
        """Window offset at which the pattern equals ``gates[start:]``, or None."""
        k = len(self.pattern)
        if start + k > len(gates):
            return None
        first = gates[start]
        if type(first) is not type(self.pattern[0]):
            return None
        offset = min(first.lines) - min(self.pattern[0].lines)
        if offset < 0 or offset + self.width > width:
            return None
        shift = list(range(offset, offset + self.width))
        for p, g in zip(self.pattern, gates[start:start + k]):
            if not p.mapped(shift).same_function(g):
                return None
        return offset

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "width": self.width,
            "pattern": format_pattern(self.pattern),
            "realization": format_realization(self.realization),
            "cost": self.cost,
            "naive_cost": self.naive_cost,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Macro":
        width = int(d["width"])
        if not 1 <= width <= len(SYMBOLS):
            raise ValueError(f"macro width must be 1..{len(SYMBOLS)}")
        return cls(
            name=str(d["name"]),
            width=width,
            pattern=parse_pattern(d["pattern"], width),
            realization=parse_realization(d["realization"], width),
            cost=int(d["cost"]),
            naive_cost=int(d["naive_cost"]),
        )


def verify_macro(macro: Macro) -> bool:
    """Realization matches its pattern on all inputs, is adjacent-only and costs ``cost``."""
    try:
        real = macro.realization_circuit()
        if nnc(real) != 0 or len(real.gates) != macro.cost:
            return False
        return equivalent(macro.pattern_circuit(), real)
    except (RevNNCError, ValueError):
        return False


class MacroLibrary:
    """Ordered macro collection; longer patterns are tried before shorter ones."""

    def __init__(self, entries: Iterable[Macro] = (), verify: bool = True):
        self.entries = list(entries)
        if verify:
            bad = [m.name for m in self.entries if not verify_macro(m)]
            if bad:
                raise MacroVerificationFailed(f"macro(s) failed verification: {', '.join(bad)}")
        self._variants = []
        for m in self.entries:
            self._variants.append(m)
            r = m.reflected()
            if not any(r.pattern == v.pattern for v in self._variants):
                self._variants.append(r)
        self._variants.sort(key=lambda m: -len(m.pattern))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def find(self, gates: Sequence, start: int, width: int) -> tuple[Macro, int] | None:
        """First (macro, offset) whose pattern matches at ``start``; reflections included."""
        for m in self._variants:
            offset = m.match(gates, start, width)
            if offset is not None:
                return m, offset
        return None

    def to_json(self) -> str:
        doc = {"format": FORMAT_TAG, "version": 1, "macros": [m.to_dict() for m in self.entries]}
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "MacroLibrary":
        doc = json.loads(text)
        if isinstance(doc, dict):
            if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
                raise ValueError(f"not a macro library: format {doc.get('format')!r}")
            items = doc["macros"]
        else:
            items = doc
        return cls(Macro.from_dict(d) for d in items)

    @classmethod
    def load(cls, path: str | Path) -> "MacroLibrary":
        return cls.from_json(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())


def default_library() -> MacroLibrary:
    text = resources.files("revnnc").joinpath("data/macros.json").read_text()
    return MacroLibrary.from_json(text)


# ------------------------------------------------------------------- generation


@dataclass(frozen=True)
class MacroSpec:
    name: str
    width: int
    pattern: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "MacroSpec":
        width = int(d["width"])
        return cls(str(d["name"]), width, parse_pattern(d["pattern"], width))


def load_specs(text: str) -> list[MacroSpec]:
    doc = json.loads(text)
    items = doc["patterns"] if isinstance(doc, dict) else doc
    return [MacroSpec.from_dict(d) for d in items]


def builtin_specs() -> list[MacroSpec]:
    text = resources.files("revnnc").joinpath("data/macro_patterns.json").read_text()
    return load_specs(text)


def generate_macro(spec: MacroSpec, max_cost: int = DEFAULT_MAX_COST) -> Macro:
    pattern_circuit = Circuit(spec.width, spec.pattern, Layer.REVERSIBLE)
    best = synthesize_minimal(SynthesisTarget.from_circuit(pattern_circuit), max_cost)
    macro = Macro(
        spec.name,
        spec.width,
        spec.pattern,
        best.gates,
        len(best.gates),
        naive_cost(spec.pattern, spec.width),
    )
    if not verify_macro(macro):
        raise MacroVerificationFailed(f"generated macro {spec.name} failed verification")
    return macro


def generate_macro_library(specs: Iterable[MacroSpec], max_cost: int = DEFAULT_MAX_COST) -> MacroLibrary:
    return MacroLibrary((generate_macro(s, max_cost) for s in specs), verify=True)
