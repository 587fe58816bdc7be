"""Reader and writer for the RevLib ``.real`` circuit format.

Gate mnemonics follow RevLib: ``t<k>`` is a Toffoli touching k lines (last
token is the target), ``f<k>`` a Fredkin touching k lines (last two tokens are
the targets), ``p``/``p3`` a Peres gate (control, target1, target2), and
``v``/``v+`` a controlled V/V+ (control, target).
"""
from __future__ import annotations

import re
from pathlib import Path

from .circuit import (
    CV,
    CVD,
    CX,
    Circuit,
    ElementaryGate,
    Fredkin,
    Layer,
    LineInfo,
    Op,
    Peres,
    Toffoli,
    X,
)
from .errors import ArityMismatch, MixedLayers, RealSyntaxError, UnknownGate

_HEADER = {".version", ".numvars", ".variables", ".inputs", ".outputs", ".constants", ".garbage"}
_GATE_RE = re.compile(r"^(t|f|p|v\+|v)(\d*)$")


def _parse_gate(mnemonic: str, args: list[str], index: dict[str, int], lineno: int):
    m = _GATE_RE.match(mnemonic.lower())
    if not m:
        raise UnknownGate(lineno, f"unknown gate {mnemonic!r}")
    kind, count = m.group(1), m.group(2)
    for a in args:
        if a.startswith("-") or a.startswith("!"):
            raise RealSyntaxError(lineno, f"negative control {a!r} is not supported")
        if a not in index:
            raise RealSyntaxError(lineno, f"undeclared variable {a!r}")
    if count and int(count) != len(args):
        raise ArityMismatch(lineno, f"{mnemonic} expects {count} lines, got {len(args)}")
    if len(set(args)) != len(args):
        raise RealSyntaxError(lineno, f"line used twice in {mnemonic} {' '.join(args)}")
    ids = [index[a] for a in args]
    if kind == "t":
        if not count:
            raise UnknownGate(lineno, f"Toffoli mnemonic needs a line count: {mnemonic!r}")
        if not ids:
            raise ArityMismatch(lineno, "t0 is not a gate")
        return Toffoli(tuple(ids[:-1]), ids[-1])
    if kind == "f":
        if not count:
            raise UnknownGate(lineno, f"Fredkin mnemonic needs a line count: {mnemonic!r}")
        if len(ids) < 2:
            raise ArityMismatch(lineno, "a Fredkin gate needs two targets")
        return Fredkin(tuple(ids[:-2]), (ids[-2], ids[-1]))
    if kind == "p":
        if len(ids) != 3:
            raise ArityMismatch(lineno, f"Peres takes 3 lines, got {len(ids)}")
        return Peres(*ids)
    if len(ids) != 2 or (count and count != "2"):
        raise ArityMismatch(lineno, f"{mnemonic} takes control and target")
    return CV(ids[0], ids[1]) if kind == "v" else CVD(ids[0], ids[1])


def _to_elementary(g, lineno: int) -> ElementaryGate:
    if isinstance(g, ElementaryGate):
        return g
    if isinstance(g, Toffoli) and len(g.controls) <= 1:
        return X(g.target) if not g.controls else CX(g.controls[0], g.target)
    raise MixedLayers(lineno, f"{g} cannot appear next to V/V+ gates")


def parse_real(text: str, layer: Layer | str | None = None) -> Circuit:
    """Parse a ``.real`` document.

    A body consisting only of ``t1``/``t2`` lines is valid on both layers; it is
    read as reversible unless ``layer`` says otherwise. Any ``v``/``v+`` gate
    makes the circuit elementary.
    """
    header: dict[str, tuple[int, list[str]]] = {}
    body: list[tuple[int, str, list[str]]] = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        head = tokens[0].lower()
        if state == "header":
            if head == ".begin":
                state = "body"
            elif head in _HEADER:
                if head in header:
                    raise RealSyntaxError(lineno, f"duplicate directive {head}")
                header[head] = (lineno, tokens[1:])
            elif head.startswith("."):
                raise RealSyntaxError(lineno, f"unsupported directive {tokens[0]}")
            else:
                raise RealSyntaxError(lineno, "gate before .begin")
        elif state == "body":
            if head == ".end":
                state = "done"
            elif head.startswith("."):
                raise RealSyntaxError(lineno, f"directive {tokens[0]} inside body")
            else:
                body.append((lineno, tokens[0], tokens[1:]))
        else:
            raise RealSyntaxError(lineno, "content after .end")
    if state != "done":
        raise RealSyntaxError(None, "missing .begin" if state == "header" else "missing .end")

    if ".numvars" not in header:
        raise RealSyntaxError(None, "missing .numvars")
    ln, vals = header[".numvars"]
    if len(vals) != 1 or not vals[0].isdigit() or int(vals[0]) < 1:
        raise RealSyntaxError(ln, ".numvars needs a positive integer")
    n = int(vals[0])
    if ".variables" not in header:
        raise RealSyntaxError(None, "missing .variables")
    ln, names = header[".variables"]
    if len(names) != n:
        raise RealSyntaxError(ln, f".variables lists {len(names)} names, .numvars is {n}")
    if len(set(names)) != n:
        raise RealSyntaxError(ln, "duplicate variable name")

    def labels(key):
        if key not in header:
            return None
        ln, vals = header[key]
        if len(vals) != n:
            raise RealSyntaxError(ln, f"{key} lists {len(vals)} names, expected {n}")
        return tuple(vals)

    def flags(key, alphabet):
        if key not in header:
            return "-" * n
        ln, vals = header[key]
        s = "".join(vals)
        if len(s) != n or any(ch not in alphabet for ch in s):
            raise RealSyntaxError(ln, f"{key} must be {n} characters over {{{alphabet}}}")
        return s

    constants = flags(".constants", "01-")
    garbage = flags(".garbage", "1-")
    lines = tuple(
        LineInfo(name, None if c == "-" else int(c), g == "1")
        for name, c, g in zip(names, constants, garbage)
    )
    index = {name: i for i, name in enumerate(names)}
    gates = [(ln, _parse_gate(m, args, index, ln)) for ln, m, args in body]

    if layer is None:
        layer = Layer.ELEMENTARY if any(isinstance(g, ElementaryGate) for _, g in gates) else Layer.REVERSIBLE
    layer = Layer(layer)
    if layer is Layer.ELEMENTARY:
        out = [_to_elementary(g, ln) for ln, g in gates]
    else:
        for ln, g in gates:
            if isinstance(g, ElementaryGate):
                raise MixedLayers(ln, "V/V+ gate in a reversible circuit")
        out = [g for _, g in gates]
    return Circuit(n, tuple(out), layer, lines, labels(".inputs"), labels(".outputs"))


def read_real(path: str | Path, layer: Layer | str | None = None) -> Circuit:
    return parse_real(Path(path).read_text(), layer)


def _gate_tokens(g, names) -> str:
    if isinstance(g, ElementaryGate):
        if g.op is Op.X:
            return f"t1 {names[g.target]}"
        mnemonic = {Op.CX: "t2", Op.CV: "v", Op.CVD: "v+"}[g.op]
        return f"{mnemonic} {names[g.control]} {names[g.target]}"
    if isinstance(g, Toffoli):
        ids = g.controls + (g.target,)
        return f"t{len(ids)} " + " ".join(names[i] for i in ids)
    if isinstance(g, Fredkin):
        ids = g.controls + g.targets
        return f"f{len(ids)} " + " ".join(names[i] for i in ids)
    return "p3 " + " ".join(names[i] for i in g.lines)


def write_real(circuit: Circuit, version: str = "1.0") -> str:
    names = circuit.names
    out = [
        f".version {version}",
        f".numvars {circuit.width}",
        ".variables " + " ".join(names),
    ]
    if circuit.input_signals is not None:
        out.append(".inputs " + " ".join(circuit.input_signals))
    if circuit.output_signals is not None:
        out.append(".outputs " + " ".join(circuit.output_signals))
    out.append(".constants " + "".join("-" if l.constant is None else str(l.constant) for l in circuit.lines))
    out.append(".garbage " + "".join("1" if l.garbage else "-" for l in circuit.lines))
    out.append(".begin")
    out.extend(_gate_tokens(g, names) for g in circuit.gates)
    out.append(".end")
    return "\n".join(out) + "\n"


def write_real_file(circuit: Circuit, path: str | Path) -> None:
    Path(path).write_text(write_real(circuit))
