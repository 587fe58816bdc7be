"""Cost metrics for reversible and elementary quantum circuits."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .circuit import Circuit, ElementaryGate, Fredkin, Layer, Peres, Toffoli
from .errors import LayerMismatch


def gate_count(circuit: Circuit) -> int:
    return len(circuit.gates)


def toffoli_cost(m: int, n: int) -> int:
    """Quantum cost of a Toffoli gate with ``m`` controls in an ``n``-line circuit.

    Exact rows (t0, t1, t2 and t_(n-1)) take precedence over the two band
    formulas, which only cover 3 <= m <= n-2.
    """
    if m < 0 or m > n - 1:
        raise ValueError(f"t_{m} does not fit on {n} lines")
    if m <= 1:
        return 1
    if m == 2:
        return 5
    if m == n - 1:
        return 2**n - 3
    if m <= math.ceil(n / 2):
        return 12 * m - 22
    return 24 * m - 64


def fredkin_cost(m: int, n: int) -> int:
    if m < 0 or m > n - 2:
        raise ValueError(f"f_{m} does not fit on {n} lines")
    if m == 0:
        return 3
    return 2 + toffoli_cost(m + 1, n)


PERES_COST = 4


def table_cost(gate, n: int) -> int:
    """Per-gate quantum cost; elementary gates cost 1."""
    if isinstance(gate, ElementaryGate):
        return 1
    if isinstance(gate, Toffoli):
        return toffoli_cost(len(gate.controls), n)
    if isinstance(gate, Fredkin):
        return fredkin_cost(len(gate.controls), n)
    if isinstance(gate, Peres):
        return PERES_COST
    raise TypeError(f"not a gate: {gate!r}")


def quantum_cost(circuit: Circuit) -> int:
    return sum(table_cost(g, circuit.width) for g in circuit.gates)


def transistor_cost(circuit: Circuit) -> int:
    """Reversible-CMOS transistor count, 8 per control line.

    A Peres gate counts as its t2 + t1 cascade, i.e. 24.
    """
    if circuit.layer is not Layer.REVERSIBLE:
        raise LayerMismatch("transistor cost is defined on reversible circuits")
    total = 0
    for g in circuit.gates:
        total += 24 if isinstance(g, Peres) else 8 * len(g.controls)
    return total


def _require_elementary(circuit: Circuit, what: str) -> None:
    if circuit.layer is not Layer.ELEMENTARY:
        raise LayerMismatch(f"{what} is defined on elementary circuits; decompose first")


def gate_nnc(gate: ElementaryGate) -> int:
    if gate.control is None:
        return 0
    return abs(gate.control - gate.target) - 1


def nnc(circuit: Circuit) -> int:
    _require_elementary(circuit, "NNC")
    return sum(gate_nnc(g) for g in circuit.gates)


def _conflict(g: ElementaryGate, h: ElementaryGate) -> bool:
    return bool(
        g.control_lines & h.target_lines
        or h.control_lines & g.target_lines
        or g.target_lines & h.target_lines
    )


def layers(circuit: Circuit) -> list[list[int]]:
    """ASAP layering: gate indices grouped by execution step."""
    _require_elementary(circuit, "depth")
    level: list[int] = []
    for k, g in enumerate(circuit.gates):
        lvl = 0
        for j in range(k):
            if level[j] >= lvl and _conflict(circuit.gates[j], g):
                lvl = level[j] + 1
        level.append(lvl)
    out: list[list[int]] = [[] for _ in range(max(level, default=-1) + 1)]
    for k, lvl in enumerate(level):
        out[lvl].append(k)
    return out


def depth(circuit: Circuit) -> int:
    return len(layers(circuit))


class Distribution(NamedTuple):
    dis: tuple[int, ...]
    avg: Fraction
    min: int
    max: int


def distribution(circuit: Circuit) -> Distribution:
    _require_elementary(circuit, "gate distribution")
    dis = [0] * circuit.width
    for g in circuit.gates:
        for line in g.lines:
            dis[line] += 1
    return Distribution(tuple(dis), Fraction(sum(dis), circuit.width), min(dis), max(dis))


# --------------------------------------------------------------------------- report

TABLE_COLUMNS = ("n", "n_g", "n_c", "gc", "qc", "NNC", "Depth", "Dis_avg", "TrC")


@dataclass
class MetricsReport:
    """One row of the metric comparison table.

    For reversible circuits ``gc``, ``qc`` and ``trc`` describe the gate list
    itself while ``nnc``, ``depth`` and ``dis`` describe its standard elementary
    decomposition (``decomposed`` is then True). ``realized_qc`` is the gate
    count of that decomposition and can exceed ``qc`` for t_m with m >= 3.
    """

    n: int
    n_c: int
    n_g: int
    gc: int
    qc: int
    nnc: int
    depth: int
    dis: tuple[int, ...]
    trc: int | None
    realized_qc: int
    decomposed: bool
    name: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def dis_avg(self) -> Fraction:
        return Fraction(sum(self.dis), len(self.dis))

    @property
    def dis_min(self) -> int:
        return min(self.dis)

    @property
    def dis_max(self) -> int:
        return max(self.dis)

    def table_row(self) -> dict[str, object]:
        return {
            "n": self.n,
            "n_g": self.n_g,
            "n_c": self.n_c,
            "gc": self.gc,
            "qc": self.qc,
            "NNC": self.nnc,
            "Depth": self.depth,
            "Dis_avg": f"{float(self.dis_avg):.1f}",
            "TrC": "" if self.trc is None else self.trc,
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["dis"] = list(self.dis)
        d["dis_avg"] = float(self.dis_avg)
        d["dis_min"] = self.dis_min
        d["dis_max"] = self.dis_max
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        fields = {k: d[k] for k in cls.__dataclass_fields__ if k in d}
        fields["dis"] = tuple(fields["dis"])
        fields["notes"] = list(fields.get("notes", []))
        return cls(**fields)


def full_report(circuit: Circuit, name: str | None = None, options=None) -> MetricsReport:
    from .decompose import decompose_circuit

    notes: list[str] = []
    if circuit.layer is Layer.REVERSIBLE:
        elementary = decompose_circuit(circuit, options)
        trc = transistor_cost(circuit)
        qc = quantum_cost(circuit)
        notes.append("NNC, Depth and Dis measured on the standard decomposition")
        if len(elementary.gates) != qc:
            notes.append(f"decomposition realizes {len(elementary.gates)} elementary gates vs table qc {qc}")
    else:
        elementary = circuit
        trc = None
        qc = quantum_cost(circuit)
    dist = distribution(elementary)
    return MetricsReport(
        n=circuit.n,
        n_c=circuit.n_c,
        n_g=circuit.n_g,
        gc=gate_count(circuit),
        qc=qc,
        nnc=nnc(elementary),
        depth=depth(elementary),
        dis=dist.dis,
        trc=trc,
        realized_qc=len(elementary.gates),
        decomposed=circuit.layer is Layer.REVERSIBLE,
        name=name,
        notes=notes,
    )


def reports_to_json(reports: Iterable[MetricsReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def reports_from_json(text: str) -> list[MetricsReport]:
    return [MetricsReport.from_dict(d) for d in json.loads(text)]


def reports_to_csv(reports: Iterable[MetricsReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("name",) + TABLE_COLUMNS)
    for r in reports:
        row = r.table_row()
        writer.writerow([r.name or ""] + [row[c] for c in TABLE_COLUMNS])
    return buf.getvalue()


def reports_to_text(reports: Iterable[MetricsReport]) -> str:
    reports = list(reports)
    header = ("name",) + TABLE_COLUMNS
    rows = [[r.name or ""] + [str(r.table_row()[c]) for c in TABLE_COLUMNS] for r in reports]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"
