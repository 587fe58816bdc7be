"""Nearest-neighbor optimization of reversible and quantum circuits.

Typical use::

    from revnnc import read_real, best_of, full_report
    circuit = read_real("3_17_13.real")
    result, strategy = best_of(circuit)
"""
from .circuit import (
    CV,
    CVD,
    CX,
    Circuit,
    ElementaryGate,
    FourVal,
    Fredkin,
    Layer,
    LineInfo,
    Op,
    Peres,
    Toffoli,
    X,
    apply_line_relabeling,
    counterexample,
    equivalent,
    extract_permutation,
    simulate_elementary,
    simulate_reversible,
)
from .decompose import DecompositionOptions, decompose_circuit, decompose_gate
from .errors import (
    ControlNotBoolean,
    InsufficientFreeLines,
    LayerMismatch,
    MacroVerificationFailed,
    NotABijection,
    NotBooleanReversible,
    NotFound,
    RealParseError,
    RevNNCError,
)
from .macros import Macro, MacroLibrary, default_library, generate_macro_library, verify_macro
from .metrics import MetricsReport, depth, distribution, full_report, nnc, quantum_cost, transistor_cost
from .passes import (
    PassResult,
    best_of,
    combined_pass,
    compute_impacts,
    global_reorder_pass,
    local_reorder_pass,
    macro_pass,
    naive_pass,
    run_strategy,
)
from .realfile import parse_real, read_real, write_real
from .synth import SynthesisTarget, adjacent_gate_library, synthesize_minimal

__version__ = "0.1.0"
