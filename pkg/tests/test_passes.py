from fractions import Fraction

import pytest
from hypothesis import given, settings

from revnnc.circuit import CV, CX, Circuit, Fredkin, Peres, Toffoli, X, equivalent, extract_permutation
from revnnc.decompose import decompose_circuit
from revnnc.errors import LayerMismatch, NotBooleanReversible
from revnnc.macros import default_library
from revnnc.metrics import nnc
from revnnc.passes import (
    STRATEGIES,
    best_of,
    combined_pass,
    compute_impacts,
    global_reorder,
    global_reorder_pass,
    local_reorder_pass,
    macro_pass,
    middle_line,
    naive_pass,
    route_gate,
    run_strategy,
    swap_gates,
)

from strategies import elementary_circuits, reversible_circuits

# a fan-out from line a: the first gate is adjacent, the others are not
FANOUT = Circuit(4, [CX(0, 1), CX(0, 2), CX(0, 3)])


@pytest.fixture(scope="module")
def library():
    return default_library()


def test_swap_is_three_cnots():
    assert swap_gates(1, 2) == [CX(1, 2), CX(2, 1), CX(1, 2)]
    with pytest.raises(ValueError):
        swap_gates(0, 2)


def test_route_single_gate():
    routed = route_gate(CX(0, 2))
    assert routed == swap_gates(0, 1) + [CX(1, 2)] + swap_gates(0, 1)
    assert route_gate(CX(3, 0))[6] == CX(1, 0)


def test_naive_toffoli():
    r = naive_pass(decompose_circuit(Circuit(3, [Toffoli((0, 1), 2)])))
    assert (r.qc, r.nnc) == (11, 0)


def test_passes_need_elementary():
    with pytest.raises(LayerMismatch):
        naive_pass(Circuit(3, [Toffoli((0, 1), 2)]))
    with pytest.raises(LayerMismatch):
        macro_pass(FANOUT, None)


def test_impacts_of_fanout():
    assert compute_impacts(FANOUT) == (Fraction(3, 2), 0, Fraction(1, 2), 1)
    assert compute_impacts(Circuit(3, [CX(0, 1), CX(1, 2)])) == (0, 0, 0)


def test_middle_line():
    assert middle_line(4) == 2
    assert middle_line(5) == 2
    assert middle_line(3) == 1


def test_global_on_fanout():
    relabeled, sigma = global_reorder(FANOUT)
    # line a is moved into the middle position and swaps places with c
    assert sigma == (2, 1, 0, 3)
    assert nnc(relabeled) == 1
    r = global_reorder_pass(FANOUT)
    assert naive_pass(FANOUT).qc == 21
    assert r.qc == 9 and r.nnc == 0
    assert r.input_relabeling == (2, 1, 0, 3)
    assert equivalent(FANOUT, r.circuit, modulo_permutation=True)


def test_local_on_fanout():
    r = local_reorder_pass(FANOUT)
    assert r.qc == 9 and r.nnc == 0
    # one SWAP before the second gate, one before the third, no restoring SWAPs
    assert r.circuit.gates[1:4] == tuple(swap_gates(0, 1))
    assert r.output_permutation is not None
    assert equivalent(FANOUT, r.circuit, modulo_permutation=True)
    assert not equivalent(FANOUT, r.circuit)


def test_local_single_gate():
    r = local_reorder_pass(Circuit(3, [CX(0, 2)]))
    assert list(r.circuit.gates) == swap_gates(0, 1) + [CX(1, 2)]
    assert r.output_permutation == (1, 0, 2)


def test_restore_order():
    r = local_reorder_pass(FANOUT, restore_order=True)
    assert r.output_permutation is None
    assert r.restored_swaps == 2
    assert r.qc == 9 + 6
    assert equivalent(FANOUT, r.circuit)


def test_adjacent_circuit_untouched():
    c = Circuit(3, [CX(0, 1), CV(2, 1), X(0)])
    for p in (naive_pass, global_reorder_pass, local_reorder_pass, combined_pass):
        r = p(c)
        assert r.circuit.gates == c.gates
        assert r.input_relabeling is None and r.output_permutation is None


def test_global_on_mixed_circuit():
    c = decompose_circuit(Circuit(4, [Toffoli((0, 3), 1), Toffoli((0,), 3), Toffoli((1, 2), 0)]))
    r = global_reorder_pass(c)
    assert r.nnc == 0
    assert equivalent(c, r.circuit, modulo_permutation=True)


def test_macro_single_toffoli(library):
    r = macro_pass(Circuit(3, [Toffoli((0, 1), 2)]), library)
    assert (r.qc, r.nnc) == (9, 0)


def test_macro_reflected_and_translated(library):
    c = Circuit(5, [Toffoli((4, 3), 2), Peres(1, 2, 3)])
    r = macro_pass(c, library)
    assert r.qc == 9 + 8
    assert equivalent(c, r.circuit)


def test_macro_skips_unmatched_gates(library):
    c = Circuit(4, [Toffoli((0, 3), 2)])
    r = macro_pass(c, library)
    assert r.qc == naive_pass(decompose_circuit(c)).qc


def test_macro_inside_fredkin(library):
    # f1 lowers to CNOT, t2, CNOT; the t2 picks up a macro
    c = Circuit(3, [Fredkin((0,), (1, 2))])
    assert macro_pass(c, library).qc < naive_pass(decompose_circuit(c)).qc


def test_best_of_single_toffoli(library):
    c = Circuit(3, [Toffoli((0, 1), 2)])
    result, name = best_of(c, library, restore_order=True)
    assert (result.qc, name) == (9, "macro")
    # leaving the outputs permuted is cheaper still
    result, name = best_of(c, library)
    assert (result.qc, name) == (8, "local")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        run_strategy(FANOUT, "magic")


@settings(max_examples=300, deadline=None)
@given(elementary_circuits())
def test_lemma_one(c):
    r = naive_pass(c)
    assert r.qc == len(c.gates) + 6 * nnc(c)
    assert r.nnc == 0


@settings(max_examples=150, deadline=None)
@given(elementary_circuits(max_width=6, max_gates=20))
def test_global_terminates_with_lower_nnc(c):
    relabeled, sigma = global_reorder(c)
    assert nnc(relabeled) <= nnc(c)
    assert sorted(sigma) == list(range(c.width))


@settings(max_examples=150, deadline=None)
@given(reversible_circuits(max_width=6, max_gates=8))
def test_every_strategy_is_nnc_free_and_equivalent(c):
    lib = default_library()
    naive = run_strategy(c, "naive", lib)
    for s in STRATEGIES:
        r = run_strategy(c, s, lib)
        assert r.nnc == 0
        assert equivalent(c, r.circuit, modulo_permutation=True)
        if s == "macro":
            assert r.qc <= naive.qc
    best, _ = best_of(c, lib)
    assert best.qc <= naive.qc


@settings(max_examples=100, deadline=None)
@given(elementary_circuits(max_width=6, max_gates=20))
def test_restored_local_is_plain_equivalent(c):
    try:
        extract_permutation(c)
    except NotBooleanReversible:
        return
    for p in (local_reorder_pass, combined_pass):
        r = p(c, restore_order=True)
        assert r.circuit.output_permutation is None
        assert equivalent(c, r.circuit, modulo_permutation=True)
