import itertools

import pytest

from revnnc.circuit import CV, CVD, CX, Circuit, Fredkin, Peres, Toffoli, X, equivalent, extract_permutation
from revnnc.errors import NotABijection, NotFound
from revnnc.metrics import nnc
from revnnc.synth import SynthesisTarget, adjacent_gate_library, synthesize_iddfs, synthesize_minimal


def target_of(n, *gates):
    return SynthesisTarget.from_circuit(Circuit(n, list(gates)))


@pytest.mark.parametrize("n, size", [(1, 1), (2, 8), (3, 15), (4, 22)])
def test_library_size(n, size):
    lib = adjacent_gate_library(n)
    assert len(lib) == size == n + 6 * (n - 1)
    assert len(set(lib)) == size
    assert nnc(Circuit(n, lib)) == 0


def test_library_order():
    assert adjacent_gate_library(2) == [X(0), X(1), CX(0, 1), CV(0, 1), CVD(0, 1), CX(1, 0), CV(1, 0), CVD(1, 0)]


def test_target_validation():
    with pytest.raises(NotABijection):
        SynthesisTarget(2, (0, 0, 1, 2))
    with pytest.raises(ValueError):
        SynthesisTarget(5, tuple(range(32)))


def test_identity_is_empty():
    assert synthesize_minimal(SynthesisTarget(3, tuple(range(8)))).gates == ()


def test_toffoli_costs_nine():
    target = target_of(3, Toffoli((0, 1), 2))
    c = synthesize_minimal(target)
    assert len(c.gates) == 9
    assert nnc(c) == 0
    assert extract_permutation(c) == target.permutation
    with pytest.raises(NotFound):
        synthesize_minimal(target, max_cost=8)


def test_peres_costs_eight():
    target = target_of(3, Peres(0, 1, 2))
    assert len(synthesize_minimal(target).gates) == 8
    with pytest.raises(NotFound):
        synthesize_minimal(target, max_cost=7)


def test_result_is_deterministic():
    target = target_of(3, Fredkin((0,), (1, 2)))
    first = synthesize_minimal(target)
    assert synthesize_minimal(target) == first
    assert equivalent(first, Circuit(3, [Fredkin((0,), (1, 2))]))


def test_not_found_carries_budget():
    with pytest.raises(NotFound) as info:
        synthesize_minimal(target_of(3, Toffoli((0,), 2)), max_cost=2)
    assert info.value.max_cost == 2


@pytest.mark.parametrize("perm", list(itertools.permutations(range(4))))
def test_engines_agree_on_two_lines(perm):
    target = SynthesisTarget(2, perm)
    fast = synthesize_minimal(target)
    assert fast.gates == synthesize_iddfs(target).gates
    assert extract_permutation(fast) == perm


@pytest.mark.parametrize(
    "gate",
    [Toffoli((0,), 2), Toffoli((2,), 0), Fredkin((), (0, 1)), Toffoli((1,), 2), Toffoli((), 1)],
)
def test_engines_agree_on_three_lines(gate):
    target = target_of(3, gate)
    assert synthesize_minimal(target).gates == synthesize_iddfs(target).gates


def test_nonadjacent_cnot_needs_four():
    c = synthesize_minimal(target_of(3, Toffoli((0,), 2)))
    assert len(c.gates) == 4
