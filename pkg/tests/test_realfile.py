import pytest
from hypothesis import given, settings

from revnnc.circuit import CV, CVD, CX, Fredkin, Layer, Peres, Toffoli, X
from revnnc.errors import ArityMismatch, MixedLayers, RealParseError, RealSyntaxError, UnknownGate
from revnnc.realfile import parse_real, read_real, write_real

from strategies import elementary_circuits, reversible_circuits

HEADER = ".version 1.0\n.numvars 3\n.variables a b c\n"


def doc(body: str, header: str = HEADER) -> str:
    return header + ".begin\n" + body + ".end\n"


def test_reads_fixture(fixtures):
    c = read_real(fixtures / "3_17_13.real")
    assert c.width == 3
    assert c.layer is Layer.REVERSIBLE
    assert c.gates[0] == Toffoli((), 0)
    assert c.gates[3] == Toffoli((0, 1), 2)
    assert c.inputs == ("a", "b", "c")


def test_all_gate_kinds():
    c = parse_real(doc("t3 a b c\nf3 a b c\np3 a b c\nf2 b c\n"))
    assert c.gates == (Toffoli((0, 1), 2), Fredkin((0,), (1, 2)), Peres(0, 1, 2), Fredkin((), (1, 2)))


def test_v_gates_make_elementary_layer():
    c = parse_real(doc("v a b\nv+ b c\nt2 a c\nt1 b\n"))
    assert c.layer is Layer.ELEMENTARY
    assert c.gates == (CV(0, 1), CVD(1, 2), CX(0, 2), X(1))


def test_layer_hint_for_ambiguous_body():
    assert parse_real(doc("t2 a b\n")).layer is Layer.REVERSIBLE
    assert parse_real(doc("t2 a b\n"), Layer.ELEMENTARY).gates == (CX(0, 1),)


def test_constants_and_garbage():
    c = parse_real(doc("t1 a\n", HEADER + ".constants 0--\n.garbage --1\n"))
    assert c.lines[0].constant == 0
    assert c.lines[2].garbage
    assert (c.n_c, c.n_g) == (1, 1)


def test_comments_and_blank_lines():
    c = parse_real("# title\n\n" + doc("# inside\nt1 a\n\n"))
    assert len(c.gates) == 1


@pytest.mark.parametrize(
    "text, error, line",
    [
        (doc("t3 a b\n"), ArityMismatch, 5),
        (doc("q2 a b\n"), UnknownGate, 5),
        (doc("t2 a z\n"), RealSyntaxError, 5),
        (doc("t2 a a\n"), RealSyntaxError, 5),
        (doc("t2 -a b\n"), RealSyntaxError, 5),
        (doc("v a b\nt3 a b c\n"), MixedLayers, 6),
        (HEADER + ".begin\nt1 a\n", RealSyntaxError, None),
        (".numvars 2\n.variables a b c\n.begin\n.end\n", RealSyntaxError, 2),
        (HEADER + ".model x\n.begin\n.end\n", RealSyntaxError, 4),
    ],
)
def test_parse_errors_carry_line(text, error, line):
    with pytest.raises(error) as info:
        parse_real(text)
    assert info.value.line == line


def test_v_in_reversible_hint_rejected():
    with pytest.raises(MixedLayers):
        parse_real(doc("v a b\n"), Layer.REVERSIBLE)


def test_parse_error_is_value_error():
    assert issubclass(RealParseError, ValueError)


def test_writer_output_shape():
    c = parse_real(doc("t3 a b c\n"))
    text = write_real(c)
    assert text.splitlines()[:3] == [".version 1.0", ".numvars 3", ".variables a b c"]
    assert "t3 a b c" in text


@settings(max_examples=200, deadline=None)
@given(reversible_circuits(max_width=7, max_controls=4))
def test_round_trip_reversible(circuit):
    again = parse_real(write_real(circuit), Layer.REVERSIBLE)
    assert again.gates == circuit.gates
    assert again.lines == circuit.lines


@settings(max_examples=200, deadline=None)
@given(elementary_circuits(max_width=7, max_gates=30))
def test_round_trip_elementary(circuit):
    again = parse_real(write_real(circuit), Layer.ELEMENTARY)
    assert again.gates == circuit.gates
