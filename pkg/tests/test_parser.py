import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import ScenarioSyntaxError
from frontend import corpus, format_scenario
from frontend.lexer import parse_complex, tokenize
from frontend.parser import parse_syntax
from frontend.printer import format_number
from frontend.syntax import AllOutcomes, Call, Complement, MatrixLiteral, NameList, Number, OutcomeSet, Weighted


@pytest.mark.parametrize("path", corpus(), ids=lambda p: p.stem)
def test_corpus_round_trips_through_printer(path):
    scenario = parse_syntax(path.read_text(encoding="utf-8"))
    assert parse_syntax(format_scenario(scenario)) == scenario


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_number_literals_round_trip(value):
    parsed = parse_syntax(f"let c = {format_number(value)}")
    assert parsed.declarations[0].expr.value == value


@pytest.mark.parametrize(
    "text, value",
    [("1.5-2i", 1.5 - 2j), ("-1.5-2i", -1.5 - 2j), ("-3i", -3j), ("2e-3+1i", 0.002 + 1j), ("0.5i", 0.5j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value
    (token, eof) = tokenize(text)
    assert token.kind == "COMPLEX"
    assert eof.kind == "EOF"


def test_header_statements():
    scenario = parse_syntax('scenario "demo"\nseed 42\ntolerance 1e-8\n')
    assert (scenario.name, scenario.seed, scenario.tolerance) == ("demo", 42, 1e-8)


def test_declarations_and_query_values():
    scenario = parse_syntax(
        """
        let A = [[1, 0], [0, -1]]
        let s = mixture(0.25: ket(1, 0), 0.75: ket(0, 1))
        algebra D { direct_sum: 1, 1 }
        measurement M { observable: A  swap: 0, 1  algebra: D }
        query born measurement=M state=s outcomes=complement({1})
        query mppc measurement=M states=[s] expect=false
        query generalized_born measurement=M state=s outcomes=all
        """
    )
    A, s, D, M = scenario.declarations
    assert isinstance(A.expr, MatrixLiteral)
    assert A.expr.rows[1][1] == Number(-1)
    assert isinstance(s.expr, Call) and all(isinstance(a, Weighted) for a in s.expr.args)
    assert D.kind == "direct_sum" and D.args == (Number(1), Number(1))
    assert M.get("swap") == (Number(0), Number(1))

    born, mppc, generalized = scenario.queries
    assert born.get("outcomes") == Complement(OutcomeSet((Number(1),)))
    assert isinstance(mppc.get("states"), NameList)
    assert isinstance(generalized.get("outcomes"), AllOutcomes)


def test_positions_are_recorded_but_not_compared():
    first = parse_syntax("let x = 1")
    second = parse_syntax("\n\n   let x = 1")
    assert first == second
    assert second.declarations[0].line == 3


def test_negation_of_names_becomes_a_call():
    (decl,) = parse_syntax("let m = -pauli_z").declarations
    assert decl.expr == Call("neg", (parse_syntax("let m = pauli_z").declarations[0].expr,))


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("let = 3", 1, 5),
        ("let x = 1\nlet y = $", 2, 9),
        ("algebra A { blocks: 2 }", 1, 13),
        ("measurement M { observable: pauli_z  colour: 1 }", 1, 38),
        ("query born outcomes={1", 1, 23),
        ("frobnicate", 1, 1),
        ("seed 1.5", 1, 6),
        ("scenario \"s\"\nseed 1e3", 2, 6),
    ],
)
def test_syntax_errors_carry_positions(text, line, col):
    with pytest.raises(ScenarioSyntaxError) as excinfo:
        parse_syntax(text)
    assert (excinfo.value.line, excinfo.value.col) == (line, col)
    assert str(excinfo.value).startswith(f"{line}:{col}: syntax error")
