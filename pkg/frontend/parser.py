"""Recursive-descent parser for scenario files (grammar in docs/grammar.md)."""
import logging

from errors import ScenarioSyntaxError
from frontend.lexer import Token, parse_complex, tokenize
from frontend.syntax import (
    AlgebraDecl,
    AllOutcomes,
    Call,
    Complement,
    Let,
    MatrixLiteral,
    MeasurementDecl,
    Name,
    NameList,
    Number,
    OutcomeSet,
    Query,
    Scenario,
    Weighted,
)

ALGEBRA_KINDS = ("generators", "direct_sum", "full", "pointer")
MEASUREMENT_FIELDS = ("observable", "pointer", "swap", "algebra", "reference")


class ScenarioParser:
    """
    Turns scenario text into a Scenario syntax tree. One parser per text;
    semantic checks live in frontend.semantics.
    """

    def __init__(self, text: str):
        self.logger = logging.getLogger(__name__)
        self.tokens = tokenize(text)
        self.pos = 0

    # token helpers
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        self.pos = min(self.pos + 1, len(self.tokens) - 1)
        return token

    def at(self, text: str) -> bool:
        return self.current.kind in ("PUNCT", "NAME") and self.current.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            self.fail(what)
        return self.advance()

    def fail(self, expected: str):
        token = self.current
        found = token.text if token.kind != "EOF" else "end of input"
        raise ScenarioSyntaxError(token.line, token.col, expected, found)

    # statements
    def parse(self) -> Scenario:
        name, seed, tolerance = "", None, None
        declarations, queries = [], []
        while self.current.kind != "EOF":
            token = self.current
            if token.kind != "NAME":
                self.fail("a statement")
            if token.text == "scenario":
                self.advance()
                name = self.expect_kind("STRING", "a quoted scenario name").text[1:-1]
            elif token.text == "seed":
                self.advance()
                seed = self.parse_seed()
            elif token.text == "tolerance":
                self.advance()
                tolerance = float(self.expect_kind("NUMBER", "a tolerance").text)
            elif token.text == "let":
                declarations.append(self.parse_let())
            elif token.text == "algebra":
                declarations.append(self.parse_algebra())
            elif token.text == "measurement":
                declarations.append(self.parse_measurement())
            elif token.text == "query":
                queries.append(self.parse_query())
            else:
                self.fail("'scenario', 'seed', 'tolerance', 'let', 'algebra', 'measurement' or 'query'")
        self.logger.debug("ScenarioParser: %d declarations, %d queries", len(declarations), len(queries))
        return Scenario(
            name=name,
            seed=seed,
            tolerance=tolerance,
            declarations=tuple(declarations),
            queries=tuple(queries),
        )

    def parse_seed(self) -> int:
        token = self.expect_kind("NUMBER", "an integer seed")
        if not token.text.isdigit():
            raise ScenarioSyntaxError(token.line, token.col, "an integer seed", token.text)
        return int(token.text)

    def parse_let(self) -> Let:
        start = self.advance()
        name = self.expect_kind("NAME", "a name").text
        self.expect("=")
        return Let(name, self.parse_expr(), line=start.line, col=start.col)

    def parse_algebra(self) -> AlgebraDecl:
        start = self.advance()
        name = self.expect_kind("NAME", "an algebra name").text
        self.expect("{")
        kind = self.expect_kind("NAME", "an algebra kind").text
        if kind not in ALGEBRA_KINDS:
            self.pos -= 1
            self.fail(" or ".join(ALGEBRA_KINDS))
        self.expect(":")
        args = [self.parse_expr()]
        while self.at(","):
            self.advance()
            args.append(self.parse_expr())
        self.expect("}")
        return AlgebraDecl(name, kind, tuple(args), line=start.line, col=start.col)

    def parse_measurement(self) -> MeasurementDecl:
        start = self.advance()
        name = self.expect_kind("NAME", "a measurement name").text
        self.expect("{")
        fields = []
        while not self.at("}"):
            key = self.expect_kind("NAME", "a measurement field").text
            if key not in MEASUREMENT_FIELDS:
                self.pos -= 1
                self.fail(" or ".join(MEASUREMENT_FIELDS))
            self.expect(":")
            if key == "swap":
                first = self.parse_expr()
                self.expect(",")
                fields.append((key, (first, self.parse_expr())))
            else:
                fields.append((key, self.parse_value()))
            if self.at(","):
                self.advance()
        self.expect("}")
        return MeasurementDecl(name, tuple(fields), line=start.line, col=start.col)

    def parse_query(self) -> Query:
        start = self.advance()
        kind = self.expect_kind("NAME", "a query kind").text
        args = []
        while self.current.kind == "NAME" and self.peek().text == "=":
            key = self.advance().text
            self.advance()
            args.append((key, self.parse_value()))
        return Query(kind, tuple(args), line=start.line, col=start.col)

    # values and expressions
    def parse_value(self):
        token = self.current
        if self.at("{"):
            return self.parse_outcome_set()
        if token.kind == "NAME" and token.text == "all" and self.peek().text != "(":
            self.advance()
            return AllOutcomes(line=token.line, col=token.col)
        if token.kind == "NAME" and token.text == "complement" and self.peek().text == "(":
            self.advance()
            self.expect("(")
            inner = self.parse_outcome_set()
            self.expect(")")
            return Complement(inner, line=token.line, col=token.col)
        if self.at("[") and self.peek().kind == "NAME":
            self.advance()
            names = [self.parse_name()]
            while self.at(","):
                self.advance()
                names.append(self.parse_name())
            self.expect("]")
            return NameList(tuple(names), line=token.line, col=token.col)
        return self.parse_expr()

    def parse_name(self) -> Name:
        token = self.expect_kind("NAME", "a name")
        return Name(token.text, line=token.line, col=token.col)

    def parse_outcome_set(self) -> OutcomeSet:
        start = self.expect("{")
        values = []
        if not self.at("}"):
            values.append(self.parse_expr())
            while self.at(","):
                self.advance()
                values.append(self.parse_expr())
        self.expect("}")
        return OutcomeSet(tuple(values), line=start.line, col=start.col)

    def parse_expr(self):
        token = self.current
        if self.at("-"):
            self.advance()
            inner = self.parse_expr()
            if isinstance(inner, Number):
                return Number(-inner.value, line=token.line, col=token.col)
            return Call("neg", (inner,), line=token.line, col=token.col)
        if token.kind == "NUMBER":
            self.advance()
            return Number(complex(float(token.text)), line=token.line, col=token.col)
        if token.kind == "COMPLEX":
            self.advance()
            return Number(parse_complex(token.text), line=token.line, col=token.col)
        if self.at("["):
            return self.parse_matrix()
        if token.kind == "NAME":
            self.advance()
            if not self.at("("):
                return Name(token.text, line=token.line, col=token.col)
            self.advance()
            args = []
            if not self.at(")"):
                args.append(self.parse_argument())
                while self.at(","):
                    self.advance()
                    args.append(self.parse_argument())
            self.expect(")")
            return Call(token.text, tuple(args), line=token.line, col=token.col)
        self.fail("an expression")

    def parse_argument(self):
        token = self.current
        expr = self.parse_expr()
        if self.at(":"):
            self.advance()
            return Weighted(expr, self.parse_expr(), line=token.line, col=token.col)
        return expr

    def parse_matrix(self) -> MatrixLiteral:
        start = self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.parse_expr()]
            while self.at(","):
                self.advance()
                row.append(self.parse_expr())
            self.expect("]")
            rows.append(tuple(row))
            if not self.at(","):
                break
            self.advance()
        self.expect("]")
        return MatrixLiteral(tuple(rows), line=start.line, col=start.col)


def parse_syntax(text: str) -> Scenario:
    """Syntax only; see frontend.semantics.parse for the checked version."""
    return ScenarioParser(text).parse()
