"""Name resolution and dimension inference for parsed scenarios."""
import logging
from dataclasses import dataclass

from errors import ScenarioSemanticError
from frontend.parser import parse_syntax
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

logger = logging.getLogger(__name__)

BUILTIN_MATRICES = {"pauli_x": 2, "pauli_y": 2, "pauli_z": 2}
CONSTANTS = ("pi",)
SCALAR_FUNCTIONS = ("cos", "sin", "sqrt", "exp")
SIZED_MATRICES = ("identity", "fourier", "random_hermitian")
SIZED_STATES = ("maximally_mixed", "random_state")

# key -> (required, value type)
QUERY_SIGNATURES = {
    "gns": {"algebra": (True, "algebra"), "state": (True, "state")},
    "sectors": {"algebra": (True, "algebra"), "state": (True, "state")},
    "born": {"measurement": (True, "measurement"), "state": (True, "state"), "outcomes": (True, "outcomes")},
    "generalized_born": {
        "measurement": (True, "measurement"),
        "state": (True, "state"),
        "outcomes": (True, "outcomes"),
    },
    "spectral_eq": {
        "left": (True, "matrix"),
        "right": (True, "matrix"),
        "states": (True, "states"),
        "expect": (False, "bool"),
    },
    "mppc": {"measurement": (True, "measurement"), "states": (True, "states"), "expect": (False, "bool")},
    "instrument": {
        "measurement": (True, "measurement"),
        "state": (True, "state"),
        "observable": (True, "matrix"),
        "outcomes": (True, "outcomes"),
    },
}


@dataclass(frozen=True)
class Symbol:
    kind: str  # scalar | matrix | state | algebra | measurement
    dim: int = 0


class ScenarioChecker:
    """Resolves every name and infers the dimension of every declaration."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.symbols: dict[str, Symbol] = {}

    def error(self, node, message: str, name: str | None = None):
        raise ScenarioSemanticError(message, line=getattr(node, "line", 0), col=getattr(node, "col", 0), name=name)

    def check(self, scenario: Scenario) -> dict[str, Symbol]:
        for decl in scenario.declarations:
            if decl.name in self.symbols or decl.name in BUILTIN_MATRICES or decl.name in CONSTANTS:
                self.error(decl, f"'{decl.name}' is already defined", decl.name)
            if isinstance(decl, Let):
                symbol = self.infer(decl.expr)
            elif isinstance(decl, AlgebraDecl):
                symbol = self.check_algebra(decl)
            else:
                symbol = self.check_measurement(decl)
            self.symbols[decl.name] = symbol
        for query in scenario.queries:
            self.check_query(query)
        self.logger.debug("ScenarioChecker: %d symbols resolved", len(self.symbols))
        return dict(self.symbols)

    def integer(self, expr, what: str, minimum: int = 1) -> int:
        if not isinstance(expr, Number) or expr.value.imag != 0 or expr.value.real != int(expr.value.real):
            self.error(expr, f"{what} must be an integer literal")
        value = int(expr.value.real)
        if value < minimum:
            self.error(expr, f"{what} must be at least {minimum}, got {value}")
        return value

    def lookup(self, name: Name) -> Symbol:
        if name.ident in CONSTANTS:
            return Symbol("scalar")
        if name.ident in BUILTIN_MATRICES:
            return Symbol("matrix", BUILTIN_MATRICES[name.ident])
        if name.ident not in self.symbols:
            self.error(name, f"undeclared name '{name.ident}'", name.ident)
        return self.symbols[name.ident]

    def expect_kind(self, expr, kind: str) -> Symbol:
        symbol = self.infer(expr)
        if symbol.kind != kind:
            self.error(expr, f"expected a {kind}, got a {symbol.kind}", getattr(expr, "ident", None))
        return symbol

    def infer(self, expr) -> Symbol:
        if isinstance(expr, Number):
            return Symbol("scalar")
        if isinstance(expr, Name):
            return self.lookup(expr)
        if isinstance(expr, MatrixLiteral):
            n = len(expr.rows)
            for row in expr.rows:
                if len(row) != n:
                    self.error(expr, f"matrix literal is not square: {n} rows, a row of {len(row)}")
                for entry in row:
                    self.expect_kind(entry, "scalar")
            return Symbol("matrix", n)
        if isinstance(expr, Weighted):
            self.error(expr, "weighted terms are only allowed inside mixture(...)")
        if isinstance(expr, Call):
            return self.infer_call(expr)
        self.error(expr, f"unexpected {type(expr).__name__} in an expression")

    def infer_call(self, call: Call) -> Symbol:
        func, args = call.func, call.args
        if func == "neg":
            return self.infer(args[0])
        if func in SCALAR_FUNCTIONS:
            self.arity(call, 1)
            self.expect_kind(args[0], "scalar")
            return Symbol("scalar")
        if func in SIZED_MATRICES or func in SIZED_STATES:
            self.arity(call, 1)
            n = self.integer(args[0], f"{func} size")
            return Symbol("matrix" if func in SIZED_MATRICES else "state", n)
        if func in ("diag", "vector", "ket"):
            if not args:
                self.error(call, f"{func}(...) needs at least one entry")
            for a in args:
                self.expect_kind(a, "scalar")
            return Symbol("matrix" if func == "diag" else "state", len(args))
        if func == "kron":
            self.arity(call, 2)
            left, right = self.infer(args[0]), self.infer(args[1])
            if left.kind != right.kind or left.kind not in ("matrix", "state"):
                self.error(call, f"kron needs two matrices or two states, got {left.kind} and {right.kind}")
            return Symbol(left.kind, left.dim * right.dim)
        if func == "density":
            self.arity(call, 1)
            return Symbol("state", self.expect_kind(args[0], "matrix").dim)
        if func == "mixture":
            if not args:
                self.error(call, "mixture(...) needs at least one term")
            dims = set()
            for a in args:
                if not isinstance(a, Weighted):
                    self.error(a, "mixture terms are written weight: state")
                self.expect_kind(a.weight, "scalar")
                dims.add(self.expect_kind(a.item, "state").dim)
            if len(dims) != 1:
                self.error(call, f"mixture of states on different dimensions {sorted(dims)}")
            return Symbol("state", dims.pop())
        self.error(call, f"unknown function '{func}'", func)

    def arity(self, call: Call, n: int):
        if len(call.args) != n:
            self.error(call, f"{call.func} takes {n} argument(s), got {len(call.args)}")

    def check_algebra(self, decl: AlgebraDecl) -> Symbol:
        if decl.kind == "generators":
            dims = {self.expect_kind(g, "matrix").dim for g in decl.args}
            if len(dims) != 1:
                self.error(decl, f"generators of '{decl.name}' have different dimensions {sorted(dims)}", decl.name)
            return Symbol("algebra", dims.pop())
        if decl.kind == "direct_sum":
            return Symbol("algebra", sum(self.integer(a, "block size") for a in decl.args))
        if len(decl.args) != 1:
            self.error(decl, f"'{decl.kind}' takes one size", decl.name)
        return Symbol("algebra", self.integer(decl.args[0], f"{decl.kind} size"))

    def named(self, value, kind: str) -> Symbol:
        if not isinstance(value, Name):
            self.error(value, f"expected the name of a {kind}")
        symbol = self.lookup(value)
        if symbol.kind != kind:
            self.error(value, f"'{value.ident}' is a {symbol.kind}, expected a {kind}", value.ident)
        return symbol

    def check_measurement(self, decl: MeasurementDecl) -> Symbol:
        keys = [k for k, _ in decl.fields]
        duplicated = {k for k in keys if keys.count(k) > 1}
        if duplicated:
            self.error(decl, f"measurement '{decl.name}' repeats fields {sorted(duplicated)}", decl.name)
        observable = decl.get("observable")
        if observable is None:
            self.error(decl, f"measurement '{decl.name}' needs an observable", decl.name)
        n = self.expect_kind(observable, "matrix").dim
        pointer = decl.get("pointer")
        if pointer is not None:
            self.expect_kind(pointer, "state")
        swap = decl.get("swap")
        if swap is not None:
            for index in swap:
                self.integer(index, "swapped outcome index", minimum=0)
        algebra = decl.get("algebra")
        if algebra is not None and self.named(algebra, "algebra").dim != n:
            self.error(algebra, f"algebra '{algebra.ident}' does not act on the observable's {n} dims", algebra.ident)
        reference = decl.get("reference")
        if reference is not None:
            if algebra is None:
                self.error(reference, "a reference state needs an algebra", getattr(reference, "ident", None))
            if self.named(reference, "state").dim != n:
                self.error(reference, f"reference state is not on {n} dims", reference.ident)
        return Symbol("measurement", n)

    def check_query(self, query: Query):
        signature = QUERY_SIGNATURES.get(query.kind)
        if signature is None:
            self.error(query, f"unknown query kind '{query.kind}'", query.kind)
        given = dict(query.args)
        for key in given:
            if key not in signature:
                self.error(query, f"query {query.kind} has no argument '{key}'", key)
        for key, (required, _) in signature.items():
            if required and key not in given:
                self.error(query, f"query {query.kind} needs '{key}='", key)

        dims = set()
        for key, value in query.args:
            kind = signature[key][1]
            if kind in ("algebra", "measurement"):
                dims.add(self.named(value, kind).dim)
            elif kind == "state":
                dims.add(self.expect_kind(value, "state").dim)
            elif kind == "matrix":
                dims.add(self.expect_kind(value, "matrix").dim)
            elif kind == "states":
                if not isinstance(value, NameList):
                    self.error(value, "expected a list of states [s1, s2, ...]")
                for name in value.names:
                    dims.add(self.named(name, "state").dim)
            elif kind == "outcomes":
                self.check_outcomes(value)
            elif kind == "bool":
                if not (isinstance(value, Name) and value.ident in ("true", "false")):
                    self.error(value, "expected true or false")
        if len(dims) > 1:
            self.error(query, f"query {query.kind} mixes dimensions {sorted(dims)}")

    def check_outcomes(self, value):
        if isinstance(value, AllOutcomes):
            return
        if isinstance(value, Complement):
            value = value.inner
        if not isinstance(value, OutcomeSet):
            self.error(value, "expected an outcome set {a, b}, all or complement({...})")
        for v in value.values:
            symbol = self.infer(v)
            if symbol.kind != "scalar":
                self.error(v, "outcomes are real numbers")


def check(scenario: Scenario) -> dict[str, Symbol]:
    return ScenarioChecker().check(scenario)


def parse(text: str) -> Scenario:
    """Parse and check a scenario; raises ScenarioSyntaxError or ScenarioSemanticError."""
    scenario = parse_syntax(text)
    check(scenario)
    return scenario
