"""Scenario syntax tree. Source positions never take part in equality."""
from dataclasses import dataclass, field
from typing import Union


def _pos():
    return field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class Number:
    value: complex
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Name:
    ident: str
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Weighted:
    weight: "Expr"
    item: "Expr"
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class MatrixLiteral:
    rows: tuple[tuple["Expr", ...], ...]
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class OutcomeSet:
    values: tuple["Expr", ...]
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class AllOutcomes:
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Complement:
    inner: OutcomeSet
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class NameList:
    names: tuple[Name, ...]
    line: int = _pos()
    col: int = _pos()


Expr = Union[Number, Name, Call, MatrixLiteral, Weighted]
Value = Union[Expr, OutcomeSet, AllOutcomes, Complement, NameList]


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    kind: str  # generators | direct_sum | full | pointer
    args: tuple[Expr, ...]
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class MeasurementDecl:
    name: str
    fields: tuple[tuple[str, Value], ...]
    line: int = _pos()
    col: int = _pos()

    def get(self, key: str, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default


Declaration = Union[Let, AlgebraDecl, MeasurementDecl]


@dataclass(frozen=True)
class Query:
    kind: str
    args: tuple[tuple[str, Value], ...]
    line: int = _pos()
    col: int = _pos()

    def get(self, key: str, default=None):
        for k, v in self.args:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Scenario:
    name: str = ""
    seed: int | None = None
    tolerance: float | None = None
    declarations: tuple[Declaration, ...] = ()
    queries: tuple[Query, ...] = ()

    def declaration(self, name: str) -> Declaration | None:
        for decl in self.declarations:
            if decl.name == name:
                return decl
        return None
