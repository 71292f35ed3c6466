"""Canonical text for a Scenario; parsing the output gives back an equal tree."""
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


def _real(x: float) -> str:
    text = repr(float(x))
    return text if "e" in text or "." in text else text + ".0"


def format_number(value: complex) -> str:
    if value.imag == 0:
        return _real(value.real)
    sign = "+" if value.imag >= 0 else "-"
    real = _real(value.real)
    return f"{real}{sign}{_real(abs(value.imag))}i"


def format_expr(expr) -> str:
    if isinstance(expr, Number):
        return format_number(expr.value)
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, Weighted):
        return f"{format_expr(expr.weight)}: {format_expr(expr.item)}"
    if isinstance(expr, Call):
        if expr.func == "neg":
            return "-" + format_expr(expr.args[0])
        return f"{expr.func}({', '.join(format_expr(a) for a in expr.args)})"
    if isinstance(expr, MatrixLiteral):
        rows = ", ".join("[" + ", ".join(format_expr(e) for e in row) + "]" for row in expr.rows)
        return f"[{rows}]"
    if isinstance(expr, OutcomeSet):
        return "{" + ", ".join(format_expr(v) for v in expr.values) + "}"
    if isinstance(expr, AllOutcomes):
        return "all"
    if isinstance(expr, Complement):
        return f"complement({format_expr(expr.inner)})"
    if isinstance(expr, NameList):
        return "[" + ", ".join(n.ident for n in expr.names) + "]"
    if isinstance(expr, tuple):
        return ", ".join(format_expr(e) for e in expr)
    raise TypeError(f"cannot format {type(expr).__name__}")


def format_declaration(decl) -> str:
    if isinstance(decl, Let):
        return f"let {decl.name} = {format_expr(decl.expr)}"
    if isinstance(decl, AlgebraDecl):
        return f"algebra {decl.name} {{ {decl.kind}: {format_expr(decl.args)} }}"
    if isinstance(decl, MeasurementDecl):
        body = "  ".join(f"{key}: {format_expr(value)}" for key, value in decl.fields)
        return f"measurement {decl.name} {{ {body} }}"
    raise TypeError(f"cannot format {type(decl).__name__}")


def format_query(query: Query) -> str:
    args = "".join(f" {key}={format_expr(value)}" for key, value in query.args)
    return f"query {query.kind}{args}"


def format_scenario(scenario: Scenario) -> str:
    lines = []
    if scenario.name:
        lines.append(f'scenario "{scenario.name}"')
    if scenario.seed is not None:
        lines.append(f"seed {scenario.seed}")
    if scenario.tolerance is not None:
        lines.append(f"tolerance {_real(scenario.tolerance)}")
    lines.extend(format_declaration(d) for d in scenario.declarations)
    lines.extend(format_query(q) for q in scenario.queries)
    return "\n".join(lines) + ("\n" if lines else "")
