"""Tokenizer for scenario files."""
import re
from dataclasses import dataclass

from errors import ScenarioSyntaxError

_REAL = r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"

TOKEN_SPEC = [
    ("COMMENT", r"#[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("STRING", r'"[^"\n]*"'),
    ("COMPLEX", rf"-?{_REAL}[+-]{_REAL}i\b|-?{_REAL}i\b"),
    ("NUMBER", _REAL),
    ("NAME", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("PUNCT", r"[{}()\[\],:=\-]"),
]

_MASTER = re.compile("|".join(f"(?P<{kind}>{pattern})" for kind, pattern in TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str  # STRING | COMPLEX | NUMBER | NAME | PUNCT | EOF
    text: str
    line: int
    col: int


def parse_complex(text: str) -> complex:
    """'1.5-2i' -> (1.5-2j), '-3i' -> -3j; a leading minus binds to the real part."""
    body = text[:-1]
    match = re.fullmatch(rf"(-?{_REAL})([+-]{_REAL})", body)
    if match:
        return complex(float(match.group(1)), float(match.group(2)))
    return complex(0.0, float(body))


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _MASTER.match(text, pos)
        if match is None:
            raise ScenarioSyntaxError(line, pos - line_start + 1, "a token", text[pos])
        kind = match.lastgroup
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind not in ("SKIP", "COMMENT"):
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens
