import re
from dataclasses import dataclass

from core.exceptions import ParseError

#: Words that open a declaration and so can never name a basis element or
#: a variable.
KEYWORDS = frozenset({"module", "map", "bracket", "element", "option"})

IDENT = "identifier"
NUMBER = "number"
KEYWORD = "keyword"
SYMBOL = "symbol"
EOF = "end of file"

TOKEN_PATTERN = re.compile(
    r"""
    (?P<space>[ \t\r\f]+)
    | (?P<newline>\n)
    | (?P<comment>\#[^\n]*)
    | (?P<number>[0-9]+(?:/[0-9]+)?)
    | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<symbol>->|[{}\[\](),:=+\-*^@])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == EOF:
            return EOF
        return repr(self.text)


def tokenize(text: str) -> list[Token]:
    """
    Splits a .lcf source into tokens, dropping whitespace and comments.
    The list always ends with an end-of-file token.
    """
    tokens = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        column = position - line_start + 1
        if match is None:
            raise ParseError(f"unexpected character {text[position]!r}", line, column)
        kind = match.lastgroup
        value = match.group()
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "number":
            denominator = value.partition("/")[2]
            if denominator and int(denominator) == 0:
                raise ParseError("division by zero", line, column)
            tokens.append(Token(NUMBER, value, line, column))
        elif kind == "word":
            tokens.append(Token(KEYWORD if value in KEYWORDS else IDENT, value, line, column))
        elif kind == "symbol":
            tokens.append(Token(SYMBOL, value, line, column))
        position = match.end()
    tokens.append(Token(EOF, "", line, position - line_start + 1))
    return tokens
