from dataclasses import dataclass, field
from fractions import Fraction
from typing import NoReturn

from core.exceptions import ParseError
from frontend.lexer import EOF, IDENT, NUMBER, Token, tokenize


@dataclass
class Factor:
    token: Token
    kind: str
    number: Fraction | None = None
    group: list["Monomial"] | None = None
    exponent: int | None = None


@dataclass
class Monomial:
    sign: int
    factors: list[Factor]


@dataclass
class Term:
    """
    sign · (product of factors) · basis
    """

    sign: int
    factors: list[Factor]
    basis: Token


@dataclass
class ValueExpr:
    token: Token
    terms: list[Term] = field(default_factory=list)


@dataclass
class Entry:
    token: Token
    keys: list[Token]
    value: ValueExpr


@dataclass
class ModuleDecl:
    token: Token
    name: Token
    items: list[tuple[Token, int]]


@dataclass
class MapDecl:
    """
    A `map` declaration, or a `bracket` one when `name` is None.
    """

    token: Token
    name: Token | None
    sources: list[Token]
    target: Token | None
    degree: int
    variables: list[Token] | None
    entries: list[Entry]
    on: Token | None = None


@dataclass
class ElementDecl:
    token: Token
    name: Token
    module: Token
    value: ValueExpr


@dataclass
class OptionDecl:
    token: Token
    name: Token
    value: int


Declaration = ModuleDecl | MapDecl | ElementDecl | OptionDecl


class Parser:
    """
    Recursive-descent parser for .lcf sources. Every check made at the
    current token is remembered, so a failure can report the full set of
    tokens that would have been accepted there.
    """

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.position = 0
        self.expected: set[str] = set()

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.position + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.current
        if token.kind != EOF:
            self.position += 1
        self.expected = set()
        return token

    def check(self, text: str) -> bool:
        self.expected.add(f"'{text}'")
        token = self.current
        return token.kind not in (NUMBER, EOF) and token.text == text

    def check_kind(self, kind: str) -> bool:
        self.expected.add(kind)
        return self.current.kind == kind

    def fail(self, message: str | None = None, token: Token | None = None) -> NoReturn:
        token = token or self.current
        raise ParseError(
            message or f"unexpected {token.describe()}",
            token.line,
            token.column,
            tuple(self.expected),
        )

    def expect(self, text: str) -> Token:
        if not self.check(text):
            self.fail()
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.check_kind(IDENT):
            self.fail()
        return self.advance()

    def expect_int(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.check("-"):
            self.advance()
            sign = -1
        if not self.check_kind(NUMBER) or "/" in self.current.text:
            self.fail(None if self.current.kind != NUMBER else "expected an integer")
        return sign * int(self.advance().text)

    # Declarations

    def parse_file(self) -> list[Declaration]:
        declarations: list[Declaration] = []
        while True:
            if self.check("module"):
                declarations.append(self.parse_module())
            elif self.check("map"):
                declarations.append(self.parse_map())
            elif self.check("bracket"):
                declarations.append(self.parse_bracket())
            elif self.check("element"):
                declarations.append(self.parse_element())
            elif self.check("option"):
                declarations.append(self.parse_option())
            elif self.check_kind(EOF):
                return declarations
            else:
                self.fail()

    def parse_module(self) -> ModuleDecl:
        token = self.advance()
        name = self.expect_ident()
        self.expect("{")
        items = []
        if self.check("basis"):
            self.advance()
            items.append(self.parse_item())
            while self.check(","):
                self.advance()
                items.append(self.parse_item())
        self.expect("}")
        return ModuleDecl(token, name, items)

    def parse_item(self) -> tuple[Token, int]:
        element = self.expect_ident()
        degree = 0
        if self.check("@"):
            self.advance()
            degree = self.expect_int(signed=True)
        return element, degree

    def parse_map(self) -> MapDecl:
        token = self.advance()
        name = self.expect_ident()
        self.expect(":")
        sources = []
        if self.check_kind(IDENT):
            sources.append(self.advance())
            while self.check("*"):
                self.advance()
                sources.append(self.expect_ident())
        self.expect("->")
        target = self.expect_ident()
        degree = 0
        if self.check("degree"):
            self.advance()
            degree = self.expect_int(signed=True)
        variables = self.parse_variables()
        entries = self.parse_entries()
        return MapDecl(token, name, sources, target, degree, variables, entries)

    def parse_bracket(self) -> MapDecl:
        token = self.advance()
        on = None
        if self.check("on"):
            self.advance()
            on = self.expect_ident()
        variables = self.parse_variables()
        entries = self.parse_entries()
        return MapDecl(token, None, [], None, 0, variables, entries, on)

    def parse_variables(self) -> list[Token] | None:
        if not self.check("("):
            return None
        self.advance()
        variables = [self.expect_ident()]
        while self.check(","):
            self.advance()
            variables.append(self.expect_ident())
        self.expect(")")
        return variables

    def parse_entries(self) -> list[Entry]:
        self.expect("{")
        entries = []
        while self.check("["):
            token = self.advance()
            keys = [self.expect_ident()]
            while self.check(","):
                self.advance()
                keys.append(self.expect_ident())
            self.expect("]")
            self.expect("=")
            entries.append(Entry(token, keys, self.parse_value()))
        self.expect("}")
        return entries

    def parse_element(self) -> ElementDecl:
        token = self.advance()
        name = self.expect_ident()
        self.expect(":")
        module = self.expect_ident()
        self.expect("=")
        return ElementDecl(token, name, module, self.parse_value())

    def parse_option(self) -> OptionDecl:
        token = self.advance()
        name = self.expect_ident()
        self.expect("=")
        return OptionDecl(token, name, self.expect_int())

    # Values and polynomials

    def starts_factor(self) -> bool:
        found = self.check_kind(NUMBER)
        found = self.check_kind(IDENT) or found
        return self.check("(") or found

    def parse_value(self) -> ValueExpr:
        start = self.current
        after = self.peek()
        if start.kind == NUMBER and start.text == "0" and after.kind not in (NUMBER, IDENT):
            if after.text not in ("(", "*"):
                self.advance()
                return ValueExpr(start)
        value = ValueExpr(start)
        sign = 1
        if self.check("-"):
            self.advance()
            sign = -1
        value.terms.append(self.parse_term(sign))
        while True:
            if self.check("+"):
                sign = 1
            elif self.check("-"):
                sign = -1
            else:
                return value
            self.advance()
            value.terms.append(self.parse_term(sign))

    def parse_term(self, sign: int) -> Term:
        factors = [self.parse_factor()]
        while True:
            if self.check("*"):
                self.advance()
                factors.append(self.parse_factor())
            elif self.starts_factor():
                factors.append(self.parse_factor())
            else:
                break
        last = factors.pop()
        if last.kind != IDENT or last.exponent is not None:
            self.fail("a term has to end in a basis element", last.token)
        return Term(sign, factors, last.token)

    def parse_factor(self) -> Factor:
        token = self.current
        if self.check_kind(NUMBER):
            self.advance()
            return Factor(token, NUMBER, number=Fraction(token.text))
        if self.check_kind(IDENT):
            self.advance()
            factor = Factor(token, IDENT)
        elif self.check("("):
            self.advance()
            factor = Factor(token, "group", group=self.parse_poly())
            self.expect(")")
        else:
            self.fail()
        if self.check("^"):
            self.advance()
            factor.exponent = self.expect_int()
        return factor

    def parse_poly(self) -> list[Monomial]:
        sign = 1
        if self.check("-"):
            self.advance()
            sign = -1
        monomials = [Monomial(sign, self.parse_product())]
        while True:
            if self.check("+"):
                sign = 1
            elif self.check("-"):
                sign = -1
            else:
                return monomials
            self.advance()
            monomials.append(Monomial(sign, self.parse_product()))

    def parse_product(self) -> list[Factor]:
        factors = [self.parse_factor()]
        while self.check("*"):
            self.advance()
            factors.append(self.parse_factor())
        return factors
