from fractions import Fraction

import pytest

from core.exceptions import ParseError, SemanticError
from core.modules import ModValue
from core.ring import Poly, VarCtx
from frontend.files import fixtures, load
from frontend.lexer import EOF, IDENT, KEYWORD, tokenize
from frontend.loaders import load_algebra
from frontend.specfile import parse, print_spec
from leibniz.constructions import virasoro

VIRASORO = "module g { basis L } bracket { [L,L] = (D + 2*l) L }"


def test_tokens():
    tokens = tokenize("map f : A -> B { [a] = 1/2 a } # comment")
    assert [t.kind for t in tokens[:3]] == [KEYWORD, IDENT, "symbol"]
    assert "1/2" in [t.text for t in tokens]
    assert tokens[-1].kind == EOF


def test_lexical_error():
    with pytest.raises(ParseError) as info:
        parse("module g { basis L } $")
    assert (info.value.line, info.value.column) == (1, 22)


def test_zero_denominator():
    with pytest.raises(ParseError, match="division by zero"):
        parse("module g { basis L }\nelement x : g = 1/0 L")


def test_missing_name():
    """
    The error sits at the offending token and lists what was acceptable
    """
    with pytest.raises(ParseError) as info:
        parse("module { }")
    assert (info.value.line, info.value.column) == (1, 8)
    assert info.value.expected == ("identifier",)


def test_expected_declarations():
    with pytest.raises(ParseError) as info:
        parse("module g { } 42")
    assert info.value.column == 14
    assert info.value.expected == ("'bracket'", "'element'", "'map'", "'module'", "'option'", "end of file")


def test_term_needs_basis():
    with pytest.raises(ParseError, match="basis element") as info:
        parse("module g { basis L }\nbracket { [L, L] = (D + 2*l) }")
    assert (info.value.line, info.value.column) == (2, 20)


def test_undeclared_basis_element():
    with pytest.raises(SemanticError) as info:
        parse("module g { basis L }\nbracket { [L, X] = L }")
    assert (info.value.line, info.value.column) == (2, 15)
    assert "X" in info.value.message


def test_undeclared_module():
    with pytest.raises(SemanticError, match="undeclared module H"):
        parse("module G { basis a }\nmap f : G -> H { }")


def test_semantic_errors():
    for source in [
        "module g { basis D }",
        "module g { basis a, a }",
        "module g { basis a }\nmodule g { }",
        "module g { basis a }\nmodule h { }\nbracket { }",
        "module g { basis a }\nmap f : g * g -> g (x, y) { }",
        "module g { basis a }\nmap f : g -> g { [a, a] = a }",
        "module g { basis a }\nmap f : g * g -> g { [a, a] = q a }",
        "module g { basis a }\nmap f : g * g -> g { [a, a] = a\n [a, a] = a }",
    ]:
        with pytest.raises(SemanticError):
            parse(source)


def test_empty_module():
    spec = parse("module Z { }")
    assert spec.module("Z").basis == ()
    assert spec.module("Z").is_zero
    assert print_spec(spec) == "module Z { }\n"


def test_virasoro_source():
    """
    The textual Virasoro bracket is the one built in code
    """
    spec = parse(VIRASORO)
    assert load_algebra(spec).bracket == virasoro("g").bracket


def test_virasoro_fixture(vir):
    alg = load_algebra(load("zoo:virasoro"))
    assert alg.module == vir.module
    assert alg.bracket == vir.bracket


def test_named_variables():
    spec = parse("module g { basis x, y }\nmap t : g * g * g -> g (a, b) { [x, x, y] = (a^2 - 3*b*D) y + 1/2 x }")
    ctx = VarCtx.standard(2)
    a, b, d = Poly.var(ctx, "l1"), Poly.var(ctx, "l2"), Poly.derivation(ctx)
    g = spec.module("g")
    expected = ModValue(g, ctx, {"y": a**2 - 3 * b * d, "x": Poly.constant(ctx, Fraction(1, 2))})
    assert spec.map("t").entry(("x", "x", "y")) == expected


def test_elements_and_options():
    spec = parse("module g { basis a, b@1 }\nelement phi : g = -2 a + b\noption nmax = 3")
    g = spec.module("g")
    assert g.degrees == {"a": 0, "b": 1}
    assert spec.elements["phi"] == ModValue(g, VarCtx(), {"a": Poly.constant(VarCtx(), -2), "b": Poly.one(VarCtx())})
    assert spec.option("nmax") == 3
    assert spec.option("missing", 5) == 5


@pytest.mark.parametrize("name", sorted(fixtures()))
def test_print_round_trip(name):
    """
    Printing a fixture gives a source that parses back to the same file
    """
    spec = load(f"zoo:{name}")
    printed = print_spec(spec)
    assert parse(printed) == spec
    assert print_spec(parse(printed)) == printed


def test_missing_fixture():
    with pytest.raises(FileNotFoundError):
        load("zoo:nothing-here")
