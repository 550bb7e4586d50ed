from collections.abc import Mapping

from core.exceptions import SemanticError, ShapeError
from core.modules import ConfModule, ModValue, SesqMap, format_value
from core.ring import DERIVATION, Poly, VarCtx
from frontend.lexer import NUMBER, Token
from frontend.syntax import (
    Declaration,
    ElementDecl,
    Factor,
    MapDecl,
    ModuleDecl,
    Monomial,
    OptionDecl,
    Parser,
    ValueExpr,
)


class SpecFile:
    """
    The contents of one .lcf file: modules, named sesquilinear maps (values
    in the canonical contexts l1..l(n-1)), named constant elements and
    integer options, each in declaration order.
    """

    def __init__(self):
        self.modules: dict[str, ConfModule] = {}
        self.maps: dict[str, SesqMap] = {}
        self.elements: dict[str, ModValue] = {}
        self.options: dict[str, int] = {}

    def add_module(self, module: ConfModule) -> ConfModule:
        """
        Registers a module; re-adding the same module is a no-op.
        """
        known = self.modules.get(module.name)
        if known is None:
            self.modules[module.name] = ConfModule(module.name, module.basis, module.degrees)
        elif known != module:
            raise ShapeError(f"two different modules are called {module.name}")
        return self.modules[module.name]

    def add_map(self, name: str, phi: SesqMap) -> SesqMap:
        sources = [self.add_module(m) for m in phi.sources]
        target = self.add_module(phi.target)
        self.maps[name] = phi.with_modules(sources, target)
        return self.maps[name]

    def add_element(self, name: str, value: ModValue) -> ModValue:
        self.elements[name] = value.rebase(self.add_module(value.module))
        return self.elements[name]

    def module(self, name: str) -> ConfModule:
        try:
            return self.modules[name]
        except KeyError:
            raise ShapeError(f"no module called {name}")

    def map(self, name: str) -> SesqMap:
        try:
            return self.maps[name]
        except KeyError:
            raise ShapeError(f"no map called {name}")

    def numbered(self, prefix: str) -> dict[int, SesqMap]:
        """
        Maps called prefix1, prefix2, ..., keyed by their number.
        """
        found = {}
        for name, phi in self.maps.items():
            suffix = name.removeprefix(prefix)
            if suffix != name and suffix.isdigit():
                found[int(suffix)] = phi
        return dict(sorted(found.items()))

    def option(self, name: str, default: int | None = None) -> int | None:
        return self.options.get(name, default)

    def __eq__(self, other):
        if not isinstance(other, SpecFile):
            return NotImplemented
        return (
            self.modules == other.modules
            and self.elements == other.elements
            and self.options == other.options
            and self.maps == other.maps
            and signatures(self) == signatures(other)
        )

    def __repr__(self):
        return f"<SpecFile {len(self.modules)} modules, {len(self.maps)} maps>"


def signatures(spec: SpecFile) -> dict[str, tuple]:
    return {
        name: (tuple(m.name for m in phi.sources), phi.target.name, phi.degree)
        for name, phi in spec.maps.items()
    }


class Resolver:
    """
    The semantic pass: turns parsed declarations into a SpecFile, checking
    every name against what has been declared before it.
    """

    def __init__(self):
        self.spec = SpecFile()
        self.module_tokens: dict[str, Token] = {}

    def error(self, message: str, token: Token):
        return SemanticError(message, token.line, token.column)

    def resolve(self, declarations: list[Declaration]) -> SpecFile:
        for declaration in declarations:
            if isinstance(declaration, ModuleDecl):
                self.module_decl(declaration)
            elif isinstance(declaration, MapDecl):
                self.map_decl(declaration)
            elif isinstance(declaration, ElementDecl):
                self.element_decl(declaration)
            elif isinstance(declaration, OptionDecl):
                self.option_decl(declaration)
        return self.spec

    def lookup_module(self, token: Token) -> ConfModule:
        module = self.spec.modules.get(token.text)
        if module is None:
            raise self.error(f"undeclared module {token.text}", token)
        return module

    def module_decl(self, decl: ModuleDecl):
        if decl.name.text in self.spec.modules:
            raise self.error(f"module {decl.name.text} is declared twice", decl.name)
        basis, degrees = [], {}
        for element, degree in decl.items:
            if element.text == DERIVATION:
                raise self.error(f"{DERIVATION} is the derivation and cannot be a basis element", element)
            if element.text in degrees:
                raise self.error(f"{element.text} appears twice in {decl.name.text}", element)
            basis.append(element.text)
            degrees[element.text] = degree
        self.spec.modules[decl.name.text] = ConfModule(decl.name.text, basis, degrees)

    def variables(self, decl: MapDecl, arity: int) -> tuple[VarCtx, dict[str, Poly]]:
        ctx = VarCtx.standard(arity - 1)
        standard = [Poly.var(ctx, name) for name in ctx.lambda_vars]
        if decl.variables is None:
            names = dict(zip(ctx.lambda_vars, standard))
            if arity == 2:
                names["l"] = standard[0]
            return ctx, names
        if len(decl.variables) != arity - 1:
            raise self.error(
                f"a map of arity {arity} takes {arity - 1} variables, not {len(decl.variables)}",
                decl.variables[0],
            )
        names = {}
        for token, var in zip(decl.variables, standard):
            if token.text == DERIVATION or token.text in names:
                raise self.error(f"{token.text} cannot name a variable here", token)
            names[token.text] = var
        return ctx, names

    def map_decl(self, decl: MapDecl):
        if decl.name is None:
            name = "bracket"
            if decl.on is not None:
                module = self.lookup_module(decl.on)
            elif len(self.spec.modules) == 1:
                (module,) = self.spec.modules.values()
            else:
                raise self.error("a bracket needs 'on <module>' unless exactly one module is declared", decl.token)
            sources, target = [module, module], module
        else:
            name = decl.name.text
            sources = [self.lookup_module(token) for token in decl.sources]
            target = self.lookup_module(decl.target)
            if not sources:
                raise self.error(f"map {name} needs at least one source", decl.name)
        if name in self.spec.maps:
            raise self.error(f"map {name} is declared twice", decl.name or decl.token)
        ctx, names = self.variables(decl, len(sources))
        table = {}
        for entry in decl.entries:
            if len(entry.keys) != len(sources):
                raise self.error(
                    f"entries of {name} have {len(sources)} arguments, not {len(entry.keys)}", entry.token
                )
            for token, module in zip(entry.keys, sources):
                if token.text not in module:
                    raise self.error(f"{token.text} is not a basis element of {module.name}", token)
            key = tuple(token.text for token in entry.keys)
            if key in table:
                raise self.error(f"[{', '.join(key)}] is given twice", entry.token)
            table[key] = self.value(entry.value, target, ctx, names)
        self.spec.maps[name] = SesqMap(sources, target, table, decl.degree)

    def element_decl(self, decl: ElementDecl):
        if decl.name.text in self.spec.elements:
            raise self.error(f"element {decl.name.text} is declared twice", decl.name)
        module = self.lookup_module(decl.module)
        self.spec.elements[decl.name.text] = self.value(decl.value, module, VarCtx(), {})

    def option_decl(self, decl: OptionDecl):
        if decl.name.text in self.spec.options:
            raise self.error(f"option {decl.name.text} is set twice", decl.name)
        self.spec.options[decl.name.text] = decl.value

    def value(self, expr: ValueExpr, module: ConfModule, ctx: VarCtx, names: Mapping[str, Poly]) -> ModValue:
        result = ModValue.zero(module, ctx)
        for term in expr.terms:
            if term.basis.text not in module:
                raise self.error(f"{term.basis.text} is not a basis element of {module.name}", term.basis)
            coefficient = Poly.constant(ctx, term.sign)
            for factor in term.factors:
                coefficient = coefficient * self.factor(factor, ctx, names)
            result = result + ModValue.basis(module, term.basis.text, ctx) * coefficient
        return result

    def factor(self, factor: Factor, ctx: VarCtx, names: Mapping[str, Poly]) -> Poly:
        if factor.kind == NUMBER:
            return Poly.constant(ctx, factor.number)
        if factor.group is not None:
            result = self.poly(factor.group, ctx, names)
        elif factor.token.text == DERIVATION:
            result = Poly.derivation(ctx)
        elif factor.token.text in names:
            result = names[factor.token.text]
        else:
            raise self.error(f"unknown variable {factor.token.text}", factor.token)
        if factor.exponent is not None:
            result = result**factor.exponent
        return result

    def poly(self, monomials: list[Monomial], ctx: VarCtx, names: Mapping[str, Poly]) -> Poly:
        result = Poly.zero(ctx)
        for monomial in monomials:
            product = Poly.constant(ctx, monomial.sign)
            for factor in monomial.factors:
                product = product * self.factor(factor, ctx, names)
            result = result + product
        return result


def parse(text: str) -> SpecFile:
    """
    Parses and resolves a .lcf source. Raises ParseError for lexical and
    syntax errors and SemanticError for names that were never declared.
    """
    return Resolver().resolve(Parser(text).parse_file())


def format_item(module: ConfModule, element: str) -> str:
    degree = module.degrees[element]
    return f"{element}@{degree}" if degree else element


def print_spec(spec: SpecFile) -> str:
    """
    The canonical form of a SpecFile: modules, then maps with every
    variable at its default name, then elements and options.
    """
    blocks = []
    for module in spec.modules.values():
        if module.basis:
            items = ", ".join(format_item(module, element) for element in module.basis)
            blocks.append(f"module {module.name} {{ basis {items} }}")
        else:
            blocks.append(f"module {module.name} {{ }}")
    for name, phi in spec.maps.items():
        if name == "bracket":
            # reserved word; a bracket map is always M * M -> M of degree 0
            header = f"bracket on {phi.target.name}"
        else:
            header = f"map {name} : {' * '.join(m.name for m in phi.sources)} -> {phi.target.name}"
        if phi.degree:
            header += f" degree {phi.degree}"
        lines = [f"{header} {{"]
        for key in phi.keys():
            value = phi.table.get(key)
            if value is not None:
                lines.append(f"  [{', '.join(key)}] = {format_value(value)}")
        lines.append("}")
        blocks.append("\n".join(lines))
    for name, value in spec.elements.items():
        blocks.append(f"element {name} : {value.module.name} = {format_value(value)}")
    for name, number in spec.options.items():
        blocks.append(f"option {name} = {number}")
    return "\n".join(blocks) + "\n"
