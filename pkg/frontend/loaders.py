"""
Reading workbench structures out of parsed .lcf files, and writing them
back, by the conventional map names:

  bracket                     Leibniz conformal algebra
  left, right                 representation (the adjoint one when absent)
  phi, psi, tau               cochains (elements for degree 0)
  rho1, rho2, ... / varrho1   Leib∞ operations on one graded module
  d, rho2, rho3               2-term algebra on a module in degrees 0 and 1
  bracket_g, bracket_h,
  d, phi_l, phi_r             crossed module
  d, bracket0, bracket1, L    2-algebra on modules C0, K and C1
  f, f2                       2-term homomorphism
  F0, F1, F2                  2-algebra homomorphism
  bracket_g, bracket_h, f     morphism whose kernel is taken
"""
from categorified.algebras import TwoAlg
from categorified.homs import TwoAlgHom
from categorified.spaces import TwoVectorSpace
from core.exceptions import ShapeError
from core.modules import ConfModule, SesqMap
from frontend.specfile import SpecFile
from homotopy.convolution import ConvolutionElement
from homotopy.operations import SHIFTED, UNSHIFTED, GradedConfModule, HomotopyOps, check_homogeneous
from leibniz.algebras import LeibnizConfAlg
from leibniz.cohomology import Cochain
from leibniz.constructions import adjoint
from leibniz.representations import ConfRep
from twoterm.algebras import TwoTermAlg
from twoterm.crossed import CrossedModule
from twoterm.homs import TwoTermHom

COCHAIN_NAMES = ("phi", "psi", "tau")

#: Module names used when writing 2-algebras out.
TWO_ALG_MODULES = ("C0", "K", "C1")


def endomorphic(spec: SpecFile, name: str) -> LeibnizConfAlg:
    phi = spec.map(name)
    return LeibnizConfAlg(phi.target, phi)


def load_algebra(spec: SpecFile) -> LeibnizConfAlg:
    return endomorphic(spec, "bracket")


def load_rep(spec: SpecFile, alg: LeibnizConfAlg) -> ConfRep:
    if "left" not in spec.maps and "right" not in spec.maps:
        return adjoint(alg)
    present = spec.maps.get("left") or spec.maps["right"]
    module = present.target
    left = spec.maps.get("left") or SesqMap.zero([alg.module, module], module)
    right = spec.maps.get("right") or SesqMap.zero([module, alg.module], module)
    return ConfRep(alg, module, left, right)


def load_cochain(spec: SpecFile, names=COCHAIN_NAMES) -> tuple[str, Cochain]:
    """
    The first cochain found under one of `names`, with the name it was
    found under.
    """
    for name in names:
        if name in spec.maps:
            phi = spec.maps[name]
            return name, Cochain(phi.arity, map=phi)
        if name in spec.elements:
            return name, Cochain(0, element=spec.elements[name])
    raise ShapeError(f"no cochain called {' or '.join(names)}")


def load_ops(spec: SpecFile) -> HomotopyOps:
    unshifted, shifted = spec.numbered("rho"), spec.numbered("varrho")
    if unshifted and shifted:
        raise ShapeError("give either rho or varrho operations, not both")
    ops, flavor = (shifted, SHIFTED) if shifted else (unshifted, UNSHIFTED)
    if not ops:
        raise ShapeError("no rho1, rho2, ... operations")
    module = next(iter(ops.values())).target
    return HomotopyOps(GradedConfModule.of(module), ops, flavor)


def load_convolution(spec: SpecFile, ops: HomotopyOps, prefix: str = "phi") -> ConvolutionElement:
    components = spec.numbered(prefix)
    if not components:
        raise ShapeError(f"no {prefix}1, {prefix}2, ... components")
    degrees = {phi.degree for phi in components.values()}
    if len(degrees) != 1:
        raise ShapeError("every component of a convolution element has the same degree")
    return ConvolutionElement(ops.module, degrees.pop(), components)


def load_two_term(spec: SpecFile) -> TwoTermAlg:
    pieces = {arity: spec.maps[name] for arity, name in [(1, "d"), (2, "rho2"), (3, "rho3")] if name in spec.maps}
    if pieces:
        module = next(iter(pieces.values())).target
    elif len(spec.modules) == 1:
        (module,) = spec.modules.values()
    else:
        raise ShapeError("no d, rho2 or rho3 map")
    return TwoTermAlg.from_ops(HomotopyOps(GradedConfModule.of(module), pieces))


def load_crossed(spec: SpecFile) -> CrossedModule:
    g, h = endomorphic(spec, "bracket_g"), endomorphic(spec, "bracket_h")
    return CrossedModule(
        g,
        h,
        spec.map("d"),
        spec.maps.get("phi_l") or SesqMap.zero([h.module, g.module], g.module),
        spec.maps.get("phi_r") or SesqMap.zero([g.module, h.module], g.module),
    )


def load_two_alg(spec: SpecFile) -> TwoAlg:
    c0, k, _ = TWO_ALG_MODULES
    space = TwoVectorSpace(spec.module(c0), spec.module(k), spec.maps.get("d"), name="C")
    return TwoAlg(space, spec.maps.get("bracket0"), spec.maps.get("bracket1"), spec.maps.get("L"))


def graded_piece(phi: SesqMap, degree: int, sources: list[ConfModule], target: ConfModule) -> SesqMap:
    """
    Restricts a map of total modules to components, refusing entries that
    would be lost on the way.
    """
    check_homogeneous(phi.with_modules(degree=degree))
    return phi.restrict(sources, target)


def load_two_term_hom(spec: SpecFile, source: TwoTermAlg, target: TwoTermAlg) -> TwoTermHom:
    f = spec.map("f")
    f2 = spec.maps.get("f2")
    return TwoTermHom(
        source,
        target,
        graded_piece(f, 0, [source.g0], target.g0),
        graded_piece(f, 0, [source.g1], target.g1),
        None if f2 is None else graded_piece(f2, 1, [source.g0, source.g0], target.g1),
    )


def load_two_alg_hom(spec: SpecFile, source: TwoAlg, target: TwoAlg) -> TwoAlgHom:
    return TwoAlgHom(source, target, spec.map("F0"), spec.map("F1"), spec.maps.get("F2"))


def load_morphism(spec: SpecFile) -> tuple[LeibnizConfAlg, LeibnizConfAlg, SesqMap]:
    return endomorphic(spec, "bracket_g"), endomorphic(spec, "bracket_h"), spec.map("f")


# Writing structures back out


def dump_algebra(alg: LeibnizConfAlg, spec: SpecFile | None = None, name: str = "bracket") -> SpecFile:
    spec = spec or SpecFile()
    spec.add_map(name, alg.bracket)
    return spec


def dump_rep(rep: ConfRep, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    spec.add_map("left", rep.left)
    spec.add_map("right", rep.right)
    return spec


def dump_cochain(name: str, cochain: Cochain, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    if cochain.degree == 0:
        spec.add_element(name, cochain.element)
    else:
        spec.add_map(name, cochain.map)
    return spec


def dump_ops(ops: HomotopyOps, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    spec.add_module(ops.module)
    prefix = "varrho" if ops.flavor == SHIFTED else "rho"
    for arity, op in ops.ops.items():
        spec.add_map(f"{prefix}{arity}", op)
    return spec


def dump_convolution(element: ConvolutionElement, prefix: str, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    spec.add_module(element.module)
    for arity, phi in element.components.items():
        spec.add_map(f"{prefix}{arity}", phi)
    return spec


def dump_two_term(alg: TwoTermAlg, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    spec.add_map("d", alg.ops.op(1))
    spec.add_map("rho2", alg.ops.op(2))
    spec.add_map("rho3", alg.ops.op(3))
    return spec


def dump_crossed(crossed: CrossedModule, spec: SpecFile | None = None) -> SpecFile:
    spec = spec or SpecFile()
    dump_algebra(crossed.g, spec, "bracket_g")
    dump_algebra(crossed.h, spec, "bracket_h")
    spec.add_map("d", crossed.d)
    spec.add_map("phi_l", crossed.phi_l)
    spec.add_map("phi_r", crossed.phi_r)
    return spec


def dump_two_alg(alg: TwoAlg, spec: SpecFile | None = None) -> SpecFile:
    """
    Writes the 2-algebra on modules renamed to C0, K and C1.
    """
    spec = spec or SpecFile()
    c0, k, c1 = (ConfModule(name, module.basis) for name, module in zip(TWO_ALG_MODULES, (alg.c0, alg.k, alg.c1)))
    for module in (c0, k, c1):
        spec.add_module(module)
    spec.add_map("d", alg.d.with_modules([k], c0))
    spec.add_map("bracket0", alg.bracket0.with_modules([c0, c0], c0))
    spec.add_map("bracket1", alg.bracket1.with_modules([c1, c1], c1))
    spec.add_map("L", alg.leibnizator.with_modules([c0, c0, c0], k))
    return spec
