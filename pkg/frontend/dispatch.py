"""
The workbench command line: one verb per operation, each reading .lcf
files (or zoo:<name> fixtures), printing any structure it builds as .lcf
on stdout and a summary on stderr, or a JSON report on stdout with --json.

Exit codes: 0 pass, 1 fail or a domain error, 2 usage, missing files and
parse errors.
"""
import argparse
import json
import sys
import time
from collections.abc import Callable
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass, field
from typing import TextIO

from django.conf import settings

import confbench
from categorified.algebras import verify_two_alg
from categorified.functors import alpha_iso, functor_S, functor_T
from categorified.homs import verify_two_alg_hom
from categorified.spaces import verify_two_vector_space
from core import sentry
from core.exceptions import ParseError, ShapeError, WorkbenchError, capture_exception
from core.modules import format_value
from core.reports import CheckReport
from frontend import loaders
from frontend.files import fixtures, load
from frontend.identities import UnknownIdentityError, explain
from frontend.oracles import run_oracles
from frontend.schemas import FailureRow, Report, build_report, error_report, report_schema
from frontend.specfile import SpecFile, print_spec
from homotopy.convolution import ConvolutionElement, linfty_coboundary, verify_maurer_cartan
from homotopy.decalage import shift, unshift
from homotopy.identities import verify_leib_infty
from homotopy.operations import SHIFTED, UNSHIFTED, HomotopyOps, morphism_kernel
from leibniz.algebras import jproducts, verify_leibniz
from leibniz.cohomology import coboundary, find_coboundary_preimage
from leibniz.representations import verify_rep
from twoterm.algebras import check_piece, verify_symmetry_identities, verify_two_term
from twoterm.crossed import crossed_to_strict, strict_to_crossed, verify_crossed
from twoterm.homs import verify_hom
from twoterm.skeletal import equivalence_defect, equivalence_hom, find_equivalence, skeletal_to_triple

USAGE_ERROR = 2


@dataclass
class Outcome:
    """
    What a verb hands back: checked identities, failures that are not
    identity residuals, and the structure it built, if any.
    """

    report: CheckReport | None = None
    extra: list[FailureRow] = field(default_factory=list)
    output: SpecFile | str | None = None
    message: str | None = None
    counters: dict[str, int] | None = None


@dataclass
class Verb:
    name: str
    handler: Callable[[argparse.Namespace], Outcome]
    help: str
    files: tuple[str, ...]
    options: tuple[str, ...]


VERBS: dict[str, Verb] = {}

OPTIONS: dict[str, tuple[str, dict]] = {
    "nmax": ("--nmax", dict(type=int, default=None, help="highest arity checked")),
    "max_ddeg": ("--max-ddeg", dict(type=int, default=None, help="D-degree bound of the preimage search")),
    "max_ldeg": ("--max-ldeg", dict(type=int, default=None, help="λ-degree bound of the preimage search")),
    "level": ("--level", dict(type=int, default=None, help="degree the input cochain must have")),
    "tau": ("--tau", dict(default=None, help="file holding the map tau")),
    "count": ("--count", dict(type=int, default=100, help="samples per oracle")),
}


def verb(name: str, help: str, files: tuple[str, ...] = ("file",), options: tuple[str, ...] = ()):
    """
    Registers a verb handler.
    """

    def decorator(handler: Callable[[argparse.Namespace], Outcome]):
        VERBS[name] = Verb(name, handler, help, files, options)
        return handler

    return decorator


def n_max(args) -> int:
    return args.nmax if args.nmax is not None else settings.CONFBENCH_MAX_ARITY


def unshifted(ops: HomotopyOps) -> HomotopyOps:
    return unshift(ops) if ops.flavor == SHIFTED else ops


def shifted(ops: HomotopyOps) -> HomotopyOps:
    return shift(ops) if ops.flavor == UNSHIFTED else ops


# Leibniz conformal algebras and their cohomology


@verb("check-leibniz", "check the Leibniz conformal identity")
def check_leibniz(args) -> Outcome:
    alg = loaders.load_algebra(load(args.file))
    return Outcome(verify_leibniz(alg.module, alg.bracket, args.jobs))


@verb("check-rep", "check a representation given by left/right maps")
def check_rep(args) -> Outcome:
    spec = load(args.file)
    alg = loaders.load_algebra(spec)
    rep = loaders.load_rep(spec, alg)
    return Outcome(verify_rep(alg, rep.module, rep.left, rep.right, args.jobs))


def cochain_input(args):
    spec = load(args.file)
    alg = loaders.load_algebra(spec)
    rep = loaders.load_rep(spec, alg)
    name, cochain = loaders.load_cochain(spec)
    level = getattr(args, "level", None)
    if level is not None and cochain.degree != level:
        raise ShapeError(f"{name} has degree {cochain.degree}, not {level}")
    return alg, rep, name, cochain


@verb("delta", "apply the Leibniz coboundary to a cochain", options=("level",))
def delta(args) -> Outcome:
    alg, rep, name, cochain = cochain_input(args)
    image = coboundary(alg, rep, cochain)
    return Outcome(output=loaders.dump_cochain(f"d{name}", image))


@verb("is-cocycle", "check that a cochain is closed")
def is_cocycle(args) -> Outcome:
    alg, rep, _, cochain = cochain_input(args)
    image = coboundary(alg, rep, cochain).map
    report = CheckReport()
    for key in image.keys():
        report.record("cochain.cocycle", key, image.entry(key))
    return Outcome(report)


@verb("solve-preimage", "search for τ with δτ = ψ", options=("max_ddeg", "max_ldeg"))
def solve_preimage(args) -> Outcome:
    alg, rep, name, cochain = cochain_input(args)
    max_ddeg = args.max_ddeg if args.max_ddeg is not None else settings.CONFBENCH_PREIMAGE_MAX_DDEG
    max_ldeg = args.max_ldeg if args.max_ldeg is not None else settings.CONFBENCH_PREIMAGE_MAX_LDEG
    tau = find_coboundary_preimage(alg, rep, cochain, max_ddeg, max_ldeg)
    if tau is None:
        row = FailureRow(
            identity="cochain.preimage",
            location=[name],
            residual=f"no preimage with D-degree ≤ {max_ddeg} and λ-degree ≤ {max_ldeg}",
        )
        return Outcome(extra=[row], counters={"cochain.preimage": 1})
    return Outcome(output=loaders.dump_cochain("tau", tau), counters={"cochain.preimage": 1})


@verb("jproducts", "list the j-th products of the bracket")
def list_jproducts(args) -> Outcome:
    alg = loaders.load_algebra(load(args.file))
    lines = []
    for (a, b), products in jproducts(alg.bracket).items():
        for j, value in enumerate(products):
            if value:
                lines.append(f"{a}_({j}) {b} = {format_value(value)}")
    return Outcome(output="\n".join(lines) + "\n" if lines else "")


# Leib∞ operations


@verb("check-linfty", "check the Leibnizator identities", options=("nmax",))
def check_linfty(args) -> Outcome:
    ops = unshifted(loaders.load_ops(load(args.file)))
    return Outcome(verify_leib_infty(ops, n_max(args), args.jobs))


@verb("shift", "shift rho operations to varrho operations")
def shift_ops(args) -> Outcome:
    return Outcome(output=loaders.dump_ops(shift(loaders.load_ops(load(args.file)))))


@verb("unshift", "turn varrho operations back into rho operations")
def unshift_ops(args) -> Outcome:
    return Outcome(output=loaders.dump_ops(unshift(loaders.load_ops(load(args.file)))))


@verb("check-mc", "check the Maurer–Cartan equation of the shifted operations", options=("nmax",))
def check_mc(args) -> Outcome:
    ops = shifted(loaders.load_ops(load(args.file)))
    return Outcome(verify_maurer_cartan(ops, n_max(args), args.jobs))


@verb("linfty-delta", "apply the Leib∞ coboundary to phi1, phi2, ...", options=("nmax",))
def linfty_delta(args) -> Outcome:
    spec = load(args.file)
    ops = shifted(loaders.load_ops(spec))
    module = ops.module
    element = loaders.load_convolution(spec, ops)
    # components are read on the module of the shifted operations
    element = ConvolutionElement(
        module,
        element.degree,
        {k: phi.with_modules([module] * k, module) for k, phi in element.components.items()},
    )
    image = linfty_coboundary(ops, element, n_max(args))
    return Outcome(output=loaders.dump_convolution(image, "psi"))


@verb("kernel", "build the Leib∞ algebra of a morphism's kernel", options=("nmax",))
def kernel(args) -> Outcome:
    g, h, f = loaders.load_morphism(load(args.file))
    ops = morphism_kernel(g, h, f, args.jobs)
    return Outcome(verify_leib_infty(ops, n_max(args), args.jobs), output=loaders.dump_ops(ops))


# 2-term algebras and crossed modules


@verb("check-2term", "check the 2-term identities")
def check_two_term(args) -> Outcome:
    alg = loaders.load_two_term(load(args.file))
    report = verify_two_term(alg, args.jobs)
    if alg.is_strict or alg.is_skeletal:
        report.extend(verify_symmetry_identities(alg, args.jobs))
    return Outcome(report)


@verb("check-hom", "check a homomorphism f, f2 between two 2-term algebras", files=("source", "target", "hom"))
def check_hom(args) -> Outcome:
    source = loaders.load_two_term(load(args.source))
    target = loaders.load_two_term(load(args.target))
    hom = loaders.load_two_term_hom(load(args.hom), source, target)
    return Outcome(verify_hom(hom, args.jobs))


@verb("skeletal-extract", "split a skeletal algebra into algebra, representation and 3-cocycle")
def skeletal_extract(args) -> Outcome:
    g, rep, theta = skeletal_to_triple(loaders.load_two_term(load(args.file)), args.jobs)
    spec = loaders.dump_algebra(g)
    loaders.dump_rep(rep, spec)
    loaders.dump_cochain("phi", theta, spec)
    return Outcome(output=spec)


@verb(
    "skeletal-equiv",
    "check or find τ with ρ₃' = ρ₃ + δτ",
    files=("file", "other"),
    options=("tau", "max_ddeg", "max_ldeg"),
)
def skeletal_equiv(args) -> Outcome:
    alg = loaders.load_two_term(load(args.file))
    other = loaders.load_two_term(load(args.other))
    if args.tau is not None:
        tau = load(args.tau).map("tau")
        check_piece(tau, [alg.g0, alg.g0], alg.g1, "τ")
        tau = tau.with_modules([alg.g0, alg.g0], alg.g1)
    else:
        tau = find_equivalence(alg, other, args.max_ddeg, args.max_ldeg)
        if tau is None:
            row = FailureRow(identity="skeletal.equivalence", location=[alg.name, other.name], residual="no τ found")
            return Outcome(extra=[row], counters={"skeletal.equivalence": 1})
    defect = equivalence_defect(alg, other, tau)
    if defect is not None:
        row = FailureRow(identity="skeletal.equivalence", location=[alg.name, other.name], residual=defect)
        return Outcome(extra=[row], counters={"skeletal.equivalence": 1})
    report = verify_hom(equivalence_hom(alg, other, tau), args.jobs)
    spec = SpecFile()
    spec.add_map("tau", tau)
    return Outcome(report, output=spec, counters={"skeletal.equivalence": 1})


@verb("strict-to-crossed", "turn a strict 2-term algebra into a crossed module")
def strict_to_crossed_verb(args) -> Outcome:
    crossed = strict_to_crossed(loaders.load_two_term(load(args.file)))
    return Outcome(verify_crossed(crossed, args.jobs), output=loaders.dump_crossed(crossed))


@verb("crossed-to-strict", "turn a crossed module into a strict 2-term algebra")
def crossed_to_strict_verb(args) -> Outcome:
    alg = crossed_to_strict(loaders.load_crossed(load(args.file)))
    return Outcome(verify_two_term(alg, args.jobs), output=loaders.dump_two_term(alg))


@verb("check-crossed", "check the crossed module axioms")
def check_crossed(args) -> Outcome:
    return Outcome(verify_crossed(loaders.load_crossed(load(args.file)), args.jobs))


# 2-algebras


@verb("functor-t", "build the 2-algebra of a 2-term algebra")
def functor_t(args) -> Outcome:
    alg = functor_T(loaders.load_two_term(load(args.file)), jobs=args.jobs)
    return Outcome(verify_two_alg(alg, args.jobs), output=loaders.dump_two_alg(alg))


@verb("functor-s", "build the 2-term algebra of a 2-algebra")
def functor_s(args) -> Outcome:
    alg = functor_S(loaders.load_two_alg(load(args.file)), jobs=args.jobs)
    return Outcome(verify_two_term(alg, args.jobs), output=loaders.dump_two_term(alg))


@verb("check-2alg", "check the 2-vector space and 2-algebra axioms")
def check_two_alg(args) -> Outcome:
    alg = loaders.load_two_alg(load(args.file))
    report = verify_two_vector_space(alg.space, args.jobs)
    return Outcome(report.extend(verify_two_alg(alg, args.jobs)))


@verb("alpha", "check the isomorphism T(S(A)) → A")
def alpha(args) -> Outcome:
    return Outcome(verify_two_alg_hom(alpha_iso(loaders.load_two_alg(load(args.file)), args.jobs), args.jobs))


@verb("roundtrip", "check S∘T = id on a 2-term algebra and T∘S = id on its image")
def roundtrip(args) -> Outcome:
    alg = loaders.load_two_term(load(args.file))
    image = functor_T(alg, jobs=args.jobs)
    back = functor_S(image, jobs=args.jobs)
    rows = []
    for piece in ("d", "rho2", "rho3"):
        if getattr(back, piece) != getattr(alg, piece):
            rows.append(FailureRow(identity="roundtrip.objects", location=[piece], residual="S(T(A)) differs"))
    if functor_T(back, check=False) != image:
        rows.append(FailureRow(identity="roundtrip.images", location=[alg.name], residual="T(S(T(A))) differs"))
    return Outcome(extra=rows, counters={"roundtrip.objects": 3, "roundtrip.images": 1})


# Housekeeping


@verb("run-oracles", "cross-check the Leib∞ checkers on random samples", files=(), options=("count", "nmax"))
def oracles(args) -> Outcome:
    nmax = args.nmax if args.nmax is not None else 3
    rows, counters, lines = run_oracles(args.count, args.seed, nmax, args.jobs)
    return Outcome(extra=rows, counters=counters, message="\n".join(lines))


@verb("fixtures", "list the built-in fixtures", files=())
def list_fixtures(args) -> Outcome:
    return Outcome(output="".join(f"zoo:{name}\n" for name in fixtures()))


@verb("schema", "print the JSON schema of reports", files=())
def schema(args) -> Outcome:
    return Outcome(output=json.dumps(report_schema(), indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confbench", description="Leibniz conformal algebra workbench")
    parser.add_argument("--version", action="version", version=f"confbench {confbench.__version__}")
    parser.add_argument("--explain", metavar="ID", help="explain an identity id from a report")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.CONFBENCH_SEED)
    common.add_argument("--jobs", type=int, default=None, help="worker threads for identity checks")
    common.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    subparsers = parser.add_subparsers(dest="command", metavar="verb")
    for spec in VERBS.values():
        subparser = subparsers.add_parser(spec.name, help=spec.help, parents=[common])
        for name in spec.files:
            subparser.add_argument(name, help="a .lcf file, or zoo:<name>")
        for option in spec.options:
            flag, kwargs = OPTIONS[option]
            subparser.add_argument(flag, dest=option, **kwargs)
    return parser


def write(stream: TextIO, text: str):
    stream.write(text if text.endswith("\n") else text + "\n")


def render(output: SpecFile | str | None) -> str | None:
    if isinstance(output, SpecFile):
        return print_spec(output)
    return output


def run_verb(args) -> Report:
    started = time.perf_counter()
    entry = VERBS[args.command]
    with sentry.verb_transaction(args.command, [getattr(args, name) for name in entry.files]):
        try:
            outcome = entry.handler(args)
        except (ParseError, FileNotFoundError):
            raise
        except WorkbenchError as e:
            capture_exception(e)
            report = error_report(args.command, e)
        else:
            report = build_report(
                args.command,
                outcome.report,
                outcome.extra,
                render(outcome.output),
                outcome.message,
                outcome.counters,
            )
        sentry.set_report_status(report.status, report.counters)
    report.timing = time.perf_counter() - started
    return report


def dispatch(argv: list[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """
    Runs one workbench verb and returns the process exit code.
    """
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    if args.explain is not None:
        try:
            write(stdout, explain(args.explain))
        except UnknownIdentityError as e:
            write(stderr, str(e))
            return USAGE_ERROR
        return 0
    if args.command is None:
        parser.print_usage(stderr)
        return USAGE_ERROR
    try:
        report = run_verb(args)
    except ParseError as e:
        write(stderr, f"{args.command}: {e}")
        return USAGE_ERROR
    except FileNotFoundError as e:
        write(stderr, f"{args.command}: {e.strerror or e}: {e.filename}" if e.filename else f"{args.command}: {e}")
        return USAGE_ERROR
    if args.json:
        write(stdout, report.json(indent=2))
    elif report.output:
        write(stdout, report.output)
    write(stderr, report.summary())
    return report.exit_code
