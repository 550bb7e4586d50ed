import re

from core.exceptions import WorkbenchError

#: Every identity id a report can contain: what it says and how its
#: residual is computed. λ = l1, μ = l2, ν = l3 throughout.
IDENTITIES: dict[str, tuple[str, str]] = {
    "leibniz.identity": (
        "Leibniz conformal identity: left translations are conformal derivations of the bracket",
        "[x_λ [y_μ z]] − [[x_λ y]_{λ+μ} z] − [y_μ [x_λ z]]",
    ),
    "rep.left-left": (
        "the left action is a representation of the bracket",
        "x_λ (y_μ v) − [x_λ y]_{λ+μ} v − y_μ (x_λ v)",
    ),
    "rep.left-right": (
        "the left action is a derivation of the right action",
        "x_λ (v_μ y) − (x_λ v)_{λ+μ} y − v_μ [x_λ y]",
    ),
    "rep.right-bracket": (
        "the right action is compatible with the bracket",
        "v_λ [x_μ y] − (v_λ x)_{λ+μ} y − x_μ (v_λ y)",
    ),
    "morphism.bracket": (
        "a C[∂]-linear map preserves the bracket",
        "f([x_λ y]) − [f(x)_λ f(y)]",
    ),
    "cochain.cocycle": (
        "the cochain is closed under the Leibniz coboundary",
        "(δφ)(x_1, ..., x_{n+1}) with the signs of the Loday–Pirashvili complex",
    ),
    "cochain.preimage": (
        "a cochain τ with δτ = ψ exists within the coefficient bounds",
        "the linear system δτ = ψ over monomials of bounded D- and λ-degree",
    ),
    "graded.differential": ("the differential squares to zero", "d(d x)"),
    "graded.derivation": (
        "the differential is a graded derivation of the bracket",
        "d[x_λ y] − [dx_λ y] − (−1)^|x| [x_λ dy]",
    ),
    "graded.leibniz": (
        "graded Leibniz conformal identity",
        "[x_λ [y_μ z]] − [[x_λ y]_{λ+μ} z] − (−1)^(|x||y|) [y_μ [x_λ z]]",
    ),
    "2term.i": ("ρ₂ vanishes on G1 ⊗ G1", "ρ₂_λ(u, v)"),
    "2term.ii": ("d intertwines the left action", "d ρ₂_λ(x, u) − ρ₂_λ(x, du)"),
    "2term.iii": ("d intertwines the right action", "d ρ₂_λ(u, x) − ρ₂_λ(du, x)"),
    "2term.iv": ("the two actions agree through d", "ρ₂_λ(du, v) − ρ₂_λ(u, dv)"),
    "2term.v": (
        "the Leibniz defect on G0 is the boundary of ρ₃",
        "d ρ₃(x, y, z) − ([x_λ [y_μ z]] − [[x_λ y]_{λ+μ} z] − [y_μ [x_λ z]])",
    ),
    "2term.vi": (
        "the Leibniz defect on G0 ⊗ G0 ⊗ G1 is ρ₃ with d in the last slot",
        "ρ₃(x, y, dv) − (Leibniz defect of ρ₂ on (x, y, v))",
    ),
    "2term.vii": (
        "the Leibniz defect on G0 ⊗ G1 ⊗ G0 is ρ₃ with d in the middle slot",
        "ρ₃(x, dv, y) − (Leibniz defect of ρ₂ on (x, v, y))",
    ),
    "2term.viii": (
        "the Leibniz defect on G1 ⊗ G0 ⊗ G0 is ρ₃ with d in the first slot",
        "ρ₃(dv, x, y) − (Leibniz defect of ρ₂ on (v, x, y))",
    ),
    "2term.ix": (
        "ρ₃ is a 3-cocycle of G0 with coefficients in G1",
        "(δρ₃)(x, y, z, w)",
    ),
    "2term.sym-bracket": (
        "symmetric elements act trivially from the left, on G0",
        "ρ₂_{λ+μ}(ρ₂_λ(x, y), z) + ρ₂_{λ+μ}(ρ₂_μ(y, x), z)",
    ),
    "2term.sym-action": (
        "symmetric elements act trivially from the left, with one argument in G1",
        "ρ₂_{λ+μ}(ρ₂_λ(x, v), y) + ρ₂_{λ+μ}(ρ₂_μ(v, x), y)",
    ),
    "hom.chain": ("f is a chain map", "d' f1(v) − f0(d v)"),
    "hom.bracket": (
        "f preserves the bracket on G0 up to the boundary of f2",
        "ρ₂'_λ(f x, f y) − f ρ₂_λ(x, y) − d' f2_λ(x, y)",
    ),
    "hom.left": (
        "f preserves the left action up to f2",
        "ρ₂'_λ(f x, f v) − f ρ₂_λ(x, v) − f2_λ(x, dv)",
    ),
    "hom.right": (
        "f preserves the right action up to f2",
        "ρ₂'_λ(f v, f x) − f ρ₂_λ(v, x) − f2_λ(dv, x)",
    ),
    "hom.ternary": (
        "f carries ρ₃ to ρ₃' up to the Leibniz defect of f2",
        "ρ₃'(fx, fy, fz) − f1 ρ₃(x, y, z) − (defect of f2 against both brackets)",
    ),
    "crossed.g-leibniz": ("g is a Leibniz conformal algebra", "Leibniz defect of [·,·]^g"),
    "crossed.h-leibniz": ("h is a Leibniz conformal algebra", "Leibniz defect of [·,·]^h"),
    "crossed.morphism": ("d is a morphism of Leibniz conformal algebras", "d[x_λ y]^g − [dx_λ dy]^h"),
    "crossed.d-left": ("d is equivariant for the left action", "d Φˡ_λ(h, x) − [h_λ dx]^h"),
    "crossed.d-right": ("d is equivariant for the right action", "d Φʳ_λ(x, h) − [dx_λ h]^h"),
    "crossed.peiffer-left": ("left Peiffer identity", "Φˡ_λ(dx, y) − [x_λ y]^g"),
    "crossed.peiffer-right": ("right Peiffer identity", "Φʳ_λ(x, dy) − [x_λ y]^g"),
    "crossed.right-compat": (
        "the right action is compatible with the bracket of g",
        "[x_λ Φʳ_μ(y, h)] − Φʳ_{λ+μ}([x_λ y], h) − [y_μ Φʳ_λ(x, h)]",
    ),
    "crossed.left-compat": (
        "the two actions are compatible with each other",
        "[x_λ Φˡ_μ(h, y)] − [Φʳ_λ(x, h)_{λ+μ} y] − Φˡ_μ(h, [x_λ y])",
    ),
    "crossed.left-bracket": (
        "h acts from the left by derivations of g",
        "Φˡ_λ(h, [x_μ y]) − [Φˡ_λ(h, x)_{λ+μ} y] − [x_μ Φˡ_λ(h, y)]",
    ),
    "2vs.source-unit": ("the source of an identity morphism is its object", "s(1_x) − x"),
    "2vs.target-unit": ("the target of an identity morphism is its object", "t(1_x) − x"),
    "2vs.unit": ("identities are units for composition", "m(1_{s f}, f) − f and m(f, 1_{t f}) − f"),
    "2vs.compose-source": ("a composite starts where its first factor does", "s(m(f, g)) − s(f)"),
    "2vs.compose-target": ("a composite ends where its second factor does", "t(m(f, g)) − t(g)"),
    "2vs.associativity": ("composition is associative", "m(m(f, g), k) − m(f, m(g, k))"),
    "2alg.source": ("the morphism bracket commutes with the source", "s[f_λ g] − [s f_λ s g]"),
    "2alg.target": ("the morphism bracket commutes with the target", "t[f_λ g] − [t f_λ t g]"),
    "2alg.unit": ("the morphism bracket preserves identities", "[(1_x)_λ 1_y] − 1_{[x_λ y]}"),
    "2alg.composition": (
        "the morphism bracket preserves composition",
        "[m(f, f')_λ m(g, g')] − m([f_λ g], [f'_λ g'])",
    ),
    "2alg.leibnizator-target": (
        "the Leibnizator runs from [x[yz]] to [[xy]z] + [y[xz]]",
        "t(L_{x,y,z}) − [[x_λ y]_{λ+μ} z] − [y_μ [x_λ z]]",
    ),
    "2alg.naturality": (
        "the Leibnizator is natural, checked on the generators (0, h) in each slot",
        "m(L, [[f g] k] + [g [f k]]) − m([f [g k]], L)",
    ),
    "2alg.hexagon": (
        "the Leibnizator satisfies the coherence diagram on four objects",
        "the K-part of the two composites [x[y[zw]]] → [[[xy]z]w] + ... around the diagram",
    ),
    "2hom.source": ("F1 commutes with the source", "s F1(f) − F0(s f)"),
    "2hom.target": ("F1 commutes with the target", "t F1(f) − F0(t f)"),
    "2hom.unit": ("F1 preserves identities", "F1(1_x) − 1_{F0 x}"),
    "2hom.composition": ("F1 preserves composition", "F1(m(f, g)) − m(F1 f, F1 g)"),
    "2hom.f2-target": (
        "F2 runs from [F0x F0y]' to F0[x y]",
        "t(F2_{x,y}) − F0[x_λ y]",
    ),
    "2hom.naturality": (
        "F2 is natural, checked on the generators (0, h) in each slot",
        "m([F1 f_λ F1 g]', F2) − m(F2, F1[f_λ g])",
    ),
    "2hom.square": (
        "F2 is compatible with the two Leibnizators",
        "the K-part of the two composites [F0x[F0y F0z]]' → F0([[xy]z] + [y[xz]])",
    ),
    "roundtrip.objects": ("S∘T is the identity on the 2-term algebra", "S(T(A)) − A"),
    "roundtrip.images": ("T∘S is the identity on the image of T", "T(S(T(A))) − T(A)"),
    "skeletal.equivalence": (
        "two skeletal algebras are equivalent through τ",
        "ρ₃' − ρ₃ − δτ, with equal binary operations",
    ),
    "oracle.maurer-cartan": (
        "the Leibnizator identities and the Maurer–Cartan equation of the shifted operations fail together",
        "failing tuples of leib-infty.n<k> against mc.n<k>",
    ),
    "oracle.two-term": (
        "the nine 2-term identities and the Leibnizator identities fail on the same tuples",
        "failing tuples of 2term.* against leib-infty.n<k>",
    ),
}

FAMILIES: list[tuple[re.Pattern, str, str]] = [
    (
        re.compile(r"^leib-infty\.n(\d+)$"),
        "the n = {n} Leibnizator identity of the Leib∞ operations",
        "Σ over unshuffles of ε(σ) sgn(σ) (−1)^((k−i−1)(l−1)) ρ_k(..., ρ_l(...), ...) on {n} arguments",
    ),
    (
        re.compile(r"^mc\.n(\d+)$"),
        "the arity {n} component of the Maurer–Cartan equation",
        "⟦ϱ, ϱ⟧ on {n} arguments",
    ),
]


class UnknownIdentityError(WorkbenchError):
    pass


def explain(identity: str) -> str:
    """
    A plain-language statement and the residual formula of an identity id.
    """
    found = IDENTITIES.get(identity)
    if found is not None:
        statement, formula = found
    else:
        for pattern, statement, formula in FAMILIES:
            match = pattern.match(identity)
            if match:
                n = match.group(1)
                statement, formula = statement.format(n=n), formula.format(n=n)
                break
        else:
            raise UnknownIdentityError(f"unknown identity {identity}")
    return f"{identity}: {statement}\n  residual: {formula}"
