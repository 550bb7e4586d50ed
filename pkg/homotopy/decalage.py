from collections.abc import Sequence

from core.exceptions import ShapeError
from core.modules import SesqMap
from homotopy.operations import SHIFTED, UNSHIFTED, GradedConfModule, HomotopyOps


def decalage_sign(degrees: Sequence[int]) -> int:
    """
    (−1)^(k(k−1)/2) from the décalage, times the Koszul sign of moving s⁻¹
    past the earlier arguments, times (−1)^(k−1), on a tuple of unshifted
    degrees. For k = 2 this is (−1)^|x| with |x| the shifted degree of the
    first argument, so ϱ₂(x, y) = (−1)^|x| s ρ₂(s⁻¹x, s⁻¹y) and ϱ₁ = s ρ₁ s⁻¹.
    """
    k = len(degrees)
    exponent = k * (k - 1) // 2 + k - 1
    for a, degree in enumerate(degrees, start=1):
        exponent += (k - a) * (degree + 1)
    return -1 if exponent % 2 else 1


def transport(op: SesqMap, target: GradedConfModule, unshifted) -> SesqMap:
    """
    Re-signs every entry of one operation and moves it to the other module;
    `unshifted` maps a basis tuple to its unshifted degrees.
    """
    table = {
        key: value.rebase(target) * decalage_sign(unshifted(key))
        for key, value in op.table.items()
    }
    return SesqMap([target] * op.arity, target, table)


def shift(ops: HomotopyOps) -> HomotopyOps:
    """
    ϱ_k = ±s ∘ ρ_k ∘ (s⁻¹)^⊗k on G[−1], whose elements sit one degree higher,
    with the sign of decalage_sign.
    """
    if ops.flavor != UNSHIFTED:
        raise ShapeError("operations are already shifted")
    module = ops.module
    shifted = module.shifted(1)

    def degrees(key):
        return [module.degrees[x] for x in key]

    return HomotopyOps(
        shifted,
        {k: transport(op, shifted, degrees) for k, op in ops.ops.items()},
        SHIFTED,
    )


def unshift(ops: HomotopyOps) -> HomotopyOps:
    if ops.flavor != SHIFTED:
        raise ShapeError("operations are not shifted")
    module = ops.module
    unshifted = module.shifted(-1)

    def degrees(key):
        return [unshifted.degrees[x] for x in key]

    return HomotopyOps(
        unshifted,
        {k: transport(op, unshifted, degrees) for k, op in ops.ops.items()},
        UNSHIFTED,
    )
