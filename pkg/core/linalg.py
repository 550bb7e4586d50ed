from collections.abc import Hashable, Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing
from sympy.polys.solvers import solve_lin_sys

Column = Mapping[Hashable, object]


def solve_combination(columns: Sequence[Column], target: Column) -> list | None:
    """
    Finds rationals c_i with Σ c_i·columns[i] = target, where every vector
    is a sparse map from coordinates to QQ. Free unknowns are set to zero.
    Returns None when the target is not in the span.
    """
    values = [QQ.zero] * len(columns)
    active = [i for i, column in enumerate(columns) if any(column.values())]
    wanted = {key: value for key, value in target.items() if value}
    if not wanted:
        return values
    if not active:
        return None
    ring = PolyRing([f"u{i}" for i in active], QQ)
    coordinates: dict[Hashable, object] = {}
    for gen, index in zip(ring.gens, active):
        for key, coefficient in columns[index].items():
            if coefficient:
                coordinates[key] = coordinates.get(key, ring.zero) + gen * QQ.convert(coefficient)
    for key in wanted:
        coordinates.setdefault(key, ring.zero)
    equations = []
    for key, equation in coordinates.items():
        equation = equation - ring.ground_new(QQ.convert(target.get(key, 0)))
        if not equation:
            continue
        if equation.is_ground:
            # a nonzero constant: 0 = c has no solution
            return None
        equations.append(equation)
    solution = solve_lin_sys(equations, ring, _raw=True)
    if solution is None:
        return None
    for gen, index in zip(ring.gens, active):
        value = solution.get(gen)
        if value is None:
            continue
        if hasattr(value, "ring"):
            values[index] = value.get(ring.zero_monom, QQ.zero)
        else:
            values[index] = QQ.convert(value)
    return values
