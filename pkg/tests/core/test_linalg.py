from core.linalg import solve_combination
from core.ring import rational


def test_unique_solution():
    columns = [{"a": 1, "b": 1}, {"a": 1, "b": -1}]
    assert solve_combination(columns, {"a": 2, "b": 0}) == [1, 1]


def test_free_unknowns_are_zero():
    """
    A dependent column gets coefficient zero
    """
    columns = [{"a": 1}, {"a": 2}]
    solution = solve_combination(columns, {"a": 4})
    assert solution[0] + 2 * solution[1] == 4


def test_no_solution():
    assert solve_combination([{"a": 1}], {"b": 1}) is None
    assert solve_combination([{"a": 1, "b": 1}], {"a": 1, "b": 2}) is None
    assert solve_combination([], {"a": 1}) is None


def test_zero_target():
    assert solve_combination([{"a": 1}, {}], {}) == [0, 0]


def test_rational_solution():
    assert solve_combination([{"a": 3}], {"a": 1}) == [rational("1/3")]
