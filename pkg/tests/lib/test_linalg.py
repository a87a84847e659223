import pytest

from supertime.coeff_ring import ScalarRing
from supertime.errors import RankDeficient
from supertime.lib.linalg import back_substitution, form_echelon, rank, solve

RING = ScalarRing(("u",))


def _rows(*rows):
    return [[RING.const(value) for value in row] for row in rows]


def test_rank():
    assert rank(_rows([1, 2], [2, 4])) == 1
    assert rank(_rows([1, 2], [0, 3])) == 2
    assert rank([]) == 0


def test_form_echelon_reports_free_columns():
    m = _rows([0, 1, 2], [0, 2, 4])
    assert form_echelon(m) == [0, 2]
    assert not m[1][1]


def test_back_substitution_inconsistent():
    m = _rows([1, 1], [1, 1])
    t = [RING.const(1), RING.const(2)]
    free_vars = form_echelon(m, t)
    assert back_substitution(m, t, free_vars, RING.zero) is None


def test_solve():
    assert solve(_rows([1, 1], [1, -1]), [RING.const(3), RING.const(1)]) == [2, 1]


def test_solve_symbolic():
    u = RING.symbol("u")
    matrix = [[u, RING.zero], [RING.zero, RING.one]]
    assert solve(matrix, [u * u, u]) == [u, u]


def test_solve_inconsistent():
    assert solve(_rows([1, 1], [2, 2]), [RING.const(1), RING.const(3)]) is None


def test_solve_underdetermined():
    with pytest.raises(RankDeficient):
        solve(_rows([1, 1]), [RING.const(1)])
    with pytest.raises(RankDeficient):
        solve([], [])
