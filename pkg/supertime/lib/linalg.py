"""Gaussian elimination over exact coefficient fields."""

import typing as T

from supertime.coeff_ring import RatFunc
from supertime.errors import RankDeficient

Matrix = T.List[T.List[RatFunc]]


def form_echelon(m: Matrix, t: T.Optional[T.List[RatFunc]] = None) -> T.List[int]:
    """
    Bring ``m`` to row echelon form in place.

    :param m: Rows of the coefficient matrix, modified in place.
    :param t: Optional right-hand side, permuted and reduced along with ``m``.
    :return: Indices of the columns without a pivot.
    """
    free_vars: T.List[int] = []
    n_rows = len(m)
    if not n_rows:
        return free_vars
    n_cols = len(m[0])
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c]:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if not fr:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] = m[r][c] - m[piv_r][c] * frp
            if t is not None:
                t[r] = t[r] - t[piv_r] * frp
        piv_r += 1
        if piv_r == n_rows:
            free_vars.extend(range(piv_c + 1, n_cols))
            break
    return free_vars


def back_substitution(
    m: Matrix, t: T.List[RatFunc], free_vars: T.Sequence[int], zero: RatFunc
) -> T.Optional[T.List[RatFunc]]:
    """
    Solve an echelon system, setting free variables to ``zero``.

    :return: One solution, or None if the system is inconsistent.
    """
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = n_cols - len(free_vars)
    for r in range(rank, n_rows):
        if t[r]:
            return None
    sol = [zero] * n_cols
    piv_cols = [c for c in range(n_cols) if c not in set(free_vars)]
    for r in range(len(piv_cols) - 1, -1, -1):
        piv_c = piv_cols[r]
        s = -t[r]
        for c in range(piv_c + 1, n_cols):
            s = s + m[r][c] * sol[c]
        sol[piv_c] = -s / m[r][piv_c]
    return sol


def rank(matrix: T.Sequence[T.Sequence[RatFunc]]) -> int:
    m = [list(row) for row in matrix]
    if not m:
        return 0
    return len(m[0]) - len(form_echelon(m))


def solve(
    matrix: T.Sequence[T.Sequence[RatFunc]], rhs: T.Sequence[RatFunc]
) -> T.Optional[T.List[RatFunc]]:
    """
    Solve ``matrix * x = rhs`` exactly.

    :return: The unique solution, or None when the system is inconsistent.
    :raises RankDeficient: When the solution is not unique.
    """
    m = [list(row) for row in matrix]
    t = list(rhs)
    if not m:
        raise RankDeficient("empty system")
    free_vars = form_echelon(m, t)
    sol = back_substitution(m, t, free_vars, rhs[0] - rhs[0])
    if sol is not None and free_vars:
        raise RankDeficient(f"columns {free_vars} are not determined")
    return sol
