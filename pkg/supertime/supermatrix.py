"""Graded 3x3 matrices over the supertime indices ``(t, theta, thetabar)``."""

import typing as T

from supertime.errors import GradingMismatch, SingularBlock, SingularOddBlock
from supertime.grassmann import Session, SuperNumber, ginv


class GradedIndex(T.NamedTuple):
    label: str
    parity: int


INDICES = (
    GradedIndex("t", 0),
    GradedIndex("theta", 1),
    GradedIndex("thetabar", 1),
)
GRADING = tuple(index.parity for index in INDICES)

#: grading sign ``(-1)**((1 + |B|) * |N|)`` on the right index pair, as written
GRADING_ON_RIGHT = "right"
#: grading sign ``(-1)**((1 + |A|) * |M|)`` on the left index pair
GRADING_ON_LEFT = "left"
GRADING_PLACEMENTS = (GRADING_ON_RIGHT, GRADING_ON_LEFT)

Grid = T.Sequence[T.Sequence[SuperNumber]]


class BlockDecomp(T.NamedTuple):
    A: SuperNumber
    B: T.Tuple[SuperNumber, SuperNumber]
    C: T.Tuple[SuperNumber, SuperNumber]
    D: T.Tuple[T.Tuple[SuperNumber, SuperNumber], T.Tuple[SuperNumber, SuperNumber]]


class SuperMatrix:
    """
    Immutable graded matrix.

    Entry ``(i, j)`` must be parity-homogeneous with parity
    ``row_grading[i] + col_grading[j]`` mod 2.

    :raises GradingMismatch: If an entry has the wrong parity.
    """

    __slots__ = ("entries", "row_grading", "col_grading")

    def __init__(
        self,
        entries: Grid,
        row_grading: T.Sequence[int] = GRADING,
        col_grading: T.Sequence[int] = GRADING,
    ):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != len(row_grading) or any(
            len(row) != len(col_grading) for row in rows
        ):
            raise GradingMismatch("entries do not match the gradings' shape")
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if entry and entry.parity != (row_grading[i] + col_grading[j]) % 2:
                    raise GradingMismatch(
                        f"entry ({INDICES[i].label}, {INDICES[j].label}) = {entry} "
                        f"must have parity {(row_grading[i] + col_grading[j]) % 2}"
                    )
        self.entries = rows
        self.row_grading = tuple(row_grading)
        self.col_grading = tuple(col_grading)

    @classmethod
    def identity(cls, session: Session) -> "SuperMatrix":
        one, zero = session.one, session.zero
        return cls([[one if i == j else zero for j in range(3)] for i in range(3)])

    @property
    def session(self) -> Session:
        return self.entries[0][0].session

    def __getitem__(self, key: T.Tuple[int, int]) -> SuperNumber:
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            self.entries == other.entries
            and self.row_grading == other.row_grading
            and self.col_grading == other.col_grading
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __mul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return smul(self, other)

    def __repr__(self) -> str:
        return f"SuperMatrix({self.to_text()!r})"

    def map(self, fn: T.Callable[[SuperNumber], SuperNumber]) -> "SuperMatrix":
        return SuperMatrix(
            [[fn(entry) for entry in row] for row in self.entries],
            self.row_grading,
            self.col_grading,
        )

    def substitute(self, bindings: T.Mapping[str, T.Any]) -> "SuperMatrix":
        return self.map(lambda entry: entry.substitute(bindings))

    def blocks(self) -> BlockDecomp:
        """Split into the 1x1 even, 1x2, 2x1 and 2x2 blocks."""
        if self.row_grading != GRADING or self.col_grading != GRADING:
            raise GradingMismatch("block split needs the (t, theta, thetabar) grading")
        e = self.entries
        return BlockDecomp(
            e[0][0],
            (e[0][1], e[0][2]),
            (e[1][0], e[2][0]),
            ((e[1][1], e[1][2]), (e[2][1], e[2][2])),
        )

    def to_text(self) -> str:
        return (
            "["
            + ", ".join(
                "[" + ", ".join(entry.to_text() for entry in row) + "]"
                for row in self.entries
            )
            + "]"
        )


def smul(m: SuperMatrix, n: SuperMatrix) -> SuperMatrix:
    """
    Row-column product keeping the order of factors.

    :raises GradingMismatch: If the inner gradings differ.
    """
    if m.col_grading != n.row_grading:
        raise GradingMismatch(
            f"cannot multiply: {m.col_grading} columns against {n.row_grading} rows"
        )
    size = len(n.row_grading)
    zero = m.session.zero
    entries = []
    for i in range(len(m.row_grading)):
        row = []
        for j in range(len(n.col_grading)):
            acc = zero
            for k in range(size):
                acc = acc + m.entries[i][k] * n.entries[k][j]
            row.append(acc)
        entries.append(row)
    return SuperMatrix(entries, m.row_grading, n.col_grading)


def _det2(d) -> SuperNumber:
    return d[0][0] * d[1][1] - d[0][1] * d[1][0]


def _inv2(d, det: SuperNumber):
    inv_det = ginv(det)
    return (
        (d[1][1] * inv_det, -d[0][1] * inv_det),
        (-d[1][0] * inv_det, d[0][0] * inv_det),
    )


def odd_block_inverse(m: SuperMatrix):
    """
    Inverse of the 2x2 odd-odd block together with its determinant.

    :raises SingularOddBlock: When the determinant has zero body.
    """
    d = m.blocks().D
    det = _det2(d)
    if not det.body:
        raise SingularOddBlock(f"det D = {det} has zero body")
    return _inv2(d, det), det


def sdet(m: SuperMatrix) -> SuperNumber:
    """
    Superdeterminant ``(A - B D^-1 C) * det(D)^-1``.

    :param m: Matrix with the ``(t, theta, thetabar)`` grading.
    :return: Even value.
    :raises SingularOddBlock: When ``det D`` has zero body.
    """
    a, b, c, _ = m.blocks()
    d_inv, det = odd_block_inverse(m)
    schur = a
    for i in range(2):
        for j in range(2):
            schur = schur - b[i] * d_inv[i][j] * c[j]
    return schur * ginv(det)


def sinv(m: SuperMatrix) -> SuperMatrix:
    """
    Two-sided inverse from the block formula.

    :raises SingularBlock: When ``A`` or ``det D`` has zero body.
    """
    a, b, c, d = m.blocks()
    if not a.body:
        raise SingularBlock(f"A = {a} has zero body")
    det = _det2(d)
    if not det.body:
        raise SingularBlock(f"det D = {det} has zero body")
    one = m.session.one
    a_inv = ginv(a)
    d_inv = _inv2(d, det)
    b_dinv = [b[0] * d_inv[0][j] + b[1] * d_inv[1][j] for j in range(2)]
    dinv_c = [d_inv[i][0] * c[0] + d_inv[i][1] * c[1] for i in range(2)]

    x_inv = ginv(one - a_inv * (b_dinv[0] * c[0] + b_dinv[1] * c[1]))
    top_left = x_inv * a_inv
    top_right = [-(x_inv * a_inv * b_dinv[j]) for j in range(2)]

    zero = m.session.zero
    y = [
        [(one if i == j else zero) - dinv_c[i] * a_inv * b[j] for j in range(2)]
        for i in range(2)
    ]
    y_inv = _inv2(y, _det2(y))
    bottom_left = [
        -(y_inv[i][0] * dinv_c[0] + y_inv[i][1] * dinv_c[1]) * a_inv for i in range(2)
    ]
    bottom_right = [
        [y_inv[i][0] * d_inv[0][j] + y_inv[i][1] * d_inv[1][j] for j in range(2)]
        for i in range(2)
    ]
    return SuperMatrix(
        [
            [top_left, top_right[0], top_right[1]],
            [bottom_left[0], bottom_right[0][0], bottom_right[0][1]],
            [bottom_left[1], bottom_right[1][0], bottom_right[1][1]],
        ]
    )


def eta(session: Session) -> SuperMatrix:
    """Flat metric: symmetric on ``t``, antisymmetric on the odd pair."""
    one, zero = session.one, session.zero
    return SuperMatrix([[one, zero, zero], [zero, zero, -one], [zero, one, zero]])


def vierbein_to_metric(
    e_frame: SuperMatrix, placement: str = GRADING_ON_RIGHT
) -> SuperMatrix:
    """
    Metric ``g_MN = E^A_M eta_AB (+-) E^B_N``.

    :param e_frame: ``E^A_M`` stored with row ``M`` and column ``A``.
    :param placement: :data:`GRADING_ON_RIGHT` applies
        ``(-1)**((1 + |B|) * |N|)``, :data:`GRADING_ON_LEFT` applies
        ``(-1)**((1 + |A|) * |M|)``.
    :return: The metric with rows and columns ``M, N``.
    :raises GradingMismatch: For a frame without the supertime grading.
    """
    if placement not in GRADING_PLACEMENTS:
        raise ValueError(f"unknown grading placement {placement!r}")
    if e_frame.row_grading != GRADING or e_frame.col_grading != GRADING:
        raise GradingMismatch("frame must carry the (t, theta, thetabar) grading")
    session = e_frame.session
    flat = eta(session)
    e = e_frame.entries
    entries = []
    for m in range(3):
        row = []
        for n in range(3):
            acc = session.zero
            for a in range(3):
                for b in range(3):
                    metric = flat.entries[a][b]
                    if not metric:
                        continue
                    if placement == GRADING_ON_RIGHT:
                        odd = (1 + GRADING[b]) * GRADING[n] % 2
                    else:
                        odd = (1 + GRADING[a]) * GRADING[m] % 2
                    term = e[m][a] * metric * e[n][b]
                    acc = acc - term if odd else acc + term
            row.append(acc)
        entries.append(row)
    return SuperMatrix(entries)
