"""Seeded exact random sampling."""

import itertools
import typing as T
from fractions import Fraction

import numpy as np

from supertime.coeff_ring import RatFunc, ScalarRing
from supertime.errors import SingularOddBlock
from supertime.grassmann import THETA, THETABAR, Session, SuperNumber
from supertime.supermatrix import GRADING, SuperMatrix, odd_block_inverse

DEFAULT_SEED = 7
DEFAULT_SAMPLES = 20
DEFAULT_BOUND = 9


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_fraction(
    rng: np.random.Generator, bound: int = DEFAULT_BOUND, nonzero: bool = False
) -> Fraction:
    """A rational ``n/d`` with ``|n| <= bound`` and ``1 <= d <= bound``."""
    while True:
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_bindings(
    rng: np.random.Generator,
    scalars: ScalarRing,
    names: T.Iterable[str],
    nonzero: bool = True,
    avoid: T.Iterable[Fraction] = (),
) -> T.Dict[str, RatFunc]:
    """Random rational values for ``names``, avoiding the values in ``avoid``."""
    avoid = set(avoid)
    bindings = {}
    for name in names:
        value = random_fraction(rng, nonzero=nonzero)
        while value in avoid:
            value = random_fraction(rng, nonzero=nonzero)
        bindings[name] = scalars.const(value)
    return bindings


def random_super_number(
    rng: np.random.Generator,
    session: Session,
    generators: T.Sequence[str] = (THETA, THETABAR),
    parity: T.Optional[int] = None,
    symbols: T.Sequence[str] = (),
    nonzero_body: bool = False,
    density: float = 0.7,
) -> SuperNumber:
    """
    Random element over the given generators.

    Coefficients are random rationals, optionally times one of ``symbols`` and
    occasionally times ``i``.

    :param parity: Restrict to terms of this parity.
    :param nonzero_body: Force a nonzero rational body (implies even terms exist).
    """
    scalars = session.scalars
    result = session.zero
    for size in range(len(generators) + 1):
        if parity is not None and size % 2 != parity:
            continue
        for word in itertools.combinations(generators, size):
            forced = nonzero_body and size == 0
            if not forced and rng.random() > density:
                continue
            coeff = scalars.const(random_fraction(rng, nonzero=forced))
            if symbols and not forced and rng.random() < 0.5:
                coeff = coeff * scalars.symbol(symbols[int(rng.integers(len(symbols)))])
            if not forced and rng.random() < 0.2:
                coeff = coeff * scalars.i
            result = result + session.word(*word) * coeff
    return result


def random_supermatrix(
    rng: np.random.Generator,
    session: Session,
    generators: T.Sequence[str] = (THETA, THETABAR),
    symbols: T.Sequence[str] = (),
) -> SuperMatrix:
    """Random graded matrix whose ``A`` block and ``det D`` have nonzero body."""
    while True:
        entries = [
            [
                random_super_number(
                    rng,
                    session,
                    generators,
                    parity=(GRADING[i] + GRADING[j]) % 2,
                    symbols=symbols,
                    nonzero_body=(GRADING[i] + GRADING[j]) % 2 == 0 and i == j,
                )
                for j in range(3)
            ]
            for i in range(3)
        ]
        matrix = SuperMatrix(entries)
        try:
            odd_block_inverse(matrix)
        except SingularOddBlock:
            continue
        return matrix
