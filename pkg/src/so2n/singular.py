"""Alternating forms on the Siegel unipotent radical and their degeneracy.

A character of the Siegel unipotent radical of SO(2n) is an alternating
n x n matrix.  Forms that vanish on the span of the root vectors indexed by
B = {(i, j) : m <= i < j <= n}, n = 2m, have a zero principal block of size
m+1, so their rank is at most 2(m-1) < n.  Ranks are computed exactly with
fraction-free elimination; a random sample is deterministic in its seed.

The existence of a maximal-rank Fourier coefficient for a non-singular
representation is an external input and only appears as a report label.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import LaurentPoly, Number, as_fraction
from .errors import ShapeError, TheoremViolation

MAXIMAL_RANK_AXIOM = "a non-singular representation has a Fourier coefficient of maximal rank"
PFAFFIAN_LIMIT = 6


@dataclass(frozen=True)
class AlternatingForm:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ShapeError("an alternating form is a square matrix")
        for i in range(n):
            if self.matrix[i][i]:
                raise ShapeError(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
            for j in range(i + 1, n):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    raise ShapeError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> AlternatingForm:
        return cls(tuple(tuple(as_fraction(a) for a in row) for row in rows))

    @classmethod
    def from_upper(cls, n: int, entries: dict[tuple[int, int], Number]) -> AlternatingForm:
        """Build from 1-based upper-triangular entries {(i, j): a_ij}."""
        a = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            if not 1 <= i < j <= n:
                raise ShapeError(f"({i},{j}) is not an upper-triangular position for n={n}")
            a[i - 1][j - 1] = as_fraction(v)
            a[j - 1][i - 1] = -as_fraction(v)
        return cls(tuple(map(tuple, a)))

    @classmethod
    def zero(cls, n: int) -> AlternatingForm:
        return cls.from_upper(n, {})

    @classmethod
    def standard_symplectic(cls, n: int) -> AlternatingForm:
        if n % 2:
            raise ShapeError("a nondegenerate alternating form needs n even")
        h = n // 2
        return cls.from_upper(n, {(i, i + h): 1 for i in range(1, h + 1)})

    @property
    def n(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i - 1][j - 1]

    def congruent(self, g: Sequence[Sequence[Number]]) -> AlternatingForm:
        """g^T a g."""
        n = self.n
        g = [[as_fraction(x) for x in row] for row in g]
        ag = [[sum(self.matrix[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return AlternatingForm.from_rows([[sum(g[k][i] * ag[k][j] for k in range(n)) for j in range(n)] for i in range(n)])


def bareiss_rank(rows: Sequence[Sequence[Number]]) -> int:
    """Exact rank by fraction-free elimination on an integer rescaling."""
    fr = [[as_fraction(x) for x in row] for row in rows]
    if not fr or not fr[0]:
        return 0
    den = math.lcm(*(x.denominator for row in fr for x in row))
    a = [[int(x * den) for x in row] for row in fr]
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        piv = a[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                a[r][c] = (piv * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = piv
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(form: AlternatingForm) -> int:
    r = bareiss_rank(form.matrix)
    if r % 2:
        raise TheoremViolation(f"alternating form of odd rank {r}")
    return r


@dataclass(frozen=True)
class BIndexSet:
    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ShapeError("B is defined for n even")

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.m, self.n + 1) for j in range(i + 1, self.n + 1))

    def __len__(self) -> int:
        return (self.m + 1) * self.m // 2

    def free_pairs(self) -> tuple[tuple[int, int], ...]:
        """Upper-triangular positions outside B."""
        inside = set(self.pairs)
        return tuple((i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1) if (i, j) not in inside)


def vanishes_on_nB(form: AlternatingForm, B: BIndexSet) -> bool:
    if form.n != B.n:
        raise ShapeError(f"form of size {form.n}, index set for n={B.n}")
    return all(form.entry(i, j) == 0 for i, j in B.pairs)


def rank_bound(n: int) -> int:
    """Rank bound for forms vanishing on n_B: 2(m-1)."""
    return 2 * (n // 2 - 1)


def random_vanishing_form(B: BIndexSet, rng: np.random.Generator, bound: int = 9) -> AlternatingForm:
    free = B.free_pairs()
    values = rng.integers(-bound, bound + 1, size=len(free))
    return AlternatingForm.from_upper(B.n, {ij: int(v) for ij, v in zip(free, values)})


def basis_forms(B: BIndexSet) -> list[AlternatingForm]:
    """E_ij - E_ji for every free position."""
    return [AlternatingForm.from_upper(B.n, {ij: 1}) for ij in B.free_pairs()]


def pfaffian(a: Sequence[Sequence]):
    """Pfaffian by expansion along the first row; works over any ring."""
    n = len(a)
    if n % 2:
        return 0 * a[0][0] if n else 1
    if n == 0:
        return 1
    total = None
    rest = list(range(1, n))
    for k, j in enumerate(rest):
        if a[0][j] == 0:
            continue
        keep = [r for r in rest if r != j]
        minor = [[a[r][c] for c in keep] for r in keep]
        term = a[0][j] * pfaffian(minor)
        term = term if k % 2 == 0 else -term
        total = term if total is None else total + term
    return total if total is not None else 0 * a[0][1]


def symbolic_constrained_matrix(B: BIndexSet) -> list[list[LaurentPoly]]:
    """The alternating matrix with a free variable a_ij off B and zeros on B."""
    free = B.free_pairs()
    names = tuple(f"a{i}_{j}" for i, j in free)
    zero = LaurentPoly.constant(0, names)
    a = [[zero] * B.n for _ in range(B.n)]
    for (i, j), name in zip(free, names):
        v = LaurentPoly.variable(name, names)
        a[i - 1][j - 1] = v
        a[j - 1][i - 1] = -v
    return a


def symbolic_pfaffian(B: BIndexSet) -> LaurentPoly:
    if B.n > PFAFFIAN_LIMIT:
        raise ShapeError(f"symbolic Pfaffian is only expanded for n <= {PFAFFIAN_LIMIT}")
    a = symbolic_constrained_matrix(B)
    pf = pfaffian(a)
    return pf if isinstance(pf, LaurentPoly) else LaurentPoly.constant(pf, a[0][0].variables)


@dataclass(frozen=True)
class DegeneracyReport:
    n: int
    trials: int
    seed: int
    max_rank: int
    rank_bound: int
    rank_histogram: dict[int, int]
    basis_max_rank: int
    pfaffian_identically_zero: bool | None
    axiom: str = MAXIMAL_RANK_AXIOM

    @property
    def all_degenerate(self) -> bool:
        return self.max_rank < self.n


def degeneracy_theorem_check(n: int, trials: int, seed: int = 0) -> DegeneracyReport:
    """Sample forms vanishing on n_B and confirm every one is degenerate.

    Trial k uses its own child of ``SeedSequence(seed)``, so any subset of
    trials can be replayed.  A form of rank n, or above 2(m-1), raises
    TheoremViolation.
    """
    B = BIndexSet(n)
    bound = rank_bound(n)
    hist: Counter = Counter()
    children = np.random.SeedSequence(seed).spawn(trials)
    for k, child in enumerate(children):
        form = random_vanishing_form(B, np.random.default_rng(child))
        r = rank(form)
        if r >= n or r > bound:
            raise TheoremViolation(f"trial {k}: form vanishing on n_B has rank {r} (n={n}, bound {bound})")
        hist[r] += 1
    basis_max = max((rank(f) for f in basis_forms(B)), default=0)
    pf_zero = symbolic_pfaffian(B).is_zero() if n <= PFAFFIAN_LIMIT else None
    if pf_zero is False:
        raise TheoremViolation(f"Pfaffian of the constrained matrix is not identically zero for n={n}")
    return DegeneracyReport(n, trials, seed, max(hist, default=0), bound, dict(sorted(hist.items())), basis_max, pf_zero)
