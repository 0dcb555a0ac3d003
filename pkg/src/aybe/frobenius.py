"""The column-residue matrix algebras, their trace bilinear form, and the
tensor built from the inverse Gram matrix.

For a proper divisor m of n, the algebra consists of all n x n matrices
whose entries in every column sum to zero over each residue class mod m.
It is n(n-m)-dimensional, with basis elements

    e_{i,j} = E_{i,j} - E_{bar(i,j), j},   block(i) != block(j),

where bar(i,j) keeps i's residue mod m but takes j's block. The bilinear
form is (x, y) = tr([x, y] diag(lambda_0, ..., lambda_{n-1})); it is a
cyclic 2-cocycle for any lambda, and non-degenerate in particular when
the lambda pattern matches the blocks or when all lambda are distinct.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from aybe.exactlin import (
    RatMatrix,
    SingularMatrix,
    mat_inverse,
    mat_mul,
    matrix_to_json,
)
from aybe.tensor import Tensor4

__all__ = [
    "LambdaMode",
    "LambdaSpec",
    "make_lambda",
    "BasisElement",
    "AlgebraBasis",
    "GramMatrix",
    "DegenerateForm",
    "bar_index",
    "build_basis",
    "membership_check",
    "form_eval",
    "cocycle_residual",
    "gram_matrix",
    "r_from_algebra",
    "r_from_matrices",
    "basis_to_json",
]


class LambdaMode(Enum):
    BLOCK = "BLOCK"
    DISTINCT = "DISTINCT"
    OTHER = "OTHER"


@dataclass(frozen=True)
class LambdaSpec:
    """Parameter vector with its degeneracy pattern classified.

    BLOCK means lambda_i == lambda_j exactly when i and j share a block of
    m consecutive indices; DISTINCT means all values pairwise distinct.
    When m == 1 the two patterns coincide and DISTINCT is reported. The
    mode is always recomputed from the values.
    """

    n: int
    m: int
    values: tuple[Fraction, ...]
    mode: LambdaMode = field(init=False)

    def __post_init__(self):
        if self.m < 1 or self.m >= self.n or self.n % self.m != 0:
            raise ValueError(f"m={self.m} is not a proper divisor of n={self.n}")
        if len(self.values) != self.n:
            raise ValueError(f"expected {self.n} lambda values, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        object.__setattr__(self, "mode", self._classify())

    def _classify(self) -> LambdaMode:
        vals = self.values
        distinct = len(set(vals)) == self.n
        if self.m == 1:
            return LambdaMode.DISTINCT if distinct else LambdaMode.OTHER
        block = all(
            (vals[i] == vals[j]) == (i // self.m == j // self.m)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )
        if block:
            return LambdaMode.BLOCK
        if distinct:
            return LambdaMode.DISTINCT
        return LambdaMode.OTHER

    def has_block_pattern(self) -> bool:
        """True when values are equal exactly within blocks, for any m."""
        if self.m == 1:
            return self.mode is LambdaMode.DISTINCT
        return self.mode is LambdaMode.BLOCK


def make_lambda(n: int, m: int, values: Iterable) -> LambdaSpec:
    return LambdaSpec(n, m, tuple(Fraction(v) for v in values))


class DegenerateForm(Exception):
    """The bilinear form is degenerate for the given lambda; carries the Gram rank."""

    def __init__(self, rank: int):
        super().__init__(f"bilinear form is degenerate (Gram rank {rank})")
        self.rank = rank


def bar_index(i: int, j: int, m: int) -> int:
    """The index with i's residue mod m and j's block."""
    return (j // m) * m + (i % m)


@dataclass(frozen=True)
class BasisElement:
    i: int
    j: int
    matrix: RatMatrix


class AlgebraBasis:
    """Ordered basis e_{i,j} for the column-residue algebra, sorted by (j, i)."""

    def __init__(self, n: int, m: int, elements: Sequence[BasisElement]):
        self.n = n
        self.m = m
        self.elements = list(elements)
        self.index_of = {(e.i, e.j): k for k, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)


def _basis_matrix(n: int, i: int, j: int, bar: int) -> RatMatrix:
    grid = [[Fraction(0)] * n for _ in range(n)]
    grid[i][j] = Fraction(1)
    grid[bar][j] = Fraction(-1)
    return RatMatrix(grid)


def build_basis(n: int, m: int) -> AlgebraBasis:
    """All n(n-m) basis elements, in (j, i) order."""
    if m < 1 or m >= n or n % m != 0:
        raise ValueError(f"m={m} is not a proper divisor of n={n}")
    pairs = sorted(
        ((i, j) for i in range(n) for j in range(n) if i // m != j // m),
        key=lambda ij: (ij[1], ij[0]),
    )
    elements = [
        BasisElement(i, j, _basis_matrix(n, i, j, bar_index(i, j, m)))
        for (i, j) in pairs
    ]
    return AlgebraBasis(n, m, elements)


def membership_check(a: RatMatrix, n: int, m: int) -> bool:
    """True when every column sums to zero over each residue class mod m."""
    if a.rows != n or a.cols != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {a.rows}x{a.cols}")
    for j in range(n):
        for res in range(m):
            if sum((a[i][j] for i in range(res, n, m)), Fraction(0)):
                return False
    return True


def _sparse(mat: RatMatrix) -> list[tuple[int, int, Fraction]]:
    return list(mat.nonzero_items())


def _form_sparse(x_items, y: RatMatrix, values) -> Fraction:
    # tr([x,y] D) expanded: sum over entries x_{uv} y_{vu} (lambda_u - lambda_v)
    s = Fraction(0)
    for u, v, xv in x_items:
        yv = y[v][u]
        if yv:
            s += xv * yv * (values[u] - values[v])
    return s


def form_eval(x: RatMatrix, y: RatMatrix, lam: LambdaSpec) -> Fraction:
    """(x, y) = tr([x, y] diag(lambda)), evaluated exactly."""
    if not x.is_square() or x.rows != lam.n or y.rows != lam.n or y.cols != lam.n:
        raise ValueError(f"form needs {lam.n}x{lam.n} matrices")
    return _form_sparse(x.nonzero_items(), y, lam.values)


def cocycle_residual(basis: AlgebraBasis, lam: LambdaSpec) -> list:
    """Nonzero values of (x, yz) + (y, zx) + (z, xy) over all basis triples.

    Expected empty for every lambda; degeneracy of the form does not
    affect the cyclic identity.
    """
    if basis.n != lam.n:
        raise ValueError("basis and lambda dimensions differ")
    mats = [e.matrix for e in basis.elements]
    items = [_sparse(mat) for mat in mats]
    dim = len(mats)
    prods = [[mat_mul(y, z) for z in mats] for y in mats]
    values = lam.values
    out = []
    for ix in range(dim):
        for iy in range(dim):
            for iz in range(dim):
                total = (
                    _form_sparse(items[ix], prods[iy][iz], values)
                    + _form_sparse(items[iy], prods[iz][ix], values)
                    + _form_sparse(items[iz], prods[ix][iy], values)
                )
                if total:
                    out.append(((ix, iy, iz), total))
    return out


@dataclass(frozen=True)
class GramMatrix:
    basis: AlgebraBasis
    matrix: RatMatrix


def gram_matrix(basis: AlgebraBasis, lam: LambdaSpec) -> GramMatrix:
    """Matrix of the form over the basis ordering; antisymmetric."""
    if basis.n != lam.n:
        raise ValueError("basis and lambda dimensions differ")
    mats = [e.matrix for e in basis.elements]
    items = [_sparse(mat) for mat in mats]
    values = lam.values
    grid = [
        [_form_sparse(items[a], mats[b], values) for b in range(len(mats))]
        for a in range(len(mats))
    ]
    return GramMatrix(basis, RatMatrix(grid))


def r_from_matrices(mats: Sequence[RatMatrix], lam: LambdaSpec) -> Tensor4:
    """Tensor r^{ab}_{cd} = sum g^{st} (e_s)^a_c (e_t)^b_d with g = G^{-1}.

    G is the Gram matrix of the form over the given matrices. Raises
    DegenerateForm when G is singular.
    """
    items = [_sparse(mat) for mat in mats]
    values = lam.values
    dim = len(mats)
    grid = [
        [_form_sparse(items[a], mats[b], values) for b in range(dim)]
        for a in range(dim)
    ]
    try:
        ginv = mat_inverse(RatMatrix(grid))
    except SingularMatrix as exc:
        raise DegenerateForm(exc.rank) from exc
    acc: dict[tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
    for s in range(dim):
        row = ginv[s]
        for t in range(dim):
            g = row[t]
            if not g:
                continue
            for a, c, va in items[s]:
                gva = g * va
                for b, d, vb in items[t]:
                    acc[(a, b, c, d)] += gva * vb
    return Tensor4(lam.n, acc)


def r_from_algebra(basis: AlgebraBasis, lam: LambdaSpec) -> Tensor4:
    """The solution tensor for the algebra basis at the given lambda."""
    if basis.n != lam.n or basis.m != lam.m:
        raise ValueError("basis and lambda shapes differ")
    return r_from_matrices([e.matrix for e in basis.elements], lam)


def basis_to_json(basis: AlgebraBasis) -> list[dict]:
    return [
        {"i": e.i, "j": e.j, "matrix": matrix_to_json(e.matrix)}
        for e in basis.elements
    ]
