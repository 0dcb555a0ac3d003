"""Quadratic Poisson brackets induced by a solution tensor, with an exact
multivariate polynomial engine and a Jacobi-identity checker.

Generators commute. For the scalar case the bracket of generators is
{x_a, x_b} = sum r^{ge}_{ab} x_g x_e; for m x m matrix entries indexed
(a, i, j) it is {x^{j1}_{i1,a}, x^{j2}_{i2,b}} = sum r^{ge}_{ab}
x^{j2}_{i1,g} x^{j1}_{i2,e}. Skew-symmetry of r makes both antisymmetric.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Mapping

from aybe.exactlin import format_rational
from aybe.frobenius import LambdaSpec
from aybe.tensor import Tensor4, check_skew

__all__ = [
    "Polynomial",
    "QuadraticBracket",
    "scalar_bracket_from_r",
    "matrix_bracket_from_r",
    "jacobi_residual",
    "Closed2mBracket",
    "scalar_bracket_closed_2m",
    "compare_to_closed_2m",
    "bracket_to_json",
]

Exps = tuple[int, ...]


class Polynomial:
    """Sparse polynomial: map from dense exponent vectors to coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, Fraction] | None = None):
        self.nvars = nvars
        kept: dict[Exps, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = Fraction(coeff)
            if c:
                kept[tuple(exps)] = c
        self._terms = kept

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> "Polynomial":
        exps = tuple(1 if k == idx else 0 for k in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def terms(self) -> list[tuple[Exps, Fraction]]:
        """Terms in graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def coeff(self, exps: Exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def _check_same_ring(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_same_ring(other)
            out: dict[Exps, Fraction] = defaultdict(Fraction)
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    out[key] += c1 * c2
            return Polynomial(self.nvars, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial(self.nvars, {e: f * c for e, c in self._terms.items()})

    def diff(self, idx: int) -> "Polynomial":
        out: dict[Exps, Fraction] = {}
        for exps, c in self._terms.items():
            e = exps[idx]
            if e:
                key = exps[:idx] + (e - 1,) + exps[idx + 1 :]
                out[key] = out.get(key, Fraction(0)) + c * e
        return Polynomial(self.nvars, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                f"x{k}" + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(exps)
                if e
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json_obj(self) -> list[dict]:
        return [
            {"exps": list(exps), "coeff": format_rational(c)}
            for exps, c in self.terms()
        ]


def _scalar_names(n: int) -> list[str]:
    return [f"x_{a}" for a in range(n)]


def _matrix_names(n: int, m: int) -> list[str]:
    return [
        f"x^{{{j}}}_{{{i},{a}}}"
        for a in range(n)
        for i in range(m)
        for j in range(m)
    ]


class QuadraticBracket:
    """Bracket table on commuting generators; antisymmetric by construction.

    Only pairs u < v with a nonzero polynomial are stored; entry(u, v)
    fills in the rest by antisymmetry.
    """

    def __init__(self, n_gens: int, table: Mapping[tuple[int, int], Polynomial], names=None):
        self.n_gens = n_gens
        self.names = list(names) if names is not None else _scalar_names(n_gens)
        self._table: dict[tuple[int, int], Polynomial] = {}
        for (u, v), poly in table.items():
            if not (0 <= u < v < n_gens):
                raise ValueError(f"bracket table keys must have 0 <= u < v < {n_gens}")
            if poly.nvars != n_gens:
                raise ValueError("bracket polynomial has wrong variable count")
            if not poly.is_zero():
                self._table[(u, v)] = poly

    def entry(self, u: int, v: int) -> Polynomial:
        if u == v:
            return Polynomial.zero(self.n_gens)
        if u < v:
            return self._table.get((u, v), Polynomial.zero(self.n_gens))
        return -self._table.get((v, u), Polynomial.zero(self.n_gens))

    def pairs(self) -> list[tuple[tuple[int, int], Polynomial]]:
        return sorted(self._table.items())

    def is_zero(self) -> bool:
        return not self._table

    def bracket_gen(self, u: int, p: Polynomial) -> Polynomial:
        """{x_u, p} via the derivation rule."""
        out = Polynomial.zero(self.n_gens)
        for v in range(self.n_gens):
            dp = p.diff(v)
            if not dp.is_zero():
                out = out + dp * self.entry(u, v)
        return out

    def bracket(self, p: Polynomial, q: Polynomial) -> Polynomial:
        """{p, q} extended bilinearly and by the Leibniz rule."""
        out = Polynomial.zero(self.n_gens)
        for u in range(self.n_gens):
            dp = p.diff(u)
            if not dp.is_zero():
                out = out + dp * self.bracket_gen(u, q)
        return out


def _group_by_lower(r: Tensor4) -> dict[tuple[int, int], list]:
    groups: dict[tuple[int, int], list] = defaultdict(list)
    for (g, e, al, be), v in r.iter_items():
        groups[(al, be)].append((g, e, v))
    return groups


def _require_skew(r: Tensor4) -> None:
    bad = check_skew(r)
    if bad:
        raise ValueError(
            f"tensor is not skew-symmetric ({len(bad)} violating components); "
            "the induced bracket would not be antisymmetric"
        )


def scalar_bracket_from_r(r: Tensor4) -> QuadraticBracket:
    """{x_a, x_b} = sum r^{ge}_{ab} x_g x_e on r.n commuting generators."""
    _require_skew(r)
    n = r.n
    groups = _group_by_lower(r)
    table: dict[tuple[int, int], Polynomial] = {}
    for u, v in combinations(range(n), 2):
        acc: dict[Exps, Fraction] = defaultdict(Fraction)
        for g, e, val in groups.get((u, v), ()):
            exps = [0] * n
            exps[g] += 1
            exps[e] += 1
            acc[tuple(exps)] += val
        poly = Polynomial(n, acc)
        if not poly.is_zero():
            table[(u, v)] = poly
    return QuadraticBracket(n, table, _scalar_names(n))


def matrix_bracket_from_r(r: Tensor4, m: int) -> QuadraticBracket:
    """Bracket on r.n * m^2 generators indexed (a, i, j); m == 1 reduces to
    the scalar bracket with identical generator numbering."""
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    _require_skew(r)
    n = r.n
    n_gens = n * m * m
    groups = _group_by_lower(r)

    def gen(a: int, i: int, j: int) -> int:
        return a * m * m + i * m + j

    table: dict[tuple[int, int], Polynomial] = {}
    for u in range(n_gens):
        au, rem = divmod(u, m * m)
        iu, ju = divmod(rem, m)
        for v in range(u + 1, n_gens):
            av, rem = divmod(v, m * m)
            iv, jv = divmod(rem, m)
            acc: dict[Exps, Fraction] = defaultdict(Fraction)
            for g, e, val in groups.get((au, av), ()):
                exps = [0] * n_gens
                exps[gen(g, iu, jv)] += 1
                exps[gen(e, iv, ju)] += 1
                acc[tuple(exps)] += val
            poly = Polynomial(n_gens, acc)
            if not poly.is_zero():
                table[(u, v)] = poly
    return QuadraticBracket(n_gens, table, _matrix_names(n, m))


def jacobi_residual(b: QuadraticBracket) -> list[tuple[tuple[int, int, int], Polynomial]]:
    """Triples u <= v <= w where {x_u,{x_v,x_w}} + cyclic is nonzero.

    Checking generator triples suffices: the Leibniz extension propagates
    the identity to all polynomials.
    """
    out = []
    for u, v, w in combinations_with_replacement(range(b.n_gens), 3):
        total = (
            b.bracket_gen(u, b.entry(v, w))
            + b.bracket_gen(v, b.entry(w, u))
            + b.bracket_gen(w, b.entry(u, v))
        )
        if not total.is_zero():
            out.append(((u, v, w), total))
    return out


@dataclass(frozen=True)
class Closed2mBracket:
    """Result of the printed pairing formula: the evaluable part of the
    table plus the generator pairs whose denominator vanishes."""

    bracket: QuadraticBracket
    undefined_pairs: tuple[tuple[int, int], ...]


def _partner(g: int, m: int) -> int:
    return g + m if g < m else g - m


def scalar_bracket_closed_2m(lam: LambdaSpec) -> Closed2mBracket:
    """Literal evaluation of the printed two-block bracket formula

        {x_a, x_b} = (x_a - x_a')(x_b - x_b')(l_a' - l_b')
                     / ((l_a - l_b')(l_b - l_b'))

    for n = 2m, where g' is the index with |g' - g| = m. Pairs where the
    printed denominator vanishes are reported as undefined rather than
    silently corrected.
    """
    if lam.n != 2 * lam.m:
        raise ValueError("the two-block bracket formula requires n == 2m")
    if len(set(lam.values)) != lam.n:
        raise ValueError("lambda values must be pairwise distinct")
    n, m = lam.n, lam.m
    vals = lam.values
    table: dict[tuple[int, int], Polynomial] = {}
    undefined: list[tuple[int, int]] = []
    for u in range(n):
        for v in range(u + 1, n):
            up, vp = _partner(u, m), _partner(v, m)
            den = (vals[u] - vals[vp]) * (vals[v] - vals[vp])
            if den == 0:
                undefined.append((u, v))
                continue
            xu = Polynomial.variable(n, u) - Polynomial.variable(n, up)
            xv = Polynomial.variable(n, v) - Polynomial.variable(n, vp)
            poly = (xu * xv).scale((vals[up] - vals[vp]) / den)
            if not poly.is_zero():
                table[(u, v)] = poly
    return Closed2mBracket(QuadraticBracket(n, table), tuple(undefined))


def compare_to_closed_2m(derived: QuadraticBracket, lam: LambdaSpec) -> list[dict]:
    """Per-pair verdicts comparing a derived bracket with the printed
    formula: 'match', 'mismatch', or 'undefined' (denominator vanished)."""
    closed = scalar_bracket_closed_2m(lam)
    if derived.n_gens != lam.n:
        raise ValueError("derived bracket generator count differs from n")
    undefined = set(closed.undefined_pairs)
    report = []
    for u in range(lam.n):
        for v in range(u + 1, lam.n):
            item = {
                "pair": [u, v],
                "derived": derived.entry(u, v).to_json_obj(),
            }
            if (u, v) in undefined:
                item["status"] = "undefined"
                item["closed"] = None
            else:
                closed_poly = closed.bracket.entry(u, v)
                item["status"] = (
                    "match" if closed_poly == derived.entry(u, v) else "mismatch"
                )
                item["closed"] = closed_poly.to_json_obj()
            report.append(item)
    return report


def bracket_to_json(b: QuadraticBracket) -> dict:
    return {
        "generators": b.n_gens,
        "names": list(b.names),
        "table": [
            {"u": u, "v": v, "poly": poly.to_json_obj()}
            for (u, v), poly in b.pairs()
        ],
    }
