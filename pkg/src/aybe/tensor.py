"""Four-index coefficient tensors and the component checks a candidate
solution of the associative Yang-Baxter equation must pass.

A tensor r stores components r^{ab}_{cd}: (a, b) are the upper (output)
indices, (c, d) the lower (input) ones, all 0-based. Only nonzero values
are kept; an absent quadruple is an exact zero.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping

from aybe.exactlin import RatMatrix, format_rational, mat_inverse, parse_rational

__all__ = [
    "Tensor4",
    "check_skew",
    "aybe_residual",
    "aybe_residual_naive",
    "gl_transform",
    "transpose_dual",
    "AybeReport",
    "aybe_report",
    "compare_tensors",
]

Quad = tuple[int, int, int, int]


class Tensor4:
    """Sparse 4-index tensor over exact rationals, immutable after construction."""

    __slots__ = ("n", "_entries")

    def __init__(self, n: int, entries: Mapping[Quad, Fraction] | None = None):
        if n < 1:
            raise ValueError("tensor dimension must be >= 1")
        self.n = n
        kept: dict[Quad, Fraction] = {}
        for key, value in (entries or {}).items():
            a, b, c, d = key
            if not all(0 <= idx < n for idx in (a, b, c, d)):
                raise ValueError(f"index out of range for n={n}: {key}")
            v = Fraction(value)
            if v:
                kept[(a, b, c, d)] = v
        self._entries = kept

    def get(self, a: int, b: int, c: int, d: int) -> Fraction:
        return self._entries.get((a, b, c, d), Fraction(0))

    def items(self) -> list[tuple[Quad, Fraction]]:
        """Entries in lexicographic (a, b, c, d) order."""
        return sorted(self._entries.items())

    def iter_items(self) -> Iterator[tuple[Quad, Fraction]]:
        return iter(self._entries.items())

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Tensor4)
            and self.n == other.n
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.n, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"Tensor4(n={self.n}, nnz={self.nnz})"

    def negate(self) -> "Tensor4":
        return Tensor4(self.n, {k: -v for k, v in self._entries.items()})

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {
                    "upper": [a, b],
                    "lower": [c, d],
                    "value": format_rational(v),
                }
                for (a, b, c, d), v in self.items()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"

    @classmethod
    def from_json_obj(cls, obj) -> "Tensor4":
        if not isinstance(obj, dict):
            raise ValueError("tensor JSON must be an object")
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError("tensor JSON needs a positive integer 'n'")
        raw = obj.get("entries")
        if not isinstance(raw, list):
            raise ValueError("tensor JSON needs an 'entries' list")
        entries: dict[Quad, Fraction] = {}
        for item in raw:
            if not isinstance(item, dict):
                raise ValueError("tensor entries must be objects")
            upper = item.get("upper")
            lower = item.get("lower")
            if (
                not isinstance(upper, list)
                or not isinstance(lower, list)
                or len(upper) != 2
                or len(lower) != 2
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in upper + lower)
            ):
                raise ValueError(f"bad index pair in tensor entry: {item!r}")
            value = item.get("value")
            if not isinstance(value, str):
                raise ValueError("tensor entry values must be rational strings")
            v = parse_rational(value)
            if v == 0:
                raise ValueError("explicit zero entry in tensor file")
            key = (upper[0], upper[1], lower[0], lower[1])
            if key in entries:
                raise ValueError(f"duplicate tensor entry at {key}")
            entries[key] = v
        return cls(n, entries)

    @classmethod
    def loads(cls, text: str) -> "Tensor4":
        return cls.from_json_obj(json.loads(text))


def check_skew(r: Tensor4) -> list[tuple[Quad, Fraction]]:
    """All quadruples where r^{ab}_{cd} + r^{ba}_{dc} is nonzero.

    Empty result means the tensor is skew-symmetric. The involution fixes
    quadruples with a == b and c == d, forcing those components to vanish.
    """
    candidates = set()
    for (a, b, c, d) in r._entries:
        candidates.add((a, b, c, d))
        candidates.add((b, a, d, c))
    violations = []
    for (a, b, c, d) in sorted(candidates):
        s = r.get(a, b, c, d) + r.get(b, a, d, c)
        if s:
            violations.append(((a, b, c, d), s))
    return violations


def aybe_residual(r: Tensor4) -> list[tuple[tuple[int, ...], Fraction]]:
    """Nonzero component residuals of the associative Yang-Baxter equation.

    For free indices (l, m, u upper; al, be, ta lower) the residual is

        sum_s [ r^{ls}_{al,be} r^{mu}_{s,ta}
              + r^{ms}_{be,ta} r^{ul}_{s,al}
              + r^{us}_{ta,al} r^{lm}_{s,be} ].

    Only entry pairs that can contribute are visited; the result is
    identical to the naive loop over all index tuples (see
    aybe_residual_naive, kept as the test oracle).
    """
    by_lower0: dict[int, list] = defaultdict(list)
    for (a, b, c, d), v in r.iter_items():
        by_lower0[c].append((a, b, d, v))
    acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for (a1, b1, c1, d1), v1 in r.iter_items():
        for (a2, b2, d2, v2) in by_lower0[b1]:
            p = v1 * v2
            # the three terms are cyclic relabelings of one join pattern
            acc[(a1, a2, b2, c1, d1, d2)] += p
            acc[(b2, a1, a2, d2, c1, d1)] += p
            acc[(a2, b2, a1, d1, d2, c1)] += p
    return sorted((k, v) for k, v in acc.items() if v)


def aybe_residual_naive(r: Tensor4) -> list[tuple[tuple[int, ...], Fraction]]:
    """Reference O(n^7) evaluation of the residual, for cross-checking."""
    n = r.n
    out = []
    for key in product(range(n), repeat=6):
        l, m, u, al, be, ta = key
        s = Fraction(0)
        for sg in range(n):
            s += r.get(l, sg, al, be) * r.get(m, u, sg, ta)
            s += r.get(m, sg, be, ta) * r.get(u, l, sg, al)
            s += r.get(u, sg, ta, al) * r.get(l, m, sg, be)
        if s:
            out.append((key, s))
    return out


def gl_transform(r: Tensor4, g: RatMatrix) -> Tensor4:
    """Change of basis: r'^{ab}_{cd} = g^a_p g^b_q r^{pq}_{rs} (g^-1)^r_c (g^-1)^s_d."""
    if not g.is_square() or g.rows != r.n:
        raise ValueError(f"basis change matrix must be {r.n}x{r.n}")
    h = mat_inverse(g)
    n = r.n

    def contract(entries, mat, pos, upper):
        out: dict[Quad, Fraction] = defaultdict(Fraction)
        for key, v in entries.items():
            old = key[pos]
            for new in range(n):
                coeff = mat[new][old] if upper else mat[old][new]
                if coeff:
                    out[key[:pos] + (new,) + key[pos + 1 :]] += coeff * v
        return out

    cur: dict[Quad, Fraction] = dict(r.iter_items())
    cur = contract(cur, g, 0, True)
    cur = contract(cur, g, 1, True)
    cur = contract(cur, h, 2, False)
    cur = contract(cur, h, 3, False)
    return Tensor4(n, cur)


def transpose_dual(r: Tensor4) -> Tensor4:
    """Swap the upper and lower index blocks: r^{ab}_{cd} -> r^{cd}_{ab}."""
    return Tensor4(r.n, {(c, d, a, b): v for (a, b, c, d), v in r.iter_items()})


@dataclass(frozen=True)
class AybeReport:
    """Verdict carrier for the two component checks."""

    skew_violations: list = field(default_factory=list)
    residual_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.skew_violations and not self.residual_violations


def aybe_report(r: Tensor4) -> AybeReport:
    return AybeReport(check_skew(r), aybe_residual(r))


def compare_tensors(r1: Tensor4, r2: Tensor4) -> list[tuple[Quad, Fraction, Fraction]]:
    """Quadruples where the two tensors differ, with both values."""
    if r1.n != r2.n:
        raise ValueError(f"cannot compare tensors of dimension {r1.n} and {r2.n}")
    keys = set(r1._entries) | set(r2._entries)
    diffs = []
    for key in sorted(keys):
        v1 = r1.get(*key)
        v2 = r2.get(*key)
        if v1 != v2:
            diffs.append((key, v1, v2))
    return diffs
