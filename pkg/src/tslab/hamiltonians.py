"""Cylinder Hamiltonians, their tropical shadows and the slice recurrence coefficients.

``H_r`` sums the weights of cylinder tilings with ``r`` hula hoops. On the
boundary slices the T-system obeys a linear recurrence whose coefficients are
the ``H_r``; on inner slices the coefficients come from plethysms
``e_j[e_r[p_2]]`` written in the basis ``e_i = H_i``.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import BadParameter, ResourceLimit
from .laurent import LaurentPoly, specialize
from .tilings import (
    ROW_FLIP,
    CylinderGrid,
    degree_vector,
    enumerate_cylinder_tilings,
    hula_hoops,
    node_vertex,
    tiling_weight,
)


@dataclass(frozen=True)
class HamiltonianSet:
    m: int
    n: int
    H: tuple

    def at(self, point: Mapping) -> list:
        return [specialize(h, point) for h in self.H]


@lru_cache(maxsize=16)
def _graded_tilings(m: int, n: int) -> tuple:
    grid = CylinderGrid(m, n)
    groups: list = [[] for _ in range(m + 2)]
    for t in enumerate_cylinder_tilings(grid):
        groups[hula_hoops(grid, t)].append(t)
    return tuple(tuple(g) for g in groups)


@lru_cache(maxsize=16)
def gk_hamiltonians(m: int, n: int) -> HamiltonianSet:
    """``H_0 .. H_{m+1}`` for the cylinder with ``m`` inner rows and ``2n`` columns."""
    if m < 1 or n < 1:
        raise BadParameter("need m >= 1 and n >= 1")
    grid = CylinderGrid(m, n)
    hs = []
    for group in _graded_tilings(m, n):
        terms: dict = {}
        for t in group:
            mono = tiling_weight(grid, t)
            terms[mono] = terms.get(mono, 0) + 1
        hs.append(LaurentPoly(terms))
    return HamiltonianSet(m, n, tuple(hs))


def top_row(m: int) -> int:
    """Index along ``A_m`` of the slice whose recurrence lists ``H_1`` first.

    It is the boundary slice next to the cell row whose column-0 cell is
    white, which is cylinder row ``m`` for odd ``m`` and row 1 for even ``m``.
    """
    grid_row = m if m % 2 else 1
    return m - grid_row if ROW_FLIP else grid_row - 1


def tropical_hamiltonians(m: int, n: int, labels: Mapping[int, int]) -> list:
    """``max`` over tilings with ``r`` hoops of ``sum (1 - d(u)) * labels[u]``."""
    grid = CylinderGrid(m, n)
    out = []
    for group in _graded_tilings(m, n):
        best = None
        for t in group:
            deg = degree_vector(t, grid.width)
            val = sum((1 - deg.get(u, 0)) * labels[node_vertex(grid, u)] for u in grid.interior_nodes())
            best = val if best is None or val > best else best
        out.append(best)
    return out


# ---------------------------------------------------------------- symmetric expressions

class SymmetricExpr:
    """Integer polynomial in ``e_1 .. e_m`` (``e_0 = e_{m+1} = 1``)."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[tuple, int] | None = None):
        self.m = m
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, m: int, c: int) -> SymmetricExpr:
        return cls(m, {(0,) * m: c})

    @classmethod
    def gen(cls, m: int, i: int) -> SymmetricExpr:
        if i in (0, m + 1):
            return cls.const(m, 1)
        if not 1 <= i <= m:
            return cls(m)
        e = [0] * m
        e[i - 1] = 1
        return cls(m, {tuple(e): 1})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymmetricExpr(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SymmetricExpr(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return SymmetricExpr(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SymmetricExpr.const(self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, x) -> SymmetricExpr:
        if isinstance(x, SymmetricExpr):
            if x.m != self.m:
                raise ValueError("mismatched number of generators")
            return x
        return SymmetricExpr.const(self.m, int(x))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SymmetricExpr.const(self.m, other)
        return isinstance(other, SymmetricExpr) and self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, frozenset(self.terms.items())))

    def evaluate(self, values: Sequence | Mapping):
        """Substitute ``e_i = values[i]`` (``values[0]`` is ignored when a sequence of length m+1)."""
        get = (lambda i: values[i]) if isinstance(values, Mapping) else (
            (lambda i: values[i]) if len(values) > self.m else (lambda i: values[i - 1]))
        total = 0
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(k, start=1):
                if e:
                    term = term * get(i) ** e
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            factors = [f"e{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k, start=1) if e]
            body = "*".join(factors)
            mag = abs(c)
            text = body if mag == 1 and body else (f"{mag}*{body}" if body else str(mag))
            parts.append(("-" if c < 0 else "+", text))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {t}" for s, t in parts[1:])

    __repr__ = __str__


# ---------------------------------------------------------------- monomial -> elementary basis

def _partitions(total: int, parts: int, cap: int):
    """Partitions of ``total`` into at most ``parts`` parts each ``<= cap``, lex-descending, padded."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


@cache
def _zero_one_count(rows: tuple, cols: tuple) -> int:
    """Number of 0-1 matrices with the given row sums and column sums."""
    if not rows:
        return 1 if not any(cols) else 0
    a, rest = rows[0], rows[1:]
    live = [i for i, c in enumerate(cols) if c]
    if a > len(live):
        return 0
    total = 0
    for pick in combinations(live, a):
        nxt = list(cols)
        for i in pick:
            nxt[i] -= 1
        total += _zero_one_count(rest, tuple(sorted(nxt, reverse=True)))
    return total


def monomial_to_elementary(coeffs: Mapping[tuple, int], nvars: int) -> dict:
    """Rewrite ``sum c_mu m_mu`` in ``nvars`` variables as ``{e-exponents: coeff}``.

    Keys of the result are exponent tuples over ``e_1 .. e_nvars``.
    """
    f = {tuple(mu) + (0,) * (nvars - len(mu)): c for mu, c in coeffs.items() if c}
    out: dict = {}
    while f:
        mu = max(f)
        c = f[mu]
        exps = tuple(mu[k] - (mu[k + 1] if k + 1 < nvars else 0) for k in range(nvars))
        out[exps] = out.get(exps, 0) + c
        rows = tuple(sorted((k + 1 for k in range(nvars) for _ in range(exps[k])), reverse=True))
        for nu in _partitions(sum(mu), nvars, mu[0]):
            if nu > mu:
                continue
            k = _zero_one_count(rows, nu)
            if k:
                f[nu] = f.get(nu, 0) - c * k
                if f[nu] == 0:
                    del f[nu]
    return out


def _normalize(m: int, e_terms: Mapping[tuple, int]) -> SymmetricExpr:
    """Drop ``e_{m+1}`` (set to 1)."""
    out: dict = {}
    for k, c in e_terms.items():
        key = tuple(k[:m])
        out[key] = out.get(key, 0) + c
    return SymmetricExpr(m, out)


@cache
def plethysm_e_p2(i: int, m: int) -> SymmetricExpr:
    """``e_i`` of the squared eigenvalues, in the basis ``e_1 .. e_m`` with ``e_{m+1} = 1``."""
    if not 0 <= i <= m + 1:
        raise BadParameter("need 0 <= i <= m+1")
    if i == 0:
        return SymmetricExpr.const(m, 1)
    # e_i(x^2) = m_{(2^i)}(x)
    mu = (2,) * i
    return _normalize(m, monomial_to_elementary({mu: 1}, m + 1))


DENSE_CELL_LIMIT = 4_000_000


@cache
def _subset_product_elementary(r: int, m: int) -> tuple:
    """For ``j = 0..C(m+1, r)``: ``e_j`` of ``{prod_{i in S} y_i : |S| = r}`` in the e(y) basis."""
    N = m + 1
    cap = comb(m, r - 1)
    cells = (cap + 1) ** N
    if cells > DENSE_CELL_LIMIT:
        raise ResourceLimit(f"dense expansion needs {cells} cells")
    arr = np.zeros((cap + 1,) * N, dtype=object if comb(N, r) > 60 else np.int64)
    arr[(0,) * N] = 1
    for S in combinations(range(N), r):
        src = tuple(slice(0, cap) if i in S else slice(None) for i in range(N))
        dst = tuple(slice(1, cap + 1) if i in S else slice(None) for i in range(N))
        arr[dst] = arr[dst] + arr[src]
    out = []
    for j in range(comb(N, r) + 1):
        coeffs = {}
        for mu in _partitions(r * j, N, cap):
            c = int(arr[mu])
            if c:
                coeffs[mu] = c
        out.append(monomial_to_elementary(coeffs, N))
    return tuple(out)


def _substitute_plethysm(m: int, e_terms: Mapping[tuple, int]) -> SymmetricExpr:
    """Replace ``e_k(y)`` by ``e_k[p_2]`` (and ``e_{m+1}(y)`` by 1)."""
    gens = [plethysm_e_p2(k, m) for k in range(1, m + 1)]
    powers: dict = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = gens[k] ** e if e < 2 else power(k, e - 1) * gens[k]
        return powers[key]

    total = SymmetricExpr(m)
    for k, c in e_terms.items():
        term = SymmetricExpr.const(m, c)
        for idx in range(m):
            if k[idx]:
                term = term * power(idx, k[idx])
        total = total + term
    return total


@cache
def slice_recurrence_coeffs(r: int, m: int) -> tuple:
    """``e_j[e_r[p_2]]`` for ``j = 0 .. C(m+1, r)``.

    Up to the alternating sign these are the coefficients of the
    characteristic polynomial of the ``r``-th exterior power of the squared
    companion matrix; with ``e_i = H_i`` they give the step-``2n`` recurrence
    of slice ``r`` (see :func:`slice_recurrence_values`).
    """
    if not 1 <= r <= m:
        raise BadParameter("need 1 <= r <= m")
    out = []
    for e_terms in _subset_product_elementary(r, m):
        out.append(_substitute_plethysm(m, e_terms))
    return tuple(out)


def slice_recurrence_values(r: int, m: int, hvalues: Sequence) -> list:
    """Signed recurrence coefficients ``(-1)^j e_j[e_r[p_2]]`` at ``e_i = hvalues[i]``."""
    return [(-1) ** j * c.evaluate(hvalues) for j, c in enumerate(slice_recurrence_coeffs(r, m))]


# ---------------------------------------------------------------- Toeplitz minors

MINOR_CAP = 8


def toeplitz_entry(hs: HamiltonianSet, i: int, j: int) -> LaurentPoly:
    k = j - i
    if 0 <= k <= hs.m + 1:
        return hs.H[k]
    return LaurentPoly.const(0)


def toeplitz_minor(hs: HamiltonianSet, rows: Sequence[int], cols: Sequence[int], point: Mapping) -> Fraction:
    """Minor of the banded Toeplitz array ``[H_{j-i}]`` at a numeric point."""
    if len(rows) != len(cols):
        raise BadParameter("a minor needs as many rows as columns")
    if len(rows) > MINOR_CAP:
        raise ResourceLimit(f"minor larger than {MINOR_CAP}")
    values = [specialize(h, point) for h in hs.H]

    def entry(i, j):
        k = j - i
        return values[k] if 0 <= k <= hs.m + 1 else Fraction(0)

    mat = [[Fraction(entry(i, j)) for j in cols] for i in rows]
    return _det(mat)


def _det(mat: list) -> Fraction:
    a = [row[:] for row in mat]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


__all__ = [
    "HamiltonianSet",
    "SymmetricExpr",
    "gk_hamiltonians",
    "monomial_to_elementary",
    "plethysm_e_p2",
    "slice_recurrence_coeffs",
    "slice_recurrence_values",
    "toeplitz_minor",
    "top_row",
    "tropical_hamiltonians",
]
