"""Sparse multivariate Laurent polynomials with integer coefficients.

Variables are small nonnegative integers. A monomial is a tuple of
``(var, exponent)`` pairs sorted by variable with no zero exponents, so
monomials are hashable and cheap to multiply. Polynomials are immutable
after construction.
"""
from __future__ import annotations

import heapq
import json
import os
import re
from collections.abc import Iterable, Mapping
from fractions import Fraction

from .errors import NotDivisible, ResourceLimit, UnassignedVariable

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONOMIAL: Monomial = ()

DEFAULT_TERM_CEILING = 10**6


def term_ceiling() -> int:
    raw = os.environ.get("TSLAB_TERM_CEILING")
    if raw is None:
        return DEFAULT_TERM_CEILING
    value = int(raw)
    if value <= 0:
        raise ValueError("TSLAB_TERM_CEILING must be positive")
    return value


def _check_size(n: int) -> None:
    cap = term_ceiling()
    if n > cap:
        raise ResourceLimit(f"polynomial has {n} terms, above the term ceiling {cap} (TSLAB_TERM_CEILING)")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        s = out.get(v, 0) + e
        if s:
            out[v] = s
        else:
            del out[v]
    return tuple(sorted(out.items()))


def mono_inv(a: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in a)


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in a)


def make_monomial(exps: Mapping[int, int]) -> Monomial:
    return tuple(sorted((int(v), int(e)) for v, e in exps.items() if e))


class LaurentPoly:
    """Immutable sparse Laurent polynomial ``{monomial: coefficient}``."""

    __slots__ = ("_hash", "terms")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {m: c for m, c in (terms or {}).items() if c}
        _check_size(len(clean))
        self.terms: dict = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, terms: dict) -> LaurentPoly:
        obj = cls.__new__(cls)
        _check_size(len(terms))
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({(): int(c)} if c else {})

    @classmethod
    def var(cls, v: int, exp: int = 1) -> LaurentPoly:
        return cls._raw({((int(v), int(exp)),) if exp else (): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> LaurentPoly:
        return cls._raw({mono: coeff} if coeff else {})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def is_subtraction_free(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic
    @staticmethod
    def _coerce(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise NotDivisible("negative power with non-unit coefficient")
            return LaurentPoly._raw({mono_pow(m, k): 1 if c == 1 else (-1) ** k})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return exact_div(self, self._coerce(other))

    def mul_monomial(self, mono: Monomial, coeff: int = 1) -> LaurentPoly:
        return LaurentPoly._raw({mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    # substitution and evaluation
    def substitute(self, values: Mapping[int, LaurentPoly]) -> LaurentPoly:
        """Replace variables by Laurent polynomials.

        A variable occurring with a negative exponent must map to a monomial.
        """
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = values[v] ** e
            return cache[key]

        total: dict = {}
        for m, c in self.terms.items():
            term = LaurentPoly.const(c)
            rest = []
            for v, e in m:
                if v in values:
                    term = term * power(v, e)
                else:
                    rest.append((v, e))
            if rest:
                term = term.mul_monomial(tuple(rest))
            for mm, cc in term.terms.items():
                total[mm] = total.get(mm, 0) + cc
        return LaurentPoly._raw({m: c for m, c in total.items() if c})

    def evaluate(self, point: Mapping[int, Fraction | int]) -> Fraction:
        return specialize(self, point)

    # formatting
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=_dense_key_factory(self.variables()), reverse=True)

    def to_text(self) -> str:
        return format_poly(self)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def _dense_key_factory(variables: Iterable[int]):
    order = sorted(variables)

    def key(item):
        d = dict(item[0])
        return tuple(d.get(v, 0) for v in order)

    return key


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out: dict = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return LaurentPoly._raw({m: c for m, c in out.items() if c})


def poly_prod(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    result = ONE
    for p in polys:
        result = result * p
    return result


# ---------------------------------------------------------------- division

def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p`` or raise :class:`NotDivisible`.

    Both operands are shifted by monomials into the ordinary polynomial ring
    (with ``q`` free of monomial factors) and divided there under lex order.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if len(q.terms) == 1:
        (mq, cq), = q.terms.items()
        out = {}
        inv = mono_inv(mq)
        for m, c in p.terms.items():
            if c % cq:
                raise NotDivisible("coefficient not divisible by monomial coefficient")
            out[mono_mul(m, inv)] = c // cq
        return LaurentPoly._raw(out)

    variables = sorted(p.variables() | q.variables())
    index = {v: i for i, v in enumerate(variables)}
    nv = len(variables)

    def dense(poly):
        rows = []
        for m, c in poly.terms.items():
            vec = [0] * nv
            for v, e in m:
                vec[index[v]] = e
            rows.append((vec, c))
        lows = [min(r[0][i] for r in rows) for i in range(nv)]
        return {tuple(vec[i] - lows[i] for i in range(nv)): c for vec, c in rows}, lows

    pd, p_shift = dense(p)
    qd, q_shift = dense(q)
    q_items = sorted(qd.items(), reverse=True)
    lead_q, lead_c = q_items[0]
    q_tail = q_items[1:]

    rem = dict(pd)
    heap = [tuple(-x for x in k) for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    cap = term_ceiling()
    while rem:
        key = tuple(-x for x in heapq.heappop(heap))
        c = rem.get(key)
        if c is None:
            continue
        shift = tuple(a - b for a, b in zip(key, lead_q))
        if min(shift) < 0 or c % lead_c:
            raise NotDivisible("remainder term not divisible by the leading term of the divisor")
        qc = c // lead_c
        quot[shift] = qc
        if len(quot) > cap:
            raise ResourceLimit(f"quotient exceeds the term ceiling {cap} (TSLAB_TERM_CEILING)")
        del rem[key]
        for mq, cq in q_tail:
            mk = tuple(a + b for a, b in zip(shift, mq))
            new = rem.get(mk, 0) - qc * cq
            if new:
                if mk not in rem:
                    heapq.heappush(heap, tuple(-x for x in mk))
                rem[mk] = new
            else:
                rem.pop(mk, None)
    offset = [p_shift[i] - q_shift[i] for i in range(nv)]
    out = {}
    for vec, c in quot.items():
        out[tuple((variables[i], vec[i] + offset[i]) for i in range(nv) if vec[i] + offset[i])] = c
    return LaurentPoly._raw(out)


# ---------------------------------------------------------------- specialization

def specialize(p: LaurentPoly, point: Mapping[int, Fraction | int]) -> Fraction:
    """Evaluate at a point with nonzero rational coordinates."""
    total = Fraction(0)
    cache: dict = {}
    for m, c in p.terms.items():
        val = Fraction(c)
        for v, e in m:
            if v not in point:
                raise UnassignedVariable(f"variable v{v} has no value")
            key = (v, e)
            if key not in cache:
                x = Fraction(point[v])
                if x == 0:
                    raise ZeroDivisionError(f"variable v{v} specialized to zero")
                cache[key] = x**e
            val *= cache[key]
        total += val
    return total


def specialize_q(p: LaurentPoly, labels: Mapping[int, int]) -> dict:
    """Substitute ``x_v = q**labels[v]``; return ``{degree: coefficient}``."""
    out: dict = {}
    for m, c in p.terms.items():
        d = 0
        for v, e in m:
            if v not in labels:
                raise UnassignedVariable(f"variable v{v} has no label")
            d += e * labels[v]
        out[d] = out.get(d, 0) + c
    return {d: c for d, c in out.items() if c}


def maxdeg_q(p: LaurentPoly, labels: Mapping[int, int]):
    """Top degree in ``q`` after ``x_v = q**labels[v]``; labels may be rational."""
    spec = specialize_q(p, labels)
    if not spec:
        raise ValueError("maxdeg of the zero polynomial")
    return max(spec)


# ---------------------------------------------------------------- text / JSON

def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        factors = [f"v{v}" if e == 1 else f"v{v}^{e}" for v, e in m]
        body = " * ".join([str(abs(c))] + factors)
        if i == 0:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)((?:\s*\*\s*v\d+(?:\^-?\d+)?)*)\s*")
_FACTOR_RE = re.compile(r"v(\d+)(?:\^(-?\d+))?")


def parse_poly(text: str) -> LaurentPoly:
    text = text.strip()
    if text == "0":
        return ZERO
    pos = 0
    terms: dict = {}
    first = True
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        sign, coeff, factors = match.groups()
        if sign is None and not first:
            raise ValueError("missing sign between terms")
        c = int(coeff) * (-1 if sign == "-" else 1)
        exps: dict = {}
        for v, e in _FACTOR_RE.findall(factors):
            exps[int(v)] = exps.get(int(v), 0) + (int(e) if e else 1)
        m = make_monomial(exps)
        terms[m] = terms.get(m, 0) + c
        pos = match.end()
        first = False
    return LaurentPoly(terms)


def poly_to_json(p: LaurentPoly) -> list:
    return [[c, [[v, e] for v, e in m]] for m, c in p.sorted_terms()]


def poly_from_json(data: list) -> LaurentPoly:
    terms: dict = {}
    for c, factors in data:
        m = make_monomial({v: e for v, e in factors})
        terms[m] = terms.get(m, 0) + int(c)
    return LaurentPoly(terms)


def dumps_poly(p: LaurentPoly) -> str:
    return json.dumps(poly_to_json(p), separators=(",", ":"))
