"""Exact evolution of bipartite T-systems and the checks built on it.

``T_v(t)`` exists only when ``t + colors[v]`` is even. A :class:`TSystemState`
at time ``t`` holds one value per vertex: ``T_v(t)`` for vertices of matching
parity and ``T_v(t-1)`` for the rest. Those two layers are exactly what a
step in either direction needs.
"""
from __future__ import annotations

import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .bigraph import Bigraph
from .errors import (
    ConservationViolated,
    NoRecurrenceFound,
    NotDivisible,
    NotLaurent,
    RecurrenceFailed,
)
from .laurent import ONE, LaurentPoly, exact_div, poly_prod, specialize

# ---------------------------------------------------------------- state and stepping

@dataclass(frozen=True)
class TSystemState:
    graph: Bigraph
    t: int
    values: tuple

    def value(self, v: int, t: int):
        """``T_v(t)`` if it is one of the two stored layers."""
        here = self.t if (self.t + self.graph.colors[v]) % 2 == 0 else self.t - 1
        if t != here:
            raise KeyError(f"T_{v}({t}) is not stored at time {self.t}")
        return self.values[v]

    def layer(self) -> dict:
        """``{(v, time): value}`` for both stored layers."""
        out = {}
        for v, val in enumerate(self.values):
            time = self.t if (self.t + self.graph.colors[v]) % 2 == 0 else self.t - 1
            out[(v, time)] = val
        return out


def _divide(a, b):
    if isinstance(a, LaurentPoly) or isinstance(b, LaurentPoly):
        return exact_div(LaurentPoly._coerce(a), LaurentPoly._coerce(b))
    return Fraction(a) / Fraction(b)


def _product(values):
    out = 1
    for x in values:
        out = out * x
    return out


def exchange_numerator(g: Bigraph, v: int, vals: Sequence):
    """Red product plus blue product of neighbor values (multiplicity-aware)."""
    red = _product(vals[u] for u in g.red_neighbors(v))
    blue = _product(vals[u] for u in g.blue_neighbors(v))
    return red + blue


def init(g: Bigraph, values: Sequence | None = None) -> TSystemState:
    """State at time 1: ``T_v(colors[v]) = x_v``; symbolic variables by default."""
    if values is None:
        values = [LaurentPoly.var(v) for v in g.vertices()]
    if len(values) != g.n:
        raise ValueError("one initial value per vertex is required")
    return TSystemState(g, 1, tuple(values))


def step_forward(state: TSystemState) -> TSystemState:
    g, t = state.graph, state.t
    vals = list(state.values)
    for v in g.vertices():
        if (t + 1 + g.colors[v]) % 2 == 0:
            vals[v] = _divide(exchange_numerator(g, v, state.values), state.values[v])
    return TSystemState(g, t + 1, tuple(vals))


def step_backward(state: TSystemState) -> TSystemState:
    g, t = state.graph, state.t
    vals = list(state.values)
    for v in g.vertices():
        if (t + g.colors[v]) % 2 == 0:
            vals[v] = _divide(exchange_numerator(g, v, state.values), state.values[v])
    return TSystemState(g, t - 1, tuple(vals))


def state_at(g: Bigraph, t: int, values: Sequence | None = None) -> TSystemState:
    state = init(g, values)
    while state.t < t:
        state = step_forward(state)
    while state.t > t:
        state = step_backward(state)
    return state


def evolve(g: Bigraph, t_from: int, t_to: int, values: Sequence | None = None) -> dict:
    """All defined ``T_v(t)`` with ``t_from <= t <= t_to`` as ``{(v, t): value}``."""
    if t_from > t_to:
        raise ValueError("empty time window")
    out: dict = {}
    state = init(g, values)
    fwd = state
    out.update(fwd.layer())
    while fwd.t < t_to:
        fwd = step_forward(fwd)
        out.update(fwd.layer())
    back = state
    while back.t - 1 > t_from:
        back = step_backward(back)
        out.update(back.layer())
    return {k: val for k, val in out.items() if t_from <= k[1] <= t_to}


# ---------------------------------------------------------------- numeric traces

def random_point(variables, rng: random.Random, low: int = 1, high: int = 9) -> dict:
    """Positive rationals ``p/q`` with ``low <= p, q <= high``."""
    return {v: Fraction(rng.randint(low, high), rng.randint(low, high)) for v in variables}


@dataclass
class NumericTrace:
    graph: Bigraph
    point: dict
    values: dict = field(default_factory=dict)

    def sequence(self, v: int, start: int, step: int, count: int) -> list:
        return [self.values[(v, start + k * step)] for k in range(count)]


def evolve_numeric(g: Bigraph, point: Mapping[int, Fraction | int], t_from: int, t_to: int) -> NumericTrace:
    values = [Fraction(point[v]) for v in g.vertices()]
    if any(x == 0 for x in values):
        raise ZeroDivisionError("initial values must be nonzero")
    return NumericTrace(g, dict(point), evolve(g, t_from, t_to, values))


# ---------------------------------------------------------------- minimal recurrences

@dataclass(frozen=True)
class RecurrenceSpec:
    """``sum_j coeffs[j] * x[k + (N - j) * step] = 0`` with ``coeffs[0] = 1``."""

    step: int
    coeffs: tuple

    @property
    def terms(self) -> int:
        return len(self.coeffs)

    def residues(self, seq: Sequence) -> list:
        N = len(self.coeffs) - 1
        return [sum(c * seq[k + N - j] for j, c in enumerate(self.coeffs)) for k in range(len(seq) - N)]


def berlekamp_massey(seq: Sequence[Fraction]) -> list:
    """Shortest connection polynomial ``[1, c_1, ..., c_L]`` over the rationals."""
    s = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for i in range(len(s)):
        d = s[i] + sum(C[j] * s[i - j] for j in range(1, L + 1))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        C = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for j, bj in enumerate(B):
            C[j + m] -= coef * bj
        if 2 * L <= i:
            L, B, b, m = i + 1 - L, T, d, 1
        else:
            m += 1
    C = (C + [Fraction(0)] * (L + 1))[: L + 1]
    return C


def find_minimal_recurrence(seq: Sequence, step: int = 1, margin: int = 4) -> RecurrenceSpec:
    """Minimal homogeneous recurrence for a sampled sequence (samples ``step`` apart).

    Trailing zero coefficients are stripped; the fit must leave ``margin``
    held-out equations beyond the ``2L`` needed to determine it.
    """
    s = [Fraction(x) for x in seq]
    if not s:
        raise NoRecurrenceFound("empty sequence")
    coeffs = berlekamp_massey(s)
    L = len(coeffs) - 1
    if len(s) < 2 * L + margin:
        raise NoRecurrenceFound(f"sequence of length {len(s)} too short to certify a recurrence of order {L}")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    spec = RecurrenceSpec(step, tuple(coeffs))
    if any(spec.residues(s)):
        raise NoRecurrenceFound("fitted recurrence does not hold on the whole window")
    return spec


# ---------------------------------------------------------------- A_m (x) affA_{2n-1}

def cylinder_graph(m: int, n: int) -> Bigraph:
    from .families import build_tensor, diagram

    return build_tensor(diagram("affA", 2 * n - 1), diagram("A", m))


def opposite_vertex(n: int, v: int) -> int:
    row, col = divmod(v, 2 * n)
    return row * 2 * n + (col + n) % (2 * n)


def slice_vertices(m: int, n: int, row: int) -> list:
    return [row * 2 * n + c for c in range(2 * n)]


def _defined(g: Bigraph, v: int, t: int) -> bool:
    return (t + g.colors[v]) % 2 == 0


def boundary_recurrence_residue(m: int, n: int, which: str, v: int, t: int, hs=None, values: dict | None = None,
                                point: Mapping | None = None):
    """Alternating sum of the boundary-slice recurrence at ``(v, t)``.

    Symbolic unless ``point`` is given, in which case everything is
    specialized first.
    """
    from .hamiltonians import gk_hamiltonians, top_row

    g = cylinder_graph(m, n)
    hs = gk_hamiltonians(m, n) if hs is None else hs
    top = top_row(m)
    row = v // (2 * n)
    if which == "top" and row != top or which == "bottom" and row != m - 1 - top:
        raise ValueError(f"vertex {v} is not on the {which} slice")
    H = list(hs.H) if which == "top" else list(reversed(hs.H))
    times = [t + (m + 1 - j) * n for j in range(m + 2)]
    verts = [v if j % 2 == 0 else opposite_vertex(n, v) for j in range(m + 2)]
    for w, s in zip(verts, times):
        if not _defined(g, w, s):
            raise ValueError(f"T_{w}({s}) is not defined; pick t of the other parity")
    if values is None:
        init_vals = None if point is None else [Fraction(point[u]) for u in g.vertices()]
        values = evolve(g, min(times), max(times), init_vals)
    total = 0
    for j, (w, s) in enumerate(zip(verts, times)):
        coef = H[j] if point is None else specialize(H[j], point)
        total = total + (-1) ** j * coef * values[(w, s)]
    return total


@dataclass(frozen=True)
class Certificate:
    statement: str
    checked: int
    details: tuple = ()


def verify_boundary_recurrence(m: int, n: int, which: str, t_window: Sequence[int],
                               point: Mapping | None = None) -> Certificate:
    from .hamiltonians import gk_hamiltonians, top_row

    g = cylinder_graph(m, n)
    hs = gk_hamiltonians(m, n)
    row = top_row(m) if which == "top" else m - 1 - top_row(m)
    ts = list(t_window)
    span = (min(ts), max(ts) + (m + 1) * n)
    init_vals = None if point is None else [Fraction(point[u]) for u in g.vertices()]
    values = evolve(g, span[0], span[1], init_vals)
    checked = 0
    for v in slice_vertices(m, n, row):
        for t in ts:
            if not _defined(g, v, t + (m + 1) * n):
                continue
            res = boundary_recurrence_residue(m, n, which, v, t, hs, values, point)
            if res != 0:
                raise RecurrenceFailed(f"boundary recurrence fails at v={v}, t={t}", "boundary recurrence", res)
            checked += 1
    return Certificate(f"boundary recurrence ({which}) for m={m}, n={n}", checked)


def evaluate_on(hpoly: LaurentPoly, values: Sequence):
    """Substitute vertex values (polynomials or numbers) into a Hamiltonian.

    For polynomial values the terms are put over the common denominator
    ``prod values[v]^k`` before one exact division.
    """
    if all(not isinstance(x, LaurentPoly) for x in values):
        return specialize(hpoly, {v: x for v, x in enumerate(values)})
    worst: dict = {}
    for mono in hpoly.terms:
        for v, e in mono:
            if e < 0:
                worst[v] = max(worst.get(v, 0), -e)
    numerator = LaurentPoly.const(0)
    for mono, c in hpoly.terms.items():
        exps = dict(mono)
        term = LaurentPoly.const(c)
        for v in set(exps) | set(worst):
            k = exps.get(v, 0) + worst.get(v, 0)
            if k:
                term = term * values[v] ** k
        numerator = numerator + term
    denominator = poly_prod(values[v] ** k for v, k in worst.items())
    return exact_div(numerator, denominator) if worst else numerator


def check_conserved(hs, g: Bigraph, values: Sequence, t_from: int, t_to: int) -> Certificate:
    """Every state from ``t_from`` to ``t_to`` gives the same Hamiltonian values.

    A half step (mutating one color class) reverses the list, so the state
    at time ``t`` must give ``H_r`` when ``t - t_from`` is even and
    ``H_{m+1-r}`` otherwise; a full round returns the original values.
    ``values`` are the initial vertex values (numbers for a numeric check,
    polynomials for a symbolic one).
    """
    state = state_at(g, t_from, values)
    reference = [evaluate_on(h, state.values) for h in hs.H]
    checked = 0
    while state.t < t_to:
        state = step_forward(state)
        expected = reference if (state.t - t_from) % 2 == 0 else reference[::-1]
        for r, h in enumerate(hs.H):
            now = evaluate_on(h, state.values)
            if now != expected[r]:
                raise ConservationViolated(f"H_{r} changes at t={state.t}", "conserved quantities",
                                           (expected[r], now))
            checked += 1
    return Certificate("Hamiltonians are conserved", checked)


def mutate_substitution(p: LaurentPoly, v: int, numerator: LaurentPoly, fresh: int) -> LaurentPoly:
    """Replace ``x_v`` by ``numerator / x_fresh`` and certify the result is Laurent."""
    by_exp: dict = {}
    for mono, c in p.terms.items():
        e = dict(mono).get(v, 0)
        rest = tuple((u, k) for u, k in mono if u != v)
        by_exp.setdefault(e, {})
        by_exp[e][rest] = by_exp[e].get(rest, 0) + c
    low = min(by_exp)
    shift = -low if low < 0 else 0
    acc = LaurentPoly.const(0)
    y = LaurentPoly.var(fresh)
    for e, terms in by_exp.items():
        coeff = LaurentPoly(terms)
        acc = acc + coeff * numerator ** (e + shift) * (y ** (-e) if e else ONE)
    if shift == 0:
        return acc
    try:
        return exact_div(acc, numerator ** shift)
    except NotDivisible as exc:
        raise NotLaurent(f"not Laurent after mutating at {v}", "one-step mutation", acc) from exc


def check_one_step_laurent(hs, g: Bigraph) -> Certificate:
    fresh_base = g.n
    checked = 0
    for v in g.vertices():
        red = poly_prod(LaurentPoly.var(u) for u in g.red_neighbors(v))
        blue = poly_prod(LaurentPoly.var(u) for u in g.blue_neighbors(v))
        for h in hs.H:
            mutate_substitution(h, v, red + blue, fresh_base + v)
            checked += 1
    return Certificate("Hamiltonians stay Laurent after one mutation", checked)


def trace_is_integral(trace: NumericTrace) -> bool:
    return all(x.denominator == 1 and x > 0 for x in trace.values.values())


def sequence_period(seq: Sequence) -> int | None:
    for p in range(1, len(seq) // 2 + 1):
        if all(seq[i] == seq[i + p] for i in range(len(seq) - p)):
            return p
    return None


def specialize_map(values: dict, point: Mapping) -> dict:
    return {k: specialize(val, point) for k, val in values.items()}
