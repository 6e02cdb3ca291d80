"""Max-plus T-system dynamics and soliton speeds of affine slices.

States follow the same two-layer convention as :mod:`tslab.tsystem`: at
time ``t`` a vertex holds ``T_v(t)`` when ``t + colors[v]`` is even and
``T_v(t-1)`` otherwise. White means color 0.
"""
from __future__ import annotations

import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .bigraph import RED, Bigraph, DynkinType, component_infos, two_coloring
from .errors import (
    BadParameter,
    ConservationViolated,
    ConsistencyViolated,
    IdentityViolated,
    NotAffinite,
    WindowTooSmall,
)
from .laurent import maxdeg_q

WHITE = 0


# ---------------------------------------------------------------- stepping

@dataclass(frozen=True)
class TropState:
    graph: Bigraph
    t: int
    values: tuple

    def time_of(self, v: int) -> int:
        return self.t if (self.t + self.graph.colors[v]) % 2 == 0 else self.t - 1

    def layer(self) -> dict:
        return {(v, self.time_of(v)): x for v, x in enumerate(self.values)}


def trop_init(g: Bigraph, labels: Mapping[int, int] | Sequence[int]) -> TropState:
    """State at time 1 with ``T_v(colors[v]) = labels[v]``."""
    return TropState(g, 1, tuple(int(labels[v]) for v in g.vertices()))


def trop_state(g: Bigraph, t: int, values: Sequence[int]) -> TropState:
    return TropState(g, t, tuple(int(x) for x in values))


def _sums(g: Bigraph, v: int, vals: Sequence[int]) -> tuple:
    return sum(vals[u] for u in g.red_neighbors(v)), sum(vals[u] for u in g.blue_neighbors(v))


def trop_step(state: TropState, direction: int = 1) -> TropState:
    """One max-plus step forward (``direction=1``) or backward (``-1``)."""
    g, t = state.graph, state.t
    vals = list(state.values)
    target = t + 1 if direction > 0 else t
    for v in g.vertices():
        if (target + g.colors[v]) % 2 == 0:
            red, blue = _sums(g, v, state.values)
            vals[v] = max(red, blue) - state.values[v]
    return TropState(g, t + (1 if direction > 0 else -1), tuple(vals))


def violations(state: TropState, direction: int = 1) -> list:
    """Vertices updated by the next step whose blue sum beats the red sum."""
    g = state.graph
    target = state.t + 1 if direction > 0 else state.t
    out = []
    for v in g.vertices():
        if (target + g.colors[v]) % 2 == 0:
            red, blue = _sums(g, v, state.values)
            if blue > red:
                out.append(v)
    return out


def trop_trajectory(start: TropState, t_from: int, t_to: int) -> list:
    """States at every time in ``[t_from, t_to]`` (ordered by time)."""
    state = start
    while state.t > t_from:
        state = trop_step(state, -1)
    while state.t < t_from:
        state = trop_step(state, 1)
    out = [state]
    while state.t < t_to:
        state = trop_step(state, 1)
        out.append(state)
    return out


def trop_values(start: TropState, t_from: int, t_to: int) -> dict:
    """``{(v, t): T_v(t)}`` for defined pairs with ``t_from <= t <= t_to``."""
    out: dict = {}
    for s in trop_trajectory(start, t_from, t_to + 1):
        out.update(s.layer())
    return {k: x for k, x in out.items() if t_from <= k[1] <= t_to}


# ---------------------------------------------------------------- affine slices

@dataclass(frozen=True)
class Slice:
    vertices: tuple
    type: DynkinType
    eig: dict


def affine_slices(g: Bigraph) -> list:
    """Red components with their types and positive integer eigenvectors."""
    out = []
    for comp, info in component_infos(g, RED):
        if not info.type.affine:
            raise NotAffinite(f"red component {comp} is of type {info.type}")
        out.append(Slice(tuple(comp), info.type, dict(info.eigvec)))
    return sorted(out, key=lambda s: min(s.vertices))


def slice_speed(state: TropState, sl: Slice) -> int:
    """Speed of a slice from the two layers of ``state``.

    With white values ``f_W`` and black values ``f_B`` this is
    ``<nu_B, f_B> - <nu_W, f_W>`` when the black layer is the newer one
    (odd ``t``), and its negative when the white layer is newer.
    """
    colors = state.graph.colors
    white = sum(sl.eig[v] * state.values[v] for v in sl.vertices if colors[v] == WHITE)
    black = sum(sl.eig[v] * state.values[v] for v in sl.vertices if colors[v] != WHITE)
    return black - white if state.t % 2 else white - black


def slice_sum(state: TropState, sl: Slice) -> int:
    return sum(sl.eig[v] * state.values[v] for v in sl.vertices)


def speed_row(state: TropState, slices: Sequence[Slice]) -> list:
    return [slice_speed(state, s) for s in slices]


# ---------------------------------------------------------------- affine Coxeter action

def affine_coxeter_data(t: DynkinType) -> tuple:
    """``(h_a, C)`` for a bipartite affine diagram."""
    f, r = t.family, t.rank
    if f == "affA":
        if r % 2 == 0:
            raise BadParameter(f"{t} is not bipartite")
        return (r + 1) // 2, 2
    if f == "affD":
        if r < 4:
            raise BadParameter(f"{t} needs rank >= 4")
        if r % 2 == 0:
            return r - 2, 1
        return 2 * (r - 2), 2
    if f == "affE":
        return {6: 6, 7: 12, 8: 30}[r], 1
    raise BadParameter(f"{t} is not affine")


def mutate_white(f: dict, adj: dict, colors: Mapping[int, int]) -> dict:
    out = dict(f)
    for v, nbrs in adj.items():
        if colors[v] == WHITE:
            out[v] = sum(f[u] for u in nbrs) - f[v]
    return out


def mutate_black(f: dict, adj: dict, colors: Mapping[int, int]) -> dict:
    out = dict(f)
    for v, nbrs in adj.items():
        if colors[v] != WHITE:
            out[v] = sum(f[u] for u in nbrs) - f[v]
    return out


def coxeter_transform(f: dict, adj: dict, colors: Mapping[int, int]) -> dict:
    """``mu_B mu_W f``."""
    return mutate_black(mutate_white(f, adj, colors), adj, colors)


def white_speed(f: Mapping[int, int], eig: Mapping[int, int], colors: Mapping[int, int]) -> int:
    """``<nu_B, f_B> - <nu_W, f_W>``."""
    return sum((eig[v] if colors[v] != WHITE else -eig[v]) * f[v] for v in f)


def diagram_data(name: str, colors: Mapping[int, int] | None = None) -> tuple:
    """Adjacency lists, colors, eigenvector and type of a named affine diagram."""
    from .bigraph import recognize_ade
    from .families import parse_diagram

    d = parse_diagram(name)
    adj: dict = {v: [] for v in range(d.n)}
    for u, v in d.edges:
        adj[u].append(v)
        adj[v].append(u)
    if colors is None:
        cols = two_coloring(d.n, d.edges)
        colors = {v: cols[v] for v in range(d.n)}
    info = recognize_ade(range(d.n), d.edges)
    return adj, dict(colors), dict(info.eigvec), info.type


@dataclass(frozen=True)
class IdentityCertificate:
    type: str
    h_a: int
    C: int
    checked: int


def affine_coxeter_check(name: str, vectors: Sequence[Mapping[int, int]], colors: Mapping[int, int] | None = None):
    """Check ``Phi^{h_a} f = f + C * S_W(f) * nu`` on each vector."""
    adj, colors, eig, t = diagram_data(name, colors)
    h, C = affine_coxeter_data(t)
    if C * sum(x * x for x in eig.values()) != 4 * h:
        raise IdentityViolated(f"C != 4 h_a / <nu, nu> for {t}", "affine Coxeter numbers")
    for f in vectors:
        f = {v: int(f[v]) for v in adj}
        g = f
        for _ in range(h):
            g = coxeter_transform(g, adj, colors)
        s = white_speed(f, eig, colors)
        want = {v: f[v] + C * s * eig[v] for v in f}
        if g != want:
            raise IdentityViolated(f"Phi^{h} f != f + {C} S_W(f) nu for {t}", "almost periodicity",
                                   {v: g[v] - want[v] for v in f})
    return IdentityCertificate(str(t), h, C, len(vectors))


def affine_types(max_rank: int = 9) -> list:
    names = [f"affA{r}" for r in range(1, max_rank + 1, 2)]
    names += [f"affD{r}" for r in range(4, max_rank + 1)]
    names += [f"affE{r}" for r in (6, 7, 8) if r <= max_rank]
    return names


# ---------------------------------------------------------------- stabilization and speeds

@dataclass(frozen=True)
class SpeedVector:
    plus: tuple
    minus: tuple
    t_plus: int
    t_minus: int


def _confirmation_span(slices: Sequence[Slice]) -> int:
    return 2 * max(affine_coxeter_data(s.type)[0] for s in slices)


def detect_stabilization(start: TropState, window: int = 400) -> tuple:
    """Last violation times ``(t0_minus, t0_plus)`` seen within ``window`` steps each way.

    The quiet stretch after the last violation must cover at least
    ``2 * h_a`` steps, otherwise :class:`WindowTooSmall` is raised.
    """
    slices = affine_slices(start.graph)
    span = _confirmation_span(slices)
    result = []
    for direction in (-1, 1):
        state, last, quiet = start, start.t, 0
        for _ in range(window):
            if violations(state, direction):
                last, quiet = state.t + (1 if direction > 0 else -1), 0
            else:
                quiet += 1
            state = trop_step(state, direction)
        if quiet < span:
            raise WindowTooSmall(f"no quiet stretch of {span} steps within {window} steps")
        result.append(last)
    return result[0], result[1]


def asymptotic_speeds(start: TropState, window: int = 400) -> SpeedVector:
    """Speeds after stabilization: ``S^+`` for large ``t``, ``S^-`` for very negative ``t``."""
    slices = affine_slices(start.graph)
    t_minus, t_plus = detect_stabilization(start, window)
    span = _confirmation_span(slices)
    late = trop_trajectory(start, t_plus + 1, t_plus + 1 + span)
    early = trop_trajectory(start, t_minus - 1 - span, t_minus - 1)
    plus = speed_row(late[0], slices)
    minus = [-x for x in speed_row(early[-1], slices)]
    for s in late:
        if speed_row(s, slices) != plus:
            raise ConsistencyViolated("speed changed after stabilization", "soliton resolution")
    for s in early:
        if [-x for x in speed_row(s, slices)] != minus:
            raise ConsistencyViolated("speed changed before the first violation", "soliton resolution")
    _check_linear_growth(start, slices, plus, minus, t_minus, t_plus)
    return SpeedVector(tuple(plus), tuple(minus), t_plus, t_minus)


def _check_linear_growth(start, slices, plus, minus, t_minus, t_plus) -> None:
    """``T_v(t + 2h_a) = T_v(t) + C S^+ nu(v)`` late and the mirror statement early."""
    span = _confirmation_span(slices)
    vals = trop_values(start, t_minus - 2 * span - 2, t_plus + 2 * span + 2)
    for k, sl in enumerate(slices):
        h, C = affine_coxeter_data(sl.type)
        for v in sl.vertices:
            for (w, t), x in vals.items():
                if w != v:
                    continue
                if t >= t_plus and (v, t + 2 * h) in vals:
                    if vals[(v, t + 2 * h)] != x + C * plus[k] * sl.eig[v]:
                        raise ConsistencyViolated(f"late growth fails at v={v}, t={t}", "soliton resolution")
                if t <= t_minus and (v, t - 2 * h) in vals:
                    if vals[(v, t - 2 * h)] != x + C * minus[k] * sl.eig[v]:
                        raise ConsistencyViolated(f"early growth fails at v={v}, t={t}", "soliton resolution")


# ---------------------------------------------------------------- checks for A_m (x) affA_{2n-1}

def _cylinder(m: int, n: int) -> Bigraph:
    from .tsystem import cylinder_graph

    return cylinder_graph(m, n)


def slices_by_row(m: int, n: int) -> list:
    """Affine slices of the cylinder graph ordered by their ``A_m`` index."""
    return affine_slices(_cylinder(m, n))


def _hamiltonian_order(m: int) -> list:
    """Row index whose speed pairs with ``H_r`` for ``r = 1..m``."""
    from .hamiltonians import top_row

    top = top_row(m)
    return [top + k if top == 0 else top - k for k in range(m)]


@dataclass(frozen=True)
class Certificate:
    statement: str
    checked: int
    details: tuple = ()


def check_speed_conservation(m: int, n: int, labels: Mapping[int, int], window: int = 400) -> Certificate:
    """``S_r^+ = S_{m+1-r}^-`` and ``S_r^+ = H_r^oplus`` on the initial labels."""
    from .hamiltonians import tropical_hamiltonians

    g = _cylinder(m, n)
    start = trop_init(g, labels)
    sp = asymptotic_speeds(start, window)
    plus, minus = list(sp.plus), list(sp.minus)
    if plus != minus[::-1]:
        raise ConservationViolated(f"incoming {minus} vs outgoing {plus}", "speed conservation", (plus, minus))
    hplus = tropical_hamiltonians(m, n, {v: start.values[v] for v in g.vertices()})
    rows = _hamiltonian_order(m)
    for r in range(1, m + 1):
        if sp.plus[rows[r - 1]] != hplus[r]:
            raise ConservationViolated(f"S^+ of slice {r} is {sp.plus[rows[r - 1]]}, H_{r} tropical is {hplus[r]}",
                                       "speeds equal tropical Hamiltonians", (sp.plus, hplus))
    return Certificate("speed conservation", m, (tuple(plus), tuple(minus)))


def hamiltonians_at(start: TropState, t: int, m: int, n: int) -> list:
    """Tropical Hamiltonians of the cluster made of the layers ``t`` and ``t + 1``."""
    from .hamiltonians import tropical_hamiltonians

    state = trop_trajectory(start, t + 1, t + 1)[0]
    return tropical_hamiltonians(m, n, dict(enumerate(state.values)))


def check_tropical_conservation(m: int, n: int, labels: Mapping[int, int], steps: int = 100) -> Certificate:
    """Tropical Hamiltonians along ``steps`` forward steps.

    As in the geometric case a half step reverses the list ``H_0 .. H_{m+1}``.
    """
    from .hamiltonians import tropical_hamiltonians

    g = _cylinder(m, n)
    state = trop_init(g, labels)
    ref = tropical_hamiltonians(m, n, dict(enumerate(state.values)))
    checked = 0
    for k in range(1, steps + 1):
        state = trop_step(state, 1)
        now = tropical_hamiltonians(m, n, dict(enumerate(state.values)))
        want = ref if k % 2 == 0 else ref[::-1]
        if now != want:
            raise ConservationViolated(f"tropical Hamiltonians change at t={state.t}", "tropical conservation",
                                       (want, now))
        checked += 1
    return Certificate("tropical Hamiltonians are conserved", checked)


def check_maxdeg_consistency(g: Bigraph, labels: Mapping[int, int], t_from: int, t_to: int) -> Certificate:
    """Tropical values equal top ``q``-degrees of the symbolic values."""
    from .tsystem import evolve

    symbolic = evolve(g, t_from, t_to)
    trop = trop_values(trop_init(g, labels), t_from, t_to)
    lab = {v: int(labels[v]) for v in g.vertices()}
    for key, poly in symbolic.items():
        if trop[key] != maxdeg_q(poly, lab):
            raise ConsistencyViolated(f"T_{key[0]}({key[1]}) disagrees", "tropical values are top degrees",
                                      (trop[key], maxdeg_q(poly, lab)))
    return Certificate("tropical values are top degrees", len(symbolic))


def check_conjectural_speed_symmetry(g: Bigraph, labels: Mapping[int, int], involution: Mapping[int, int] | None = None,
                                     window: int = 400) -> dict:
    """Compare outgoing speeds with incoming speeds permuted by ``involution``.

    ``involution`` maps slice positions to slice positions (identity by
    default). Returns a report and never raises on a mismatch.
    """
    report = {"agrees": None, "plus": None, "minus": None, "error": None}
    try:
        sp = asymptotic_speeds(trop_init(g, labels), window)
    except (WindowTooSmall, ConsistencyViolated, NotAffinite) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report
    k = len(sp.plus)
    eta = involution or {i: i for i in range(k)}
    report["plus"], report["minus"] = list(sp.plus), list(sp.minus)
    report["agrees"] = all(sp.plus[i] == sp.minus[eta[i]] for i in range(k))
    return report


def random_labels(g: Bigraph, rng: random.Random, low: int = -9, high: int = 9) -> dict:
    return {v: rng.randint(low, high) for v in g.vertices()}


# ---------------------------------------------------------------- the A_3 (x) affA_1 example

# Letters a..f of the worked example in vertex ids of the cylinder graph (m=3, n=1).
EXAMPLE_LETTERS = {"a": 0, "b": 2, "c": 4, "d": 1, "e": 3, "f": 5}

# (t, a b c / d e f, speed row) -- the golden trajectory starting at t = -5
EVOLUTION_TABLE = (
    (-5, (6, 6, 7, 3, 10, 5), (-3, -4, -2)),
    (-4, (0, 6, 3, 3, 2, 5), (-3, -4, -2)),
    (-3, (0, -2, 3, -1, 2, 1), (-1, -4, -2)),
    (-2, (-2, -2, -1, -1, -2, 1), (-1, 0, -2)),
    (-1, (-2, -1, -1, -1, -2, -3), (1, 1, -2)),
    (0, (1, -1, 0, -1, 0, -3), (2, 1, 3)),
    (1, (1, 2, 0, 3, 0, 3), (2, 2, 3)),
    (2, (5, 2, 6, 3, 6, 3), (2, 4, 3)),
    (3, (5, 10, 6, 7, 6, 9), (2, 4, 3)),
    (4, (9, 10, 12, 7, 14, 9), (2, 4, 3)),
)


def letters_to_values(row: Sequence[int]) -> list:
    vals = [0] * 6
    for letter, x in zip("abcdef", row):
        vals[EXAMPLE_LETTERS[letter]] = x
    return vals


def values_to_letters(values: Sequence[int]) -> tuple:
    return tuple(values[EXAMPLE_LETTERS[ch]] for ch in "abcdef")


def evolution_example() -> list:
    """Recompute the golden table: ``[(t, letters a..f, speeds of the three slices)]``."""
    g = _cylinder(3, 1)
    t0, row0, _ = EVOLUTION_TABLE[0]
    start = trop_state(g, t0, letters_to_values(row0))
    slices = slices_by_row(3, 1)
    out = []
    for s in trop_trajectory(start, t0, EVOLUTION_TABLE[-1][0]):
        out.append((s.t, values_to_letters(s.values), tuple(speed_row(s, slices))))
    return out
