"""Independent reference computations used to freeze derived values."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import prod


def _row_fillings(width: int, filled: frozenset, allow_up: bool):
    """Ways to finish one cell row of a periodic strip; yields the cells sent up as verticals."""
    free = [j for j in range(width) if j not in filled]
    starts = [j for j in range(width) if j not in filled and (j + 1) % width not in filled]
    for k in range(len(free) // 2 + 1):
        for pick in combinations(starts, k):
            cover = [c for j in pick for c in (j, (j + 1) % width)]
            if len(set(cover)) != len(cover):
                continue
            rest = frozenset(free) - set(cover)
            if rest and not allow_up:
                continue
            yield rest


def cylinder_tiling_count(m: int, n: int) -> int:
    """Domino tilings of ``m + 1`` periodic rows of width ``2n``, by transfer matrix.

    Horizontal dominoes are identified by their left cell, so on width 2
    the two ways of joining the cells count separately.
    """
    width = 2 * n
    states = {frozenset(): 1}
    for row in range(m + 1):
        last = row == m
        nxt: dict = {}
        for filled, count in states.items():
            for up in _row_fillings(width, filled, not last):
                nxt[up] = nxt.get(up, 0) + count
        states = nxt
    return states.get(frozenset(), 0)


def scalar_tsystem(colors, red, blue, values, t_from: int, t_to: int) -> dict:
    """``T_v(t+1) T_v(t-1) = prod red + prod blue`` run directly on numbers.

    ``values[v]`` is ``T_v(colors[v])``; returns ``{(v, t): value}``.
    """
    n = len(colors)
    nbr_red = {v: [u for a, b in red for u, w in ((a, b), (b, a)) if w == v] for v in range(n)}
    nbr_blue = {v: [u for a, b in blue for u, w in ((a, b), (b, a)) if w == v] for v in range(n)}
    # T_v(t+1) for t + 1 + colors[v] even, using neighbours at time t
    cur = {v: (colors[v], Fraction(values[v])) for v in range(n)}
    out = {(v, colors[v]): Fraction(values[v]) for v in range(n)}

    def advance(state, forward):
        new = dict(state)
        times = [t for t, _ in state.values()]
        t_new = max(times) + 1 if forward else min(times) - 1
        for v in range(n):
            _t_v, x = state[v]
            if (t_new + colors[v]) % 2:
                continue
            num = prod(state[u][1] for u in nbr_red[v]) + prod(state[u][1] for u in nbr_blue[v])
            new[v] = (t_new, num / x)
        return new

    state = cur
    while max(t for t, _ in state.values()) < t_to:
        state = advance(state, True)
        out.update({(v, t): x for v, (t, x) in state.items()})
    state = cur
    while min(t for t, _ in state.values()) > t_from:
        state = advance(state, False)
        out.update({(v, t): x for v, (t, x) in state.items()})
    return {k: x for k, x in out.items() if t_from <= k[1] <= t_to}


def elementary(values, j: int):
    return sum((prod(c) for c in combinations(values, j)), Fraction(0)) if j else Fraction(1)
