"""Domino tilings of cylinders and Aztec-diamond windows.

Coordinates: a cell is named by its lower-left node ``(row, col)``. On the
cylinder ``C(m, 2n)`` cell rows run ``0..m`` and node rows ``0..m+1``; columns
are taken mod ``2n``. Cell ``(i, j)`` is black when ``i + j`` is even.

A domino is ``(i, j, "h")`` covering ``(i, j)`` and ``(i, j+1)`` or ``(i, j, "v")``
covering ``(i, j)`` and ``(i+1, j)``. Its cut edge is the unit segment between
its two cells.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import InconsistentHeight, ResourceLimit
from .laurent import LaurentPoly, make_monomial, term_ceiling


@dataclass(frozen=True)
class CylinderGrid:
    m: int
    n: int

    @property
    def width(self) -> int:
        return 2 * self.n

    @property
    def cell_rows(self) -> int:
        return self.m + 1

    def cells(self) -> list:
        return [(i, j) for i in range(self.cell_rows) for j in range(self.width)]

    def interior_nodes(self) -> list:
        return [(r, c) for r in range(1, self.m + 1) for c in range(self.width)]


Tiling = tuple  # sorted tuple of dominoes


def cell_is_black(i: int, j: int) -> bool:
    return (i + j) % 2 == 0


def domino_cells(d: tuple, width: int | None = None) -> tuple:
    i, j, o = d
    if o == "h":
        j2 = j + 1 if width is None else (j + 1) % width
        return (i, j), (i, j2)
    return (i, j), (i + 1, j)


# ---------------------------------------------------------------- enumeration

def enumerate_cylinder_tilings(grid: CylinderGrid, limit: int | None = None) -> list:
    """All domino tilings of the cylinder, in a deterministic order."""
    limit = term_ceiling() if limit is None else limit
    return list(_cylinder_tilings(grid.m, grid.n, limit))


@lru_cache(maxsize=32)
def _cylinder_tilings(m: int, n: int, limit: int) -> tuple:
    rows, width = m + 1, 2 * n
    order = [(i, j) for i in range(rows) for j in range(width)]
    covered = set()
    current: list = []
    out: list = []

    def rec(pos):
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            out.append(tuple(sorted(current)))
            if len(out) > limit:
                raise ResourceLimit(f"more than {limit} tilings (TSLAB_TERM_CEILING)")
            return
        i, j = order[pos]
        moves = []
        right = (i, (j + 1) % width)
        if right not in covered and right != (i, j):
            moves.append(((i, j, "h"), [(i, j), right]))
        if j == 0:
            left = (i, width - 1)
            if left not in covered and left != (i, j):
                moves.append(((i, width - 1, "h"), [(i, j), left]))
        if i + 1 < rows and (i + 1, j) not in covered:
            moves.append(((i, j, "v"), [(i, j), (i + 1, j)]))
        for dom, cs in moves:
            covered.update(cs)
            current.append(dom)
            rec(pos + 1)
            current.pop()
            covered.difference_update(cs)

    rec(0)
    return tuple(out)


def enumerate_region_tilings(cells: set, limit: int | None = None) -> list:
    """Tilings of a finite planar set of cells (no wrap-around)."""
    limit = term_ceiling() if limit is None else limit
    order = sorted(cells)
    covered = set()
    current: list = []
    out: list = []

    def rec(pos):
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            out.append(tuple(sorted(current)))
            if len(out) > limit:
                raise ResourceLimit(f"more than {limit} tilings (TSLAB_TERM_CEILING)")
            return
        i, j = order[pos]
        for dom, other in (((i, j, "h"), (i, j + 1)), ((i, j, "v"), (i + 1, j))):
            if other in cells and other not in covered:
                covered.update([(i, j), other])
                current.append(dom)
                rec(pos + 1)
                current.pop()
                covered.difference_update([(i, j), other])

    rec(0)
    return out


def is_valid_tiling(grid: CylinderGrid, tiling: Tiling) -> bool:
    seen = Counter(c for d in tiling for c in domino_cells(d, grid.width))
    return set(seen) == set(grid.cells()) and all(v == 1 for v in seen.values())


# ---------------------------------------------------------------- cut edges and weights

def cut_edge(d: tuple, width: int | None = None) -> tuple:
    """Cut edge as a pair of nodes."""
    i, j, o = d
    if o == "h":
        c = j + 1 if width is None else (j + 1) % width
        return (i, c), (i + 1, c)
    c2 = j + 1 if width is None else (j + 1) % width
    return (i + 1, j), (i + 1, c2)


def degree_vector(tiling: Tiling, width: int | None = None) -> Counter:
    """Number of cut edges at each node (nodes of degree 0 are absent)."""
    deg = Counter()
    for d in tiling:
        a, b = cut_edge(d, width)
        deg[a] += 1
        deg[b] += 1
    return deg


def weight_exponents(tiling: Tiling, nodes, width: int | None = None) -> dict:
    deg = degree_vector(tiling, width)
    return {u: 1 - deg.get(u, 0) for u in nodes}


def weight_monomial(tiling: Tiling, nodes, var_of, width: int | None = None):
    """Monomial prod u^(1 - d(u)) over ``nodes``; ``var_of`` returns None for frozen nodes."""
    exps: dict = {}
    for u, e in weight_exponents(tiling, nodes, width).items():
        v = var_of(u)
        if v is not None and e:
            exps[v] = exps.get(v, 0) + e
    return make_monomial(exps)


# ---------------------------------------------------------------- Thurston height

def thurston_height(grid: CylinderGrid, tiling: Tiling) -> dict:
    """Height on nodes ``(row, col)`` normalized to 0 at ``(0, 0)``.

    Every lattice edge that is not a cut edge is walked with increment +1 when
    the cell on its right is black and -1 otherwise. Cells outside the
    cylinder continue the checkerboard.
    """
    width = grid.width
    cuts = set()
    for d in tiling:
        a, b = cut_edge(d, width)
        cuts.add(_edge_key(a, b, d[2] == "v"))
    adj: dict = {}
    for r in range(grid.m + 2):
        for c in range(width):
            # eastward edge: cell on the right lies below it
            if _edge_key((r, c), (r, (c + 1) % width), True) not in cuts:
                inc = 1 if cell_is_black(r - 1, c) else -1
                _link(adj, (r, c), (r, (c + 1) % width), inc)
            # northward edge: cell on the right is the one east of it
            if r <= grid.m and _edge_key((r, c), (r + 1, c), False) not in cuts:
                inc = 1 if cell_is_black(r, c) else -1
                _link(adj, (r, c), (r + 1, c), inc)
    height = {(0, 0): 0}
    stack = [(0, 0)]
    while stack:
        u = stack.pop()
        for w, inc in adj.get(u, ()):
            h = height[u] + inc
            if w not in height:
                height[w] = h
                stack.append(w)
            elif height[w] != h:
                raise InconsistentHeight(f"height at {w} is both {height[w]} and {h}")
    if len(height) != (grid.m + 2) * width:
        raise InconsistentHeight("height is not determined on every node")
    return height


def _edge_key(a, b, horizontal: bool) -> tuple:
    # horizontal edges are keyed by their west end, vertical ones by their south end
    if horizontal:
        return ("h",) + a
    return ("v",) + (a if a[0] < b[0] else b)


def _link(adj, a, b, inc):
    adj.setdefault(a, []).append((b, inc))
    adj.setdefault(b, []).append((a, -inc))


def tiling_height(grid: CylinderGrid, tiling: Tiling) -> int:
    h = thurston_height(grid, tiling)
    return h[(grid.m + 1, 0)] - h[(0, 0)]


@lru_cache(maxsize=32)
def _sea_cached(m: int, n: int) -> tuple:
    grid = CylinderGrid(m, n)
    tilings = enumerate_cylinder_tilings(grid)
    heights = [tiling_height(grid, t) for t in tilings]
    low = min(heights)
    minimal = [t for t, h in zip(tilings, heights) if h == low]
    if len(minimal) != 1:
        raise AssertionError("minimal-height tiling is not unique")
    sea = minimal[0]
    if any(d[2] != "h" for d in sea):
        raise AssertionError("minimal-height tiling is not all horizontal")
    return sea, low


def sea(grid: CylinderGrid) -> Tiling:
    """The unique minimal-height tiling, found by exhaustive search."""
    return _sea_cached(grid.m, grid.n)[0]


def sea_height(grid: CylinderGrid) -> int:
    return _sea_cached(grid.m, grid.n)[1]


def hula_hoops(grid: CylinderGrid, tiling: Tiling) -> int:
    diff = tiling_height(grid, tiling) - sea_height(grid)
    if diff % 4:
        raise InconsistentHeight("height difference to the sea is not a multiple of 4")
    return diff // 4


def hula_hoops_by_cycles(grid: CylinderGrid, tiling: Tiling, reference: Tiling | None = None) -> int:
    """Count non-contractible cycles in the superposition with the sea."""
    width = grid.width
    reference = sea(grid) if reference is None else reference

    def partner(tiles):
        out = {}
        for d in tiles:
            a, b = domino_cells(d, width)
            step = 1 if d[2] == "h" else 0
            out[a] = (b, step)
            out[b] = (a, -step)
        return out

    pd, ps = partner(tiling), partner(reference)
    seen = set()
    hoops = 0
    for start in grid.cells():
        if start in seen:
            continue
        cur, winding = start, 0
        while True:
            seen.add(cur)
            nxt, step = pd[cur]
            winding += step
            seen.add(nxt)
            cur, step = ps[nxt]
            winding += step
            if cur == start:
                break
        if winding % width:
            raise InconsistentHeight("superposition cycle with fractional winding")
        if winding:
            hoops += 1
    return hoops


# ---------------------------------------------------------------- nodes and variables

# The interior node (row r, col c) of the cylinder is the vertex (c, r-1) of
# affA_{2n-1} (x) A_m; with build_tensor numbering its id is (r-1)*2n + c.
# Reflecting the row order turns the Hamiltonians of the boundary slices into
# one another; ROW_FLIP fixes the orientation (see tests of the m=3, n=1 case).
ROW_FLIP = True


def node_vertex(grid: CylinderGrid, node: tuple):
    r, c = node
    if not 1 <= r <= grid.m:
        return None
    row = grid.m - r if ROW_FLIP else r - 1
    return row * grid.width + c % grid.width


def vertex_node(grid: CylinderGrid, vid: int) -> tuple:
    row, c = divmod(vid, grid.width)
    r = grid.m - row if ROW_FLIP else row + 1
    return (r, c)


def tiling_weight(grid: CylinderGrid, tiling: Tiling):
    return weight_monomial(tiling, grid.interior_nodes(), lambda u: node_vertex(grid, u), grid.width)


# ---------------------------------------------------------------- Aztec windows

def aztec_cells(center: tuple, radius: int) -> set:
    """Cells of the Aztec diamond of the given radius around a node."""
    r0, x0 = center
    cells = set()
    for i in range(r0 - radius, r0 + radius):
        for j in range(x0 - radius, x0 + radius):
            if abs(2 * j + 1 - 2 * x0) + abs(2 * i + 1 - 2 * r0) <= 2 * radius:
                cells.add((i, j))
    return cells


def aztec_nodes(center: tuple, radius: int) -> list:
    r0, x0 = center
    return [(r, x) for r in range(r0 - radius, r0 + radius + 1) for x in range(x0 - radius, x0 + radius + 1)
            if abs(r - r0) + abs(x - x0) <= radius]


def aztec_value(center: tuple, radius: int, var_of, row_range: tuple | None = None) -> LaurentPoly:
    """Sum over tilings of an Aztec diamond (optionally cut to a strip of cell rows) of
    prod u^(1 - d(u)); ``var_of`` maps a node to a variable id or None (frozen at 1)."""
    cells = aztec_cells(center, radius)
    if row_range is not None:
        lo, hi = row_range
        cells = {c for c in cells if lo <= c[0] <= hi}
    nodes = aztec_nodes(center, radius)
    terms: dict = {}
    for t in enumerate_region_tilings(cells):
        mono = weight_monomial(t, nodes, var_of)
        terms[mono] = terms.get(mono, 0) + 1
    return LaurentPoly(terms)


def speyer_radius(t: int) -> int:
    """Radius of the Aztec window giving T_v(t) (same rule for both vertex parities)."""
    return t - 1 if t >= 1 else -t


def speyer_value(m: int, n: int, v: int, t: int) -> LaurentPoly:
    """T_v(t) on affA_{2n-1} (x) A_m from tilings of a cut Aztec window.

    The window lives on the universal cover of the cylinder and is cut to the
    cell rows ``0..m``; the boundary node rows ``0`` and ``m+1`` are frozen
    at 1 and the cut-off parts of the diamond are tiled horizontally.
    """
    grid = CylinderGrid(m, n)
    r, c = vertex_node(grid, v)
    radius = speyer_radius(t)

    def var_of(node):
        rr, xx = node
        if 1 <= rr <= m:
            return node_vertex(grid, (rr, xx % grid.width))
        return None

    return aztec_value((r, c), radius, var_of, row_range=(0, m))


# ---------------------------------------------------------------- rendering

def render_ascii(grid: CylinderGrid, tiling: Tiling) -> str:
    """Top row first; ``<>`` is a horizontal domino, ``^``/``v`` the halves of a vertical one."""
    width = grid.width
    glyph = {}
    for d in tiling:
        a, b = domino_cells(d, width)
        if d[2] == "h":
            glyph[a], glyph[b] = "<", ">"
        else:
            glyph[a], glyph[b] = "v", "^"
    lines = []
    for i in reversed(range(grid.cell_rows)):
        lines.append("".join(glyph[(i, j)] for j in range(width)))
    return "\n".join(lines)


def tiling_to_json(tiling: Tiling, width: int) -> list:
    return [[list(a), list(b)] for a, b in (domino_cells(d, width) for d in tiling)]
