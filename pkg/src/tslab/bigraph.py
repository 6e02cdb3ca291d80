"""Bipartite bigraphs and quivers, ADE recognition and labeling checks."""
from __future__ import annotations

import json
import math
from collections import Counter, defaultdict, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NonPositiveLabel, NotBipartite, NotRecurrent

RED, BLUE = "red", "blue"


def _pair(u: int, v: int) -> tuple:
    return (u, v) if u <= v else (v, u)


def two_coloring(n: int, edges: Iterable[tuple]) -> list:
    """Canonical 2-coloring: BFS from the smallest uncolored vertex, which gets color 0."""
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [None] * n
    for s in range(n):
        if color[s] is not None:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] is None:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartite(f"odd cycle through vertices {u} and {w}")
    return color


class Bigraph:
    """Vertex colors plus red (``gamma``) and blue (``delta``) edge multisets.

    Edges are stored as sorted tuples of ordered pairs ``(u, v)`` with ``u < v``;
    a repeated pair encodes a multiple edge.
    """

    __slots__ = ("_cache", "colors", "delta", "gamma")

    def __init__(self, colors: Sequence[int], gamma: Iterable[tuple] = (), delta: Iterable[tuple] = ()):
        self.colors = tuple(int(c) for c in colors)
        self.gamma = tuple(sorted(_pair(int(u), int(v)) for u, v in gamma))
        self.delta = tuple(sorted(_pair(int(u), int(v)) for u, v in delta))
        self._cache: dict = {}
        self._validate()

    def _validate(self) -> None:
        n = len(self.colors)
        if any(c not in (0, 1) for c in self.colors):
            raise ValueError("colors must be 0 or 1")
        for name, edges in ((RED, self.gamma), (BLUE, self.delta)):
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError(f"{name} edge {(u, v)} has an unknown endpoint")
                if u == v:
                    raise ValueError(f"{name} edge {(u, v)} is a loop")
                if self.colors[u] == self.colors[v]:
                    raise NotBipartite(f"{name} edge {(u, v)} joins equally colored vertices")
        if set(self.gamma) & set(self.delta):
            raise ValueError("a pair of vertices is joined by both a red and a blue edge")

    @classmethod
    def from_edges(cls, n: int, gamma: Iterable[tuple], delta: Iterable[tuple], colors=None) -> Bigraph:
        gamma, delta = list(gamma), list(delta)
        if colors is None:
            colors = two_coloring(n, gamma + delta)
        return cls(colors, gamma, delta)

    # queries
    @property
    def n(self) -> int:
        return len(self.colors)

    def vertices(self) -> range:
        return range(self.n)

    def color_class(self, c: int) -> list:
        return [v for v in self.vertices() if self.colors[v] == c]

    def _neighbors(self, edges: tuple, key: str) -> list:
        if key not in self._cache:
            nbrs: list = [[] for _ in range(self.n)]
            for u, v in edges:
                nbrs[u].append(v)
                nbrs[v].append(u)
            self._cache[key] = [tuple(sorted(x)) for x in nbrs]
        return self._cache[key]

    def red_neighbors(self, v: int) -> tuple:
        return self._neighbors(self.gamma, "rn")[v]

    def blue_neighbors(self, v: int) -> tuple:
        return self._neighbors(self.delta, "bn")[v]

    def adjacency(self, which: str) -> np.ndarray:
        edges = self.gamma if which == RED else self.delta
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in edges:
            a[u, v] += 1
            a[v, u] += 1
        return a

    def components(self, which: str) -> list:
        """Connected components of the red or blue graph, as sorted vertex lists."""
        nb = self.red_neighbors if which == RED else self.blue_neighbors
        seen = [False] * self.n
        comps = []
        for s in self.vertices():
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                u = stack.pop()
                for w in nb(u):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def component_edges(self, which: str, comp: Sequence[int]) -> list:
        members = set(comp)
        edges = self.gamma if which == RED else self.delta
        return [e for e in edges if e[0] in members]

    def relabel(self, perm: Sequence[int]) -> Bigraph:
        """Vertex ``v`` becomes ``perm[v]``."""
        colors = [0] * self.n
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        return Bigraph(colors, [(perm[u], perm[v]) for u, v in self.gamma],
                       [(perm[u], perm[v]) for u, v in self.delta])

    def swap_colors(self) -> Bigraph:
        return Bigraph([1 - c for c in self.colors], self.gamma, self.delta)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Bigraph) and self.colors == other.colors
                and self.gamma == other.gamma and self.delta == other.delta)

    def __hash__(self) -> int:
        return hash((self.colors, self.gamma, self.delta))

    def __repr__(self) -> str:
        return f"Bigraph(n={self.n}, red={len(self.gamma)}, blue={len(self.delta)})"

    # serialization
    def to_json_obj(self) -> dict:
        return {
            "format": 1,
            "vertices": [{"id": v, "color": c} for v, c in enumerate(self.colors)],
            "red_edges": [list(e) for e in self.gamma],
            "blue_edges": [list(e) for e in self.delta],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> Bigraph:
        verts = sorted(obj["vertices"], key=lambda x: x["id"])
        if [x["id"] for x in verts] != list(range(len(verts))):
            raise ValueError("vertex ids must be 0..N-1")
        red = [tuple(e) for e in obj.get("red_edges", [])]
        blue = [tuple(e) for e in obj.get("blue_edges", [])]
        if all("color" in x for x in verts):
            return cls([x["color"] for x in verts], red, blue)
        return cls.from_edges(len(verts), red, blue)

    @classmethod
    def from_json(cls, text: str) -> Bigraph:
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v, c in enumerate(self.colors):
            fill = "white" if c == 0 else "black"
            font = "black" if c == 0 else "white"
            lines.append(f'  {v} [style=filled, fillcolor={fill}, fontcolor={font}];')
        for u, v in self.gamma:
            lines.append(f"  {u} -- {v} [color=red];")
        for u, v in self.delta:
            lines.append(f"  {u} -- {v} [color=blue];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph; ``colors`` may be ``None`` for non-bipartite quivers."""

    n: int
    arcs: tuple
    colors: tuple | None = None

    @classmethod
    def make(cls, n: int, arcs: Iterable[tuple], colors=None) -> Quiver:
        arcs = tuple(sorted((int(u), int(v)) for u, v in arcs))
        for u, v in arcs:
            if u == v:
                raise ValueError("quiver has a loop")
        count = Counter(arcs)
        for (u, v) in count:
            if (v, u) in count:
                raise ValueError("quiver has a directed 2-cycle")
        return cls(n, arcs, tuple(colors) if colors is not None else None)

    def arc_counts(self) -> Counter:
        return Counter(self.arcs)


def bigraph_from_quiver(q: Quiver) -> Bigraph:
    colors = q.colors
    if colors is None:
        colors = two_coloring(q.n, q.arcs)
    gamma, delta = [], []
    for u, v in q.arcs:
        if colors[u] == colors[v]:
            raise NotBipartite(f"arc {u}->{v} joins equally colored vertices")
        (gamma if colors[u] == 0 else delta).append((u, v))
    return Bigraph(colors, gamma, delta)


def quiver_from_bigraph(g: Bigraph) -> Quiver:
    arcs = []
    for u, v in g.gamma:
        arcs.append((u, v) if g.colors[u] == 0 else (v, u))
    for u, v in g.delta:
        arcs.append((u, v) if g.colors[u] == 1 else (v, u))
    return Quiver.make(g.n, arcs, g.colors)


def mutate(q: Quiver, v: int) -> Quiver:
    if not 0 <= v < q.n:
        raise ValueError(f"vertex {v} not in quiver")
    count = q.arc_counts()
    into = [(u, c) for (u, w), c in count.items() if w == v]
    out = [(w, c) for (u, w), c in count.items() if u == v]
    new = Counter()
    for (a, b), c in count.items():
        if a == v or b == v:
            new[(b, a)] += c
        else:
            new[(a, b)] += c
    for u, cu in into:
        for w, cw in out:
            new[(u, w)] += cu * cw
    # cancel directed 2-cycles
    for (a, b) in list(new):
        if a < b and (b, a) in new:
            k = min(new[(a, b)], new[(b, a)])
            new[(a, b)] -= k
            new[(b, a)] -= k
    arcs = [arc for arc, c in new.items() for _ in range(c) if c > 0]
    return Quiver.make(q.n, arcs, q.colors)


def is_recurrent(g: Bigraph) -> bool:
    a, b = g.adjacency(RED), g.adjacency(BLUE)
    return bool(np.array_equal(a @ b, b @ a))


def is_recurrent_by_paths(g: Bigraph) -> bool:
    """Independent check: red-then-blue 2-path counts equal blue-then-red counts."""
    for u in g.vertices():
        rb = Counter(w for x in g.red_neighbors(u) for w in g.blue_neighbors(x))
        br = Counter(w for x in g.blue_neighbors(u) for w in g.red_neighbors(x))
        if rb != br:
            return False
    return True


# ---------------------------------------------------------------- ADE recognition

@dataclass(frozen=True)
class DynkinType:
    family: str  # "A", "D", "E", "affA", "affD", "affE" or "NotADE"
    rank: int = 0

    @property
    def affine(self) -> bool:
        return self.family.startswith("aff")

    @property
    def finite(self) -> bool:
        return self.family in ("A", "D", "E")

    def __str__(self) -> str:
        return self.family if self.family == "NotADE" else f"{self.family}{self.rank}"


NOT_ADE = DynkinType("NotADE")


@dataclass(frozen=True)
class ComponentInfo:
    type: DynkinType
    coxeter: float  # integer for finite types, math.inf for affine ones
    eigvec: dict = field(default_factory=dict)


def coxeter_number(t: DynkinType):
    if t.family == "A":
        return t.rank + 1
    if t.family == "D":
        return 2 * t.rank - 2
    if t.family == "E":
        return {6: 12, 7: 18, 8: 30}[t.rank]
    if t.affine:
        return math.inf
    raise ValueError("not an ADE type")


# arm-length triples (shortest first) of star-shaped trees with one branch point
_STAR_TYPES = {
    (1, 2, 2): DynkinType("E", 6), (1, 2, 3): DynkinType("E", 7), (1, 2, 4): DynkinType("E", 8),
    (2, 2, 2): DynkinType("affE", 6), (1, 3, 3): DynkinType("affE", 7), (1, 2, 5): DynkinType("affE", 8),
}

# affine E labels: (center, labels along each arm from the center outward)
_AFF_E_LABELS = {
    6: (3, {2: (2, 1)}),
    7: (4, {1: (2,), 3: (3, 2, 1)}),
    8: (6, {1: (3,), 2: (4, 2), 5: (5, 4, 3, 2, 1)}),
}


def recognize_ade(vertices: Sequence[int], edges: Sequence[tuple]) -> ComponentInfo:
    """Identify a connected (multi)graph as a finite or affine ADE diagram."""
    verts = list(vertices)
    n = len(verts)
    count = Counter(_pair(u, v) for u, v in edges)
    if n == 0:
        return ComponentInfo(NOT_ADE, 0)
    if any(c > 1 for c in count.values()):
        if n == 2 and list(count.values()) == [2]:
            t = DynkinType("affA", 1)
            return ComponentInfo(t, math.inf, {verts[0]: 1, verts[1]: 1})
        return ComponentInfo(NOT_ADE, 0)
    adj = {v: [] for v in verts}
    for u, v in count:
        adj[u].append(v)
        adj[v].append(u)
    if not _connected(adj):
        return ComponentInfo(NOT_ADE, 0)
    m = len(count)
    deg = {v: len(adj[v]) for v in verts}
    if m == n and n >= 3 and all(d == 2 for d in deg.values()):
        t = DynkinType("affA", n - 1)
        return ComponentInfo(t, math.inf, {v: 1 for v in verts})
    if m != n - 1:
        return ComponentInfo(NOT_ADE, 0)
    branch = [v for v in verts if deg[v] >= 3]
    if not branch:
        t = DynkinType("A", n)
        return ComponentInfo(t, coxeter_number(t))
    if len(branch) == 1 and deg[branch[0]] == 4:
        if n == 5:
            c = branch[0]
            return ComponentInfo(DynkinType("affD", 4), math.inf, {v: (2 if v == c else 1) for v in verts})
        return ComponentInfo(NOT_ADE, 0)
    if any(deg[b] > 3 for b in branch):
        return ComponentInfo(NOT_ADE, 0)
    if len(branch) == 1:
        c = branch[0]
        arms = [_arm(adj, c, w) for w in adj[c]]
        lengths = tuple(sorted(len(a) for a in arms))
        if lengths[0] == 1 and lengths[1] == 1:
            t = DynkinType("D", n)
            return ComponentInfo(t, coxeter_number(t))
        t = _STAR_TYPES.get(lengths)
        if t is None:
            return ComponentInfo(NOT_ADE, 0)
        if t.finite:
            return ComponentInfo(t, coxeter_number(t))
        center, arm_labels = _AFF_E_LABELS[t.rank]
        eig = {c: center}
        for arm in arms:
            for v, lab in zip(arm, arm_labels[len(arm)]):
                eig[v] = lab
        return ComponentInfo(t, math.inf, eig)
    if len(branch) == 2:
        # affine D: two branch points, each carrying two leaves
        for b in branch:
            if sum(1 for w in adj[b] if deg[w] == 1) != 2:
                return ComponentInfo(NOT_ADE, 0)
        t = DynkinType("affD", n - 1)
        return ComponentInfo(t, math.inf, {v: (1 if deg[v] == 1 else 2) for v in verts})
    return ComponentInfo(NOT_ADE, 0)


def _connected(adj: dict) -> bool:
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _arm(adj: dict, center: int, first: int) -> list:
    arm, prev, cur = [first], center, first
    while len(adj[cur]) == 2:
        nxt = adj[cur][0] if adj[cur][1] == prev else adj[cur][1]
        arm.append(nxt)
        prev, cur = cur, nxt
    return arm


def component_infos(g: Bigraph, which: str) -> list:
    return [(comp, recognize_ade(comp, g.component_edges(which, comp))) for comp in g.components(which)]


# ---------------------------------------------------------------- labelings

LABEL_KINDS = ("strict", "subadditive", "weak")


def check_labeling(g: Bigraph, nu: Mapping[int, Fraction | int], kind: str = "subadditive") -> bool:
    if kind not in LABEL_KINDS:
        raise ValueError(f"unknown labeling kind {kind!r}")
    for v in g.vertices():
        if Fraction(nu[v]) <= 0:
            raise NonPositiveLabel(f"label of vertex {v} is not positive")
    for v in g.vertices():
        twice = 2 * Fraction(nu[v])
        red = sum((Fraction(nu[u]) for u in g.red_neighbors(v)), Fraction(0))
        blue = sum((Fraction(nu[u]) for u in g.blue_neighbors(v)), Fraction(0))
        red_ok = twice > red if kind == "strict" else twice >= red
        blue_ok = twice >= blue if kind == "weak" else twice > blue
        if not (red_ok and blue_ok):
            return False
    return True


@dataclass(frozen=True)
class KindResult:
    kind: str  # "admissible", "affinite", "affaff" or "none"
    witness: dict | None = None


def classify_kind(g: Bigraph) -> KindResult:
    """Kind of a recurrent bigraph from the ADE types of its red and blue components."""
    if not is_recurrent(g):
        raise NotRecurrent("adjacency matrices do not commute")
    red = [info.type for _, info in component_infos(g, RED)]
    blue = [info.type for _, info in component_infos(g, BLUE)]
    if any(t == NOT_ADE for t in red + blue):
        return KindResult("none")
    if all(t.finite for t in red) and all(t.finite for t in blue):
        return KindResult("admissible", _witness(g, "strict"))
    if all(t.affine for t in red) and all(t.finite for t in blue):
        return KindResult("affinite", _witness(g, "subadditive"))
    if all(t.affine for t in red) and all(t.affine for t in blue):
        return KindResult("affaff", _witness(g, "weak"))
    return KindResult("none")


def dominant_eigenvector(g: Bigraph) -> np.ndarray:
    """Positive common eigenvector of the commuting red and blue adjacency matrices.

    Each connected component of the union graph gets its own Perron vector.
    """
    a = (g.adjacency(RED) + g.adjacency(BLUE)).astype(float)
    out = np.zeros(g.n)
    for comp in _union_components(g):
        # the diagonal shift makes the Perron root strictly dominant on bipartite graphs
        sub = a[np.ix_(comp, comp)] + 4.0 * np.eye(len(comp))
        _, vecs = np.linalg.eigh(sub)
        out[comp] = np.abs(vecs[:, -1])
    return out


def _union_components(g: Bigraph) -> list:
    adj = defaultdict(list)
    for u, v in g.gamma + g.delta:
        adj[u].append(v)
        adj[v].append(u)
    seen, comps = set(), []
    for s in g.vertices():
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _witness(g: Bigraph, kind: str) -> dict | None:
    """Rational labeling of the requested kind built from the dominant eigenvector.

    Affine red components keep their integer eigenvector shape (so red sums are
    exact); only the per-component scale is rounded to a rational.
    """
    if g.n == 0:
        return {}
    vec = dominant_eigenvector(g)
    red_infos = component_infos(g, RED)
    for denom in (10, 100, 1000, 10**4, 10**6):
        nu: dict = {}
        for comp, info in red_infos:
            if info.type.affine:
                base = info.eigvec
                ratio = float(np.mean([vec[v] / base[v] for v in comp]))
                scale = Fraction(ratio).limit_denominator(denom)
                if scale <= 0:
                    break
                for v in comp:
                    nu[v] = scale * base[v]
            else:
                for v in comp:
                    nu[v] = Fraction(float(vec[v])).limit_denominator(denom)
        if len(nu) == g.n and all(x > 0 for x in nu.values()) and check_labeling(g, nu, kind):
            return nu
    return None
