"""The acceptance suite: thirteen end-to-end checks shared by the CLI and the tests.

Each check returns a :class:`CriterionResult`; nothing here raises on a
failed check. Errors from the library are converted into failures that keep
the reference carried by the exception.
"""
from __future__ import annotations

import random
import time
from collections import defaultdict
from collections.abc import Callable
from dataclasses import dataclass, field

from .errors import TslabError, VerificationError
from .laurent import LaurentPoly, make_monomial, specialize

# Letters of the worked A_3 (x) affA_1 example, in cylinder vertex ids.
LETTERS = {"a": 0, "b": 2, "c": 4, "d": 1, "e": 3, "f": 5}

PRINTED_HAMILTONIANS = {
    1: "ab/de+a/be+b/ad+c/f+d/a+ef/bc+e/cf",
    2: "abc/def+ab/dcf+bc/adf+ac/be+be/acdf+ef/ad+af/cd+e/b+cd/af+de/acf+b/e+df/be+def/abc",
    3: "bc/ef+c/be+b/cf+a/d+f/c+de/ab+e/ad",
}

# Plane Aztec diamond of radius 2: letter -> (row, column) node offsets from the centre v.
AZTEC_LETTERS = {
    "a": (0, 2), "b": (-1, 1), "c": (0, 1), "d": (1, 1), "e": (-2, 0), "f": (-1, 0), "v": (0, 0),
    "h": (1, 0), "k": (2, 0), "l": (-1, -1), "m": (0, -1), "n": (1, -1), "o": (0, -2),
}
PRINTED_AZTEC_VALUE = "evk/fh+edn/fh+blk/fh+bldn/fhv+aln/cm+avo/cm+bdo/cm+bdln/cmv"


def parse_fraction_sum(text: str, letters: dict) -> LaurentPoly:
    """``"ab/de+c/f"`` style sums of monomials in single-letter variables."""
    terms: dict = {}
    for chunk in text.split("+"):
        num, _, den = chunk.partition("/")
        exps: dict = defaultdict(int)
        for ch in num:
            exps[letters[ch]] += 1
        for ch in den:
            exps[letters[ch]] -= 1
        mono = make_monomial(exps)
        terms[mono] = terms.get(mono, 0) + 1
    return LaurentPoly(terms)


def letter_form(p: LaurentPoly, letters: dict) -> list:
    name = {v: k for k, v in letters.items()}
    out = []
    for mono, c in p.sorted_terms():
        num = "".join(name[v] * e for v, e in sorted(mono, key=lambda x: name[x[0]]) if e > 0)
        den = "".join(name[v] * -e for v, e in sorted(mono, key=lambda x: name[x[0]]) if e < 0)
        out.append(("" if c == 1 else f"{c}*") + (num or "1") + (f"/{den}" if den else ""))
    return out


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    reference: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} [{self.number:2d}] {self.title} ({self.seconds:.2f}s)"
        if self.detail:
            text += f": {self.detail}"
        return text

    def to_json_obj(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "reference": self.reference}


class _Fail(Exception):
    def __init__(self, detail: str, reference: str):
        super().__init__(detail)
        self.detail = detail
        self.reference = reference


def _require(cond: bool, detail: str, reference: str) -> None:
    if not cond:
        raise _Fail(detail, reference)


# ---------------------------------------------------------------- the checks

def _missing_from(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({k: c for k, c in p.terms.items() if k not in q.terms})


def hamiltonian_exactness(rng: random.Random) -> str:
    from .hamiltonians import gk_hamiltonians

    hs = gk_hamiltonians(3, 1)
    ref = "worked Hamiltonians of the A_3 (x) affA_1 cylinder"
    _require(hs.H[0] == 1 and hs.H[4] == 1, "H_0 or H_4 is not 1", ref)
    problems = []
    for r, text in PRINTED_HAMILTONIANS.items():
        printed = parse_fraction_sum(text, LETTERS)
        ours = hs.H[r]
        if ours != printed:
            only_ours = letter_form(_missing_from(ours, printed), LETTERS)
            only_printed = letter_form(_missing_from(printed, ours), LETTERS)
            problems.append(f"H_{r}: computed {', '.join(only_ours)} where printed {', '.join(only_printed)}")
    _require(not problems, "; ".join(problems), ref)
    return "H_1, H_2, H_3 have 7, 13, 7 terms and match"


def aztec_cross_check(rng: random.Random) -> str:
    from .tilings import aztec_value, speyer_value
    from .tsystem import cylinder_graph, evolve

    ids = {ch: i for i, ch in enumerate(sorted(AZTEC_LETTERS))}
    node_id = {pos: ids[ch] for ch, pos in AZTEC_LETTERS.items()}
    plane = aztec_value((0, 0), 2, lambda node: node_id.get(node))
    ref = "Aztec diamond formula for the octahedron recurrence"
    _require(plane == parse_fraction_sum(PRINTED_AZTEC_VALUE, ids), "radius-2 Aztec value differs", ref)
    m, n = 3, 2
    g = cylinder_graph(m, n)
    values = evolve(g, -4, 4)
    for (v, t), val in sorted(values.items()):
        if speyer_value(m, n, v, t) != val:
            raise _Fail(f"tiling window differs from the evolution at v={v}, t={t}", ref)
    return f"8-term window matches; {len(values)} cylinder values agree for |t| <= 4"


def boundary_recurrence(rng: random.Random) -> str:
    from .tsystem import verify_boundary_recurrence

    total = 0
    for m, n in ((1, 1), (2, 1), (3, 1), (1, 2)):
        for which in ("top", "bottom"):
            cert = verify_boundary_recurrence(m, n, which, range(-2, 2))
            _require(cert.checked >= 2, f"only {cert.checked} residues checked at {(m, n)} {which}",
                     "boundary recurrence")
            total += cert.checked
    return f"{total} symbolic residues vanish"


def slice_index_rows(m: int) -> dict:
    """Slice ``r`` of the recurrence -> row of the cylinder graph."""
    from .hamiltonians import top_row

    top = top_row(m)
    return {r: (top + r - 1 if top == 0 else top - r + 1) for r in range(1, m + 1)}


def recurrence_lengths(rng: random.Random) -> str:
    from .hamiltonians import gk_hamiltonians, slice_recurrence_values
    from .tsystem import (
        cylinder_graph,
        evolve_numeric,
        find_minimal_recurrence,
        random_point,
    )

    m, n = 3, 1
    g = cylinder_graph(m, n)
    hs = gk_hamiltonians(m, n)
    ref = "slice recurrences from plethysm"
    rows = slice_index_rows(m)
    seen: dict = {}
    for _ in range(3):
        point = random_point(g.vertices(), rng)
        trace = evolve_numeric(g, point, -40, 40)
        hvals = [specialize(h, point) for h in hs.H]
        for r, row in rows.items():
            v = row * 2 * n
            start = -40 if (-40 + g.colors[v]) % 2 == 0 else -39
            spec = find_minimal_recurrence(trace.sequence(v, start, 2 * n, 38), 2 * n)
            expected = slice_recurrence_values(r, m, hvals)
            _require(list(spec.coeffs) == expected, f"slice {r}: fitted coefficients differ from the plethysm", ref)
            seen.setdefault(r, set()).add(spec.terms)
    lengths = {r: sorted(s) for r, s in seen.items()}
    _require(lengths == {1: [5], 2: [7], 3: [5]}, f"recurrence lengths {lengths}", ref)
    return "5, 7, 5 terms on three specializations"


def conservation(rng: random.Random) -> str:
    from .hamiltonians import gk_hamiltonians
    from .tsystem import check_conserved, cylinder_graph, random_point

    g = cylinder_graph(3, 1)
    hs = gk_hamiltonians(3, 1)
    checked = 0
    for _ in range(5):
        point = random_point(g.vertices(), rng)
        cert = check_conserved(hs, g, [point[v] for v in g.vertices()], 1 - 20, 1 + 20)
        checked += cert.checked
    return f"{checked} exact comparisons"


def plethysm_formulas(rng: random.Random) -> str:
    from .hamiltonians import SymmetricExpr, plethysm_e_p2, slice_recurrence_coeffs

    m = 3
    e = {i: SymmetricExpr.gen(m, i) for i in range(1, m + 1)}
    p1, p2, p3 = e[1] ** 2 - 2 * e[2], e[2] ** 2 - 2 * e[1] * e[3] + 2, e[3] ** 2 - 2 * e[2]
    ref = "plethysm e_j[e_r[p_2]]"
    _require([plethysm_e_p2(i, m) for i in (1, 2, 3)] == [p1, p2, p3], "e_i[p_2] expansions differ", ref)
    expected_r2 = (1, p2, p1 * p3 - 1, p1 ** 2 + p3 ** 2 - 2 * p2, p1 * p3 - 1, p2, 1)
    expected_r2 = tuple(x if isinstance(x, SymmetricExpr) else SymmetricExpr.const(m, x) for x in expected_r2)
    _require(slice_recurrence_coeffs(2, m) == expected_r2, "r=2 coefficients differ", ref)
    for mm in range(1, 6):
        for r in range(1, mm + 1):
            a = slice_recurrence_coeffs(r, mm)
            b = slice_recurrence_coeffs(mm + 1 - r, mm)
            _require(a == tuple(reversed(b)), f"palindromy fails at m={mm}, r={r}", ref)
    return "expansions match; palindromic for m <= 5"


def _perturb(g):
    """Move the first blue edge; onto a free opposite-color pair if one exists."""
    from .bigraph import Bigraph

    used = {tuple(sorted(e)) for e in g.gamma} | {tuple(sorted(e)) for e in g.delta}
    first = min(g.delta)
    rest = [e for e in g.delta if e != first]
    for x in g.vertices():
        for y in range(x + 1, g.n):
            if g.colors[x] != g.colors[y] and (x, y) not in used:
                return lambda: Bigraph(g.colors, g.gamma, rest + [(x, y)])
    same = next(y for y in g.vertices() if y != first[0] and g.colors[y] == g.colors[first[0]])
    return lambda: Bigraph(g.colors, g.gamma, rest + [(first[0], same)])


def classification_round_trip(rng: random.Random) -> str:
    from .bigraph import classify_kind, is_recurrent
    from .families import build_family, check_points, classify_family, family_atlas

    ref = "classification of affinite bigraphs"
    specs = family_atlas(2)
    for spec in specs:
        g = build_family(spec)
        _require(is_recurrent(g), f"{spec} is not recurrent", ref)
        _require(classify_kind(g).kind == "affinite", f"{spec} is not affinite", ref)
        _require(check_points(g), f"{spec} fails the eigenvector identities", ref)
        got = classify_family(g)
        _require(got == spec, f"{spec} classified as {got}", ref)
        try:
            h = _perturb(g)()
            rejected = not is_recurrent(h) or classify_family(h) != spec
        except TslabError:
            rejected = True
        _require(rejected, f"perturbed {spec} still accepted", ref)
    return f"{len(specs)} families round-trip; perturbations rejected"


def tropical_golden_trace(rng: random.Random) -> str:
    from .tropical import (
        EVOLUTION_TABLE,
        asymptotic_speeds,
        evolution_example,
        hamiltonians_at,
        letters_to_values,
        trop_state,
    )
    from .tsystem import cylinder_graph

    ref = "tropical evolution table"
    got = evolution_example()
    expected = [(t, row, speeds) for t, row, speeds in EVOLUTION_TABLE]
    for a, b in zip(got, expected):
        _require(a == b, f"row t={b[0]}: got {a[1:]} expected {b[1:]}", ref)
    g = cylinder_graph(3, 1)
    start = trop_state(g, EVOLUTION_TABLE[0][0], letters_to_values(EVOLUTION_TABLE[0][1]))
    sp = asymptotic_speeds(start)
    _require((sp.plus, sp.minus) == ((2, 4, 3), (3, 4, 2)), f"speeds {sp.plus}, {sp.minus}", ref)
    h = [hamiltonians_at(start, t, 3, 1)[1] for t in (-4, 0)]
    _require(h == [2, 2], f"tropical H_1 = {h}", ref)
    return "table, speeds and tropical H_1 reproduced"


def speed_conservation(rng: random.Random) -> str:
    from .tropical import check_speed_conservation, random_labels
    from .tsystem import cylinder_graph

    total = 0
    for m, n in ((2, 1), (3, 1), (3, 2)):
        g = cylinder_graph(m, n)
        for _ in range(50):
            check_speed_conservation(m, n, random_labels(g, rng))
            total += 1
    return f"{total} labelings"


def tropical_conservation(rng: random.Random) -> str:
    from .tropical import check_tropical_conservation, random_labels
    from .tsystem import cylinder_graph

    g = cylinder_graph(3, 1)
    for _ in range(20):
        check_tropical_conservation(3, 1, random_labels(g, rng), steps=100)
    return "20 runs of 100 steps"


DAFF4_EXAMPLE = (
    {0: 1, 1: 1, 2: 2, 3: 1, 4: 2},
    {0: 1, 1: 1, 2: 3, 3: 1, 4: 2},
    {0: 2, 1: 2, 2: 3, 3: 2, 4: 1},
    {0: 2, 1: 2, 2: 4, 3: 2, 4: 1},
    {0: 2, 1: 2, 2: 4, 3: 2, 4: 3},
)
DAFF4_COLORS = {0: 1, 1: 1, 2: 0, 3: 1, 4: 1}


def affine_coxeter(rng: random.Random) -> str:
    from .tropical import (
        affine_coxeter_check,
        affine_types,
        diagram_data,
        mutate_black,
        mutate_white,
    )

    ref = "almost periodicity of the affine Coxeter transformation"
    names = affine_types(9)
    for name in names:
        adj, *_ = diagram_data(name)
        vectors = [{v: rng.randint(-50, 50) for v in adj} for _ in range(100)]
        affine_coxeter_check(name, vectors)
    adj, colors, _eig, _ = diagram_data("affD4", DAFF4_COLORS)
    f = dict(DAFF4_EXAMPLE[0])
    for k, expected in enumerate(DAFF4_EXAMPLE[1:]):
        f = mutate_white(f, adj, colors) if k % 2 == 0 else mutate_black(f, adj, colors)
        _require(f == expected, f"affD4 example differs at step {k + 1}", ref)
    affine_coxeter_check("affD4", [DAFF4_EXAMPLE[0]], DAFF4_COLORS)
    return f"{len(names)} affine types, 100 vectors each, plus the affD4 example"


def one_step_laurent(rng: random.Random) -> str:
    from .hamiltonians import gk_hamiltonians
    from .tsystem import check_one_step_laurent, cylinder_graph

    checked = 0
    for m, n in ((3, 1), (2, 2)):
        checked += check_one_step_laurent(gk_hamiltonians(m, n), cylinder_graph(m, n)).checked
    return f"{checked} mutated Hamiltonians are Laurent"


def maxdeg_consistency(rng: random.Random) -> str:
    from .tropical import EVOLUTION_TABLE, check_maxdeg_consistency, letters_to_values
    from .tsystem import cylinder_graph

    row = next(r for t, r, _ in EVOLUTION_TABLE if t == 1)
    labels = dict(enumerate(letters_to_values(row)))
    cert = check_maxdeg_consistency(cylinder_graph(3, 1), labels, -6, 6)
    return f"{cert.checked} values agree"


CRITERIA: tuple = (
    (1, "Hamiltonian exactness", hamiltonian_exactness),
    (2, "Aztec window cross-check", aztec_cross_check),
    (3, "boundary recurrence", boundary_recurrence),
    (4, "recurrence lengths", recurrence_lengths),
    (5, "conservation", conservation),
    (6, "plethysm formulas", plethysm_formulas),
    (7, "classification round-trip", classification_round_trip),
    (8, "tropical golden trace", tropical_golden_trace),
    (9, "speed conservation", speed_conservation),
    (10, "tropical Hamiltonians conserved", tropical_conservation),
    (11, "affine Coxeter identity", affine_coxeter),
    (12, "one-step Laurentness", one_step_laurent),
    (13, "max-degree consistency", maxdeg_consistency),
)


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    _, title, fn = next(c for c in CRITERIA if c[0] == number)
    rng = random.Random(seed * 1000 + number)
    start = time.perf_counter()
    try:
        detail = fn(rng)
        res = CriterionResult(number, title, True, detail)
    except _Fail as exc:
        res = CriterionResult(number, title, False, exc.detail, exc.reference)
    except VerificationError as exc:
        res = CriterionResult(number, title, False, str(exc), exc.reference)
    except TslabError as exc:
        res = CriterionResult(number, title, False, f"{type(exc).__name__}: {exc}", title)
    res.seconds = time.perf_counter() - start
    return res


def run_all(seed: int = 0, numbers=None, report: Callable | None = None) -> list:
    out = []
    for number, _, _ in CRITERIA:
        if numbers and number not in numbers:
            continue
        res = run_criterion(number, seed)
        if report:
            report(res)
        out.append(res)
    return out
