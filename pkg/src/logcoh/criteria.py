"""Sufficient criteria for degeneration and for topological pairs.

Every verdict is one of Established, Inconclusive or HypothesisFailed.  Only
sufficient conditions are encoded, so the toolkit never asserts that a
spectral sequence fails to degenerate or that a pair is not topological.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .logring import LengthMismatch, primitive_vector, stanley_reisner, weight
from .pairdata import NCPairData, SimplicialComplex, fmt_stratum

ESTABLISHED = "Established"
INCONCLUSIVE = "Inconclusive"
FAILED = "HypothesisFailed"

RULES = {
    "easycor": "E1 degeneration when every D_i is a positive multiple of one divisor H and some multiple exceeds 1",
    "no_spheres": "omega vanishes on pi_2(M): no holomorphic spheres, so the pair is (multiplicatively) topological",
    "many_ample_top": "components are powers of one line bundle and k >= dim M + 1: topological",
    "many_ample_multop": "components are powers of one line bundle and k >= 2 dim M + 1: multiplicatively topological",
    "p2_blowup_top": "P^2 line arrangement blown up at points of multiplicity >= 3, every line meets >= 2 distinct points: topological",
    "p2_blowup_multop": "P^2 line arrangement blown up at points of multiplicity >= 3, every line meets >= 3 distinct points: multiplicatively topological",
    "admissible": "v_I admissible: sum_i kappa_i (A.D_i) >= w(v_I) for every effective class A",
    "condition_A": "Condition A: all D_i in one linear system, k > dim, every stratum connected",
    "fano_degree_zero": "Fano M, anticanonical D, connected strata: degree-zero degeneration and gr SH^0 = Stanley-Reisner ring",
    "logcy_surface": "log Calabi-Yau surface: every primitive vector is degree-zero admissible, gr SH^0 = H^0_log",
    "gw_vanishing": "admissible pair with vanishing obstruction classes for every I: E1 degeneration (integer coefficients)",
}


class FlagMissing(KeyError):
    pass


class DegenerateInput(ValueError):
    pass


class NotLogCY(ValueError):
    pass


@dataclass
class Verdict:
    status: str
    rule: str
    witnesses: list = field(default_factory=list)
    assumptions: list = field(default_factory=list)

    @property
    def established(self) -> bool:
        return self.status == ESTABLISHED

    def to_json(self) -> dict:
        return {"status": self.status, "rule": self.rule, "citation": RULES.get(self.rule, self.rule),
                "witnesses": list(self.witnesses), "assumptions": list(self.assumptions)}


# ---------------------------------------------------------------------------


def check_easycor(n: Sequence[int] | None = None, pair: NCPairData | None = None) -> Verdict:
    """``n`` are the multiples n_i with O(D_i) = O(n_i H); read from the pair flags when omitted."""
    if n is None:
        if pair is None or pair.same_line_bundle_powers() is None:
            raise FlagMissing("same_line_bundle")
        n = pair.same_line_bundle_powers()
    n = [int(x) for x in n]
    if not n or any(x < 1 for x in n):
        raise ValueError("multiples must be positive integers")
    big = [i + 1 for i, x in enumerate(n) if x > 1]
    if big:
        return Verdict(ESTABLISHED, "easycor", [f"n_{i} = {n[i - 1]} > 1" for i in big])
    return Verdict(INCONCLUSIVE, "easycor", ["every n_i equals 1"])


def _meta_of(meta) -> dict:
    if isinstance(meta, NCPairData):
        d = dict(meta.flags)
        d["k"], d["dim"] = meta.k, meta.dim
        return d
    return dict(meta)


def classify_pair(meta) -> dict:
    """Topological and multiplicatively topological verdicts from sufficient criteria."""
    m = _meta_of(meta)
    k, dim = int(m["k"]), int(m["dim"])
    same = m.get("same_line_bundle")
    same = bool(same) and same is not False
    top = Verdict(INCONCLUSIVE, "many_ample_top")
    mult = Verdict(INCONCLUSIVE, "many_ample_multop")
    if m.get("pi2_omega_zero") is True:
        w = ["omega(pi_2(M)) = 0"]
        return {"topological": Verdict(ESTABLISHED, "no_spheres", w),
                "multiplicatively_topological": Verdict(ESTABLISHED, "no_spheres", w)}
    if same:
        if k >= dim + 1:
            top = Verdict(ESTABLISHED, "many_ample_top", [f"k = {k} >= dim + 1 = {dim + 1}"])
        else:
            top.witnesses.append(f"k = {k} < dim + 1 = {dim + 1}")
        if k >= 2 * dim + 1:
            mult = Verdict(ESTABLISHED, "many_ample_multop", [f"k = {k} >= 2 dim + 1 = {2 * dim + 1}"])
        else:
            mult.witnesses.append(f"k = {k} < 2 dim + 1 = {2 * dim + 1}")
    else:
        top.witnesses.append("same_line_bundle not declared")
        mult.witnesses.append("same_line_bundle not declared")
    lines = m.get("arrangement_in_P2")
    if lines and dim == 2:
        res = resolve_p2_arrangement(lines)
        if not top.established and res.topological.established:
            top = res.topological
        if not mult.established and res.multiplicatively_topological.established:
            mult = res.multiplicatively_topological
    return {"topological": top, "multiplicatively_topological": mult}


# ---------------------------------------------------------------------------
# line arrangements in P^2


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _normalize(v):
    v = tuple(Fraction(x) for x in v)
    for x in v:
        if x:
            return tuple(y / x for y in v)
    return v


@dataclass
class ResolvedArrangement:
    lines: list                       # normalized forms
    points: list                      # (point, lines through it, 1-based)
    blown_up: list                    # indices into points
    components: list                  # names L1.. then E1..
    faces: list                       # nonempty strata of the resolved divisor, 1-based
    topological: Verdict
    multiplicatively_topological: Verdict

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(tuple(range(1, len(self.components) + 1)), tuple(self.faces))

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "points": [{"point": [str(x) for x in pt], "lines": list(ls)} for pt, ls in self.points],
            "blown_up": [self.components[len(self.lines) + n] for n in range(len(self.blown_up))],
            "strata": [list(f) for f in self.faces],
            "topological": self.topological.to_json(),
            "multiplicatively_topological": self.multiplicatively_topological.to_json(),
        }


def resolve_p2_arrangement(lines: Sequence[Sequence]) -> ResolvedArrangement:
    forms = [_normalize(l) for l in lines]
    if len(forms) < 2:
        raise DegenerateInput("at least two lines are required")
    for f in forms:
        if len(f) != 3 or not any(f):
            raise DegenerateInput(f"not a linear form in three variables: {f}")
    for a, b in combinations(range(len(forms)), 2):
        if forms[a] == forms[b]:
            raise DegenerateInput(f"lines {a + 1} and {b + 1} coincide")
    pts: dict = {}
    for a, b in combinations(range(len(forms)), 2):
        p = _normalize(_cross(forms[a], forms[b]))
        pts.setdefault(p, set()).update((a + 1, b + 1))
    points = sorted(((p, tuple(sorted(s))) for p, s in pts.items()), key=lambda t: (t[1], t[0]))
    k = len(forms)
    blown = [n for n, (_, ls) in enumerate(points) if len(ls) >= 3]
    comps = [f"L{i}" for i in range(1, k + 1)] + [f"E{j}" for j in range(1, len(blown) + 1)]
    faces = {()} | {(i,) for i in range(1, len(comps) + 1)}
    for n, (_, ls) in enumerate(points):
        if len(ls) == 2:
            faces.add(ls)
    for j, n in enumerate(blown):
        e = k + 1 + j
        for i in points[n][1]:
            faces.add((i, e))
    faces = sorted(faces, key=lambda f: (len(f), f))
    distinct = {i: sum(1 for _, ls in points if i in ls) for i in range(1, k + 1)}
    few2 = [i for i, c in distinct.items() if c < 2]
    few3 = [i for i, c in distinct.items() if c < 3]
    wit = [f"line {i} meets the others in {distinct[i]} distinct points" for i in range(1, k + 1)]
    if len(blown):
        wit.append(f"{len(blown)} point(s) of multiplicity >= 3 blown up")
    top = Verdict(ESTABLISHED if not few2 else INCONCLUSIVE, "p2_blowup_top", wit)
    mult = Verdict(ESTABLISHED if not few3 else INCONCLUSIVE, "p2_blowup_multop", wit)
    return ResolvedArrangement(list(forms), points, blown, comps, faces, top, mult)


# ---------------------------------------------------------------------------


def check_admissible(v_I: Sequence[int], kappa: Sequence[int],
                     effective_classes: Sequence[Sequence[int]]) -> bool:
    k = len(kappa)
    if len(v_I) != k:
        raise LengthMismatch("v_I and kappa must have equal length")
    if any(x not in (0, 1) for x in v_I) or not any(v_I):
        raise ValueError("v_I must be a primitive vector")
    w = weight(v_I, kappa)
    for A in effective_classes:
        if len(A) != k:
            raise LengthMismatch("each class vector must have length k")
        if sum(c * a for c, a in zip(kappa, A)) < w:
            return False
    return True


def _inadmissible(p: NCPairData) -> list[tuple]:
    classes = p.flag("effective_classes", [])
    bad = []
    for I in p.nonempty_strata:
        if I and not check_admissible(primitive_vector(I, p.k), p.kappa, classes):
            bad.append(primitive_vector(I, p.k))
    return bad


def check_condition_A(p: NCPairData) -> Verdict:
    powers = p.same_line_bundle_powers()
    fails = []
    if powers is None:
        return Verdict(INCONCLUSIVE, "condition_A", ["same_line_bundle powers not declared"])
    if len(set(powers)) != 1:
        fails.append(f"divisors are not in one linear system: powers {powers}")
    if p.k <= p.dim:
        fails.append(f"k = {p.k} <= dim = {p.dim}")
    for I in p.nonempty_strata:
        c = p.strata[I].components
        if c != 1:
            fails.append(f"stratum D_{fmt_stratum(I)} has {c} components")
    if fails:
        return Verdict(FAILED, "condition_A", fails)
    return Verdict(ESTABLISHED, "condition_A", [f"k = {p.k} > dim = {p.dim}", "all strata connected"])


@dataclass
class DegreeZeroReport:
    verdict: Verdict
    gr_sh0: str | None

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(), "gr_SH0": self.gr_sh0}


def degree_zero_report(p: NCPairData) -> DegreeZeroReport:
    if p.flag("anticanonical") is not True or any(a != 1 for a in p.pole_orders):
        raise NotLogCY("degree-zero criteria need an anticanonical divisor with all pole orders 1")
    connected = all(s.components == 1 for s in p.strata.values())
    if p.flag("fano") is True and connected:
        v = Verdict(ESTABLISHED, "fano_degree_zero", ["M Fano", "D anticanonical", "all strata connected"])
        return DegreeZeroReport(v, stanley_reisner(p).text())
    if p.dim == 2:
        v = Verdict(ESTABLISHED, "logcy_surface", ["log Calabi-Yau pair of complex dimension 2"])
        return DegreeZeroReport(v, stanley_reisner(p).text())
    wit = []
    if p.flag("fano") is not True:
        wit.append("fano not declared")
    if not connected:
        wit.append("some stratum is disconnected")
    wit.append(f"dim = {p.dim} != 2")
    return DegreeZeroReport(Verdict(INCONCLUSIVE, "fano_degree_zero", wit), None)


def gw_degeneration_report(p: NCPairData, gw_vanishing: Mapping | None = None) -> Verdict:
    """``gw_vanishing`` maps strata (tuples or strings such as "{1,2}") to booleans."""
    flags = {}
    for key, val in (gw_vanishing or {}).items():
        if isinstance(key, str):
            s = key.strip("{}[]() ")
            key = tuple(sorted(int(x) for x in s.split(",") if x.strip()))
        flags[tuple(key)] = bool(val)
    assumptions = [f"obstruction class for I={fmt_stratum(I)} vanishes: {flags.get(I, 'not supplied')}"
                   for I in p.nonempty_strata if I]
    assumptions.append("coefficients in the integers")
    if p.flag("effective_classes") is None:
        return Verdict(INCONCLUSIVE, "gw_vanishing", ["effective curve classes not supplied"], assumptions)
    bad = _inadmissible(p)
    if bad:
        return Verdict(FAILED, "admissible", [f"v = {v} is not admissible" for v in bad], assumptions)
    missing = [I for I in p.nonempty_strata if I and flags.get(I) is not True]
    if missing:
        return Verdict(INCONCLUSIVE, "gw_vanishing",
                       [f"no vanishing statement for I={fmt_stratum(I)}" for I in missing], assumptions)
    return Verdict(ESTABLISHED, "gw_vanishing", ["every primitive vector is admissible"], assumptions)


def full_report(p: NCPairData, gw_vanishing: Mapping | None = None) -> dict:
    """Every applicable verdict for a pair, keyed by criterion."""
    out = {}
    try:
        out["easycor"] = check_easycor(pair=p).to_json()
    except FlagMissing:
        out["easycor"] = Verdict(INCONCLUSIVE, "easycor", ["same_line_bundle not declared"]).to_json()
    for key, v in classify_pair(p).items():
        out[key] = v.to_json()
    out["condition_A"] = check_condition_A(p).to_json()
    try:
        out["degree_zero"] = degree_zero_report(p).to_json()
    except NotLogCY as exc:
        out["degree_zero"] = {"verdict": Verdict(FAILED, "fano_degree_zero", [str(exc)]).to_json(),
                              "gr_SH0": None}
    out["gw_degeneration"] = gw_degeneration_report(p, gw_vanishing).to_json()
    return out
