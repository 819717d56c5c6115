"""Combinatorial model of a normal-crossings pair (M, D) and its file format.

Strata are keyed by sorted tuples of 1-based component indices; ``()`` is the
open part X itself.  Restriction maps ``r*_{IK}`` go from the ring of the
stratum I to the ring of a deeper stratum K.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .exactalg import QQ
from .graded import AlgebraMap, GradedAlgebra, identity_map

SCHEMA = "ncpair/1"

FLAG_KEYS = ("fano", "anticanonical", "pi2_omega_zero", "same_line_bundle",
             "gw_vanishing", "effective_classes", "gw_products_vanish")


class ParseError(ValueError):
    def __init__(self, message: str, where: str | None = None, line: int | None = None):
        self.where = where
        self.line = line
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if where:
            loc.append(where)
        super().__init__(f"{': '.join(loc)}: {message}" if loc else message)


Stratum = tuple


def fmt_stratum(I: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in I) + "}"


@dataclass
class StratumData:
    I: Stratum
    components: int
    ring: GradedAlgebra


@dataclass
class NCPairData:
    k: int
    dim: int
    kappa: list
    pole_orders: list
    strata: dict                     # Stratum -> StratumData
    restrictions: dict               # (I, K) -> AlgebraMap, I a proper subset of K
    flags: dict = field(default_factory=dict)
    h1_relations: list | None = None
    field: object = QQ
    name: str = ""

    @property
    def nonempty_strata(self) -> list:
        return sorted(self.strata, key=lambda I: (len(I), I))

    def ring(self, I) -> GradedAlgebra:
        return self.strata[tuple(I)].ring

    def is_stratum(self, I) -> bool:
        return tuple(sorted(I)) in self.strata

    def restriction(self, I, K) -> AlgebraMap:
        I, K = tuple(I), tuple(K)
        if I == K:
            cache = self.__dict__.setdefault("_identity", {})
            if I not in cache:
                cache[I] = identity_map(self.ring(I))
            return cache[I]
        if (I, K) in self.restrictions:
            return self.restrictions[(I, K)]
        return self._derived(I, K)

    def _derived(self, I, K) -> AlgebraMap:
        # compose along the chain adding the smallest missing index each step
        if not set(I) < set(K):
            raise KeyError(f"no restriction {fmt_stratum(I)} -> {fmt_stratum(K)}")
        j = min(set(K) - set(I))
        J = tuple(sorted(I + (j,)))
        f = self.restrictions[(I, J)]
        g = self.restriction(J, K)
        h = g.compose(f)
        self.restrictions[(I, K)] = h
        return h

    def flag(self, key, default=None):
        return self.flags.get(key, default)

    def same_line_bundle_powers(self) -> list | None:
        s = self.flags.get("same_line_bundle")
        if s is None or s is False:
            return None
        if isinstance(s, dict):
            s = s.get("powers")
        if s is True:
            return None
        return [int(x) for x in s]


# ---------------------------------------------------------------------------
# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    faces: frozenset

    def is_closed(self) -> bool:
        for f in self.faces:
            for r in range(len(f)):
                for g in combinations(f, r):
                    if g not in self.faces:
                        return False
        return True

    def minimal_nonfaces(self) -> list[tuple]:
        out = []
        verts = self.vertices
        for r in range(1, len(verts) + 1):
            for s in combinations(verts, r):
                if s in self.faces:
                    continue
                if all(t in self.faces for t in combinations(s, r - 1)):
                    out.append(s)
        return out

    def facets(self) -> list[tuple]:
        fs = sorted(self.faces, key=lambda f: (len(f), f))
        return [f for f in fs if not any(set(f) < set(g) for g in fs)]


def dual_complex(p: NCPairData) -> SimplicialComplex:
    """Faces are the index sets of nonempty strata."""
    return SimplicialComplex(tuple(range(1, p.k + 1)), frozenset(p.strata))


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def validate(p: NCPairData, check_associativity: bool = True) -> ValidationReport:
    """List every violated invariant of the pair; an empty list means valid."""
    out: list[str] = []
    if p.k < 0 or p.dim < 0:
        out.append("k and dim must be nonnegative")
    if len(p.kappa) != p.k:
        out.append(f"kappa has length {len(p.kappa)}, expected {p.k}")
    elif any(int(c) < 1 for c in p.kappa):
        out.append("every kappa_i must be >= 1")
    if len(p.pole_orders) != p.k:
        out.append(f"pole_orders has length {len(p.pole_orders)}, expected {p.k}")
    if () not in p.strata:
        out.append("the empty stratum (X itself) is missing")
    for I in p.strata:
        if any(not 1 <= i <= p.k for i in I) or list(I) != sorted(set(I)):
            out.append(f"stratum {fmt_stratum(I)} is not a sorted subset of 1..{p.k}")
            continue
        for r in range(len(I)):
            for J in combinations(I, r):
                if J not in p.strata:
                    out.append(f"closure: {fmt_stratum(I)} present but {fmt_stratum(J)} absent")
    for I, s in sorted(p.strata.items(), key=lambda kv: (len(kv[0]), kv[0])):
        A = s.ring
        tag = f"ring {fmt_stratum(I)}"
        laws = A.unit_violations() + A.degree_violations() + A.commutativity_violations()
        if check_associativity and not laws:
            laws += A.associativity_violations(limit=3)
        out += [f"{tag}: {m}" for m in laws]
        bound = 2 * p.dim - len(I)
        bad = [b for b in A.basis if b.deg < 0 or b.deg > bound]
        if bad:
            out.append(f"{tag}: degree of {bad[0].name} outside [0, {bound}]")
        h0 = len(A.in_degree(0))
        if h0 != s.components:
            out.append(f"{tag}: H^0 has rank {h0} but {s.components} components declared")
    strata = p.nonempty_strata
    for I in strata:
        for K in strata:
            if not set(I) < set(K):
                continue
            direct = (I, K) in p.restrictions
            try:
                f = p.restriction(I, K)
            except KeyError:
                out.append(f"restriction {fmt_stratum(I)}->{fmt_stratum(K)} missing")
                continue
            if direct:
                for m in f.violations():
                    out.append(f"restriction {fmt_stratum(I)}->{fmt_stratum(K)}: {m}")
    # functoriality on chains I < J < K of explicitly given maps
    for (I, K), f in sorted(p.restrictions.items()):
        for J in strata:
            if set(I) < set(J) < set(K):
                try:
                    g = p.restriction(J, K).compose(p.restriction(I, J))
                except KeyError:
                    continue
                if g.images != f.images:
                    out.append("functoriality: r*_{%s,%s} != r*_{%s,%s} o r*_{%s,%s}" % (
                        fmt_stratum(I), fmt_stratum(K), fmt_stratum(J), fmt_stratum(K),
                        fmt_stratum(I), fmt_stratum(J)))
    if p.h1_relations is not None:
        if any(len(r) != p.k for r in p.h1_relations):
            out.append(f"h1_relations rows must have {p.k} columns")
    powers = p.flags.get("same_line_bundle")
    if powers not in (None, False, True):
        pw = p.same_line_bundle_powers()
        if pw is None or len(pw) != p.k or any(x < 1 for x in pw):
            out.append("same_line_bundle powers must be k positive integers")
    return ValidationReport(out)


# ---------------------------------------------------------------------------
# serialization


def pair_to_json(p: NCPairData) -> dict:
    F = p.field
    strata = []
    for I in p.nonempty_strata:
        s = p.strata[I]
        strata.append({"I": list(I), "components": s.components, "ring": s.ring.to_json()})
    rest = []
    for (I, K) in sorted(p.restrictions, key=lambda ik: (len(ik[0]), ik[0], len(ik[1]), ik[1])):
        f = p.restrictions[(I, K)]
        rest.append({"from": list(I), "to": list(K),
                     "matrix": [[F.to_json(x) for x in row] for row in f.matrix()]})
    out = {"schema": SCHEMA}
    if p.name:
        out["name"] = p.name
    out.update({"k": p.k, "dim": p.dim, "kappa": list(p.kappa), "pole_orders": list(p.pole_orders),
                "strata": strata, "restrictions": rest, "flags": p.flags})
    if p.h1_relations is not None:
        out["h1_relations"] = p.h1_relations
    return out


def dumps_pair(p: NCPairData) -> str:
    return json.dumps(pair_to_json(p), indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _need(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field '{key}'", where)
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"field '{key}' has the wrong type", f"{where}.{key}" if where else key)
    return v


def _stratum_key(raw, where) -> Stratum:
    if not isinstance(raw, list) or not all(isinstance(i, int) for i in raw):
        raise ParseError("stratum index set must be a list of integers", where)
    return tuple(sorted(raw))


def load_pair(source, field=QQ) -> NCPairData:
    """Parse a pair file from a path or from JSON text (not validated)."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return pair_from_json(obj, field)


def pair_from_json(obj: dict, field=QQ) -> NCPairData:
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    schema = obj.get("schema")
    if schema != SCHEMA:
        raise ParseError(f"unsupported schema {schema!r}, expected {SCHEMA!r}", "schema")
    k = _need(obj, "k", "", int)
    dim = _need(obj, "dim", "", int)
    kappa = _need(obj, "kappa", "", list)
    poles = _need(obj, "pole_orders", "", list)
    strata = {}
    for n, s in enumerate(_need(obj, "strata", "", list)):
        where = f"strata[{n}]"
        I = _stratum_key(_need(s, "I", where), where + ".I")
        comps = s.get("components", 1)
        if not isinstance(comps, int):
            raise ParseError("components must be an integer", where + ".components")
        try:
            ring = GradedAlgebra.from_json(_need(s, "ring", where, dict), field)
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed ring ({exc})", where + ".ring") from None
        if I in strata:
            raise ParseError(f"duplicate stratum {fmt_stratum(I)}", where)
        strata[I] = StratumData(I, comps, ring)
    if () not in strata:
        raise ParseError("the empty stratum [] is required", "strata")
    restrictions = {}
    for n, r in enumerate(obj.get("restrictions", [])):
        where = f"restrictions[{n}]"
        I = _stratum_key(_need(r, "from", where), where + ".from")
        K = _stratum_key(_need(r, "to", where), where + ".to")
        if I not in strata or K not in strata:
            raise ParseError(f"restriction between unknown strata {fmt_stratum(I)}->{fmt_stratum(K)}", where)
        if not set(I) < set(K):
            raise ParseError("restriction source must be a proper subset of the target", where)
        mat = _need(r, "matrix", where, list)
        try:
            f = AlgebraMap.from_matrix(strata[I].ring, strata[K].ring,
                                       [[field(x) for x in row] for row in mat])
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), where + ".matrix") from None
        restrictions[(I, K)] = f
    for K in strata:
        for i in K:
            I = tuple(j for j in K if j != i)
            if I in strata and (I, K) not in restrictions:
                raise ParseError(f"missing restriction {fmt_stratum(I)}->{fmt_stratum(K)}", "restrictions")
    flags = obj.get("flags", {}) or {}
    if not isinstance(flags, dict):
        raise ParseError("flags must be an object", "flags")
    h1 = obj.get("h1_relations")
    if h1 is not None and (not isinstance(h1, list) or not all(isinstance(r, list) for r in h1)):
        raise ParseError("h1_relations must be a list of integer rows", "h1_relations")
    return NCPairData(k=k, dim=dim, kappa=[int(x) for x in kappa], pole_orders=[int(x) for x in poles],
                      strata=strata, restrictions=restrictions, flags=flags, h1_relations=h1,
                      field=field, name=str(obj.get("name", "")))


def complete_restrictions(p: NCPairData) -> NCPairData:
    """Fill in every r*_{IK} (I a proper subset of K) by composition."""
    for I in p.nonempty_strata:
        for K in p.nonempty_strata:
            if set(I) < set(K):
                p.restriction(I, K)
    return p
