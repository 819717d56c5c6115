"""Hyperplane arrangements: Orlik-Solomon algebras, projective complements,
generic (P^n, k hyperplanes) pairs, and the mirror Jacobian comparison."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import NamedTuple, Sequence

from .exactalg import QQ, Echelon, rank as mat_rank, sparse_kernel, sparse_rank
from .graded import (AlgebraMap, BasisElement, GradedAlgebra, exterior_algebra, monomial_name,
                     quotient_algebra, subalgebra)
from .pairdata import NCPairData, StratumData, validate


class InvalidParameters(ValueError):
    pass


class WeightBoundTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    forms: tuple
    mode: str = "central"

    def __post_init__(self):
        if self.mode not in ("central", "projective"):
            raise ValueError(f"mode must be central or projective, got {self.mode!r}")
        if not self.forms:
            raise ValueError("an arrangement needs at least one form")
        n = len(self.forms[0])
        for f in self.forms:
            if len(f) != n:
                raise ValueError("all forms must have the same number of variables")
            if not any(f):
                raise ValueError("zero linear form")

    @classmethod
    def of(cls, forms, mode="central") -> "Arrangement":
        return cls(tuple(tuple(Fraction(x) for x in f) for f in forms), mode)

    @property
    def k(self) -> int:
        return len(self.forms)

    @property
    def nvars(self) -> int:
        return len(self.forms[0])

    def cone(self) -> "Arrangement":
        return Arrangement(self.forms, "central")

    def to_json(self) -> dict:
        return {"schema": "arr/1", "mode": self.mode,
                "forms": [[QQ.to_json(x) for x in f] for f in self.forms]}

    @classmethod
    def from_json(cls, obj: dict) -> "Arrangement":
        if obj.get("schema") != "arr/1":
            raise ValueError(f"unsupported arrangement schema {obj.get('schema')!r}")
        return cls.of(obj["forms"], obj.get("mode", "central"))


def boolean_arrangement(n: int) -> Arrangement:
    return Arrangement.of([[int(i == j) for j in range(n)] for i in range(n)])


def moment_forms(ts: Sequence[int], nvars: int) -> list[list[int]]:
    """Forms (1, t, t^2, ...) on the moment curve; any nvars of them are independent."""
    return [[t ** e for e in range(nvars)] for t in ts]


def generic_central(k: int, nvars: int) -> Arrangement:
    return Arrangement.of(moment_forms(range(1, k + 1), nvars))


# ---------------------------------------------------------------------------
# intersection lattice


class Flat(NamedTuple):
    rank: int
    closure: tuple
    empty: bool


def intersection_lattice(a: Arrangement) -> dict:
    """Map every subset I (0-based tuple) to its rank, closure and emptiness."""
    ranks = {(): 0}
    for r in range(1, a.k + 1):
        for I in combinations(range(a.k), r):
            ranks[I] = mat_rank([a.forms[i] for i in I])
    out = {}
    full = a.nvars
    for I, rk in ranks.items():
        clo = tuple(j for j in range(a.k)
                    if j in I or ranks[tuple(sorted(I + (j,)))] == rk)
        empty = a.mode == "projective" and rk == full
        out[I] = Flat(rk, clo, empty)
    return out


def dependent_sets(a: Arrangement) -> list[tuple]:
    lat = intersection_lattice(a)
    return [I for I, f in lat.items() if I and f.rank < len(I)]


# ---------------------------------------------------------------------------
# Orlik-Solomon algebras


def _subset_index(n: int) -> dict:
    subsets = [s for r in range(n + 1) for s in combinations(range(n), r)]
    return {s: i for i, s in enumerate(subsets)}


def _delta_monomial(S: tuple) -> list[tuple[int, tuple]]:
    return [((-1) ** t, S[:t] + S[t + 1:]) for t in range(len(S))]


def delta_free(E: GradedAlgebra, index: dict, positions: Sequence[int], v: dict) -> dict:
    """The derivation with delta(generator at p) = 1 for p in ``positions`` (0 elsewhere)."""
    inv = {i: s for s, i in index.items()}
    pos = set(positions)
    out: dict = {}
    for i, c in v.items():
        S = inv[i]
        for t in range(len(S)):
            if S[t] not in pos:
                continue
            T = S[:t] + S[t + 1:]
            j = index[T]
            s = out.get(j, 0) + ((-1) ** t) * c
            if s:
                out[j] = s
            else:
                out.pop(j, None)
    return out


def os_ideal_span(E: GradedAlgebra, index: dict, positions: Sequence[int], dependent: Sequence[tuple],
                  extra_positions: Sequence[int] = ()) -> list[dict]:
    """Spanning set of the OS ideal of a central arrangement living on ``positions``.

    For dependent S the monomial e_S and its boundary delta(e_S) lie in the
    ideal, and together they span it degreewise.  ``extra_positions`` are
    further free generators; the ideal is extended by all their monomials.
    """
    one = E.field.one
    gens = []
    for S in dependent:
        P = tuple(positions[i] for i in S)
        gens.append({index[P]: one})
        gens.append(delta_free(E, index, positions, {index[P]: one}))
    if not extra_positions:
        return [g for g in gens if g]
    out = []
    monos = [s for r in range(len(extra_positions) + 1) for s in combinations(extra_positions, r)]
    for g in gens:
        if not g:
            continue
        for T in monos:
            v = E.mul(g, {index[T]: one})
            if v:
                out.append(v)
    return out


@dataclass
class OSAlgebra:
    arrangement: Arrangement
    free: GradedAlgebra          # exterior algebra on the hat-beta generators
    algebra: GradedAlgebra       # the quotient
    ideal: list                  # spanning vectors of the ideal in ``free``
    project: object              # free vector -> quotient vector
    reps: list                   # quotient basis index -> free basis index
    _index: dict

    def lift(self, v: dict) -> dict:
        return {self.reps[i]: c for i, c in v.items()}

    def delta(self, v: dict) -> dict:
        """delta on the quotient (well defined since delta preserves the ideal)."""
        w = delta_free(self.free, self._index, range(self.arrangement.k), self.lift(v))
        return self.project(w)

    def poincare(self) -> list[int]:
        b = self.algebra.betti()
        return [b.get(d, 0) for d in range(max(b) + 1)]


def orlik_solomon(a: Arrangement, field=QQ, names: Sequence[str] | None = None) -> OSAlgebra:
    """Exterior algebra on k degree-1 generators modulo the OS ideal (central mode)."""
    if a.mode != "central":
        raise ValueError("orlik_solomon expects a central arrangement; use the cone")
    k = a.k
    names = names or [f"bh{i + 1}" for i in range(k)]
    E = exterior_algebra([(nm, 1) for nm in names], field)
    index = _subset_index(k)
    ideal = os_ideal_span(E, index, list(range(k)), dependent_sets(a))
    q = quotient_algebra(E, ideal)
    return OSAlgebra(a, E, q.algebra, ideal, q.project, q.representatives, index)


def os_poincare_bruteforce(a: Arrangement, field=QQ) -> list[int]:
    """Oracle: quotient dimensions of the ideal generated by delta(e_S), S dependent,
    obtained by multiplying each generator with every exterior monomial."""
    k = a.k
    E = exterior_algebra([(f"x{i}", 1) for i in range(k)], field)
    index = _subset_index(k)
    one = field.one
    gens = [delta_free(E, index, range(k), {index[S]: one}) for S in dependent_sets(a)]
    by_deg: dict[int, list] = {}
    for g in gens:
        for T in index:
            v = E.mul({index[T]: one}, g)
            if v:
                by_deg.setdefault(E.degree_of(v), []).append(v)
    from math import comb
    out = []
    for d in range(k + 1):
        out.append(comb(k, d) - sparse_rank(by_deg.get(d, [])))
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass
class Complement:
    algebra: GradedAlgebra
    os: OSAlgebra
    vectors: list        # basis of H*(X) as vectors in the OS quotient
    monomials: list      # the generator subsets J realising each basis vector
    reference: int       # 0-based index r with beta_m = hat-beta_m - hat-beta_r


def _beta_monomial(os: OSAlgebra, J: Sequence[int], r: int) -> dict:
    E, idx = os.free, os._index
    one = E.field.one
    v = {idx[()]: one}
    for m in J:
        v = E.mul(v, {idx[(m,)]: one, idx[(r,)]: -one})
    return v


def complement_data(a: Arrangement, field=QQ, reference: int = 0) -> Complement:
    cone = a.cone()
    os = orlik_solomon(cone, field)
    others = [m for m in range(a.k) if m != reference]
    e = Echelon()
    vecs, monos, names = [], [], []
    for r in range(len(others) + 1):
        for J in combinations(others, r):
            v = os.project(_beta_monomial(os, J, reference))
            if v and e.add(v):
                vecs.append(v)
                monos.append(J)
                names.append(monomial_name([f"b{m + 1}" for m in J]))
    alg, _ = subalgebra(os.algebra, vecs, names)
    return Complement(alg, os, vecs, monos, reference)


def projective_complement(a: Arrangement, field=QQ) -> GradedAlgebra:
    """Cohomology ring of P^n minus the arrangement, as ker(delta) in OS(cone)."""
    return complement_data(a, field).algebra


def kernel_of_delta_dims(os: OSAlgebra) -> dict[int, int]:
    A = os.algebra
    out = {}
    for d in A.degrees():
        idx = A.in_degree(d)
        rows: dict[int, dict] = {}
        for n, g in enumerate(idx):
            for r, c in os.delta({g: A.field.one}).items():
                rows.setdefault(r, {})[n] = c
        out[d] = len(sparse_kernel(rows.values(), len(idx)))
    return out


# ---------------------------------------------------------------------------
# generic pairs (P^n, k hyperplanes)


class _StratumModel:
    """Free model of H*(S_K) for the generic pair: generators, OS quotient, ring."""

    def __init__(self, n: int, k: int, K: tuple, field):
        self.K = K
        self.N = k - len(K)
        self.d = n - len(K)
        outside = [m for m in range(1, k + 1) if m not in K]
        self.r = outside[0] if outside else None
        if self.N >= 1:
            cname = "bh" if not K else "c"
            gens = [(f"{cname}{m}", 1, ("c", m)) for m in outside] + [(f"e{i}", 1, ("e", i)) for i in K]
        else:
            gens = [(f"e{i}", 1, ("e", i)) for i in K] + [("s", 2 * self.d + 1, ("s", 0))]
        self.pos = {tag: p for p, (_, _, tag) in enumerate(gens)}
        self.free = exterior_algebra([(nm, dg) for nm, dg, _ in gens], field)
        self.index = _subset_index(len(gens))
        one = field.one
        if self.N >= 1:
            arr = Arrangement.of(moment_forms(outside, self.d + 1))
            dep = dependent_sets(arr)
            cpos = [self.pos[("c", m)] for m in outside]
            epos = [self.pos[("e", i)] for i in K]
            self.ideal = os_ideal_span(self.free, self.index, cpos, dep, epos)
        else:
            self.ideal = []
        q = quotient_algebra(self.free, self.ideal)
        self.Q, self.project, self.reps = q.algebra, q.project, q.representatives
        # ring generators
        if self.N >= 1:
            rg = [(f"b{m}", self.g("c", m, -1, ("c", self.r))) for m in outside if m != self.r]
            rg += [(f"e{i}", self.g("e", i)) for i in K]
        else:
            i0 = K[0]
            rg = [(f"f{i}", self.g("e", i, -1, ("e", i0))) for i in K if i != i0]
            rg += [("s", self.g("s", 0))]
        e = Echelon()
        vecs, names = [], []
        for r in range(len(rg) + 1):
            for J in combinations(range(len(rg)), r):
                v = {self.index[()]: one}
                for j in J:
                    v = self.free.mul(v, rg[j][1])
                w = self.project(v)
                if w and e.add(w):
                    vecs.append(w)
                    names.append(monomial_name([rg[j][0] for j in J]))
        self.ring, self.ring_vecs = subalgebra(self.Q, vecs, names)
        self.coord = Echelon(track=True)
        for v in self.ring_vecs:
            self.coord.add(v)

    def g(self, kind, i, coef=None, other=None) -> dict:
        one = self.free.field.one
        v = {self.index[(self.pos[(kind, i)],)]: one}
        if other is not None:
            v[self.index[(self.pos[other],)]] = coef * one
        return v

    def rho(self, m: int) -> dict:
        """Image of hat-beta_m (the log form of the m-th hyperplane) in the free model."""
        one = self.free.field.one
        if m not in self.K:
            return self.g("c", m)
        if self.N >= 1:
            return {self.index[(self.pos[("e", m)],)]: one, self.index[(self.pos[("c", self.r)],)]: one}
        return self.g("e", m)

    def to_ring(self, v_free: dict) -> dict:
        w = self.project(v_free)
        if self.coord.reduce(w):
            raise AssertionError(f"class does not lie in the stratum ring of {self.K}")
        return self.coord.coords(w)


class _FreeHom:
    """Algebra map between free models given on generators, with monomial cache."""

    def __init__(self, src: _StratumModel, images: dict):
        self.src = src
        self.images = images      # generator position -> vector in target free
        self.cache = {}

    def __call__(self, v: dict, tgt: _StratumModel) -> dict:
        out: dict = {}
        inv = self._inv()
        for i, c in v.items():
            img = self.cache.get(i)
            if img is None:
                img = {tgt.index[()]: tgt.free.field.one}
                for p in inv[i]:
                    img = tgt.free.mul(img, self.images[p])
                self.cache[i] = img
            for j, a in img.items():
                s = out.get(j, 0) + c * a
                if s:
                    out[j] = s
                else:
                    out.pop(j, None)
        return out

    def _inv(self):
        if not hasattr(self, "_inverse"):
            self._inverse = {i: s for s, i in self.src.index.items()}
        return self._inverse


def _free_hom(I: _StratumModel, K: _StratumModel) -> _FreeHom:
    imgs = {}
    for tag, p in I.pos.items():
        kind, m = tag
        if kind == "c":
            imgs[p] = K.rho(m)
        elif kind == "e":
            v = dict(K.rho(m))
            for j, c in K.rho(I.r).items():
                s = v.get(j, 0) - c
                if s:
                    v[j] = s
                else:
                    v.pop(j, None)
            imgs[p] = v
        else:
            raise InvalidParameters("a stratum with no outside hyperplane has no deeper strata")
    return _FreeHom(I, imgs)


@lru_cache(maxsize=None)
def _generic_models(n: int, k: int, field=QQ) -> dict:
    strata = [I for r in range(min(n, k) + 1) for I in combinations(range(1, k + 1), r)]
    return {I: _StratumModel(n, k, I, field) for I in strata}


def restriction_free_map(n: int, k: int, I: tuple, K: tuple, field=QQ) -> _FreeHom:
    models = _generic_models(n, k, field)
    return _free_hom(models[I], models[K])


def generic_restriction(n: int, k: int, I: tuple, K: tuple, field=QQ) -> AlgebraMap:
    models = _generic_models(n, k, field)
    mi, mk = models[I], models[K]
    h = _free_hom(mi, mk)
    images = []
    for v in mi.ring_vecs:
        lifted = {mi.reps[q]: c for q, c in v.items()}
        images.append(mk.to_ring(h(lifted, mk)))
    return AlgebraMap(mi.ring, mk.ring, images)


def build_generic_pair(n: int, k: int, field=QQ, check: bool = True) -> NCPairData:
    """(P^n, k generic hyperplanes): strata are the I with |I| <= n."""
    if n < 1 or k < 1:
        raise InvalidParameters("need n >= 1 and k >= 1")
    models = _generic_models(n, k, field)
    strata = {I: StratumData(I, 1, m.ring) for I, m in models.items()}
    restrictions = {}
    keys = sorted(models, key=lambda I: (len(I), I))
    for I in keys:
        for K in keys:
            if set(I) < set(K):
                restrictions[(I, K)] = generic_restriction(n, k, I, K, field)
    flags = {"fano": True, "anticanonical": k == n + 1, "pi2_omega_zero": False,
             "same_line_bundle": [1] * k, "effective_classes": [[1] * k]}
    p = NCPairData(k=k, dim=n, kappa=[1] * k, pole_orders=[1] * k, strata=strata,
                   restrictions=restrictions, flags=flags, h1_relations=[[1] * k], field=field,
                   name=f"P{n} minus {k} generic hyperplanes")
    if check:
        rep = validate(p, check_associativity=False)
        if not rep.ok:
            raise AssertionError("generic pair failed validation: " + "; ".join(rep.failures[:5]))
    return p


def ideal_compatibility_failures(n: int, k: int, field=QQ) -> list[str]:
    """Check that every free-level restriction sends the OS ideal of I into that of K."""
    models = _generic_models(n, k, field)
    out = []
    for I, mi in models.items():
        for K, mk in models.items():
            if not set(I) < set(K):
                continue
            h = _free_hom(mi, mk)
            for v in mi.ideal:
                if mk.project(h(v, mk)):
                    out.append(f"{I}->{K}")
                    break
    return out


# ---------------------------------------------------------------------------
# restriction kernels


def restriction_kernel(n: int, k: int, I: Sequence[int], field=QQ) -> list[dict]:
    """Basis (in H*(X) coordinates) of the kernel of H*(X) -> H*(S_I), by linear algebra."""
    I = tuple(sorted(I))
    if len(I) > n:
        raise InvalidParameters("the stratum is empty for |I| > n")
    if not I:
        return []
    return generic_restriction(n, k, (), I, field).kernel()


def restriction_kernel_formula(n: int, k: int, I: Sequence[int], field=QQ) -> list[dict]:
    """Closed-form spanning set of the same kernel.

    With a reference hyperplane j outside I and beta_m = hat-beta_m - hat-beta_j,
    the kernel is the ideal generated by the monomials beta^J with J disjoint
    from I and |J| = n - |I| + 1.  As a vector space it is spanned by the
    basis monomials beta^J (J avoiding j, |J| <= n) with |J - I| > n - |I|.
    """
    I = tuple(sorted(I))
    if not I or len(I) == k:
        # with every hyperplane in I the restriction is injective
        return []
    models = _generic_models(n, k, field)
    X = models[()]
    j = min(m for m in range(1, k + 1) if m not in I)
    one = field.one
    out = []
    for r in range(n + 1):
        for J in combinations([m for m in range(1, k + 1) if m != j], r):
            if len(set(J) - set(I)) <= n - len(I):
                continue
            v = {X.index[()]: one}
            for m in J:
                v = X.free.mul(v, X.g("c", m, -1, ("c", j)))
            out.append(X.to_ring(v))
    return [v for v in out if v]


def literal_disjoint_span(n: int, k: int, I: Sequence[int], field=QQ) -> list[dict]:
    """The monomials beta^J (J nonempty, disjoint from I, avoiding j) taken as a plain span."""
    I = tuple(sorted(I))
    if len(I) == k:
        return []
    models = _generic_models(n, k, field)
    X = models[()]
    j = min(m for m in range(1, k + 1) if m not in I)
    one = field.one
    out = []
    rest = [m for m in range(1, k + 1) if m != j and m not in I]
    for r in range(1, len(rest) + 1):
        for J in combinations(rest, r):
            v = {X.index[()]: one}
            for m in J:
                v = X.free.mul(v, X.g("c", m, -1, ("c", j)))
            w = X.to_ring(v)
            if w:
                out.append(w)
    return out


def same_span(a: Sequence[dict], b: Sequence[dict]) -> bool:
    ra, rb = sparse_rank(a), sparse_rank(b)
    return ra == rb == sparse_rank(list(a) + list(b))


def sh_presentation(n: int, k: int, W: int = 4, field=QQ):
    """Presentation of the log ring of a generic pair, plus its Hilbert table."""
    from .logring import presentation_topological
    p = build_generic_pair(n, k, field)
    pres = presentation_topological(p)
    if k < n + 2:
        pres.notes.append(f"k={k} < n+2: outside the range where the presentation is of interest")
    return pres, pres.hilbert_table(W)


# ---------------------------------------------------------------------------
# Jacobian ring of W = z_1 ... z_m


def monomials(m: int, deg: int) -> list[tuple]:
    out = []
    for c in combinations_with_replacement(range(m), deg):
        e = [0] * m
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass
class JacobianRing:
    m: int
    relations: list          # squarefree monomials, as exponent tuples

    def is_standard(self, mono: tuple) -> bool:
        return not any(all(a >= b for a, b in zip(mono, r)) for r in self.relations)

    def hilbert(self, order: int) -> list[int]:
        return [sum(1 for mono in monomials(self.m, d) if self.is_standard(mono)) for d in range(order + 1)]

    def text(self) -> str:
        rel = ", ".join("".join(f"z{i + 1}" for i, e in enumerate(r) if e) for r in self.relations)
        gens = ",".join(f"z{i + 1}" for i in range(self.m))
        return f"k[{gens}]/({rel})"


def jacobian_ring(m: int) -> JacobianRing:
    """Jac(z_1...z_m): the partial derivatives are the products omitting one variable."""
    if m < 2:
        raise InvalidParameters("need at least two variables")
    rels = [tuple(0 if j == i else 1 for j in range(m)) for i in range(m)]
    return JacobianRing(m, rels)


def sr_jacobian_isomorphism(n: int, order: int = 6) -> tuple[bool, dict]:
    """Check t_i -> z_i identifies SR(P^n, n+2 hyperplanes) with Jac(z_1...z_{n+2})."""
    from .logring import stanley_reisner
    if n < 1:
        raise InvalidParameters("n >= 1")
    m = n + 2
    p = build_generic_pair(n, m)
    sr = stanley_reisner(p)
    jac = jacobian_ring(m)
    mapped = sorted(tuple(1 if (i + 1) in S else 0 for i in range(m)) for S in sr.relations)
    target = sorted(jac.relations)
    relations_ok = mapped == target and len(set(mapped)) == len(mapped)
    sr_h = [sr.weight_dims(order).get(w, 0) for w in range(order + 1)]
    jac_h = jac.hilbert(order)
    witness = {"map": {f"t{i}": f"z{i}" for i in range(1, m + 1)},
               "sr_relations": ["*".join(f"t{i}" for i in S) for S in sr.relations],
               "jacobian_relations": ["*".join(f"z{i + 1}" for i, e in enumerate(r) if e) for r in jac.relations],
               "sr_hilbert": sr_h, "jacobian_hilbert": jac_h}
    return relations_ok and sr_h == jac_h, witness


# ---------------------------------------------------------------------------
# polyvector fields with differential contraction by dW


def _dW(m: int, i: int) -> tuple:
    return tuple(0 if j == i else 1 for j in range(m))


def _iota_dW(m: int, mono: tuple, S: tuple) -> list[tuple[int, tuple, tuple]]:
    out = []
    for t, i in enumerate(S):
        g = _dW(m, i)
        out.append(((-1) ** t, tuple(a + b for a, b in zip(mono, g)), S[:t] + S[t + 1:]))
    return out


def polyvector_basis(m: int, s: int, w: int) -> list[tuple[tuple, tuple]]:
    """Basis f*d_S of s-vector fields with weight deg f - s = w."""
    deg = w + s
    if deg < 0:
        return []
    return [(mono, S) for S in combinations(range(m), s) for mono in monomials(m, deg)]


def _iota_matrix(m: int, s: int, w: int, field):
    """Matrix of contraction from s-vectors of weight w to (s-1)-vectors of weight w+m."""
    src = polyvector_basis(m, s, w)
    tgt = polyvector_basis(m, s - 1, w + m)
    pos = {b: i for i, b in enumerate(tgt)}
    cols = []
    for mono, S in src:
        # the internal weight deg f + (m-1)|S| is preserved
        col = {}
        for sign, mono2, S2 in _iota_dW(m, mono, S):
            assert sum(mono2) + (m - 1) * len(S2) == sum(mono) + (m - 1) * len(S)
            j = pos[(mono2, S2)]
            col[j] = col.get(j, 0) + sign
        cols.append({j: field(c) for j, c in col.items() if c})
    return src, tgt, cols


@dataclass
class MirrorReport:
    m: int
    bound: int
    h0: dict                 # weight -> dim
    h1: dict                 # weight -> dim
    h0_log: dict             # weight -> dim of degree-0 log classes
    h1_log: dict
    sr: dict                 # weight -> SR dim
    b1: int
    euler_classes_independent: bool

    @property
    def h0_matches_sr(self) -> bool:
        return all(self.h0[w] == self.sr.get(w, 0) for w in self.h0)

    @property
    def h1_weight0_matches_b1(self) -> bool:
        return self.h1.get(0) == self.b1


def mirror_hochschild(m: int, bound: int, field=QQ) -> MirrorReport:
    """Weightwise H^0 and H^1 of polyvector fields on A^m with differential iota_{dW}."""
    from .logring import build_log_ring, hilbert_table, stanley_reisner
    if m < 3:
        raise InvalidParameters("m >= 3")
    if bound < 1:
        raise WeightBoundTooSmall("the weight bound must be at least 1")
    h0, h1 = {}, {}
    euler_ok = True
    for w in range(0, bound + 1):
        # H^0_w = Lambda^0_w / iota(Lambda^1_{w-m})
        src, tgt, cols = _iota_matrix(m, 1, w - m, field)
        rk = sparse_rank(cols)
        h0[w] = len(polyvector_basis(m, 0, w)) - rk
        # H^1_w = ker(Lambda^1_w -> Lambda^0_{w+m}) / iota(Lambda^2_{w-m})
        src1, _, cols1 = _iota_matrix(m, 1, w, field)
        rows: dict[int, dict] = {}
        for c, col in enumerate(cols1):
            for r, a in col.items():
                rows.setdefault(r, {})[c] = a
        ker = sparse_kernel(rows.values(), len(src1))
        _, _, cols2 = _iota_matrix(m, 2, w - m, field)
        h1[w] = len(ker) - sparse_rank(cols2)
        if w == 0:
            pos = {b: i for i, b in enumerate(src1)}
            one = field.one
            classes = []
            for i in range(m - 1):
                ei = tuple(int(j == i) for j in range(m))
                em = tuple(int(j == m - 1) for j in range(m))
                classes.append({pos[(ei, (i,))]: one, pos[(em, (m - 1,))]: -one})
            # each is a cycle, and they are independent modulo the (here zero) boundaries
            for v in classes:
                img = {}
                for c, a in v.items():
                    for r, b in cols1[c].items():
                        img[r] = img.get(r, 0) + a * b
                if any(img.values()):
                    euler_ok = False
            bnd = list(cols2)
            if sparse_rank(bnd + classes) != sparse_rank(bnd) + len(classes):
                euler_ok = False
    p = build_generic_pair(m - 2, m, field)
    L = build_log_ring(p, bound)
    tab = hilbert_table(L)
    sr = stanley_reisner(p).weight_dims(bound)
    h0_log = {w: tab.dims.get((0, w), 0) for w in range(bound + 1)}
    h1_log = {w: tab.dims.get((1, w), 0) for w in range(bound + 1)}
    b1 = p.ring(()).betti().get(1, 0)
    return MirrorReport(m, bound, h0, h1, h0_log, h1_log, {w: sr.get(w, 0) for w in range(bound + 1)},
                        b1, euler_ok)
