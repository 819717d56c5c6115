"""Weight-truncated logarithmic cohomology rings of normal-crossings pairs.

A class alpha t^v pairs a multiplicity vector v with a cohomology class alpha
of the open stratum indexed by supp(v).  Its weight is sum(kappa_i v_i) and its
degree is deg(alpha) + 2 sum((1 - a_i) v_i).  The product restricts both
factors to the stratum of the union of supports and multiplies there.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import NamedTuple, Sequence

from .exactalg import Echelon, axpy, smith_normal_form
from .pairdata import NCPairData, dual_complex, fmt_stratum, validate


class LengthMismatch(ValueError):
    pass


class ValidationRequired(ValueError):
    pass


class RestrictionNotSurjective(ValueError):
    def __init__(self, stratum):
        self.stratum = stratum
        super().__init__(f"restriction H*(X) -> H*(S_{fmt_stratum(stratum)}) is not surjective")


def _check_len(v, k, what="vector"):
    if len(v) != k:
        raise LengthMismatch(f"{what} has length {len(v)}, expected {k}")


def weight(v: Sequence[int], kappa: Sequence[int]) -> int:
    _check_len(v, len(kappa))
    return sum(a * b for a, b in zip(v, kappa))


def log_degree(alpha_degree: int, v: Sequence[int], pole_orders: Sequence[int]) -> int:
    _check_len(v, len(pole_orders))
    return alpha_degree + 2 * sum((1 - a) * x for a, x in zip(pole_orders, v))


def support(v: Sequence[int]) -> tuple:
    return tuple(i + 1 for i, x in enumerate(v) if x)


def primitive_vector(I: Sequence[int], k: int) -> tuple:
    return tuple(1 if (i + 1) in I else 0 for i in range(k))


def multiplicity_vectors(kappa: Sequence[int], W: int, faces=None) -> list[tuple]:
    """All v >= 0 with weight <= W (and support in ``faces`` when given)."""
    k = len(kappa)
    out = []

    def rec(i, left, cur):
        if i == k:
            out.append(tuple(cur))
            return
        for x in range(left // kappa[i] + 1):
            cur.append(x)
            rec(i + 1, left - x * kappa[i], cur)
            cur.pop()

    rec(0, W, [])
    if faces is not None:
        out = [v for v in out if support(v) in faces]
    return sorted(out, key=lambda v: (weight(v, kappa), v))


def _vname(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


class LogBasis(NamedTuple):
    v: tuple
    alpha: int
    w: int
    deg: int
    name: str


class LogRingTruncation:
    """Basis and lazily tabulated products of the weight <= W part."""

    def __init__(self, pair: NCPairData, W: int):
        self.pair = pair
        self.W = W
        self.field = pair.field
        basis = []
        for v in multiplicity_vectors(pair.kappa, W, set(pair.strata)):
            ring = pair.ring(support(v))
            w = weight(v, pair.kappa)
            for a, b in enumerate(ring.basis):
                nm = b.name if not any(v) else f"{b.name} t^{_vname(v)}"
                basis.append(LogBasis(v, a, w, log_degree(b.deg, v, pair.pole_orders), nm))
        self.basis = basis
        self.index = {(b.v, b.alpha): i for i, b in enumerate(basis)}
        self.pieces: dict[tuple, list[int]] = {}
        for i, b in enumerate(basis):
            self.pieces.setdefault(b.v, []).append(i)
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def in_range(self, i: int, j: int) -> bool:
        return self.basis[i].w + self.basis[j].w <= self.W

    def mul_basis(self, i: int, j: int) -> dict:
        """Product of basis classes; zero when it leaves the truncation."""
        key = (i, j)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        bi, bj = self.basis[i], self.basis[j]
        out: dict = {}
        if bi.w + bj.w <= self.W:
            v = tuple(a + b for a, b in zip(bi.v, bj.v))
            K = support(v)
            if self.pair.is_stratum(K):
                I, J = support(bi.v), support(bj.v)
                x = self.pair.restriction(I, K).images[bi.alpha]
                y = self.pair.restriction(J, K).images[bj.alpha]
                prod = self.pair.ring(K).mul(x, y)
                out = {self.index[(v, a)]: c for a, c in prod.items()}
        self._cache[key] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.mul_basis(i, j)
                if p:
                    axpy(out, a * b, p)
        return out

    def element(self, name: str) -> dict:
        for i, b in enumerate(self.basis):
            if b.name == name:
                return {i: self.field.one}
        raise KeyError(name)

    def class_index(self, v: Sequence[int], alpha_name: str) -> int:
        ring = self.pair.ring(support(v))
        return self.index[(tuple(v), ring.index(alpha_name))]

    # -- law checks ---------------------------------------------------------
    def commutativity_violations(self) -> list[str]:
        out = []
        for i, bi in enumerate(self.basis):
            for j in range(i, self.dim):
                bj = self.basis[j]
                if bi.w + bj.w > self.W:
                    continue
                s = -1 if (bi.deg * bj.deg) % 2 else 1
                a, b = self.mul_basis(i, j), self.mul_basis(j, i)
                if a != {k: s * c for k, c in b.items()}:
                    out.append(f"commutativity: {bi.name}, {bj.name}")
        return out

    def associativity_violations(self, limit: int | None = None) -> list[str]:
        out = []
        B = self.basis
        by_w = sorted(range(self.dim), key=lambda i: B[i].w)
        for i in range(self.dim):
            for j in range(self.dim):
                if B[i].w + B[j].w > self.W:
                    continue
                ij = self.mul_basis(i, j)
                rest = self.W - B[i].w - B[j].w
                for k in by_w:
                    if B[k].w > rest:
                        break
                    left = self.mul(ij, {k: 1}) if ij else {}
                    jk = self.mul_basis(j, k)
                    right = self.mul({i: 1}, jk) if jk else {}
                    if left != right:
                        out.append(f"associativity: {B[i].name}, {B[j].name}, {B[k].name}")
                        if limit and len(out) >= limit:
                            return out
        return out

    def weight_violations(self) -> list[str]:
        out = []
        B = self.basis
        for i in range(self.dim):
            for j in range(self.dim):
                if B[i].w + B[j].w > self.W:
                    continue
                v = tuple(a + b for a, b in zip(B[i].v, B[j].v))
                for k in self.mul_basis(i, j):
                    if B[k].v != v or B[k].w != B[i].w + B[j].w or B[k].deg != B[i].deg + B[j].deg:
                        out.append(f"grading: {B[i].name} * {B[j].name} lands in {B[k].name}")
        return out


def build_log_ring(p: NCPairData, W: int, require_valid: bool = True) -> LogRingTruncation:
    if W < 0:
        raise ValueError("the weight bound must be nonnegative")
    if require_valid:
        rep = validate(p)
        if not rep.ok:
            raise ValidationRequired("pair is invalid: " + "; ".join(rep.failures[:5]))
    return LogRingTruncation(p, W)


# ---------------------------------------------------------------------------
# Hilbert tables


@dataclass
class HilbertTable:
    W: int
    dims: dict                      # (degree, weight) -> dimension

    def degrees(self) -> list[int]:
        return sorted({d for d, _ in self.dims})

    def weights(self) -> list[int]:
        return list(range(self.W + 1))

    def column(self, w: int, degrees: Sequence[int] | None = None) -> list[int]:
        degrees = self.degrees() if degrees is None else degrees
        return [self.dims.get((d, w), 0) for d in degrees]

    def totals(self) -> dict:
        out: dict[int, int] = {}
        for (d, _), n in self.dims.items():
            out[d] = out.get(d, 0) + n
        return dict(sorted(out.items()))

    def nonzero_weights(self) -> list[int]:
        return sorted({w for (_, w), n in self.dims.items() if n})

    def to_json(self) -> dict:
        return {"W": self.W, "degrees": self.degrees(),
                "rows": [{"weight": w, "dims": self.column(w)} for w in self.weights()],
                "totals": {str(d): n for d, n in self.totals().items()}}

    def to_tsv(self) -> str:
        degs = self.degrees()
        lines = ["weight\t" + "\t".join(f"deg{d}" for d in degs)]
        for w in self.weights():
            lines.append(f"{w}\t" + "\t".join(str(x) for x in self.column(w, degs)))
        tot = self.totals()
        lines.append("total\t" + "\t".join(str(tot.get(d, 0)) for d in degs))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        degs = self.degrees()
        width = max([len(str(x)) for x in self.dims.values()] + [len(f"deg{d}") for d in degs] + [5])
        head = "weight".ljust(7) + " ".join(f"deg{d}".rjust(width) for d in degs)
        lines = [head]
        for w in self.weights():
            lines.append(str(w).ljust(7) + " ".join(str(x).rjust(width) for x in self.column(w, degs)))
        tot = self.totals()
        lines.append("total".ljust(7) + " ".join(str(tot.get(d, 0)).rjust(width) for d in degs))
        return "\n".join(lines) + "\n"


def hilbert_table(L: LogRingTruncation) -> HilbertTable:
    dims: dict = {}
    for b in L.basis:
        dims[(b.deg, b.w)] = dims.get((b.deg, b.w), 0) + 1
    return HilbertTable(L.W, dims)


# ---------------------------------------------------------------------------
# Stanley-Reisner part


@dataclass
class SRPresentation:
    k: int
    kappa: list
    pole_orders: list
    components: dict               # stratum -> number of components
    connected: bool
    generators: list
    relations: list                # minimal non-faces (1-based tuples), connected case

    def text(self) -> str:
        gens = ",".join(self.generators)
        if not self.connected:
            return f"k<{gens}> (one idempotent generator per stratum component)"
        if not self.relations:
            return f"k[{gens}]"
        rel = ", ".join("*".join(f"t{i}" for i in S) for S in self.relations)
        return f"k[{gens}]/({rel})"

    def weight_dims(self, W: int) -> dict:
        out: dict[int, int] = {}
        for v in multiplicity_vectors(self.kappa, W, set(self.components)):
            w = weight(v, self.kappa)
            out[w] = out.get(w, 0) + self.components[support(v)]
        return out

    def bigraded_dims(self, W: int) -> dict:
        out: dict = {}
        for v in multiplicity_vectors(self.kappa, W, set(self.components)):
            key = (log_degree(0, v, self.pole_orders), weight(v, self.kappa))
            out[key] = out.get(key, 0) + self.components[support(v)]
        return out

    def monomial_weight_dims(self, W: int) -> dict:
        """Count monomials divisible by no relation (the classical SR basis)."""
        out: dict[int, int] = {}
        for v in multiplicity_vectors(self.kappa, W):
            if any(all(v[i - 1] for i in S) for S in self.relations):
                continue
            w = weight(v, self.kappa)
            out[w] = out.get(w, 0) + 1
        return out


def stanley_reisner(p: NCPairData) -> SRPresentation:
    comps = {I: s.components for I, s in p.strata.items()}
    connected = all(c == 1 for c in comps.values())
    cx = dual_complex(p)
    if connected:
        gens = [f"t{i}" for i in range(1, p.k + 1)]
        rels = cx.minimal_nonfaces()
    else:
        gens = []
        for I in p.nonempty_strata:
            for c in range(comps[I]):
                gens.append(f"t{fmt_stratum(I)}_{c + 1}")
        rels = []
    return SRPresentation(p.k, list(p.kappa), list(p.pole_orders), comps, connected, gens, rels)


# ---------------------------------------------------------------------------
# H_1(X) grading


class H1Class(NamedTuple):
    torsion: tuple          # orders of the cyclic torsion factors
    coords: tuple           # residues for torsion factors, then free coordinates

    def __add__(self, other):
        if self.torsion != other.torsion:
            raise ValueError("classes of different groups")
        t = len(self.torsion)
        c = [(a + b) % self.torsion[i] if i < t else a + b
             for i, (a, b) in enumerate(zip(self.coords, other.coords))]
        return H1Class(self.torsion, tuple(c))


def _h1_frame(relations: Sequence[Sequence[int]], k: int):
    rel = [list(r) for r in relations] or [[0] * k]
    for r in rel:
        _check_len(r, k, "relation row")
    U, S, V = smith_normal_form(rel)
    diag = [S[i][i] for i in range(min(len(S), k))]
    return diag, V


def h1_class(v: Sequence[int], h1_relations: Sequence[Sequence[int]]) -> H1Class:
    """Class of sum v_i [y_i] in Z^k / rowspan(relations), in Smith coordinates."""
    k = len(v)
    diag, V = _h1_frame(h1_relations, k)
    y = [sum(v[i] * V[i][j] for i in range(k)) for j in range(k)]
    torsion, coords = [], []
    for j in range(k):
        d = diag[j] if j < len(diag) else 0
        if d == 1:
            continue
        if d > 1:
            torsion.append(d)
            coords.append(y[j] % d)
    free = [y[j] for j in range(k) if (diag[j] if j < len(diag) else 0) == 0]
    return H1Class(tuple(torsion), tuple(coords + free))


# ---------------------------------------------------------------------------
# finite generation


@dataclass
class FiniteGeneration:
    ok: bool
    generators: list
    witness: tuple | None = None          # (weight, v) of the first deficient piece
    deficits: dict = dc_field(default_factory=dict)


def check_finite_generation(L: LogRingTruncation) -> FiniteGeneration:
    """Does the subalgebra generated by H*(X) and all primitive classes fill every piece?"""
    p, k = L.pair, L.pair.k
    one = L.field.one
    weight0 = L.pieces.get((0,) * k, [])
    prim = {}
    for I in p.nonempty_strata:
        if not I:
            continue
        v = primitive_vector(I, k)
        if v in L.pieces:
            prim[v] = L.pieces[v]
    gen_names = [L.basis[i].name for i in weight0] + [L.basis[i].name for v in prim for i in prim[v]]
    span: dict[tuple, Echelon] = {}
    spanned: dict[tuple, list[dict]] = {}
    deficits = {}
    witness = None
    for v in sorted(L.pieces, key=lambda v: (weight(v, p.kappa), v)):
        e = Echelon()
        vecs = []
        full = len(L.pieces[v])

        def add(x):
            if x and e.add(x):
                vecs.append(x)

        if not any(v):
            for i in weight0:
                add({i: one})
        if v in prim:
            for i in prim[v]:
                add({i: one})
        for u, gens in prim.items():
            rest = tuple(a - b for a, b in zip(v, u))
            if e.rank == full or min(rest) < 0 or not any(rest) or rest not in spanned:
                continue
            # a fully generated piece may be replaced by its basis
            others = ([{i: one} for i in L.pieces[rest]] if span[rest].rank == len(L.pieces[rest])
                      else spanned[rest])
            for g in gens:
                for x in others:
                    add(L.mul({g: one}, x))
                    if e.rank == full:
                        break
        # close under multiplication by H*(X); nothing to do once the piece is full
        grew = e.rank < full
        while grew:
            grew = False
            for x in list(vecs):
                for i in weight0:
                    before = e.rank
                    add(L.mul({i: one}, x))
                    grew = grew or e.rank > before
        span[v] = e
        spanned[v] = vecs
        if e.rank < full:
            deficits[v] = full - e.rank
            if witness is None:
                witness = (weight(v, p.kappa), v)
    return FiniteGeneration(not deficits, gen_names, witness, deficits)


# ---------------------------------------------------------------------------
# presentation for pairs with surjective restrictions


@dataclass
class Presentation:
    pair: NCPairData
    generators: list                 # (name, degree, weight)
    sr_relations: list               # minimal non-faces
    hx_products: list                # (x, y, {z: c}) in H*(X)
    kernel_relations: list           # (I, vector in H*(X))
    kernels: dict                    # I -> kernel basis
    notes: list = dc_field(default_factory=list)

    def hilbert_table(self, W: int) -> HilbertTable:
        """Hilbert table of the presented ring, from quotient dimensions alone."""
        p = self.pair
        X = p.ring(())
        dims: dict = {}
        faces = set(p.strata)
        for v in multiplicity_vectors(p.kappa, W, faces):
            I = support(v)
            vecs = []
            for r in range(1, len(I) + 1):
                for J in combinations(I, r):
                    vecs += self.kernels[J]
            w = weight(v, p.kappa)
            for d in X.degrees():
                idx = set(X.in_degree(d))
                e = Echelon()
                for x in vecs:
                    part = {i: c for i, c in x.items() if i in idx}
                    if part:
                        e.add(part)
                n = len(idx) - e.rank
                if n:
                    key = (log_degree(d, v, p.pole_orders), w)
                    dims[key] = dims.get(key, 0) + n
        return HilbertTable(W, dims)

    def text(self) -> str:
        p = self.pair
        X = p.ring(())
        F = p.field
        lines = ["(presentation", f" (field {F.name})", " (generators"]
        for nm, d, w in self.generators:
            lines.append(f"  ({nm} {d} {w})")
        lines[-1] += ")"
        lines.append(" (relations")
        for S in self.sr_relations:
            lines.append("  (sr " + " ".join(f"t{i}" for i in S) + ")")
        for x, y, res in self.hx_products:
            terms = " ".join(f"({F.to_json(c)} {X.basis[z].name})" for z, c in sorted(res.items()))
            lines.append(f"  (hx {x} {y} ({terms}))")
        for I, vec in self.kernel_relations:
            terms = " ".join(f"({F.to_json(c)} {X.basis[z].name})" for z, c in sorted(vec.items()))
            lines.append("  (ker (" + " ".join(f"t{i}" for i in I) + f") ({terms}))")
        lines[-1] += "))"
        for n in self.notes:
            lines.append(f"; {n}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        p = self.pair
        X = p.ring(())
        F = p.field
        return {
            "generators": [{"name": n, "deg": d, "weight": w} for n, d, w in self.generators],
            "sr": [list(S) for S in self.sr_relations],
            "hx": [[x, y, [[X.basis[z].name, F.to_json(c)] for z, c in sorted(r.items())]]
                   for x, y, r in self.hx_products],
            "kernel": [[list(I), [[X.basis[z].name, F.to_json(c)] for z, c in sorted(v.items())]]
                       for I, v in self.kernel_relations],
            "notes": self.notes,
        }


def presentation_topological(p: NCPairData) -> Presentation:
    """SR(M,D) (x) H*(X) modulo t^{v_I} * ker(H*(X) -> H*(S_I))."""
    X = p.ring(())
    kernels = {}
    for I in p.nonempty_strata:
        if not I:
            continue
        f = p.restriction((), I)
        if not f.is_surjective():
            raise RestrictionNotSurjective(I)
        kernels[I] = f.kernel()
    kernels[()] = []
    gens = [(f"t{i}", log_degree(0, primitive_vector((i,), p.k), p.pole_orders), p.kappa[i - 1])
            for i in range(1, p.k + 1)]
    gens += [(b.name, b.deg, 0) for j, b in enumerate(X.basis) if j != X.unit]
    sr = stanley_reisner(p)
    hx = []
    nonunit = [j for j in range(X.dim) if j != X.unit]
    for a in nonunit:
        for b in nonunit:
            if a <= b:
                hx.append((X.basis[a].name, X.basis[b].name, X.mul_basis(a, b)))
    kr = [(I, v) for I in p.nonempty_strata if I for v in kernels[I]]
    notes = []
    if not sr.connected:
        notes.append("disconnected strata: the monomial description does not apply")
    return Presentation(p, gens, sr.relations, hx, kr, kernels, notes)
