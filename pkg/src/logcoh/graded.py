"""Finite-rank graded-commutative algebras given by structure constants.

Elements are sparse vectors ``{basis index: coefficient}``.  The algebra
object stores only the nonzero products of basis pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .exactalg import (QQ, Echelon, axpy, smith_normal_form, sparse_kernel,
                       subquotient_sparse, to_sparse)


class EvenDegreeGenerator(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class BasisElement:
    name: str
    deg: int


class GradedAlgebra:
    """Graded algebra with basis ``basis`` and products ``mult[(i, j)] = {k: c}``."""

    def __init__(self, basis: Sequence[BasisElement], unit: int, mult: dict, field=QQ):
        self.basis = tuple(basis)
        self.unit = unit
        self.field = field
        clean = {}
        for (i, j), vec in mult.items():
            v = {k: field(c) for k, c in vec.items() if c}
            if v:
                clean[(i, j)] = v
        self.mult = clean
        self._by_name = {b.name: i for i, b in enumerate(self.basis)}

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    def deg(self, i: int) -> int:
        return self.basis[i].deg

    def index(self, name: str) -> int:
        return self._by_name[name]

    def vec(self, name: str) -> dict:
        return {self._by_name[name]: self.field.one}

    def degrees(self) -> list[int]:
        return sorted({b.deg for b in self.basis})

    def in_degree(self, d: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.deg == d]

    def betti(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.basis:
            out[b.deg] = out.get(b.deg, 0) + 1
        return dict(sorted(out.items()))

    def betti_list(self) -> list[int]:
        if not self.basis:
            return []
        b = self.betti()
        lo = min(0, min(b))
        return [b.get(d, 0) for d in range(lo, max(b) + 1)]

    def top_degree(self) -> int:
        return max((b.deg for b in self.basis), default=0)

    def degree_of(self, v: dict) -> int | None:
        """Common degree of a homogeneous nonzero vector, else None."""
        ds = {self.basis[i].deg for i, c in v.items() if c}
        return ds.pop() if len(ds) == 1 else None

    # -- arithmetic -------------------------------------------------------
    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            if not a:
                continue
            for j, b in y.items():
                if not b:
                    continue
                p = self.mult.get((i, j))
                if p:
                    axpy(out, a * b, p)
        return out

    def one(self) -> dict:
        return {self.unit: self.field.one}

    # -- law checks -------------------------------------------------------
    def unit_violations(self) -> list[str]:
        out = []
        u = self.unit
        if not 0 <= u < self.dim or self.basis[u].deg != 0:
            return [f"unit index {u} is not a degree-0 basis element"]
        for i in range(self.dim):
            e = {i: self.field.one}
            if self.mul_basis(u, i) != e or self.mul_basis(i, u) != e:
                out.append(f"unit fails on {self.basis[i].name}")
        return out

    def degree_violations(self) -> list[str]:
        out = []
        for (i, j), v in self.mult.items():
            d = self.deg(i) + self.deg(j)
            if any(self.deg(k) != d for k in v):
                out.append(f"{self.basis[i].name}*{self.basis[j].name} not in degree {d}")
        return out

    def commutativity_violations(self) -> list[str]:
        out = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                s = -1 if (self.deg(i) * self.deg(j)) % 2 else 1
                a = self.mul_basis(i, j)
                b = self.mul_basis(j, i)
                if a != {k: s * c for k, c in b.items()}:
                    out.append(f"graded commutativity fails on ({self.basis[i].name},{self.basis[j].name})")
        return out

    def associativity_violations(self, limit: int | None = None) -> list[str]:
        out = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.mult.get((i, j))
                for k in range(n):
                    left = self.mul(ij, {k: 1}) if ij else {}
                    jk = self.mult.get((j, k))
                    right = self.mul({i: 1}, jk) if jk else {}
                    if left != right:
                        out.append("associativity fails on (%s,%s,%s)" % (
                            self.basis[i].name, self.basis[j].name, self.basis[k].name))
                        if limit and len(out) >= limit:
                            return out
        return out

    def law_violations(self) -> list[str]:
        return (self.unit_violations() + self.degree_violations()
                + self.commutativity_violations() + self.associativity_violations(limit=5))

    def is_valid(self) -> bool:
        return not self.law_violations()

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        mult = []
        for (i, j) in sorted(self.mult):
            v = self.mult[(i, j)]
            mult.append([i, j, [[k, f.to_json(v[k])] for k in sorted(v)]])
        return {"basis": [{"name": b.name, "deg": b.deg} for b in self.basis],
                "unit": self.unit, "mult": mult}

    @classmethod
    def from_json(cls, obj: dict, field=QQ) -> "GradedAlgebra":
        basis = [BasisElement(str(b["name"]), int(b["deg"])) for b in obj["basis"]]
        mult = {}
        for entry in obj.get("mult", []):
            i, j, terms = entry
            mult[(int(i), int(j))] = {int(k): field(c) for k, c in terms}
        return cls(basis, int(obj["unit"]), mult, field)

    def __eq__(self, other):
        return (isinstance(other, GradedAlgebra) and self.basis == other.basis
                and self.unit == other.unit and self.mult == other.mult)

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, betti={self.betti()})"


def ground_algebra(field=QQ) -> GradedAlgebra:
    """The coefficient field itself, concentrated in degree 0."""
    return GradedAlgebra([BasisElement("1", 0)], 0, {(0, 0): {0: field.one}}, field)


def poincare_polynomial(A: GradedAlgebra) -> list[int]:
    """Coefficient list indexed by degree (nonnegative degrees assumed)."""
    b = A.betti()
    if not b:
        return []
    if min(b) < 0:
        raise DegreeMismatch("negative degrees have no Poincare polynomial")
    return [b.get(d, 0) for d in range(max(b) + 1)]


def _perm_sign(seq: Sequence[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def monomial_name(names: Sequence[str]) -> str:
    return "*".join(names) if names else "1"


def exterior_algebra(generators: Sequence[tuple[str, int]], field=QQ) -> GradedAlgebra:
    """Free graded-commutative algebra on odd-degree generators."""
    for name, d in generators:
        if d % 2 == 0:
            raise EvenDegreeGenerator(f"generator {name} has even degree {d}")
    n = len(generators)
    subsets = [s for r in range(n + 1) for s in combinations(range(n), r)]
    index = {s: i for i, s in enumerate(subsets)}
    basis = [BasisElement(monomial_name([generators[g][0] for g in s]),
                          sum(generators[g][1] for g in s)) for s in subsets]
    mult = {}
    one = field.one
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            merged = s + t
            mult[(index[s], index[t])] = {index[tuple(sorted(merged))]: one * _perm_sign(merged)}
    return GradedAlgebra(basis, 0, mult, field)


def tensor_product(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    """Graded tensor product with the Koszul sign rule; basis ordered as pairs."""
    if A.field != B.field:
        raise AlgebraError("tensor factors over different fields")
    pairs = [(i, j) for i in range(A.dim) for j in range(B.dim)]
    index = {p: n for n, p in enumerate(pairs)}

    def nm(i, j):
        if i == A.unit:
            return B.basis[j].name
        if j == B.unit:
            return A.basis[i].name
        return A.basis[i].name + "*" + B.basis[j].name

    basis = [BasisElement(nm(i, j), A.deg(i) + B.deg(j)) for i, j in pairs]
    mult = {}
    for (i, j) in pairs:
        for (i2, j2) in pairs:
            pa = A.mult.get((i, i2))
            pb = B.mult.get((j, j2))
            if not pa or not pb:
                continue
            s = -1 if (B.deg(j) * A.deg(i2)) % 2 else 1
            out = {}
            for k, a in pa.items():
                for l, b in pb.items():
                    out[index[(k, l)]] = s * a * b
            mult[(index[(i, j)], index[(i2, j2)])] = out
    return GradedAlgebra(basis, index[(A.unit, B.unit)], mult, A.field)


def tensor_all(algs: Sequence[GradedAlgebra], field=QQ) -> GradedAlgebra:
    if not algs:
        return ground_algebra(field)
    out = algs[0]
    for a in algs[1:]:
        out = tensor_product(out, a)
    return out


# ---------------------------------------------------------------------------
# subalgebras and quotients


def subalgebra(A: GradedAlgebra, vectors: Sequence[dict], names: Sequence[str] | None = None,
               unit_index: int = 0) -> tuple[GradedAlgebra, list[dict]]:
    """Algebra on the span of homogeneous, independent, product-closed vectors.

    Returns the new algebra and the list of vectors (its inclusion into A).
    """
    vectors = [dict(v) for v in vectors]
    e = Echelon(track=True)
    for v in vectors:
        if not e.add(v):
            raise AlgebraError("subalgebra vectors are dependent")
    basis = []
    for n, v in enumerate(vectors):
        d = A.degree_of(v)
        if d is None:
            raise DegreeMismatch("subalgebra vectors must be homogeneous")
        basis.append(BasisElement(names[n] if names else f"s{n}", d))
    mult = {}
    for i, vi in enumerate(vectors):
        for j, vj in enumerate(vectors):
            p = A.mul(vi, vj)
            if not p:
                continue
            if e.reduce(p):
                raise AlgebraError("span is not closed under the product")
            mult[(i, j)] = e.coords(p)
    return GradedAlgebra(basis, unit_index, mult, A.field), vectors


class Quotient(NamedTuple):
    algebra: GradedAlgebra
    representatives: list[int]          # basis indices of A kept as quotient basis
    project: object                     # callable: vector in A -> vector in A/I


def quotient_algebra(A: GradedAlgebra, ideal: Sequence[dict]) -> Quotient:
    """A / I where ``ideal`` spans a homogeneous two-sided ideal (as a vector space).

    The quotient basis consists of the earliest basis elements of A that are
    independent modulo I, so names are inherited.
    """
    by_deg: dict[int, list[dict]] = {}
    for v in ideal:
        if not v:
            continue
        d = A.degree_of(v)
        if d is None:
            raise DegreeMismatch("ideal vectors must be homogeneous")
        by_deg.setdefault(d, []).append(v)
    reps: list[int] = []
    proj = {}
    for d in A.degrees():
        idx = A.in_degree(d)
        local = {g: n for n, g in enumerate(idx)}
        Z = [{n: A.field.one} for n in range(len(idx))]
        B = [{local[g]: c for g, c in v.items()} for v in by_deg.get(d, [])]
        sq = subquotient_sparse(Z, B, len(idx), A.field)
        proj[d] = (idx, sq)
        for r in sq.representatives:
            (n,) = [i for i, c in enumerate(r) if c]
            reps.append(idx[n])
    reps.sort()
    new_index = {g: n for n, g in enumerate(reps)}

    def project(v: dict) -> dict:
        out: dict = {}
        parts: dict[int, dict] = {}
        for g, c in v.items():
            parts.setdefault(A.deg(g), {})[g] = c
        for d, part in parts.items():
            idx, sq = proj[d]
            local = {g: n for n, g in enumerate(idx)}
            pv = sq.project_sparse({local[g]: c for g, c in part.items()})
            for n, c in pv.items():
                rep_vec = sq.representatives[n]
                (m,) = [i for i, x in enumerate(rep_vec) if x]
                out[new_index[idx[m]]] = c
        return out

    basis = [A.basis[g] for g in reps]
    mult = {}
    for a, ga in enumerate(reps):
        for b, gb in enumerate(reps):
            p = A.mult.get((ga, gb))
            if p:
                q = project(p)
                if q:
                    mult[(a, b)] = q
    if A.unit not in new_index:
        raise AlgebraError("the ideal contains the unit")
    Q = GradedAlgebra(basis, new_index[A.unit], mult, A.field)
    return Quotient(Q, reps, project)


# ---------------------------------------------------------------------------
# algebra maps


class AlgebraMap:
    """Degree-0 linear map on bases; ``images[i]`` is f(source basis i) in the target."""

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, images: Sequence[dict]):
        if len(images) != source.dim:
            raise AlgebraError("one image per source basis element is required")
        f = target.field
        self.source = source
        self.target = target
        self.images = tuple({k: f(c) for k, c in im.items() if c} for im in images)

    @classmethod
    def from_matrix(cls, source, target, matrix: Sequence[Sequence]) -> "AlgebraMap":
        """``matrix`` has one row per target basis element and one column per source one."""
        if len(matrix) != target.dim or any(len(r) != source.dim for r in matrix):
            raise AlgebraError(f"restriction matrix must be {target.dim}x{source.dim}")
        images = [{r: matrix[r][c] for r in range(target.dim) if matrix[r][c]} for c in range(source.dim)]
        return cls(source, target, images)

    def matrix(self) -> list[list]:
        f = self.target.field
        return [[self.images[c].get(r, f.zero) for c in range(self.source.dim)]
                for r in range(self.target.dim)]

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        for i, a in v.items():
            if a:
                axpy(out, a, self.images[i])
        return out

    def compose(self, g: "AlgebraMap") -> "AlgebraMap":
        """self after g."""
        return AlgebraMap(g.source, self.target, [self(im) for im in g.images])

    def rank(self) -> int:
        e = Echelon()
        for im in self.images:
            e.add(im)
        return e.rank

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def kernel(self) -> list[dict]:
        """Kernel basis, computed per source degree so vectors are homogeneous."""
        out = []
        for d in self.source.degrees():
            idx = self.source.in_degree(d)
            rows: dict[int, dict] = {}
            for n, g in enumerate(idx):
                for r, c in self.images[g].items():
                    rows.setdefault(r, {})[n] = c
            for v in sparse_kernel(rows.values(), len(idx)):
                out.append({idx[n]: c for n, c in v.items()})
        return out

    def violations(self) -> list[str]:
        out = []
        S, T = self.source, self.target
        for i, im in enumerate(self.images):
            for k in im:
                if T.deg(k) != S.deg(i):
                    out.append(f"image of {S.basis[i].name} leaves degree {S.deg(i)}")
                    break
        if self(S.one()) != T.one():
            out.append("map is not unital")
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self(S.mul_basis(i, j))
                rhs = T.mul(self.images[i], self.images[j])
                if lhs != rhs:
                    out.append(f"not multiplicative on ({S.basis[i].name},{S.basis[j].name})")
        return out

    def __eq__(self, other):
        return (isinstance(other, AlgebraMap) and self.images == other.images
                and self.source.dim == other.source.dim and self.target.dim == other.target.dim)


def identity_map(A: GradedAlgebra) -> AlgebraMap:
    return AlgebraMap(A, A, [{i: A.field.one} for i in range(A.dim)])


def verify_algebra_map(f: AlgebraMap) -> bool:
    """True iff f is degree-preserving, unital and multiplicative on all basis pairs."""
    return not f.violations()


# ---------------------------------------------------------------------------
# Gysin sequence


class GysinRank(NamedTuple):
    degree: int
    rank: int
    torsion: tuple


def _cup_matrix(base: GradedAlgebra, e: dict, d: int) -> tuple[list[int], list[int], list[list]]:
    src = base.in_degree(d)
    tgt = base.in_degree(d + 2)
    pos = {g: n for n, g in enumerate(tgt)}
    M = [[0] * len(src) for _ in tgt]
    for c, g in enumerate(src):
        for r, a in base.mul({g: base.field.one}, e).items():
            M[pos[r]][c] = a
    return src, tgt, M


def gysin_circle_bundle(base: GradedAlgebra, euler, coefficients="field") -> list[GysinRank]:
    """Additive cohomology of the circle bundle with Euler class ``euler``.

    ``coefficients`` is ``"field"`` (the base algebra's field) or ``"ZZ"``;
    over Z the base basis is taken to be a Z-basis with integral structure
    constants, and torsion comes from the Smith form of cup with the Euler class.
    """
    if isinstance(euler, (list, tuple)):
        e = to_sparse([base.field(x) for x in euler])
    else:
        e = {k: base.field(c) for k, c in dict(euler).items() if c}
    if e and base.degree_of(e) != 2:
        raise DegreeMismatch("the Euler class must be homogeneous of degree 2")
    integral = coefficients in ("ZZ", "Z", "zz", "integers")
    if integral:
        for v in list(base.mult.values()) + [e]:
            for c in v.values():
                if getattr(c, "denominator", 1) != 1:
                    raise AlgebraError("integral Gysin needs integral structure constants")
    top = base.top_degree()
    bot = min(base.degrees(), default=0)
    out = []

    def rk(M):
        e2 = Echelon()
        for r in M:
            e2.add(to_sparse(r))
        return e2.rank

    for k in range(bot, top + 2):
        src, tgt, M = _cup_matrix(base, e, k - 2)          # H^{k-2} -> H^k
        coker = len(tgt) - (rk(M) if src and tgt else 0)
        torsion: tuple = ()
        if integral and src and tgt:
            S = smith_normal_form([[int(x) for x in r] for r in M]).S
            torsion = tuple(S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i] > 1)
        src1, tgt1, M1 = _cup_matrix(base, e, k - 1)       # H^{k-1} -> H^{k+1}
        ker = len(src1) - (rk(M1) if src1 and tgt1 else 0)
        out.append(GysinRank(k, coker + ker, torsion))
    return out


def algebra_from_table(names_degs: Sequence[tuple[str, int]], products: Iterable[tuple[str, str, dict]],
                       field=QQ, graded_commutative: bool = True) -> GradedAlgebra:
    """Build an algebra from a unit named "1", named basis elements and products.

    ``products`` lists (x, y, {z: coef}); the unit products and, when
    ``graded_commutative``, the swapped products are filled in automatically.
    Unlisted products of non-unit elements are zero.
    """
    basis = [BasisElement(n, d) for n, d in names_degs]
    idx = {b.name: i for i, b in enumerate(basis)}
    u = idx["1"]
    mult = {}
    for i in range(len(basis)):
        mult[(u, i)] = {i: field.one}
        mult[(i, u)] = {i: field.one}
    for x, y, res in products:
        i, j = idx[x], idx[y]
        v = {idx[z]: field(c) for z, c in res.items()}
        mult[(i, j)] = v
        if graded_commutative:
            s = -1 if (basis[i].deg * basis[j].deg) % 2 else 1
            mult[(j, i)] = {k: s * c for k, c in v.items()}
    return GradedAlgebra(basis, u, mult, field)


def change_field(A: GradedAlgebra, field) -> GradedAlgebra:
    mult = {k: {i: field(c) for i, c in v.items()} for k, v in A.mult.items()}
    return GradedAlgebra(A.basis, A.unit, mult, field)
