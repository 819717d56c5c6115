"""Spectral sequences of finite filtered cochain complexes over a field.

The filtration is descending: F^p is spanned by the basis elements whose
filtration index is at least p.  Pages are computed directly from the
total complex,

    Z_r^{p,q} = {x in F^p C^{p+q} : dx in F^{p+r}}
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}),

with Z_{-1}^{p,q} = F^p C^{p+q}, and every class carries an explicit
representative in C.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import NamedTuple, Sequence

from .exactalg import (QQ, Echelon, SubquotientBasis, axpy, inverse, subquotient_sparse,
                       sparse_kernel, sparse_rank, to_sparse)
from .logring import LengthMismatch, LogRingTruncation, log_degree, weight


class InvalidComplex(ValueError):
    pass


class ProductNotFiltered(ValueError):
    pass


class CellBasis(NamedTuple):
    name: str
    deg: int
    filt: int


class FilteredComplex:
    """Basis with (degree, filtration); ``d[j]`` is the image of basis j (sparse)."""

    def __init__(self, basis: Sequence[CellBasis], d: Sequence[dict], mult: dict | None = None,
                 field=QQ, check: bool = True):
        self.basis = [CellBasis(*b) for b in basis]
        self.field = field
        self.d = [{i: field(c) for i, c in col.items() if c} for col in d]
        self.mult = None if mult is None else {
            k: {i: field(c) for i, c in v.items() if c} for k, v in mult.items()}
        if self.mult is not None:
            self.mult = {k: v for k, v in self.mult.items() if v}
        if len(self.d) != len(self.basis):
            raise InvalidComplex("one differential column per basis element is required")
        if check:
            problems = self.problems()
            if problems:
                kind = ProductNotFiltered if problems[0].startswith("product filtration") else InvalidComplex
                raise kind("; ".join(problems[:3]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def apply_d(self, v: dict) -> dict:
        out: dict = {}
        for j, c in v.items():
            if c:
                axpy(out, c, self.d[j])
        return out

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.mult.get((i, j))
                if p:
                    axpy(out, a * b, p)
        return out

    def degrees(self) -> list[int]:
        return sorted({b.deg for b in self.basis})

    def filtrations(self) -> list[int]:
        return sorted({b.filt for b in self.basis})

    def spread(self) -> int:
        f = self.filtrations()
        return f[-1] - f[0] if f else 0

    def problems(self) -> list[str]:
        out = []
        B = self.basis
        for j, col in enumerate(self.d):
            for i in col:
                if B[i].deg != B[j].deg + 1:
                    out.append(f"d({B[j].name}) has a term {B[i].name} of the wrong degree")
                if B[i].filt < B[j].filt:
                    out.append(f"d({B[j].name}) leaves F^{B[j].filt}")
        for j in range(self.dim):
            if self.apply_d(self.d[j]):
                out.append(f"d^2({B[j].name}) != 0")
        if self.mult is not None:
            for (i, j), v in self.mult.items():
                for k in v:
                    if B[k].filt < B[i].filt + B[j].filt:
                        out.insert(0, f"product filtration: {B[i].name}*{B[j].name} leaves F^{B[i].filt + B[j].filt}")
                    if B[k].deg != B[i].deg + B[j].deg:
                        out.append(f"product degree: {B[i].name}*{B[j].name}")
            one = self.field.one
            for i in range(self.dim):
                for j in range(self.dim):
                    xi, xj = {i: one}, {j: one}
                    lhs = self.apply_d(self.mul(xi, xj))
                    s = -1 if B[i].deg % 2 else 1
                    rhs = self.mul(self.d[i], xj)
                    axpy(rhs, s, self.mul(xi, self.d[j]))
                    if lhs != rhs:
                        out.append(f"Leibniz fails for d on ({B[i].name},{B[j].name})")
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        F = self.field
        mat = [[F.to_json(self.d[c].get(r, 0)) for c in range(self.dim)] for r in range(self.dim)]
        out = {"schema": "filtcx/1",
               "basis": [{"name": b.name, "deg": b.deg, "filt": b.filt} for b in self.basis],
               "d": mat}
        if self.mult is not None:
            out["mult"] = [[i, j, [[k, F.to_json(c)] for k, c in sorted(v.items())]]
                           for (i, j), v in sorted(self.mult.items())]
        return out

    @classmethod
    def from_json(cls, obj: dict, field=QQ) -> "FilteredComplex":
        if obj.get("schema") != "filtcx/1":
            raise InvalidComplex(f"unsupported schema {obj.get('schema')!r}")
        basis = [CellBasis(str(b["name"]), int(b["deg"]), int(b["filt"])) for b in obj["basis"]]
        n = len(basis)
        mat = obj.get("d") or [[0] * n for _ in range(n)]
        if len(mat) != n or any(len(r) != n for r in mat):
            raise InvalidComplex(f"d must be a {n}x{n} matrix")
        d = [{r: field(mat[r][c]) for r in range(n) if field(mat[r][c])} for c in range(n)]
        mult = None
        if obj.get("mult") is not None:
            mult = {(int(i), int(j)): {int(k): field(c) for k, c in terms} for i, j, terms in obj["mult"]}
        return cls(basis, d, mult, field)


def load_complex(source, field=QQ) -> FilteredComplex:
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        source = Path(source).read_text(encoding="utf-8")
    return FilteredComplex.from_json(json.loads(source), field)


# ---------------------------------------------------------------------------
# pages


class _Ambient:
    """Basis indices of C grouped by degree, with local coordinates."""

    def __init__(self, C: FilteredComplex):
        self.C = C
        self.by_deg: dict[int, list[int]] = {}
        for i, b in enumerate(C.basis):
            self.by_deg.setdefault(b.deg, []).append(i)
        self.local = {}
        for d, idx in self.by_deg.items():
            for n, g in enumerate(idx):
                self.local[g] = n

    def F(self, p: int, n: int) -> list[int]:
        return [g for g in self.by_deg.get(n, []) if self.C.basis[g].filt >= p]

    def Z(self, r: int, p: int, n: int) -> list[dict]:
        """Basis of Z_r^{p, n-p} as global sparse vectors."""
        src = self.F(p, n)
        if r < 0 or not src:
            return [{g: self.C.field.one} for g in src]
        B = self.C.basis
        rows: dict[int, dict] = {}
        for c, g in enumerate(src):
            for t, a in self.C.d[g].items():
                if B[t].filt < p + r:
                    rows.setdefault(t, {})[c] = a
        ker = sparse_kernel(rows.values(), len(src))
        return [{src[c]: a for c, a in v.items()} for v in ker]

    def to_local(self, v: dict) -> dict:
        return {self.local[g]: c for g, c in v.items()}

    def to_global(self, v: dict, n: int) -> dict:
        idx = self.by_deg[n]
        return {idx[c]: a for c, a in v.items()}


@dataclass
class SSPage:
    r: int
    entries: dict                      # (p, q) -> SubquotientBasis (local coordinates of degree p+q)
    reps: dict                         # (p, q) -> list of global representative vectors
    d_r: dict                          # (p, q) -> list of images (sparse vectors in E_r^{p+r, q-r+1})
    field: object = QQ

    def dims(self) -> dict:
        return {pq: e.dim for pq, e in self.entries.items() if e.dim}

    def is_zero(self) -> bool:
        return not self.dims()

    def differential_is_zero(self) -> bool:
        return not any(v for imgs in self.d_r.values() for v in imgs)

    def grid_text(self) -> str:
        dims = self.dims()
        if not dims:
            return f"E_{self.r}: 0\n"
        ps = sorted({p for p, _ in dims})
        qs = sorted({q for _, q in dims})
        p_lo, p_hi, q_lo, q_hi = ps[0], ps[-1], qs[0], qs[-1]
        lines = [f"E_{self.r}  (rows q from {q_hi} down to {q_lo}, columns p from {p_lo} to {p_hi})"]
        for q in range(q_hi, q_lo - 1, -1):
            cells = [str(dims.get((p, q), 0)) if dims.get((p, q), 0) else "." for p in range(p_lo, p_hi + 1)]
            lines.append(f"q={q:>3} | " + " ".join(c.rjust(3) for c in cells))
        return "\n".join(lines) + "\n"


def _cells(C: FilteredComplex) -> list[tuple[int, int]]:
    """(p, n) pairs where E_0 can be nonzero."""
    return sorted({(b.filt, b.deg) for b in C.basis})


def page(C: FilteredComplex, r: int) -> SSPage:
    if r < 0:
        raise ValueError("page index must be >= 0")
    amb = _Ambient(C)
    entries, reps = {}, {}
    for p, n in _cells(C):
        q = n - p
        Z = amb.Z(r, p, n)
        Bv = amb.Z(r - 1, p + 1, n)
        for y in amb.Z(r - 1, p - r + 1, n - 1):
            dy = C.apply_d(y)
            if dy:
                Bv.append(dy)
        size = len(amb.by_deg.get(n, []))
        sq = subquotient_sparse([amb.to_local(z) for z in Z], [amb.to_local(b) for b in Bv], size, C.field)
        entries[(p, q)] = sq
        reps[(p, q)] = [amb.to_global(to_sparse(x), n) for x in sq.representatives]
    d_r = {}
    for (p, q), xs in reps.items():
        tgt = (p + r, q - r + 1)
        imgs = []
        for x in xs:
            dx = C.apply_d(x)
            if tgt in entries and dx:
                imgs.append(entries[tgt].project_sparse(amb.to_local(dx)))
            else:
                imgs.append({})
        d_r[(p, q)] = imgs
    return SSPage(r, entries, reps, d_r, C.field)


def page_cohomology_dims(P: SSPage) -> dict:
    """dim of ker d_r / im d_r at each (p, q)."""
    r = P.r
    out = {}
    for (p, q), sq in P.entries.items():
        rk_out = sparse_rank(P.d_r.get((p, q), []))
        src = (p - r, q + r - 1)
        rk_in = sparse_rank(P.d_r.get(src, [])) if src in P.entries else 0
        out[(p, q)] = sq.dim - rk_out - rk_in
    return out


def next_page_agrees(C: FilteredComplex, P: SSPage, Pn: SSPage) -> list[str]:
    """Check E_{r+1} = H(E_r, d_r) via representatives, not just dimensions."""
    amb = _Ambient(C)
    r = P.r
    bad = []
    for (p, q), sq in P.entries.items():
        n = p + q
        classes = [sq.project_sparse(amb.to_local(x)) for x in Pn.reps.get((p, q), [])]
        # each E_{r+1} class is a d_r-cycle in E_r
        imgs = P.d_r.get((p, q), [])
        for cvec in classes:
            out: dict = {}
            for i, a in cvec.items():
                if imgs[i]:
                    axpy(out, a, imgs[i])
            if out:
                bad.append(f"E_{r + 1}{(p, q)} representative is not a d_{r} cycle")
                break
        # ... and they form a basis of ker d_r modulo im d_r
        src = (p - r, q + r - 1)
        boundaries = [v for v in P.d_r.get(src, []) if v] if src in P.entries else []
        rows: dict[int, dict] = {}
        for c, v in enumerate(imgs):
            for t, a in v.items():
                rows.setdefault(t, {})[c] = a
        kdim = len(sparse_kernel(rows.values(), sq.dim))
        rb = sparse_rank(boundaries)
        if sparse_rank(boundaries + classes) != rb + len(classes) or rb + len(classes) != kdim:
            bad.append(f"E_{r + 1}{(p, q)} is not ker d_{r} / im d_{r}")
    return bad


def stable_page_index(C: FilteredComplex) -> int:
    return C.spread() + 1


# ---------------------------------------------------------------------------
# total cohomology oracle


@dataclass
class GradedCohomology:
    dims: dict                    # n -> dim H^n
    gr: dict                      # (p, q) -> dim gr^p H^{p+q}


def total_cohomology(C: FilteredComplex) -> GradedCohomology:
    """H^n(C) and dims of gr^p H^n for F^p H = image of H(F^p C)."""
    amb = _Ambient(C)
    dims, gr = {}, {}
    for n in C.degrees():
        idx = amb.by_deg[n]
        prev = amb.by_deg.get(n - 1, [])
        boundaries = [amb.to_local(C.d[g]) for g in prev if C.d[g]]
        rb = sparse_rank(boundaries)
        cycles = [amb.to_local(z) for z in amb.Z(10 ** 9, min(C.filtrations()), n)]
        dims[n] = len(cycles) - rb
        filts = sorted({C.basis[g].filt for g in idx})
        level = {}
        for p in filts + [filts[-1] + 1]:
            zp = [amb.to_local(z) for z in _cycles_in(amb, p, n)]
            level[p] = sparse_rank(zp + boundaries) - rb
        for a, p in enumerate(filts):
            nxt = filts[a + 1] if a + 1 < len(filts) else filts[-1] + 1
            g = level[p] - level[nxt]
            if g:
                gr[(p, n - p)] = g
    return GradedCohomology(dims, gr)


def _cycles_in(amb: _Ambient, p: int, n: int) -> list[dict]:
    """Cycles lying in F^p C^n."""
    src = amb.F(p, n)
    rows: dict[int, dict] = {}
    for c, g in enumerate(src):
        for t, a in amb.C.d[g].items():
            rows.setdefault(t, {})[c] = a
    return [{src[c]: a for c, a in v.items()} for v in sparse_kernel(rows.values(), len(src))]


def einfinity_matches(C: FilteredComplex) -> list[str]:
    """Compare the stable page with gr of the total cohomology."""
    E = page(C, stable_page_index(C))
    H = total_cohomology(C)
    bad = []
    dims = E.dims()
    for key in set(dims) | set(H.gr):
        if dims.get(key, 0) != H.gr.get(key, 0):
            bad.append(f"E_inf{key}={dims.get(key, 0)} but gr H={H.gr.get(key, 0)}")
    tot: dict[int, int] = {}
    for (p, q), n in dims.items():
        tot[p + q] = tot.get(p + q, 0) + n
    for n, h in H.dims.items():
        if tot.get(n, 0) != h:
            bad.append(f"sum over p+q={n} of E_inf is {tot.get(n, 0)}, H^{n} has dim {h}")
    return bad


class Degeneration(NamedTuple):
    degenerates_at_E1: bool
    first_nonzero_page: int | None
    checked_up_to: int


def detect_degeneration(C: FilteredComplex, r_max: int) -> Degeneration:
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    top = min(r_max, stable_page_index(C))
    for r in range(1, top + 1):
        if not page(C, r).differential_is_zero():
            return Degeneration(False, r, r)
    return Degeneration(True, None, top)


# ---------------------------------------------------------------------------
# multiplicative structure


@dataclass
class PageProduct:
    r: int
    table: dict                         # ((p,q,i), (p',q',j)) -> {(p'',q''): vector}
    leibniz_failures: list = dc_field(default_factory=list)


def page_product(C: FilteredComplex, r: int, P: SSPage | None = None) -> PageProduct:
    """Induced product on E_r, with a Leibniz check for d_r on every pair of classes."""
    if C.mult is None:
        raise ProductNotFiltered("the complex carries no product")
    amb = _Ambient(C)
    P = P or page(C, r)
    classes = [(pq, i) for pq in sorted(P.entries) for i in range(P.entries[pq].dim)]
    table = {}

    def cls_product(pq1, i, pq2, j):
        x, y = P.reps[pq1][i], P.reps[pq2][j]
        xy = C.mul(x, y)
        tgt = (pq1[0] + pq2[0], pq1[1] + pq2[1])
        if not xy:
            return tgt, {}
        if tgt not in P.entries:
            # no basis element sits exactly at filtration tgt[0], so E_r vanishes there
            return tgt, {}
        return tgt, P.entries[tgt].project_sparse(amb.to_local(xy))

    for pq1, i in classes:
        for pq2, j in classes:
            tgt, v = cls_product(pq1, i, pq2, j)
            table[(pq1 + (i,), pq2 + (j,))] = (tgt, v)

    def mul_vec(pq1, a: dict, pq2, b: dict):
        out: dict = {}
        tgt = None
        for i, x in a.items():
            for j, y in b.items():
                t, v = table[(pq1 + (i,), pq2 + (j,))]
                tgt = t
                if v:
                    axpy(out, x * y, v)
        return tgt, out

    def dr(pq, vec: dict) -> dict:
        out: dict = {}
        for i, a in vec.items():
            img = P.d_r[pq][i]
            if img:
                axpy(out, a, img)
        return out

    failures = []
    for pq1, i in classes:
        for pq2, j in classes:
            tgt, prod = table[(pq1 + (i,), pq2 + (j,))]
            lhs = dr(tgt, prod) if tgt in P.entries else {}
            n1 = pq1[0] + pq1[1]
            s = -1 if n1 % 2 else 1
            da = dr(pq1, {i: 1})
            db = dr(pq2, {j: 1})
            da_pq = (pq1[0] + r, pq1[1] - r + 1)
            db_pq = (pq2[0] + r, pq2[1] - r + 1)
            rhs: dict = {}
            if da:
                _, t1 = mul_vec(da_pq, da, pq2, {j: 1})
                axpy(rhs, 1, t1)
            if db:
                _, t2 = mul_vec(pq1, {i: 1}, db_pq, db)
                axpy(rhs, s, t2)
            if lhs != rhs:
                failures.append(f"Leibniz fails on E_{r} classes {pq1}[{i}], {pq2}[{j}]")
    return PageProduct(r, {k: v for k, v in table.items() if v[1]}, failures)


# ---------------------------------------------------------------------------
# log classes


def bigrade_log_class(v: Sequence[int], alpha_degree: int, kappa: Sequence[int],
                      pole_orders: Sequence[int]) -> tuple[int, int]:
    if len(v) != len(kappa) or len(v) != len(pole_orders):
        raise LengthMismatch("v, kappa and pole_orders must have equal length")
    w = weight(v, kappa)
    return (-w, log_degree(alpha_degree, v, pole_orders) + w)


def log_ring_complex(L: LogRingTruncation) -> FilteredComplex:
    """The truncated log ring as a filtered DGA with zero differential, filtration -weight."""
    basis = [CellBasis(b.name, b.deg, -b.w) for b in L.basis]
    mult = {}
    for i in range(L.dim):
        for j in range(L.dim):
            v = L.mul_basis(i, j)
            if v:
                mult[(i, j)] = v
    return FilteredComplex(basis, [{} for _ in basis], mult, L.field, check=False)


# ---------------------------------------------------------------------------
# random test material


def _unipotent_filtered(basis: Sequence[CellBasis], rng: random.Random, field, density=0.3):
    """Random invertible P with P(F^p) in F^p, degree preserving, unipotent."""
    n = len(basis)
    order = sorted(range(n), key=lambda i: (basis[i].filt, i))
    rank_of = {g: t for t, g in enumerate(order)}
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = field.one
    for j in range(n):          # column j: image of basis j
        for i in range(n):
            if i == j or basis[i].deg != basis[j].deg:
                continue
            if basis[i].filt >= basis[j].filt and rank_of[i] > rank_of[j] and rng.random() < density:
                rows[i][j] = field(rng.randint(-3, 3))
    return rows


def _conjugate(rows_P, d_cols: list[dict], field, n):
    """Return columns of P d P^{-1}."""
    Pinv = inverse(rows_P, field).entries
    P = rows_P
    out = []
    for j in range(n):
        # P^{-1} e_j
        v = {i: Pinv[i][j] for i in range(n) if Pinv[i][j]}
        w: dict = {}
        for i, c in v.items():
            axpy(w, c, d_cols[i])
        z: dict = {}
        for i, c in w.items():
            col = {t: P[t][i] for t in range(n) if P[t][i]}
            axpy(z, c, col)
        out.append(z)
    return out, Pinv


def random_filtered_complex(rng: random.Random, field=QQ, max_dim: int = 30, max_spread: int = 5,
                            max_deg: int = 3) -> FilteredComplex:
    """Random finite filtered complex: elementary pairs x -> y conjugated by a filtered change of basis."""
    spread = rng.randint(0, max_spread)
    n_target = rng.randint(1, max_dim)
    basis: list[CellBasis] = []
    d0: list[dict] = []
    while len(basis) < n_target:
        deg = rng.randint(0, max_deg)
        fx = rng.randint(0, spread)
        if len(basis) + 2 <= n_target and deg < max_deg and rng.random() < 0.6:
            fy = rng.randint(fx, spread)
            i = len(basis)
            basis.append(CellBasis(f"x{i}", deg, fx))
            basis.append(CellBasis(f"y{i}", deg + 1, fy))
            d0.append({i + 1: field.one})
            d0.append({})
        else:
            basis.append(CellBasis(f"z{len(basis)}", deg, fx))
            d0.append({})
    n = len(basis)
    P = _unipotent_filtered(basis, rng, field)
    d, _ = _conjugate(P, d0, field, n)
    return FilteredComplex(basis, d, None, field)


class _DGPiece(NamedTuple):
    basis: list          # CellBasis
    d: list              # columns
    mult: dict


def _piece_free_odd(rng, field):
    f = rng.randint(0, 2)
    one = field.one
    basis = [CellBasis("1", 0, 0), CellBasis("x", 1, f)]
    mult = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}}
    return _DGPiece(basis, [{}, {}], mult)


def _piece_truncated(rng, field):
    N = rng.randint(2, 3)
    f = rng.randint(0, 2)
    one = field.one
    basis = [CellBasis("1" if a == 0 else f"y^{a}", 2 * a, a * f) for a in range(N)]
    mult = {(a, b): {a + b: one} for a in range(N) for b in range(N) if a + b < N}
    return _DGPiece(basis, [{} for _ in basis], mult)


def _piece_pair(rng, field):
    """Lambda[x] (x) k[y]/y^N with dx = y."""
    N = rng.randint(1, 3)
    fx = rng.randint(0, 2)
    fy = rng.randint(fx, fx + 2)
    one = field.one
    basis = []
    pos = {}
    for a in range(N):
        for e in (0, 1):
            pos[(e, a)] = len(basis)
            nm = ("x" if e else "") + (f"y^{a}" if a else "")
            basis.append(CellBasis(nm or "1", e + 2 * a, e * fx + a * fy))
    d = [{} for _ in basis]
    for a in range(N):
        if a + 1 < N:
            d[pos[(1, a)]] = {pos[(0, a + 1)]: one}
    mult = {}
    for (e1, a1), i in pos.items():
        for (e2, a2), j in pos.items():
            if e1 + e2 > 1 or a1 + a2 >= N:
                continue
            mult[(i, j)] = {pos[(e1 + e2, a1 + a2)]: one}
    return _DGPiece(basis, d, mult)


def _piece_heisenberg(rng, field):
    """Lambda[a, b, c] with dc = ab."""
    fa, fb = rng.randint(0, 2), rng.randint(0, 2)
    fc = rng.randint(0, fa + fb)
    from itertools import combinations
    gens = [("a", fa), ("b", fb), ("c", fc)]
    subsets = [s for r in range(4) for s in combinations(range(3), r)]
    index = {s: i for i, s in enumerate(subsets)}
    one = field.one
    basis = [CellBasis("".join(gens[g][0] for g in s) or "1", len(s), sum(gens[g][1] for g in s)) for s in subsets]
    mult = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            merged = s + t
            sign = 1
            for x in range(len(merged)):
                for y in range(x + 1, len(merged)):
                    if merged[x] > merged[y]:
                        sign = -sign
            mult[(index[s], index[t])] = {index[tuple(sorted(merged))]: one * sign}
    # d is a derivation with d(a) = d(b) = 0, d(c) = ab
    d = [{} for _ in subsets]
    for s in subsets:
        if 2 not in s:
            continue
        pos_c = s.index(2)
        sign = -1 if pos_c % 2 else 1
        rest = s[:pos_c] + s[pos_c + 1:]
        # c sits at position pos_c; moving d past earlier odd letters gives the sign
        if 0 in rest or 1 in rest:
            continue
        prod = tuple(sorted(rest + (0, 1)))
        # rest is empty here because a or b would kill ab
        d[index[s]] = {index[prod]: one * sign}
    return _DGPiece(basis, d, mult)


def _tensor_pieces(A: _DGPiece, B: _DGPiece, field) -> _DGPiece:
    pairs = [(i, j) for i in range(len(A.basis)) for j in range(len(B.basis))]
    index = {p: n for n, p in enumerate(pairs)}
    basis = []
    for i, j in pairs:
        a, b = A.basis[i], B.basis[j]
        nm = b.name if a.name == "1" else (a.name if b.name == "1" else a.name + b.name)
        basis.append(CellBasis(nm, a.deg + b.deg, a.filt + b.filt))
    d = []
    for i, j in pairs:
        col: dict = {}
        for t, c in A.d[i].items():
            col[index[(t, j)]] = col.get(index[(t, j)], 0) + c
        s = -1 if A.basis[i].deg % 2 else 1
        for t, c in B.d[j].items():
            col[index[(i, t)]] = col.get(index[(i, t)], 0) + s * c
        d.append({k: v for k, v in col.items() if v})
    mult = {}
    for (i, j) in pairs:
        for (i2, j2) in pairs:
            pa = A.mult.get((i, i2))
            pb = B.mult.get((j, j2))
            if not pa or not pb:
                continue
            s = -1 if (B.basis[j].deg * A.basis[i2].deg) % 2 else 1
            mult[(index[(i, j)], index[(i2, j2)])] = {index[(k, l)]: s * x * y
                                                     for k, x in pa.items() for l, y in pb.items()}
    return _DGPiece(basis, d, mult)


def random_filtered_dga(rng: random.Random, field=QQ, max_dim: int = 30, max_spread: int = 5) -> FilteredComplex:
    """Tensor product of small filtered DGAs, transported by a random filtered change of basis."""
    makers = [_piece_free_odd, _piece_truncated, _piece_pair, _piece_heisenberg]
    while True:
        A = None
        for _ in range(rng.randint(1, 3)):
            piece = rng.choice(makers)(rng, field)
            cand = piece if A is None else _tensor_pieces(A, piece, field)
            if len(cand.basis) > max_dim:
                break
            A = cand
        fl = [b.filt for b in A.basis]
        if max(fl) - min(fl) <= max_spread:
            break
    n = len(A.basis)
    P = _unipotent_filtered(A.basis, rng, field, density=0.25)
    d, Pinv = _conjugate(P, A.d, field, n)
    # transported product: mu'(x, y) = P mu(P^{-1} x, P^{-1} y)
    cols_inv = [{i: Pinv[i][j] for i in range(n) if Pinv[i][j]} for j in range(n)]
    mult = {}
    for a in range(n):
        for b in range(n):
            acc: dict = {}
            for i, x in cols_inv[a].items():
                for j, y in cols_inv[b].items():
                    m = A.mult.get((i, j))
                    if m:
                        axpy(acc, x * y, m)
            out: dict = {}
            for t, c in acc.items():
                axpy(out, c, {s: P[s][t] for s in range(n) if P[s][t]})
            if out:
                mult[(a, b)] = out
    return FilteredComplex(A.basis, d, mult, field)


def named_complex(name: str, field=QQ) -> FilteredComplex:
    one = field.one
    if name == "dx_eq_y":
        return FilteredComplex([CellBasis("x", 0, 0), CellBasis("y", 1, 1)], [{1: one}, {}], None, field)
    if name == "d2_only":
        return FilteredComplex([CellBasis("x", 0, 0), CellBasis("w", 1, 1), CellBasis("y", 1, 2)],
                               [{2: one}, {}, {}], None, field)
    if name == "exterior_xy":
        # x odd, y = dx even with y^2 = 0; the filtration counts powers of y
        basis = [CellBasis("1", 0, 0), CellBasis("x", 1, 0), CellBasis("y", 2, 1), CellBasis("xy", 3, 1)]
        d = [{}, {2: one}, {}, {}]
        mult = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (0, 2): {2: one}, (2, 0): {2: one},
                (0, 3): {3: one}, (3, 0): {3: one}, (1, 2): {3: one}, (2, 1): {3: one}}
        return FilteredComplex(basis, d, mult, field)
    raise KeyError(name)
