"""Exact linear algebra over Q, prime fields and Z.

Matrices are dense row lists of exact scalars.  Internally the elimination
routines work on sparse rows (``dict`` column -> nonzero entry), which keeps
the many small, mostly-zero systems arising elsewhere in the package cheap.

Reduced row-echelon form is unique for a given row space, so the incremental
elimination used here returns the same matrix as textbook Gauss-Jordan with
the "first nonzero column, smallest row index" pivot rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence


class ContainmentViolation(ValueError):
    """Raised when a denominator subspace is not contained in the numerator."""


class NotAPrime(ValueError):
    pass


class FieldMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# fields


_ZERO = Fraction(0)
_ONE = Fraction(1)


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, FpElement):
            raise FieldMismatch("cannot coerce a prime-field element into QQ")
        return Fraction(x)

    @property
    def zero(self) -> Fraction:
        return _ZERO

    @property
    def one(self) -> Fraction:
        return _ONE

    def to_json(self, x):
        x = self(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class FpElement:
    """Element of Z/p for a prime p.  Immutable."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o) -> int:
        if isinstance(o, FpElement):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FpElement(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FpElement(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FpElement(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is NotImplemented else FpElement(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is NotImplemented:
            return NotImplemented
        return FpElement(w, self.p) / self

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, FpElement):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if not _is_prime(p):
            raise NotAPrime(f"{p} is not prime; GF({p}) is not a field")
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> FpElement:
        p = self.characteristic
        if isinstance(x, FpElement):
            if x.p != p:
                raise FieldMismatch(f"GF({x.p}) element given to GF({p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return FpElement(x.numerator * pow(x.denominator, -1, p), p)
        return FpElement(int(x), p)

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.characteristic)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.characteristic)

    def to_json(self, x):
        return self(x).v

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_string(s: str):
    """Parse ``q`` / ``qq`` or ``fp:<p>`` into a field."""
    s = s.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("fp:") or s.startswith("gf:"):
        return GF(int(s[3:]))
    raise ValueError(f"unknown field {s!r}; expected 'q' or 'fp:<prime>'")


def field_of(x):
    if isinstance(x, FpElement):
        return GF(x.p)
    return QQ


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, data, field=QQ, cols: int | None = None) -> "Matrix":
        if isinstance(data, Matrix):
            return data
        rows = [tuple(field(x) for x in r) for r in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zero(cls, rows: int, cols: int, field=QQ) -> "Matrix":
        z = field.zero
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_o = other.transpose().entries
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols_o:
                s = 0
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> list:
        out = []
        for r in self.entries:
            s = 0
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)


def as_matrix(m, field=QQ, cols: int | None = None) -> Matrix:
    if isinstance(m, Matrix):
        return m
    return Matrix.from_rows(m, field, cols)


# ---------------------------------------------------------------------------
# sparse elimination core


def to_sparse(v: Sequence) -> dict:
    return {i: x for i, x in enumerate(v) if x}


def to_dense(v: dict, n: int, zero) -> list:
    out = [zero] * n
    for i, x in v.items():
        out[i] = x
    return out


def axpy(y: dict, a, x: dict) -> None:
    """In place y += a*x on sparse vectors."""
    for i, xi in x.items():
        s = y.get(i, 0) + a * xi
        if s:
            y[i] = s
        elif i in y:
            del y[i]


class Echelon:
    """Incrementally maintained fully reduced echelon basis of a subspace.

    With ``track=True`` every pivot row also remembers how it was built from
    the inserted vectors, so coordinates with respect to the inserted
    (independent) vectors are available.
    """

    def __init__(self, track: bool = False):
        self.piv: dict[int, dict] = {}
        self.combo: dict[int, dict] = {}
        self.track = track
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.piv)

    def reduce(self, v: dict, combo: dict | None = None):
        v = dict(v)
        hit = [c for c in v if c in self.piv]
        for c in hit:
            a = v.get(c)
            if a:
                axpy(v, -a, self.piv[c])
                if combo is not None:
                    axpy(combo, -a, self.combo[c])
        return v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def add(self, v: dict) -> bool:
        """Insert v; returns True when v was independent of the current span."""
        idx = self.n_inserted
        self.n_inserted += 1
        combo = {idx: 1} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            return False
        c = min(r)
        a = r[c]
        inv = Fraction(1, a) if isinstance(a, int) else 1 / a
        r = {i: x * inv for i, x in r.items()}
        if combo is not None:
            combo = {i: x * inv for i, x in combo.items()}
        for c2, row in self.piv.items():
            a = row.get(c)
            if a:
                axpy(row, -a, r)
                if combo is not None:
                    axpy(self.combo[c2], -a, combo)
        self.piv[c] = r
        if combo is not None:
            self.combo[c] = combo
        return True

    def coords(self, v: dict) -> dict:
        """Coordinates of v (assumed in the span) w.r.t. the inserted vectors."""
        out: dict = {}
        for c, a in v.items():
            if c in self.combo:
                axpy(out, a, self.combo[c])
        return out

    def rows_sorted(self) -> list[tuple[int, dict]]:
        return sorted(self.piv.items())


class RREF(NamedTuple):
    rank: int
    pivot_columns: list
    reduced: Matrix


def rref(m, field=QQ) -> RREF:
    """Reduced row-echelon form; returns (rank, pivot columns, reduced matrix)."""
    m = as_matrix(m, field)
    e = Echelon()
    for r in m.entries:
        e.add(to_sparse(r))
    rows = e.rows_sorted()
    reduced = [tuple(to_dense(r, m.cols, field.zero)) for _, r in rows]
    reduced += [tuple(field.zero for _ in range(m.cols))] * (m.rows - len(rows))
    return RREF(len(rows), [c for c, _ in rows], Matrix(m.rows, m.cols, tuple(reduced)))


def rank(m, field=QQ) -> int:
    m = as_matrix(m, field)
    e = Echelon()
    for r in m.entries:
        e.add(to_sparse(r))
    return e.rank


def sparse_rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def sparse_kernel(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Kernel basis of the matrix with the given sparse rows, as sparse vectors."""
    e = Echelon()
    for r in rows:
        e.add(r)
    piv = e.piv
    basis = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: 1}
        for c, row in piv.items():
            a = row.get(f)
            if a:
                v[c] = -a
        basis.append(v)
    return basis


def kernel_basis(m, field=QQ, cols: int | None = None) -> list[list]:
    """Basis of {v : m v = 0}, one vector per free column, in column order."""
    m = as_matrix(m, field, cols)
    ker = sparse_kernel((to_sparse(r) for r in m.entries), m.cols)
    return [[field(x) for x in to_dense(v, m.cols, 0)] for v in ker]


def inverse(m, field=QQ) -> Matrix:
    m = as_matrix(m, field)
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of a non-square matrix")
    e = Echelon(track=True)
    for r in m.entries:
        if not e.add(to_sparse(r)):
            raise ZeroDivisionError("singular matrix")
    # row i of m^{-1} m = e_i; combo of pivot row at column c gives row c of m^{-1}
    out = [tuple(field(x) for x in to_dense(e.combo[c], n, 0)) for c in range(n)]
    return Matrix(n, n, tuple(out))


def solve_in_span(basis: Sequence[Sequence], v: Sequence, field=QQ) -> list | None:
    """Coordinates of v in the given independent vectors, or None if not in span."""
    e = Echelon(track=True)
    for b in basis:
        if not e.add(to_sparse(b)):
            raise ValueError("solve_in_span needs independent vectors")
    sv = to_sparse([field(x) for x in v])
    if e.reduce(sv):
        return None
    c = e.coords(sv)
    return [field(c.get(i, 0)) for i in range(len(basis))]


# ---------------------------------------------------------------------------
# subquotients


@dataclass(frozen=True)
class SubquotientBasis:
    ambient_dim: int
    representatives: tuple
    projection: Matrix
    field: object = QQ

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def project(self, v: Sequence) -> list:
        return self.projection.apply(v)

    def project_sparse(self, v: dict) -> dict:
        out = {}
        for i, row in enumerate(self.projection.entries):
            s = 0
            for c, a in v.items():
                b = row[c]
                if b:
                    s = s + a * b
            if s:
                out[i] = s
        return out


def subquotient(Z: Sequence[Sequence], B: Sequence[Sequence], field=QQ,
                ambient_dim: int | None = None) -> SubquotientBasis:
    """Basis of span(Z)/span(B) with a projection defined on the whole ambient space.

    Representatives are the earliest vectors of Z independent modulo B and the
    previously chosen ones.  The projection kills B and sends the i-th
    representative to the i-th unit vector.
    """
    if ambient_dim is None:
        ambient_dim = len(Z[0]) if Z else (len(B[0]) if B else 0)
    zs = [to_sparse([field(x) for x in z]) for z in Z]
    bs = [to_sparse([field(x) for x in b]) for b in B]
    return subquotient_sparse(zs, bs, ambient_dim, field)


def subquotient_sparse(Z: Sequence[dict], B: Sequence[dict], ambient_dim: int, field=QQ) -> SubquotientBasis:
    ze = Echelon()
    for z in Z:
        ze.add(z)
    for b in B:
        if not ze.contains(b):
            raise ContainmentViolation("span(B) is not contained in span(Z)")
    chooser = Echelon()
    for b in B:
        chooser.add(b)
    reps = [z for z in Z if chooser.add(z)]
    e2 = Echelon(track=True)
    for b in B:
        e2.add(b)
    start = e2.n_inserted
    for r in reps:
        e2.add(r)
    rows = []
    for j in range(len(reps)):
        idx = start + j
        row = [field.zero] * ambient_dim
        for c, combo in e2.combo.items():
            a = combo.get(idx)
            if a:
                row[c] = field(a)
        rows.append(tuple(row))
    proj = Matrix(len(reps), ambient_dim, tuple(rows))
    reps_dense = tuple(tuple(field(x) for x in to_dense(r, ambient_dim, 0)) for r in reps)
    return SubquotientBasis(ambient_dim, reps_dense, proj, field)


# ---------------------------------------------------------------------------
# Smith normal form over Z


class SNF(NamedTuple):
    U: list
    S: list
    V: list


def _matmul_int(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SNF:
    """Return unimodular U, V and diagonal S with U m V = S and d_i | d_{i+1}."""
    A = [[int(x) for x in r] for r in m]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SNF(U, A, V)


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    S = smith_normal_form(m).S
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def int_det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    return int(_frac_det([[Fraction(x) for x in r] for r in m]))


def _frac_det(a):
    n = len(a)
    a = [r[:] for r in a]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
