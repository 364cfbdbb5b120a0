"""Exact dense linear algebra over the field layer.

Everything here works on small matrices (module decompositions, Krylov
minimal polynomials), so the code favors clarity over asymptotics: cubic
elimination throughout, no pivoting heuristics beyond "first nonzero".
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from mkt.errors import ArityMismatch, DegenerateInput, DescriptorMismatch
from mkt.fields import FieldDescriptor, FieldElement, Polynomial, poly_gcd


def _coerce_entry(field: FieldDescriptor, e) -> FieldElement:
    if isinstance(e, FieldElement):
        if e.field != field:
            raise DescriptorMismatch(f"entry over {e.field}, matrix over {field}")
        return e
    if isinstance(e, int):
        return field.from_int(e)
    raise DescriptorMismatch(f"cannot use {type(e).__name__} as a matrix entry")


class Matrix:
    """Immutable dense matrix with exact field entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldDescriptor, rows: Iterable[Iterable]):
        rs = tuple(tuple(_coerce_entry(field, e) for e in row) for row in rows)
        if rs:
            w = len(rs[0])
            for r in rs:
                if len(r) != w:
                    raise ArityMismatch("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        one, zero = field.one(), field.zero()
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        zero = field.zero()
        return cls(field, [[zero] * m for _ in range(n)])

    @classmethod
    def diagonal(cls, field, entries: Sequence) -> "Matrix":
        es = [_coerce_entry(field, e) for e in entries]
        zero = field.zero()
        n = len(es)
        return cls(field, [[es[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_ints(cls, field, rows: Iterable[Iterable[int]]) -> "Matrix":
        return cls(field, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def _shape_check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise DescriptorMismatch("expected a Matrix")
        if self.field != other.field:
            raise DescriptorMismatch("matrices over different fields")
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ArityMismatch("shape mismatch")

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.field != other.field:
                raise DescriptorMismatch("matrices over different fields")
            if self.ncols != other.nrows:
                raise ArityMismatch("inner dimensions disagree")
            cols = [other.col(j) for j in range(other.ncols)]
            zero = self.field.zero()
            out = []
            for r in self.rows:
                line = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        acc = acc + a * b
                    line.append(acc)
                out.append(line)
            return Matrix(self.field, out)
        e = _coerce_entry(self.field, other)
        return Matrix(self.field, [[a * e for a in r] for r in self.rows])

    def __rmul__(self, other):
        e = _coerce_entry(self.field, other)
        return Matrix(self.field, [[e * a for a in r] for r in self.rows])

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square:
            raise ArityMismatch("matrix power needs a square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product; v is a sequence of entries."""
        vs = [_coerce_entry(self.field, e) for e in v]
        if len(vs) != self.ncols:
            raise ArityMismatch("vector length mismatch")
        zero = self.field.zero()
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vs):
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.ncols)])

    def trace(self) -> FieldElement:
        acc = self.field.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map_entries(self, fn: Callable, field: FieldDescriptor | None = None) -> "Matrix":
        return Matrix(field or self.field, [[fn(a) for a in r] for r in self.rows])

    def det(self) -> FieldElement:
        if not self.is_square:
            raise ArityMismatch("determinant needs a square matrix")
        n = self.nrows
        if n == 0:
            return self.field.one()
        rows = [list(r) for r in self.rows]
        sign = 1
        det = self.field.one()
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not rows[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                return self.field.zero()
            if piv != k:
                rows[k], rows[piv] = rows[piv], rows[k]
                sign = -sign
            pivot = rows[k][k]
            det = det * pivot
            inv = pivot.inverse()
            for i in range(k + 1, n):
                f = rows[i][k] * inv
                if f.is_zero():
                    continue
                for j in range(k, n):
                    rows[i][j] = rows[i][j] - f * rows[k][j]
        return det if sign == 1 else -det

    def is_invertible(self) -> bool:
        return self.is_square and not self.det().is_zero()

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ArityMismatch("inverse needs a square matrix")
        n = self.nrows
        aug = [list(self.rows[i]) + list(Matrix.identity(self.field, n).rows[i])
               for i in range(n)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not aug[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                raise DegenerateInput("matrix is singular")
            aug[k], aug[piv] = aug[piv], aug[k]
            inv = aug[k][k].inverse()
            aug[k] = [a * inv for a in aug[k]]
            for i in range(n):
                if i == k or aug[i][k].is_zero():
                    continue
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
        return Matrix(self.field, [r[n:] for r in aug])

    def rank(self) -> int:
        rows = [list(r) for r in self.rows]
        _, pivots = _row_reduce(self.field, rows)
        return len(pivots)

    def kernel_basis(self) -> list[tuple]:
        """Basis of the right null space, as vectors of length ncols."""
        rows = [list(r) for r in self.rows]
        red, pivots = _row_reduce(self.field, rows)
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        zero, one = self.field.zero(), self.field.one()
        basis = []
        for j in free:
            v = [zero] * self.ncols
            v[j] = one
            for r, pc in zip(red, pivots):
                v[pc] = -r[j]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence) -> tuple | None:
        """One solution of A x = b, or None when inconsistent."""
        bs = [_coerce_entry(self.field, e) for e in b]
        if len(bs) != self.nrows:
            raise ArityMismatch("rhs length mismatch")
        rows = [list(r) + [bs[i]] for i, r in enumerate(self.rows)]
        red, pivots = _row_reduce(self.field, rows, ncols=self.ncols)
        # any leftover nonzero rhs in a zero row means inconsistency
        for r in red[len(pivots):]:
            if not r[-1].is_zero():
                return None
        zero = self.field.zero()
        x = [zero] * self.ncols
        for r, pc in zip(red, pivots):
            x[pc] = r[-1]
        return tuple(x)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; block (i,j) is self[i][j] * other."""
        if self.field != other.field:
            raise DescriptorMismatch("matrices over different fields")
        out = []
        for i in range(self.nrows):
            for k in range(other.nrows):
                line = []
                for j in range(self.ncols):
                    a = self.rows[i][j]
                    line.extend(a * b for b in other.rows[k])
                out.append(line)
        return Matrix(self.field, out)

    def direct_sum(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DescriptorMismatch("matrices over different fields")
        zero = self.field.zero()
        n1, m1, n2, m2 = self.nrows, self.ncols, other.nrows, other.ncols
        out = []
        for i in range(n1):
            out.append(list(self.rows[i]) + [zero] * m2)
        for i in range(n2):
            out.append([zero] * m1 + list(other.rows[i]))
        return Matrix(self.field, out)

    def conjugate(self, s: "Matrix") -> "Matrix":
        """s * self * s^-1."""
        return s * self * s.inverse()

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"[{body}]"


def _row_reduce(field, rows: list[list[FieldElement]], ncols: int | None = None):
    """In-place RREF. Returns (nonzero rows first, pivot column list).

    When ncols is given, pivots are only sought in the first ncols columns
    (augmented-system use); the remaining columns are carried along.
    """
    if not rows:
        return rows, []
    width = ncols if ncols is not None else len(rows[0])
    pivots = []
    r = 0
    for c in range(width):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i == r or rows[i][c].is_zero():
                continue
            f = rows[i][c]
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


class SpanTracker:
    """Incremental membership testing for a growing subspace."""

    def __init__(self, field: FieldDescriptor, dim: int):
        self.field = field
        self.dim = dim
        self._reduced: list[list[FieldElement]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, v: Sequence[FieldElement]) -> list[FieldElement]:
        w = list(v)
        for rv, p in zip(self._reduced, self._pivots):
            if not w[p].is_zero():
                f = w[p]
                w = [a - f * b for a, b in zip(w, rv)]
        return w

    def contains(self, v: Sequence[FieldElement]) -> bool:
        return all(a.is_zero() for a in self._reduce(v))

    def add(self, v: Sequence[FieldElement]) -> bool:
        """Insert v; returns True when it enlarged the span."""
        w = self._reduce(v)
        piv = None
        for j, a in enumerate(w):
            if not a.is_zero():
                piv = j
                break
        if piv is None:
            return False
        inv = w[piv].inverse()
        w = [a * inv for a in w]
        for i, (rv, p) in enumerate(zip(self._reduced, self._pivots)):
            if not rv[piv].is_zero():
                f = rv[piv]
                self._reduced[i] = [a - f * b for a, b in zip(rv, w)]
        self._reduced.append(w)
        self._pivots.append(piv)
        return True


def solve_in_span(field, basis: Sequence[Sequence[FieldElement]],
                  target: Sequence[FieldElement]) -> list[FieldElement] | None:
    """Coefficients writing target as a combination of basis vectors, or None."""
    if not basis:
        return [] if all(a.is_zero() for a in target) else None
    cols = Matrix(field, [list(v) for v in zip(*basis)])
    sol = cols.solve(list(target))
    return None if sol is None else list(sol)


def span_closure(ops: Sequence[Matrix], seeds: Sequence[Sequence[FieldElement]],
                 field: FieldDescriptor, dim: int) -> list[tuple]:
    """Basis of the smallest ops-invariant subspace containing the seeds.

    Vectors are returned in discovery (BFS) order, so the output is
    deterministic given the input order.
    """
    tracker = SpanTracker(field, dim)
    out: list[tuple] = []
    queue = [tuple(v) for v in seeds]
    while queue:
        v = queue.pop(0)
        if not tracker.add(v):
            continue
        out.append(v)
        for op in ops:
            queue.append(op.apply(v))
    return out


def poly_eval_matrix(f: Polynomial, a: Matrix) -> Matrix:
    """f(a) by Horner; f's coefficients must live in a's field."""
    if f.field != a.field:
        raise DescriptorMismatch("polynomial and matrix fields disagree")
    n = a.nrows
    out = Matrix.zeros(a.field, n)
    ident = Matrix.identity(a.field, n)
    for c in reversed(f.coeffs):
        out = out * a + ident * c
    return out


def _cyclic_annihilator(a: Matrix, v: Sequence[FieldElement]) -> Polynomial:
    # minimal monic g with g(a) v = 0, via Krylov iteration
    field = a.field
    n = a.nrows
    reduced: list[list[FieldElement]] = []
    pivots: list[int] = []
    combos: list[list[FieldElement]] = []
    cur = tuple(v)
    k = 0
    while True:
        w = list(cur)
        combo = [field.zero()] * (k + 1)
        combo[k] = field.one()
        for rv, p, rc in zip(reduced, pivots, combos):
            if not w[p].is_zero():
                f = w[p]
                w = [x - f * y for x, y in zip(w, rv)]
                for i, c in enumerate(rc):
                    combo[i] = combo[i] - f * c
        piv = None
        for j, x in enumerate(w):
            if not x.is_zero():
                piv = j
                break
        if piv is None:
            return Polynomial(field, combo).monic()
        inv = w[piv].inverse()
        w = [x * inv for x in w]
        combo = [c * inv for c in combo]
        reduced.append(w)
        pivots.append(piv)
        combos.append(combo)
        if k + 1 > n:
            raise DegenerateInput("Krylov iteration failed to terminate")
        cur = a.apply(cur)
        k += 1


def minpoly_matrix(a: Matrix) -> Polynomial:
    """Minimal polynomial of a square matrix, monic."""
    if not a.is_square:
        raise ArityMismatch("minimal polynomial needs a square matrix")
    field = a.field
    n = a.nrows
    if n == 0:
        return Polynomial.one(field)
    acc = Polynomial.one(field)
    zero, one = field.zero(), field.one()
    for j in range(n):
        if acc.degree >= n:
            break
        e = tuple(one if i == j else zero for i in range(n))
        g = _cyclic_annihilator(a, e)
        if (acc % g).is_zero():
            continue
        d = poly_gcd(acc, g)
        acc = (acc * g) // d
    return acc.monic()


def companion_matrix(f: Polynomial) -> Matrix:
    """Companion matrix of a monic polynomial of degree >= 1."""
    if not f.is_monic() or f.degree < 1:
        raise DegenerateInput("companion matrix needs a monic polynomial of degree >= 1")
    field = f.field
    n = f.degree
    zero, one = field.zero(), field.one()
    rows = []
    for i in range(n):
        row = [zero] * n
        if i > 0:
            row[i - 1] = one
        row[n - 1] = -f.coeffs[i]
        rows.append(row)
    return Matrix(field, rows)


def jordan_block(field, eigenvalue, size: int) -> Matrix:
    lam = _coerce_entry(field, eigenvalue)
    zero, one = field.zero(), field.one()
    rows = []
    for i in range(size):
        row = [zero] * size
        row[i] = lam
        if i + 1 < size:
            row[i + 1] = one
        rows.append(row)
    return Matrix(field, rows)


class PolyMatrix:
    """Square matrix with entries in k[t]; used for one-parameter families."""

    __slots__ = ("field", "rows")

    def __init__(self, field: FieldDescriptor, rows: Iterable[Iterable[Polynomial]]):
        rs = []
        for row in rows:
            line = []
            for e in row:
                if isinstance(e, Polynomial):
                    if e.field != field:
                        raise DescriptorMismatch("entry over the wrong field")
                    line.append(e)
                elif isinstance(e, FieldElement):
                    if e.field != field:
                        raise DescriptorMismatch("entry over the wrong field")
                    line.append(Polynomial.constant(e))
                elif isinstance(e, int):
                    line.append(Polynomial.constant(field.from_int(e)))
                else:
                    raise DescriptorMismatch(f"bad PolyMatrix entry: {type(e).__name__}")
            rs.append(tuple(line))
        rows_t = tuple(rs)
        if rows_t:
            w = len(rows_t[0])
            for r in rows_t:
                if len(r) != w:
                    raise ArityMismatch("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows_t)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def from_matrix(cls, m: Matrix) -> "PolyMatrix":
        return cls(m.field, [[Polynomial.constant(e) for e in r] for r in m.rows])

    @classmethod
    def identity(cls, field, n: int) -> "PolyMatrix":
        return cls.from_matrix(Matrix.identity(field, n))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyMatrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(self.field, [[a - b for a, b in zip(r1, r2)]
                                       for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.field, [[-a for a in r] for r in self.rows])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            raise DescriptorMismatch("expected a PolyMatrix")
        if self.ncols != other.nrows:
            raise ArityMismatch("inner dimensions disagree")
        cols = [[other.rows[i][j] for i in range(other.nrows)] for j in range(other.ncols)]
        zero = Polynomial.zero(self.field)
        out = []
        for r in self.rows:
            line = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    acc = acc + a * b
                line.append(acc)
            out.append(line)
        return PolyMatrix(self.field, out)

    def evaluate(self, point) -> Matrix:
        """Substitute a field value for t."""
        pt = _coerce_entry(self.field, point)
        return Matrix(self.field, [[e.evaluate(pt) for e in r] for r in self.rows])

    def det(self) -> Polynomial:
        """Fraction-free (Bareiss) determinant; exact over k[t]."""
        if self.nrows != self.ncols:
            raise ArityMismatch("determinant needs a square matrix")
        n = self.nrows
        if n == 0:
            return Polynomial.one(self.field)
        b = [list(r) for r in self.rows]
        sign = 1
        prev = Polynomial.one(self.field)
        for k in range(n - 1):
            piv = None
            for i in range(k, n):
                if not b[i][k].is_zero():
                    piv = i
                    break
            if piv is None:
                return Polynomial.zero(self.field)
            if piv != k:
                b[k], b[piv] = b[piv], b[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    b[i][j] = (b[i][j] * b[k][k] - b[i][k] * b[k][j]) // prev
                b[i][k] = Polynomial.zero(self.field)
            prev = b[k][k]
        d = b[n - 1][n - 1]
        return d if sign == 1 else -d

    def is_unit_det(self) -> bool:
        d = self.det()
        return d.degree == 0

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in r) for r in self.rows)
        return f"[{body}]"
