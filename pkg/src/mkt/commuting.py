"""Commuting invertible matrix tuples and their reduction to symbol classes.

A weight-l tuple is l pairwise commuting invertible matrices over a common
field. Tuples generate a group under direct sum; one-parameter polynomial
families connect tuples that must map to the same class. The reduction
computes a composition series of the module the tuple defines, reads off the
scalar action on each simple factor (a finite extension of the ground field),
and transfers the resulting symbols back down. The result is a Milnor
expression whose canonical class is the complete invariant this package
exposes for tuples over Q and finite fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .canonical import CanonicalClass, canonical_class
from .errors import (ArityMismatch, DegenerateInput, DescriptorMismatch,
                     NotUnitDeterminant, RecursionInvariantViolated,
                     UnsupportedTower)
from .factor import element_sort_key, factor, poly_sort_key
from .fields import (EXTENSION, FUNCTION, PRIME, RATIONALS, FieldDescriptor,
                     FieldElement, Polynomial, coordinates, embed, embed_poly,
                     extension, tower_steps)
from .linalg import (Matrix, PolyMatrix, SpanTracker, minpoly_matrix,
                     poly_eval_matrix, solve_in_span)
from .symbols import MilnorExpression, symbol, zero_expression
from .transfer import transfer_tower

__all__ = [
    "MatrixTuple", "PolyMatrixTuple", "CompositionFactor",
    "kronecker", "composition_series", "reduce_tuple", "class_of_tuple",
    "homotopy_mult", "homotopy_swap", "homotopy_shear", "homotopy_steinberg",
    "check_relations",
]


def _check_commuting(mats: Sequence) -> None:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] * mats[j] != mats[j] * mats[i]:
                raise DegenerateInput(f"slots {i} and {j} do not commute")


class MatrixTuple:
    """l pairwise commuting invertible n x n matrices over one field."""

    __slots__ = ("field", "size", "weight", "matrices")

    def __init__(self, field: FieldDescriptor, matrices: Sequence[Matrix]):
        mats = tuple(matrices)
        if not mats:
            raise DegenerateInput("a tuple needs at least one slot")
        n = mats[0].nrows
        for m in mats:
            if not isinstance(m, Matrix):
                raise DegenerateInput("tuple slots must be matrices")
            if m.field != field:
                raise DescriptorMismatch("slot over the wrong field")
            if not m.is_square or m.nrows != n:
                raise ArityMismatch("slots must be square of one common size")
        for m in mats:
            if m.det().is_zero():
                raise DegenerateInput("singular slot")
        _check_commuting(mats)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "weight", len(mats))
        object.__setattr__(self, "matrices", mats)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixTuple is immutable")

    @classmethod
    def identity(cls, field, n: int, weight: int) -> "MatrixTuple":
        ident = Matrix.identity(field, n)
        return cls(field, [ident] * weight)

    @classmethod
    def scalars(cls, field, values: Sequence) -> "MatrixTuple":
        """The 1 x 1 tuple of the given nonzero scalars."""
        return cls(field, [Matrix(field, [[v]]) for v in values])

    def direct_sum(self, other: "MatrixTuple") -> "MatrixTuple":
        if self.field != other.field:
            raise DescriptorMismatch("tuples over different fields")
        if self.weight != other.weight:
            raise ArityMismatch("tuples of different weights")
        mats = [a.direct_sum(b) for a, b in zip(self.matrices, other.matrices)]
        return MatrixTuple(self.field, mats)

    def conjugate(self, s: Matrix) -> "MatrixTuple":
        return MatrixTuple(self.field, [m.conjugate(s) for m in self.matrices])

    def with_slot(self, i: int, m: Matrix) -> "MatrixTuple":
        mats = list(self.matrices)
        mats[i] = m
        return MatrixTuple(self.field, mats)

    def swap_slots(self, i: int, j: int) -> "MatrixTuple":
        mats = list(self.matrices)
        mats[i], mats[j] = mats[j], mats[i]
        return MatrixTuple(self.field, mats)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return self.field == other.field and self.matrices == other.matrices

    def __hash__(self):
        return hash((self.field, self.matrices))

    def __repr__(self):
        return f"MatrixTuple(weight={self.weight}, size={self.size}, field={self.field})"


def kronecker(x: MatrixTuple, y: MatrixTuple) -> MatrixTuple:
    """Product tuple of weight p+q: x's slots padded on the right, y's on the left.

    Slot convention: (A_1 ox I, ..., A_p ox I, I ox B_1, ..., I ox B_q).
    """
    if x.field != y.field:
        raise DescriptorMismatch("tuples over different fields")
    iy = Matrix.identity(y.field, y.size)
    ix = Matrix.identity(x.field, x.size)
    mats = [a.kron(iy) for a in x.matrices] + [ix.kron(b) for b in y.matrices]
    return MatrixTuple(x.field, mats)


class PolyMatrixTuple:
    """A one-parameter family of commuting matrices with unit determinants."""

    __slots__ = ("field", "size", "weight", "matrices")

    def __init__(self, field: FieldDescriptor, matrices: Sequence[PolyMatrix]):
        mats = tuple(matrices)
        if not mats:
            raise DegenerateInput("a tuple needs at least one slot")
        n = mats[0].nrows
        for m in mats:
            if not isinstance(m, PolyMatrix):
                raise DegenerateInput("family slots must be polynomial matrices")
            if m.field != field:
                raise DescriptorMismatch("slot over the wrong field")
            if m.nrows != n or m.ncols != n:
                raise ArityMismatch("slots must be square of one common size")
        for m in mats:
            if not m.is_unit_det():
                raise NotUnitDeterminant(
                    f"determinant {m.det()} is not a nonzero constant")
        _check_commuting(mats)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "weight", len(mats))
        object.__setattr__(self, "matrices", mats)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrixTuple is immutable")

    def evaluate(self, point) -> MatrixTuple:
        return MatrixTuple(self.field, [m.evaluate(point) for m in self.matrices])

    def boundary(self) -> tuple[MatrixTuple, MatrixTuple]:
        """(family at 1, family at 0)."""
        return self.evaluate(self.field.one()), self.evaluate(self.field.zero())

    def __repr__(self):
        return f"PolyMatrixTuple(weight={self.weight}, size={self.size}, field={self.field})"


# ---------------------------------------------------------------------------
# homotopy constructors


def _mult_family(field, b: Matrix, c: Matrix) -> PolyMatrix:
    # [[0, I], [-BC, t(I+BC) + (1-t)(B+C)]]
    n = b.nrows
    bc = b * c
    lin0 = b + c
    lin1 = (Matrix.identity(field, n) + bc) - lin0
    zero_p = Polynomial.zero(field)
    rows = []
    for i in range(n):
        row = [zero_p] * n
        for j in range(n):
            row.append(Polynomial.constant(field.one() if i == j else field.zero()))
        rows.append(row)
    mbc = -bc
    for i in range(n):
        row = [Polynomial.constant(mbc.row(i)[j]) for j in range(n)]
        for j in range(n):
            row.append(Polynomial(field, [lin0.row(i)[j], lin1.row(i)[j]]))
        rows.append(row)
    return PolyMatrix(field, rows)


def _doubled(m: Matrix) -> PolyMatrix:
    return PolyMatrix.from_matrix(m.direct_sum(m))


def homotopy_mult(b: Matrix, c: Matrix, bystanders: Sequence[Matrix] = ()) -> PolyMatrixTuple:
    """Family whose endpoints realize slot-one multiplicativity.

    At t=1 the first slot is similar to I (+) BC, at t=0 to B (+) C; the
    bystander slots ride along doubled. B, C and the bystanders must all
    commute.
    """
    if b.field != c.field or b.nrows != c.nrows:
        raise DescriptorMismatch("factors must match in field and size")
    if b * c != c * b:
        raise DegenerateInput("factors do not commute")
    if b.det().is_zero() or c.det().is_zero():
        raise DegenerateInput("singular factor")
    field = b.field
    mats = [_mult_family(field, b, c)]
    mats.extend(_doubled(a) for a in bystanders)
    return PolyMatrixTuple(field, mats)


def homotopy_swap(x: MatrixTuple, i: int, j: int) -> PolyMatrixTuple:
    """Family placing the same multiplicative block in slots i and j.

    Its two endpoints differ, in the group the tuples generate, by twice the
    i<->j transposition of x; every class-level invariant therefore sees the
    swap as a sign change.
    """
    if x.weight < 2 or i == j or not (0 <= i < x.weight) or not (0 <= j < x.weight):
        raise DegenerateInput("need two distinct valid slots")
    field = x.field
    h = _mult_family(field, x.matrices[i], x.matrices[j])
    mats = []
    for s, a in enumerate(x.matrices):
        mats.append(h if s in (i, j) else _doubled(a))
    return PolyMatrixTuple(field, mats)


def homotopy_shear(a: Matrix, b: Matrix, c: Matrix,
                   bystanders: Sequence[tuple[Matrix, Matrix]] = ()) -> PolyMatrixTuple:
    """Family [[A, Ct], [0, B]]: block triangular at t=1, block diagonal at t=0.

    A is p x p, B is q x q, C is p x q. Bystanders are (top, bottom) pairs
    joined block-diagonally; commutation of the assembled slots is verified.
    """
    if a.field != b.field or a.field != c.field:
        raise DescriptorMismatch("blocks over different fields")
    p, q = a.nrows, b.nrows
    if c.nrows != p or c.ncols != q:
        raise ArityMismatch("off-diagonal block has the wrong shape")
    field = a.field
    zero_p = Polynomial.zero(field)
    x_p = Polynomial.x(field)
    rows = []
    for i in range(p):
        row = [Polynomial.constant(a.row(i)[j]) for j in range(p)]
        row.extend(Polynomial.constant(c.row(i)[j]) * x_p for j in range(q))
        rows.append(row)
    for i in range(q):
        row = [zero_p] * p
        row.extend(Polynomial.constant(b.row(i)[j]) for j in range(q))
        rows.append(row)
    mats = [PolyMatrix(field, rows)]
    for top, bottom in bystanders:
        mats.append(PolyMatrix.from_matrix(top.direct_sum(bottom)))
    return PolyMatrixTuple(field, mats)


def homotopy_steinberg(a: FieldElement, b: FieldElement,
                       bystanders: Sequence[FieldElement] = ()) -> PolyMatrixTuple:
    """Family connecting the weight-2 tuples (a, 1-a) and (b, 1-b).

    First slot: the companion matrix of
    X^3 + (a(t-1) - bt) X^2 + (b(t-1) - at) X + ab; second slot: identity
    minus the first. Determinants are -ab and (1-a)(1-b), so both a and b
    must avoid 0 and 1. Optional scalar bystanders are appended as scalar
    slots.
    """
    field = a.field
    if b.field != field:
        raise DescriptorMismatch("scalars over different fields")
    one = field.one()
    for v in (a, b):
        if v.is_zero() or v == one:
            raise DegenerateInput("scalars must avoid 0 and 1")
    zero_p = Polynomial.zero(field)
    one_p = Polynomial.one(field)
    mid = Polynomial(field, [b, a - b])      # b + (a-b) t
    low = Polynomial(field, [a, b - a])      # a + (b-a) t
    comp = PolyMatrix(field, [
        [zero_p, zero_p, Polynomial.constant(-(a * b))],
        [one_p, zero_p, mid],
        [zero_p, one_p, low],
    ])
    ident = PolyMatrix.identity(field, 3)
    mats = [comp, ident - comp]
    for v in bystanders:
        if v.is_zero():
            raise DegenerateInput("bystander scalars must be nonzero")
        mats.append(PolyMatrix(field, [[Polynomial.constant(v if i == j else field.zero())
                                        for j in range(3)] for i in range(3)]))
    return PolyMatrixTuple(field, mats)


# ---------------------------------------------------------------------------
# composition series


@dataclass(frozen=True)
class CompositionFactor:
    extension: FieldDescriptor
    scalars: tuple
    multiplicity: int


def _factor_supported(field: FieldDescriptor) -> bool:
    if field.kind in (RATIONALS, PRIME):
        return True
    return field.kind == EXTENSION and field.is_finite()


def _standard_vector(field, dim: int, i: int) -> tuple:
    return tuple(field.one() if j == i else field.zero() for j in range(dim))


def _restrict(field, op: Matrix, basis: list[tuple]) -> Matrix:
    cols = []
    for v in basis:
        sol = solve_in_span(field, basis, op.apply(v))
        if sol is None:
            raise RecursionInvariantViolated("subspace is not operator invariant")
        cols.append(sol)
    rows = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    return Matrix(field, rows)


def _combine(field, basis: list[tuple], coeffs: Sequence[FieldElement]) -> tuple:
    dim = len(basis[0])
    acc = [field.zero()] * dim
    for c, v in zip(coeffs, basis):
        if c.is_zero():
            continue
        for i in range(dim):
            acc[i] = acc[i] + c * v[i]
    return tuple(acc)


def _flatten_to_base(field, dim: int, op: Matrix) -> Matrix:
    """The matrix of op on field^dim viewed as a space over field's bottom."""
    base = field.base
    deg = field.step_degree
    basis_elts = [field.element(tuple(base.one() if t == s else base.zero()
                                      for t in range(deg))) for s in range(deg)]
    cols = []
    for k in range(dim):
        for s in range(deg):
            v = [field.zero()] * dim
            v[k] = basis_elts[s]
            img = op.apply(tuple(v))
            col = []
            for entry in img:
                col.extend(coordinates(entry, base))
            cols.append(col)
    n = dim * deg
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return Matrix(base, rows)


def _rational_refinement(field, dim: int, ops: list[Matrix]) -> list[tuple] | None:
    """A proper nonzero invariant subspace found through the bottom field.

    Applies when the leading operator's minimal polynomial cannot be factored
    over the current (characteristic-zero extension) field: factor the
    minimal polynomial of the operator viewed over the bottom field instead,
    and cut along a kernel of one of those factors. Returns None when no such
    cut makes progress.
    """
    a = ops[0]
    flat = _flatten_to_base(field, dim, a)
    _, facs = factor(minpoly_matrix(flat))
    for h, _m in sorted(facs, key=lambda t: (t[0].degree, poly_sort_key(t[0]))):
        ker = poly_eval_matrix(embed_poly(h, field), a).kernel_basis()
        if ker and len(ker) < dim:
            return [tuple(v) for v in ker]
    return None


def _simple_submodule(field, dim: int, ops: list[Matrix]):
    """One simple submodule of field^dim under the given commuting operators.

    Returns (top_field, scalars, basis): the iterated extension on which the
    operators act as the given scalars, and a basis (over `field`) of the
    submodule inside field^dim.
    """
    if not ops:
        return field, [], [_standard_vector(field, dim, 0)]
    a = ops[0]
    m = minpoly_matrix(a)
    if m.degree > 1 and not _factor_supported(field):
        sub = _rational_refinement(field, dim, ops)
        if sub is None:
            raise UnsupportedTower(
                "splitting this tuple needs a second extension step over Q")
        rops = [_restrict(field, op, sub) for op in ops]
        top, scal, inner = _simple_submodule(field, len(sub), rops)
        return top, scal, [_combine(field, sub, v) for v in inner]
    if m.degree == 1:
        pi = m
    else:
        _, facs = factor(m)
        pi = min((g for g, _ in facs), key=lambda g: (g.degree, poly_sort_key(g)))
    if pi.degree == 1:
        root = -pi.coeffs[0]
        ident = Matrix.identity(field, dim)
        w = [tuple(v) for v in (a - ident * root).kernel_basis()]
        if not w:
            raise RecursionInvariantViolated("eigenvalue lost its eigenspace")
        rops = [_restrict(field, op, w) for op in ops[1:]]
        top, scal, inner = _simple_submodule(field, len(w), rops)
        return top, [embed(root, top)] + scal, [_combine(field, w, v) for v in inner]

    d = pi.degree
    w = [tuple(v) for v in poly_eval_matrix(pi, a).kernel_basis()]
    big = extension(field, pi)
    tracker = SpanTracker(field, dim)
    flat: list[tuple] = []
    for v in w:
        if tracker.contains(v):
            continue
        block = [v]
        cur = v
        for _ in range(1, d):
            cur = a.apply(cur)
            block.append(cur)
        for u in block:
            if not tracker.add(u):
                raise RecursionInvariantViolated("cyclic block collapsed")
        flat.extend(block)
    e = len(flat) // d
    if e * d != len(w):
        raise RecursionInvariantViolated("kernel dimension not divisible by the step degree")

    def lift(vec) -> list[FieldElement]:
        sol = solve_in_span(field, flat, vec)
        if sol is None:
            raise RecursionInvariantViolated("vector escaped the invariant subspace")
        return [big.element(tuple(sol[k * d:(k + 1) * d])) for k in range(e)]

    rops = []
    for op in ops[1:]:
        cols = [lift(op.apply(flat[k * d])) for k in range(e)]
        rows = [[cols[j][i] for j in range(e)] for i in range(e)]
        rops.append(Matrix(big, rows))
    top, scal, inner = _simple_submodule(big, e, rops)
    gen = big.gen()
    out = []
    for v in inner:
        for s in range(d):
            xs = gen ** s
            acc = [field.zero()] * dim
            for k in range(e):
                cs = coordinates(xs * v[k], field)
                for j in range(d):
                    if cs[j].is_zero():
                        continue
                    base_vec = flat[k * d + j]
                    for i in range(dim):
                        acc[i] = acc[i] + cs[j] * base_vec[i]
            out.append(tuple(acc))
    return top, [embed(gen, top)] + scal, out


def _quotient(field, ops: list[Matrix], sub: list[tuple], dim: int):
    tracker = SpanTracker(field, dim)
    for v in sub:
        if not tracker.add(v):
            raise RecursionInvariantViolated("dependent submodule basis")
    comp = []
    for i in range(dim):
        v = _standard_vector(field, dim, i)
        if tracker.add(v):
            comp.append(v)
    full = sub + comp
    p = Matrix(field, [[full[j][i] for j in range(dim)] for i in range(dim)])
    pinv = p.inverse()
    r = len(sub)
    qops = []
    for op in ops:
        m = pinv * op * p
        qops.append(Matrix(field, [list(m.row(i))[r:] for i in range(r, dim)]))
    return qops, dim - r


def _tower_key(top: FieldDescriptor, base: FieldDescriptor):
    steps = tower_steps(top, base)
    return (len(steps), tuple(poly_sort_key(s.modulus) for s in steps))


def composition_series(x: MatrixTuple) -> list[CompositionFactor]:
    """Simple factors of the module defined by the tuple, with multiplicities.

    Each factor is an iterated extension of the ground field together with
    the scalars by which the slots act on it. The multiset is a conjugation
    invariant of the tuple.
    """
    field = x.field
    if field.kind == FUNCTION:
        raise UnsupportedTower("tuples over function fields are out of scope")
    ops = list(x.matrices)
    dim = x.size
    seen: dict = {}
    order: list = []
    while dim > 0:
        top, scal, basis = _simple_submodule(field, dim, ops)
        key = (_tower_key(top, field), tuple(element_sort_key(s) for s in scal))
        if key in seen:
            seen[key][2] += 1
        else:
            seen[key] = [top, tuple(scal), 1]
            order.append(key)
        ops, dim = _quotient(field, ops, basis, dim)
    return [CompositionFactor(extension=seen[k][0], scalars=seen[k][1],
                              multiplicity=seen[k][2])
            for k in sorted(order)]


def reduce_tuple(x: MatrixTuple) -> MilnorExpression:
    """The symbol expression of a tuple: transferred scalars of its simple factors.

    For weight 1 the class of the result is the class of the determinant.
    """
    total = zero_expression(x.field, x.weight)
    for f in composition_series(x):
        piece = transfer_tower(symbol(list(f.scalars), field=f.extension), x.field)
        total = total + f.multiplicity * piece
    return total


def class_of_tuple(x: MatrixTuple, real: bool = False) -> CanonicalClass:
    return canonical_class(reduce_tuple(x), real=real)


# ---------------------------------------------------------------------------
# relation checks


def _as_named(determinants) -> list[tuple[str, Callable]]:
    out: list[tuple[str, Callable]] = [("class", class_of_tuple)]
    for i, d in enumerate(determinants):
        if isinstance(d, tuple):
            out.append((str(d[0]), d[1]))
        else:
            out.append((getattr(d, "label", None) or f"det{i}", d))
    return out


def _combine_values(u, v):
    if isinstance(u, CanonicalClass):
        return u + v
    return u * v


def _is_trivial(u) -> bool:
    if isinstance(u, CanonicalClass):
        return u.is_zero()
    return u == 1


def _default_conjugator(field, n: int) -> Matrix:
    rows = [[field.one() if j == i or j == i + 1 else field.zero()
             for j in range(n)] for i in range(n)]
    return Matrix(field, rows)


def check_relations(tuples: Sequence[MatrixTuple], determinants=(),
                    conjugators: Sequence[Matrix] = ()) -> list[str]:
    """Check the defining relations on concrete tuples, through every invariant.

    For each input tuple: identity-slot vanishing, conjugation invariance,
    slotwise multiplicativity and skew-symmetry (weight >= 2); consecutive
    same-weight pairs are also checked for direct-sum additivity. Every
    violation is reported as a string; the expected report is empty.
    """
    named = _as_named(determinants)
    report: list[str] = []

    def expect(cond: bool, msg: str):
        if not cond:
            report.append(msg)

    for idx, x in enumerate(tuples):
        vals = {name: fn(x) for name, fn in named}
        ident = Matrix.identity(x.field, x.size)
        y = x.with_slot(0, ident)
        for name, fn in named:
            expect(_is_trivial(fn(y)),
                   f"tuple {idx}: identity slot not trivial under {name}")
        s = conjugators[idx] if idx < len(conjugators) else _default_conjugator(x.field, x.size)
        xc = x.conjugate(s)
        for name, fn in named:
            expect(fn(xc) == vals[name],
                   f"tuple {idx}: conjugation changed {name}")
        if x.weight >= 2:
            prod = x.with_slot(0, x.matrices[0] * x.matrices[1])
            rep = x.with_slot(0, x.matrices[1])
            for name, fn in named:
                expect(fn(prod) == _combine_values(vals[name], fn(rep)),
                       f"tuple {idx}: slot product not additive under {name}")
            sw = x.swap_slots(0, 1)
            for name, fn in named:
                expect(_is_trivial(_combine_values(fn(sw), vals[name])),
                       f"tuple {idx}: swap did not invert {name}")
    for idx in range(len(tuples) - 1):
        x, y = tuples[idx], tuples[idx + 1]
        if x.field != y.field or x.weight != y.weight:
            continue
        both = x.direct_sum(y)
        for name, fn in named:
            expect(fn(both) == _combine_values(fn(x), fn(y)),
                   f"pair {idx}: direct sum not additive under {name}")
    return report
