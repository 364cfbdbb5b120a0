"""Commuting tuples, homotopy families, composition series, and the reduction map."""

from fractions import Fraction

import pytest

from mkt.canonical import canonical_class
from mkt.commuting import (MatrixTuple, PolyMatrixTuple, check_relations,
                           class_of_tuple, composition_series, homotopy_mult,
                           homotopy_shear, homotopy_steinberg, homotopy_swap,
                           kronecker, reduce_tuple)
from mkt.errors import (ArityMismatch, DegenerateInput, NotUnitDeterminant,
                        UnsupportedTower)
from mkt.fields import Polynomial, prime_field, rationals
from mkt.linalg import Matrix, PolyMatrix, companion_matrix, jordan_block
from mkt.sampling import commuting_tuple, invertible_matrix
from mkt.symbols import symbol
from mkt.transfer import transfer_tower
from tests.conftest import make_field

Qf = rationals()


def qmat(rows):
    return Matrix(Qf, [[Qf.element(Fraction(v)) for v in r] for r in rows])


def scalar_tuple(field, *vals):
    return MatrixTuple.scalars(field, [field.element(v) for v in vals])


class TestConstruction:
    def test_non_commuting_rejected(self):
        a = qmat([[1, 1], [0, 1]])
        b = qmat([[1, 0], [1, 1]])
        with pytest.raises(DegenerateInput):
            MatrixTuple(Qf, [a, b])

    def test_singular_rejected(self):
        with pytest.raises(DegenerateInput):
            MatrixTuple(Qf, [qmat([[1, 1], [1, 1]])])

    def test_size_mismatch_rejected(self):
        with pytest.raises(ArityMismatch):
            MatrixTuple(Qf, [qmat([[2]]), qmat([[1, 0], [0, 1]])])


class TestDirectSum:
    def test_scalars(self):
        # [TRIVIAL] (a) + (b) stacks to diag(a, b)
        x = scalar_tuple(Qf, 2).direct_sum(scalar_tuple(Qf, 3))
        assert x.size == 2
        assert x.matrices[0] == qmat([[2, 0], [0, 3]])

    def test_identity_slot_neutral(self, rng):
        # [PAPER] appending an identity tuple does not move the class
        x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
        y = x.direct_sum(MatrixTuple.identity(Qf, 3, 2))
        assert class_of_tuple(x) == class_of_tuple(y)

    def test_mixed_sizes_commute(self, rng):
        x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
        y = commuting_tuple(Qf, rng, 2, 3, split_only=True)
        z = x.direct_sum(y)
        assert z.size == 5
        assert class_of_tuple(z) == class_of_tuple(x) + class_of_tuple(y)


class TestKronecker:
    def test_mixed_product_identity(self, rng):
        # [PAPER] (A kron I)(I kron B) = A kron B in both orders
        x = commuting_tuple(Qf, rng, 1, 2, split_only=True)
        y = commuting_tuple(Qf, rng, 1, 2, split_only=True)
        z = kronecker(x, y)
        a = z.matrices[0]
        b = z.matrices[1]
        assert a * b == b * a
        assert a * b == x.matrices[0].kron(y.matrices[0])

    def test_scalar_case(self):
        # [TRIVIAL] scalars concatenate
        z = kronecker(scalar_tuple(Qf, 2), scalar_tuple(Qf, 3))
        assert z.weight == 2 and z.size == 1
        assert class_of_tuple(z) == canonical_class(
            symbol([Qf.element(2), Qf.element(3)]))

    def test_class_multiplicative_on_scalars(self, rng):
        """[DERIVED] reduction of a Kronecker product multiplies the symbols."""
        for _ in range(20):
            a = Qf.element(rng.choice([2, 3, 5, -1, Fraction(1, 2)]))
            b = Qf.element(rng.choice([2, 3, 5, -1, 7]))
            z = kronecker(MatrixTuple.scalars(Qf, [a]),
                          MatrixTuple.scalars(Qf, [b]))
            assert class_of_tuple(z) == canonical_class(symbol([a, b]))


class TestBoundary:
    def test_constant_family(self):
        # [TRIVIAL] a constant family has equal endpoints
        x = scalar_tuple(Qf, 2, 3)
        h = PolyMatrixTuple(Qf, [PolyMatrix.from_matrix(m) for m in x.matrices])
        at1, at0 = h.boundary()
        assert at1.matrices == x.matrices and at0.matrices == x.matrices

    def test_mult_family_endpoints(self):
        """[PAPER] the multiplicativity family joins I (+) BC with B (+) C."""
        b = qmat([[2, 0], [0, 3]])
        c = qmat([[5, 0], [0, 7]])
        h = homotopy_mult(b, c)
        at1, at0 = h.boundary()
        assert at1.size == at0.size == 4
        assert class_of_tuple(at1) == class_of_tuple(at0)

    def test_unit_det_enforced(self):
        # entries with parameter-dependent determinant are rejected
        with pytest.raises(NotUnitDeterminant):
            PolyMatrixTuple(Qf, [PolyMatrix(Qf, [[Polynomial.x(Qf)]])])


class TestHomotopyFamilies:
    def test_steinberg_determinants(self):
        """[PAPER] det A(t) = -ab and det(I - A(t)) = (1-a)(1-b), constant in t."""
        a, b = Qf.element(3), Qf.element(5)
        h = homotopy_steinberg(a, b)
        d0 = h.matrices[0].det()
        d1 = h.matrices[1].det()
        assert d0 == Polynomial.constant(-(a * b))
        assert d1 == Polynomial.constant((Qf.one() - a) * (Qf.one() - b))

    def test_steinberg_endpoint_classes(self, rng):
        for _ in range(10):
            a = Qf.element(rng.choice([2, 3, 5, -2, Fraction(2, 3)]))
            b = Qf.element(rng.choice([2, 3, 5, -3, Fraction(5, 7)]))
            h = homotopy_steinberg(a, b)
            at1, at0 = h.boundary()
            assert class_of_tuple(at1) == class_of_tuple(at0)

    def test_steinberg_rejects_unit_arguments(self):
        with pytest.raises(DegenerateInput):
            homotopy_steinberg(Qf.element(1), Qf.element(3))

    def test_shear_endpoints(self):
        """[PAPER] the shear family is block-diagonal at t=0 and the given
        block-triangular matrix at t=1."""
        a = qmat([[2, 0], [0, 2]])
        b = qmat([[3, 0], [0, 3]])
        c = qmat([[1, 2], [3, 4]])
        # the bystander blocks must intertwine c, so keep them scalar-equal
        pair = (qmat([[5, 0], [0, 5]]), qmat([[5, 0], [0, 5]]))
        h = homotopy_shear(a, b, c, bystanders=[pair])
        at1, at0 = h.boundary()
        top_right = [at0.matrices[0].row(i)[j] for i in range(2)
                     for j in range(2, 4)]
        assert all(e.is_zero() for e in top_right)
        assert class_of_tuple(at1) == class_of_tuple(at0)

    def test_swap_endpoints(self, rng):
        x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
        h = homotopy_swap(x, 0, 1)
        at1, at0 = h.boundary()
        assert class_of_tuple(at1) == class_of_tuple(at0)

    def test_mult_requires_commuting(self):
        b = qmat([[1, 1], [0, 1]])
        c = qmat([[1, 0], [1, 1]])
        with pytest.raises(DegenerateInput):
            homotopy_mult(b, c)


class TestCompositionSeries:
    def test_diagonal_pair(self):
        # [TRIVIAL] diag splits into eigenline factors
        x = MatrixTuple(Qf, [qmat([[2, 0], [0, 3]]), qmat([[5, 0], [0, 7]])])
        factors = composition_series(x)
        seen = {tuple(str(s) for s in f.scalars) for f in factors}
        assert seen == {("2", "5"), ("3", "7")}
        assert all(f.extension == Qf and f.multiplicity == 1 for f in factors)

    def test_companion_is_simple_over_f2(self):
        """[DERIVED] the companion of X^2+X+1 over F_2 fixes no line.

        All three nonzero vectors of F_2^2 are checked directly; the module
        is simple, so the single factor is F_4 with the generator acting.
        """
        F2 = prime_field(2)
        f = Polynomial.from_ints(F2, [1, 1, 1])
        m = companion_matrix(f)
        vecs = [(F2.one(), F2.zero()), (F2.zero(), F2.one()),
                (F2.one(), F2.one())]
        for v in vecs:
            img = tuple(sum((m.row(i)[j] * v[j] for j in range(2)),
                            F2.zero()) for i in range(2))
            # over F_2 a fixed line means a fixed nonzero vector
            assert img != v
        factors = composition_series(MatrixTuple(F2, [m]))
        assert len(factors) == 1
        f0 = factors[0]
        assert f0.multiplicity == 1
        assert f0.extension.kind == "extension"
        assert f0.scalars[0] == f0.extension.gen()

    def test_jordan_pair_multiplicity(self):
        # [DERIVED] invariant flags of a Jordan block all share one eigenline
        a, b = Qf.element(2), Qf.element(3)
        x = MatrixTuple(Qf, [jordan_block(Qf, a, 2),
                             Matrix.identity(Qf, 2).map_entries(lambda e: e * b)])
        factors = composition_series(x)
        assert len(factors) == 1
        assert factors[0].multiplicity == 2
        assert [str(s) for s in factors[0].scalars] == ["2", "3"]

    def test_conjugation_invariance(self, rng):
        for field in (Qf, prime_field(5)):
            x = commuting_tuple(field, rng, 2, 3, split_only=(field is Qf))
            s = invertible_matrix(field, rng, 3)
            y = x.conjugate(s)
            a = [(f.multiplicity, tuple(str(v) for v in f.scalars))
                 for f in composition_series(x)]
            b = [(f.multiplicity, tuple(str(v) for v in f.scalars))
                 for f in composition_series(y)]
            assert sorted(a) == sorted(b)

    def test_height_two_rational_tower_escalates(self):
        """A 4-dimensional pair needing a genuine second extension step over Q
        is out of policy and must say so."""
        j = qmat([[0, -1], [1, 0]])
        z = Matrix.zeros(Qf, 2, 2)
        i2 = Matrix.identity(Qf, 2)
        a = j.direct_sum(j)
        rows = [[z, i2], [j, z]]
        b = Matrix(Qf, [[rows[bi][bj].row(i)[k] for bj in range(2)
                         for k in range(2)]
                        for bi in range(2) for i in range(2)])
        x = MatrixTuple(Qf, [a, b])
        with pytest.raises(UnsupportedTower):
            composition_series(x)


class TestReduce:
    def test_weight_one_is_determinant(self, rng):
        """[PAPER] l=1 reduction is the determinant class."""
        for field in (Qf, prime_field(5)):
            for _ in range(20):
                m = invertible_matrix(field, rng, 3)
                x = MatrixTuple(field, [m])
                assert class_of_tuple(x) == canonical_class(
                    symbol([m.det()], field=field))

    def test_jordan_pair_reduces_to_double_symbol(self):
        # [DERIVED] the Jordan pair carries 2{a,b}
        a, b = Qf.element(2), Qf.element(3)
        x = MatrixTuple(Qf, [jordan_block(Qf, a, 2),
                             Matrix.identity(Qf, 2).map_entries(lambda e: e * b)])
        assert reduce_tuple(x) == 2 * symbol([a, b])
        assert class_of_tuple(x) == canonical_class(2 * symbol([a, b]))

    def test_finite_field_pairs_vanish(self, rng):
        # [PAPER] no weight-2 invariants over a finite field
        for q in (3, 5, 9):
            F = make_field(q)
            x = commuting_tuple(F, rng, 2, 3)
            assert class_of_tuple(x).is_zero()

    def test_elementary_matrix_trivial(self):
        # [PAPER] shears carry no K_1 class
        e = qmat([[1, 5], [0, 1]])
        assert class_of_tuple(MatrixTuple(Qf, [e])).is_zero()

    def test_companion_pair_transfers(self):
        """[DERIVED] a simple companion pair over F_2 reduces through F_4."""
        F2 = prime_field(2)
        f = Polynomial.from_ints(F2, [1, 1, 1])
        m = companion_matrix(f)
        x = MatrixTuple(F2, [m, m * m])
        F4 = make_field(4)
        g = F4.gen()
        expect = transfer_tower(symbol([g, g * g], field=F4), F2)
        assert class_of_tuple(x) == canonical_class(expect)

    def test_direct_sum_additive(self, rng):
        for _ in range(10):
            x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
            y = commuting_tuple(Qf, rng, 2, 2, split_only=True)
            assert class_of_tuple(x.direct_sum(y)) \
                == class_of_tuple(x) + class_of_tuple(y)

    def test_real_mode(self):
        x = scalar_tuple(Qf, -2, -3)
        assert class_of_tuple(x, real=True).eps == -1
        y = scalar_tuple(Qf, -2, 3)
        assert class_of_tuple(y, real=True).is_zero()


class TestRelationsReport:
    def test_no_violations_rational(self, rng):
        tuples = [commuting_tuple(Qf, rng, 2, rng.choice([2, 3]),
                                  split_only=True) for _ in range(6)]
        assert check_relations(tuples) == []

    def test_no_violations_finite(self, rng):
        F7 = prime_field(7)
        tuples = [commuting_tuple(F7, rng, 2, 3) for _ in range(6)]
        assert check_relations(tuples) == []

    def test_swap_negates(self, rng):
        x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
        y = x.swap_slots(0, 1)
        assert class_of_tuple(y) == -class_of_tuple(x)

    def test_slot_product_additive(self, rng):
        x = commuting_tuple(Qf, rng, 2, 2, split_only=True)
        a = x.matrices[0]
        b = invertible_matrix(Qf, rng, 2)
        # make b commute with everything: use a polynomial in the slot matrix
        b = a * a + Matrix.identity(Qf, 2).map_entries(
            lambda e: e * Qf.element(3))
        if b.det().is_zero():
            return
        y = x.with_slot(0, a * b)
        z = x.with_slot(0, b)
        assert class_of_tuple(y) == class_of_tuple(x) + class_of_tuple(z)
