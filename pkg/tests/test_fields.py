"""Field and polynomial arithmetic against hand-checked and brute-force oracles."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mkt.errors import DescriptorMismatch, DivisionByZero, UnsupportedFactorization
from mkt.factor import factor, is_irreducible
from mkt.fields import (Polynomial, extension, poly_gcd, prime_field,
                        rationals, tower_degree)
from mkt.linalg import Matrix, companion_matrix, minpoly_matrix
from mkt.towers import minimal_polynomial, norm_element, present_as_simple
from tests.conftest import all_units, make_field


class TestFieldArith:
    def test_rational_add(self, Q):
        # [TRIVIAL] fraction arithmetic
        a = Q.element(Fraction(2, 3))
        b = Q.element(Fraction(1, 6))
        assert (a + b).rep == Fraction(5, 6)

    def test_f4_square(self):
        # [TRIVIAL] alpha^2 = alpha + 1 in F_4 = F_2[a]/(a^2+a+1)
        F4 = make_field(4)
        a = F4.gen()
        assert a * a == a + F4.one()

    def test_f9_inverse(self):
        """[DERIVED] 1/alpha in F_9 found by scanning all nine elements."""
        F9 = make_field(9)
        a = F9.gen()
        inv = a.inverse()
        matches = [x for x in all_units(F9) if a * x == F9.one()]
        assert matches == [inv]
        assert inv == F9.element((F9.base.zero(), F9.base.from_int(2)))  # 2a

    def test_division_by_zero(self, Q):
        with pytest.raises(DivisionByZero):
            Q.element(1) / Q.element(0)

    def test_descriptor_mismatch(self, Q):
        with pytest.raises(DescriptorMismatch):
            Q.element(1) + prime_field(5).from_int(1)


class TestPolyGcd:
    def test_rational_gcd(self, Q):
        # [TRIVIAL] gcd(X^2-1, X^2-2X+1) = X-1
        f = Polynomial.from_ints(Q, [-1, 0, 1])
        g = Polynomial.from_ints(Q, [1, -2, 1])
        assert poly_gcd(f, g) == Polynomial.from_ints(Q, [-1, 1])

    def test_gcd_with_zero(self, Q):
        # [TRIVIAL] gcd(f, 0) is the monic-normalized f
        f = Polynomial.from_ints(Q, [2, 4])
        assert poly_gcd(f, Polynomial.zero(Q)) == Polynomial.from_ints(Q, [Fraction(1, 2), 1])

    def test_coprime_over_f2(self):
        """[DERIVED] gcd(X^4+X+1, X^2+X+1) over F_2 is 1; both irreducible by trial division."""
        F2 = prime_field(2)
        f = Polynomial.from_ints(F2, [1, 1, 0, 0, 1])
        g = Polynomial.from_ints(F2, [1, 1, 1])
        assert poly_gcd(f, g) == Polynomial.from_ints(F2, [1])


class TestFactor:
    def test_char2_square(self):
        # [TRIVIAL] X^2+1 = (X+1)^2 over F_2
        F2 = prime_field(2)
        unit, parts = factor(Polynomial.from_ints(F2, [1, 0, 1]))
        assert unit == F2.one()
        assert parts == [(Polynomial.from_ints(F2, [1, 1]), 2)]

    def test_quartic_irreducible_over_f2(self):
        """[DERIVED] X^4+X+1 has no factor of degree <= 2 over F_2 (trial division)."""
        F2 = prime_field(2)
        f = Polynomial.from_ints(F2, [1, 1, 0, 0, 1])
        divisors = ([Polynomial.from_ints(F2, [c, 1]) for c in (0, 1)]
                    + [Polynomial.from_ints(F2, [c0, c1, 1])
                       for c0 in (0, 1) for c1 in (0, 1)])
        assert all(f % g != Polynomial.zero(F2) for g in divisors)
        assert is_irreducible(f)
        unit, parts = factor(f)
        assert parts == [(f, 1)]

    def test_rational_quadratic(self, Q):
        # [TRIVIAL] 6X^2-6 = 6 (X-1)(X+1)
        unit, parts = factor(Polynomial.from_ints(Q, [-6, 0, 6]))
        assert unit == Q.element(6)
        assert parts == [(Polynomial.from_ints(Q, [-1, 1]), 1),
                         (Polynomial.from_ints(Q, [1, 1]), 1)]

    def test_expansion_roundtrip(self, rng, Q):
        """Multiplying the factorization back together reproduces the input bit-exactly."""
        for field in (Q, prime_field(5), make_field(9)):
            for _ in range(20):
                coeffs = [field.from_int(rng.randint(-6, 6)) if field is Q
                          else field.from_int(rng.randint(0, 8))
                          for _ in range(rng.randint(2, 6))]
                f = Polynomial(field, coeffs)
                if f.is_zero():
                    continue
                unit, parts = factor(f)
                g = Polynomial.constant(unit)
                for h, m in parts:
                    for _ in range(m):
                        g = g * h
                assert g == f

    def test_extension_of_q_unsupported(self, Q):
        L = extension(Q, Polynomial.from_ints(Q, [-2, 0, 1]))
        with pytest.raises(UnsupportedFactorization):
            factor(Polynomial.from_ints(L, [1, 1, 1]))


class TestMinimalPolynomial:
    def test_identity_matrix(self, Q):
        # [TRIVIAL]
        m = Matrix.identity(Q, 3)
        assert minpoly_matrix(m) == Polynomial.from_ints(Q, [-1, 1])

    def test_companion(self):
        # [TRIVIAL] companion property
        F2 = prime_field(2)
        f = Polynomial.from_ints(F2, [1, 1, 1])
        assert minpoly_matrix(companion_matrix(f)) == f

    def test_f9_element(self):
        """[DERIVED] minpoly of a+1 in F_9 equals (X-(a+1))(X-(a+1)^3) via Frobenius."""
        F9 = make_field(9)
        x = F9.gen() + F9.one()
        frob = x ** 3
        expect = Polynomial(F9, [x * frob, -(x + frob), F9.one()])
        got = minimal_polynomial(x, F9.base)
        from mkt.fields import embed
        lifted = Polynomial(F9, [embed(c, F9) for c in got.coeffs])
        assert lifted == expect
        assert got == Polynomial.from_ints(F9.base, [2, 1, 1])  # X^2+X+2


class TestNorm:
    def test_f9_norm(self):
        """[DERIVED] N(a+1) = (a+1)(a+1)^3 = 2 in F_9."""
        F9 = make_field(9)
        x = F9.gen() + F9.one()
        conj = x * (x ** 3)
        assert conj == F9.element(2)
        assert norm_element(x, F9.base) == F9.base.from_int(2)

    def test_base_element_power_rule(self, rng):
        # [TRIVIAL] N(c) = c^d for c in the base field
        for q, d in ((4, 2), (9, 2), (8, 3)):
            L = make_field(q)
            c = L.base.from_int(rng.randint(1, L.characteristic() - 1))
            from mkt.fields import embed
            assert norm_element(embed(c, L), L.base) == c ** d

    def test_f4_norm_trivial(self):
        # [TRIVIAL] F_2 has only one unit
        F4 = make_field(4)
        assert norm_element(F4.gen(), F4.base) == F4.base.one()

    def test_multiplicative(self, rng):
        F25 = make_field(25)
        units = all_units(F25)
        for _ in range(30):
            x, y = rng.choice(units), rng.choice(units)
            assert (norm_element(x, F25.base) * norm_element(y, F25.base)
                    == norm_element(x * y, F25.base))

    def test_power_formula(self):
        """N(x) = x^((q^d-1)/(q-1)) on every unit, for several fields."""
        for q in (4, 9, 8, 25):
            L = make_field(q)
            base = L.base
            p = L.characteristic()
            d = tower_degree(L, base)
            e = (p ** d - 1) // (p - 1)
            for x in all_units(L):
                pw = x ** e
                assert pw.rep[1:] == tuple(base.zero() for _ in pw.rep[1:])
                assert norm_element(x, base) == pw.rep[0]


class TestPresentAsSimple:
    def test_two_step_tower_over_f2(self, rng):
        """[DERIVED] F_2 tower of two quadratic steps flattens to one quartic step."""
        F4 = make_field(4)
        mod = None
        # find any monic irreducible quadratic over F_4
        for n in range(16):
            c0 = F4.element((F4.base.from_int(n & 1), F4.base.from_int((n >> 1) & 1)))
            c1 = F4.element((F4.base.from_int((n >> 2) & 1), F4.base.from_int((n >> 3) & 1)))
            f = Polynomial(F4, [c0, c1, F4.one()])
            if is_irreducible(f):
                mod = f
                break
        F16 = extension(F4, mod)
        pres = present_as_simple(F16, prime_field(2))
        assert len(pres.modulus.coeffs) - 1 == 4
        for x in [rng.choice(all_units(F16)) for _ in range(10)]:
            assert pres.from_simple(pres.to_simple(x)) == x

    def test_height_one_identity(self):
        # [TRIVIAL]
        F9 = make_field(9)
        pres = present_as_simple(F9, F9.base)
        assert pres.modulus == F9.modulus
        x = F9.gen() + F9.one()
        assert pres.from_simple(pres.to_simple(x)) == x

    def test_roundtrip_random(self, rng):
        """[DERIVED] to-simple then from-simple is the identity on 50 random elements."""
        F4 = make_field(4)
        f = Polynomial(F4, [F4.gen(), F4.one(), F4.one()])
        if not is_irreducible(f):
            f = Polynomial(F4, [F4.gen(), F4.gen(), F4.one()])
        assert is_irreducible(f)
        F16 = extension(F4, f)
        pres = present_as_simple(F16, prime_field(2))
        units = all_units(F16)
        for _ in range(50):
            x = rng.choice(units)
            assert pres.from_simple(pres.to_simple(x)) == x
            assert pres.to_simple(pres.from_simple(pres.to_simple(x))) == pres.to_simple(x)


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
       st.fractions(max_denominator=50))
def test_rational_field_axioms(a, b, c):
    Q = rationals()
    x, y, z = Q.element(a), Q.element(b), Q.element(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == Q.zero()
    if a != 0:
        assert x * x.inverse() == Q.one()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_f9_field_axioms(i, j, k):
    F9 = make_field(9)
    def elem(n):
        return F9.element((F9.base.from_int(n % 3), F9.base.from_int(n // 3)))
    x, y, z = elem(i), elem(j), elem(k)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if i:
        assert x * x.inverse() == F9.one()
