"""Polynomial factorization and irreducibility.

Finite fields (prime fields and their towers): squarefree decomposition,
distinct-degree splitting, then randomized equal-degree splitting. The
randomness is seeded from the polynomial's own coefficients, so results are
deterministic run to run.

Rationals: squarefree decomposition, then factorization of each primitive
integer part modulo one good prime followed by subset recombination. The
prime is chosen above twice a coefficient bound for true factors, so lifted
candidates are exact and no Hensel stage is needed. Desk-scale degrees only.

Proper extensions of Q and function fields are not supported and raise
UnsupportedFactorization.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from mkt import zkernel
from mkt.errors import UnsupportedFactorization, ZeroPolynomial
from mkt.fields import (
    EXTENSION,
    FUNCTION,
    PRIME,
    RATIONALS,
    FieldDescriptor,
    FieldElement,
    Polynomial,
    coordinates,
    poly_gcd,
    prime_field,
)
from mkt.numutil import factor_int, next_prime


def element_sort_key(e: FieldElement):
    k = e.field.kind
    if k == RATIONALS or k == PRIME:
        return (0, e.rep)
    if k == EXTENSION:
        return (1, tuple(element_sort_key(c) for c in e.rep))
    # function field: order by (num, den) coefficient data
    rf = e.rep
    return (2, poly_sort_key(rf.num), poly_sort_key(rf.den))


def poly_sort_key(f: Polynomial):
    return (f.degree, tuple(element_sort_key(c) for c in f.coeffs))


def _stable_seed(f: Polynomial) -> int:
    """Deterministic seed derived from coefficients (hash() is randomized)."""
    acc = 0x9E3779B97F4A7C15
    prime_base = prime_field(f.field.characteristic())
    for c in f.coeffs:
        for v in coordinates(c, prime_base):
            acc = (acc * 0x100000001B3 + v.rep + 1) % (1 << 61)
    return acc


def poly_powmod(a: Polynomial, e: int, f: Polynomial) -> Polynomial:
    if f.field.kind == PRIME:
        return f._wrap_ints(zkernel.zp_powmod(a._ints(), e, f._ints(), f.field.p))
    result = Polynomial.one(f.field) % f
    base = a % f
    while e:
        if e & 1:
            result = result * base % f
        base = base * base % f
        e >>= 1
    return result


# -- finite fields -----------------------------------------------------------

def _pth_root_poly(f: Polynomial) -> Polynomial:
    """Inverse Frobenius: g with g^p = f; f must have only X^(pi) terms."""
    fld = f.field
    p = fld.characteristic()
    q = fld.order()
    root_exp = q // p
    out = []
    for i in range(0, f.degree + 1, p):
        c = f.coeffs[i] if i <= f.degree else fld.zero()
        out.append(c ** root_exp)
    return Polynomial(fld, out)


def _squarefree_finite(f: Polynomial) -> list[tuple[Polynomial, int]]:
    # f monic nonconstant
    p = f.field.characteristic()
    result: list[tuple[Polynomial, int]] = []
    d = f.derivative()
    if d.is_zero():
        for g, m in _squarefree_finite(_pth_root_poly(f)):
            result.append((g, m * p))
        return result
    c = poly_gcd(f, d)
    w = f // c
    m = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            result.append((z, m))
        w = y
        c = c // y
        m += 1
    if c.degree > 0:
        for g, mm in _squarefree_finite(_pth_root_poly(c)):
            result.append((g, mm * p))
    return result


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split monic squarefree f into products of same-degree irreducibles."""
    fld = f.field
    q = fld.order()
    out = []
    h = Polynomial.x(fld) % f
    x = Polynomial.x(fld)
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = poly_powmod(h, q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: Polynomial, d: int, rng: random.Random) -> Polynomial:
    """One nontrivial monic factor of f, where f is a product of >= 2
    irreducibles all of degree d."""
    fld = f.field
    q = fld.order()
    n = f.degree
    while True:
        a = Polynomial(fld, [_random_element(fld, rng) for _ in range(n)])
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < n:
            return g.monic()
        if q % 2 == 1:
            t = poly_powmod(a, (q ** d - 1) // 2, f) - Polynomial.one(fld)
        else:
            # char 2: additive trace map
            e = d * _log2_order(q)
            t = a % f
            acc = t
            for _ in range(e - 1):
                t = t * t % f
                acc = (acc + t) % f
            t = acc
        g = poly_gcd(t, f)
        if 0 < g.degree < n:
            return g.monic()


def _log2_order(q: int) -> int:
    e = q.bit_length() - 1
    assert 1 << e == q
    return e


def _random_element(fld: FieldDescriptor, rng: random.Random) -> FieldElement:
    if fld.kind == PRIME:
        return fld.from_int(rng.randrange(fld.p))
    return FieldElement(fld, tuple(_random_element(fld.base, rng)
                                   for _ in range(fld.step_degree)))


def _factor_finite_squarefree(f: Polynomial, rng: random.Random) -> list[Polynomial]:
    out = []
    for prod, d in _distinct_degree(f):
        stack = [prod]
        while stack:
            g = stack.pop()
            if g.degree == d:
                out.append(g.monic())
                continue
            h = _equal_degree_split(g, d, rng)
            stack.append(h)
            stack.append(g // h)
    return out


# -- rationals ---------------------------------------------------------------

def _squarefree_char0(f: Polynomial) -> list[tuple[Polynomial, int]]:
    # f monic nonconstant over Q
    result = []
    c = poly_gcd(f, f.derivative())
    w = f // c
    m = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            result.append((z, m))
        w = y
        c = c // y
        m += 1
    return result


def _int_coeffs(f: Polynomial) -> list[int]:
    """Primitive integer coefficients of a monic rational polynomial,
    positive leading coefficient."""
    dens = [c.rep.denominator for c in f.coeffs]
    lcm = 1
    for d in dens:
        lcm = lcm * d // math.gcd(lcm, d)
    ints = [int(c.rep * lcm) for c in f.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints]


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return list(ints)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _symmetric_lift(ints: list[int], p: int) -> list[int]:
    half = p // 2
    return [v - p if v > half else v for v in ints]


def _good_prime(ints: list[int]) -> int:
    n = len(ints) - 1
    height = max(abs(v) for v in ints)
    norm2 = math.isqrt(sum(v * v for v in ints)) + 1
    bound = (2 ** n) * (norm2 + height) * max(1, abs(ints[-1]))
    p = next_prime(max(2 * bound, 101))
    while True:
        if ints[-1] % p != 0:
            fp = [v % p for v in ints]
            dfp = [(i * ints[i]) % p for i in range(1, len(ints))]
            if len(zkernel.zp_gcd(zkernel.trim(fp), zkernel.trim(dfp), p)) == 1:
                return p
        p = next_prime(p)


def _divides_q(h_ints: list[int], g: Polynomial) -> bool:
    Q = g.field
    h = Polynomial(Q, [Fraction(v) for v in h_ints])
    return (g % h).is_zero()


def _factor_q_squarefree(f: Polynomial) -> list[Polynomial]:
    """Monic irreducible rational factors of a monic squarefree f over Q."""
    Q = f.field
    if f.degree == 1:
        return [f]
    ints = _int_coeffs(f)
    p = _good_prime(ints)
    Fp = prime_field(p)
    fp = Polynomial.from_ints(Fp, ints).monic()
    rng = random.Random(_stable_seed(fp))
    modular = _factor_finite_squarefree(fp, rng)
    modular.sort(key=poly_sort_key)
    if len(modular) == 1:
        return [f]
    result_ints: list[list[int]] = []
    pool = modular
    g_ints = ints
    s = 1
    while 2 * s <= len(pool):
        hit = None
        for combo in combinations(range(len(pool)), s):
            cand = [g_ints[-1] % p]
            for i in combo:
                cand = zkernel.zp_mul(cand, pool[i]._ints(), p)
            lifted = _primitive(_symmetric_lift(cand, p))
            if sum(len(pool[i].coeffs) - 1 for i in combo) != len(lifted) - 1:
                continue
            gq = Polynomial(Q, [Fraction(v) for v in g_ints]).monic()
            if _divides_q(lifted, gq):
                hit = (combo, lifted)
                break
        if hit is None:
            s += 1
            continue
        combo, lifted = hit
        result_ints.append(lifted)
        quot = Polynomial(Q, [Fraction(v) for v in g_ints]) // Polynomial(
            Q, [Fraction(v) for v in lifted])
        g_ints = _int_coeffs(quot.monic())
        pool = [pool[i] for i in range(len(pool)) if i not in combo]
    if len(g_ints) > 1:
        result_ints.append(g_ints)
    out = [Polynomial(Q, [Fraction(v) for v in ints]).monic() for ints in result_ints]
    return out


# -- public interface --------------------------------------------------------

def factor(f: Polynomial) -> tuple[FieldElement, list[tuple[Polynomial, int]]]:
    """Factor f as unit * prod(g_i^m_i) with g_i monic irreducible.

    The reconstruction is exact. Factors are sorted by (degree, coefficient
    key). Supported coefficient fields: finite fields and Q.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    fld = f.field
    if fld.kind == FUNCTION or (fld.kind == EXTENSION and not fld.is_finite()):
        raise UnsupportedFactorization(f"factorization over {fld} is not supported")
    unit = f.lc()
    if f.degree == 0:
        return unit, []
    fm = f.monic()
    out: list[tuple[Polynomial, int]] = []
    if fld.kind == RATIONALS:
        for part, mult in _squarefree_char0(fm):
            for g in _factor_q_squarefree(part):
                out.append((g, mult))
    else:
        rng = random.Random(_stable_seed(fm))
        for part, mult in _squarefree_finite(fm):
            for g in _factor_finite_squarefree(part, rng):
                out.append((g, mult))
    out.sort(key=lambda pair: poly_sort_key(pair[0]))
    return unit, out


def is_irreducible(f: Polynomial) -> bool:
    """Irreducibility over finite fields (powmod criterion) or Q (factor)."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial is not irreducible")
    if f.degree == 0:
        return False
    if f.degree == 1:
        return True
    fld = f.field
    if fld.is_finite():
        q = fld.order()
        n = f.degree
        x = Polynomial.x(fld)
        h = poly_powmod(x, q ** n, f)
        if not (h - x).is_zero():
            return False
        for t in factor_int(n):
            h = poly_powmod(x, q ** (n // t), f)
            if poly_gcd(h - x, f).degree != 0:
                return False
        return True
    if fld.kind == RATIONALS:
        _, factors = factor(f)
        return len(factors) == 1 and factors[0][1] == 1
    raise UnsupportedFactorization(f"irreducibility over {fld} is not supported")


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Monic squarefree parts with multiplicities; unit dropped."""
    if f.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    if f.degree == 0:
        return []
    fm = f.monic()
    if f.field.kind == RATIONALS:
        return _squarefree_char0(fm)
    if f.field.is_finite():
        return _squarefree_finite(fm)
    raise UnsupportedFactorization(f"squarefree decomposition over {f.field}")
