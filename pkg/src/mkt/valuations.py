"""Discrete places and the boundary (tame) map on symbol expressions.

Places covered: the finite places v_pi and the degree place v_inf of a
rational function field k(X), the p-adic places of Q, and the real place
(sign data only; it carries no residue map).
"""

from __future__ import annotations

from fractions import Fraction

from mkt.errors import (ArityMismatch, BadModulus, DegenerateInput,
                        DescriptorMismatch, UnsupportedField, ZeroInput)
from mkt.factor import factor, is_irreducible, poly_sort_key
from mkt.fields import (FUNCTION, RATIONALS, FieldDescriptor, FieldElement,
                        Polynomial, RationalFunction, element_from_poly,
                        extension, prime_field, rationals)
from mkt.numutil import is_prime
from mkt.symbols import MilnorExpression

FINITE = "finite"
INFINITE = "infinite"
PRIME_PLACE = "prime"
REAL = "real"


class Valuation:
    """A place of k(X) or Q, with exact residue arithmetic."""

    __slots__ = ("kind", "field", "pi", "p", "_residue_field")

    def __init__(self, kind, field, pi=None, p=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_residue_field", None)

    def __setattr__(self, name, value):
        raise AttributeError("Valuation is immutable")

    def residue_field(self) -> FieldDescriptor:
        cached = self._residue_field
        if cached is None:
            if self.kind == FINITE:
                k = self.field.base
                cached = k if self.pi.degree == 1 else extension(k, self.pi, check=False)
            elif self.kind == INFINITE:
                cached = self.field.base
            elif self.kind == PRIME_PLACE:
                cached = prime_field(self.p)
            else:
                raise UnsupportedField("the real place has no residue field")
            object.__setattr__(self, "_residue_field", cached)
        return cached

    def uniformizer(self) -> FieldElement:
        if self.kind == FINITE:
            return self.field.element(self.pi)
        if self.kind == INFINITE:
            k = self.field.base
            return self.field.element(
                RationalFunction(Polynomial.one(k), Polynomial.x(k)))
        if self.kind == PRIME_PLACE:
            return rationals().from_int(self.p)
        raise UnsupportedField("the real place has no uniformizer")

    def __eq__(self, other):
        return (isinstance(other, Valuation) and self.kind == other.kind
                and self.field == other.field and self.pi == other.pi
                and self.p == other.p)

    def __hash__(self):
        return hash((self.kind, self.field, self.pi, self.p))

    def __repr__(self):
        if self.kind == FINITE:
            return f"v({self.pi})"
        if self.kind == INFINITE:
            return "v(inf)"
        if self.kind == PRIME_PLACE:
            return f"v({self.p})"
        return "v(real)"


def finite_place(ff: FieldDescriptor, pi: Polynomial) -> Valuation:
    """The place of k(X) at a monic irreducible pi over k."""
    if ff.kind != FUNCTION:
        raise UnsupportedField("finite places live over a rational function field")
    if pi.field != ff.base:
        raise DescriptorMismatch("uniformizer over the wrong coefficient field")
    if not pi.is_monic() or pi.degree < 1 or not is_irreducible(pi):
        raise DegenerateInput("the uniformizer must be monic irreducible")
    return Valuation(FINITE, ff, pi=pi)


def infinite_place(ff: FieldDescriptor) -> Valuation:
    """The degree place of k(X): v(f) = deg den - deg num."""
    if ff.kind != FUNCTION:
        raise UnsupportedField("the infinite place lives over a rational function field")
    return Valuation(INFINITE, ff)


def rational_prime(p: int) -> Valuation:
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise BadModulus(f"{p} is not prime")
    return Valuation(PRIME_PLACE, rationals(), p=p)


def real_place() -> Valuation:
    return Valuation(REAL, rationals())


def _check_value(v: Valuation, x: FieldElement):
    if not isinstance(x, FieldElement) or x.field != v.field:
        raise DescriptorMismatch(f"value not in the valued field {v.field}")
    if x.is_zero():
        raise ZeroInput("zero has no valuation")


def _poly_multiplicity(f: Polynomial, pi: Polynomial) -> int:
    n = 0
    while f.degree >= pi.degree:
        q, r = divmod(f, pi)
        if not r.is_zero():
            break
        f = q
        n += 1
    return n


def _int_multiplicity(n: int, p: int) -> int:
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return m


def valuate(v: Valuation, x: FieldElement) -> int:
    """The (normalized, surjective onto Z) valuation of a nonzero element."""
    if v.kind == REAL:
        raise UnsupportedField("the real place is not discrete")
    _check_value(v, x)
    if v.kind == FINITE:
        rf = x.rep
        # num and den are coprime, so pi divides at most one of them
        return (_poly_multiplicity(rf.num, v.pi)
                - _poly_multiplicity(rf.den, v.pi))
    if v.kind == INFINITE:
        rf = x.rep
        return rf.den.degree - rf.num.degree
    q = x.rep
    return _int_multiplicity(q.numerator, v.p) - _int_multiplicity(q.denominator, v.p)


def unit_part(v: Valuation, x: FieldElement) -> tuple[int, FieldElement]:
    """Split x = pi^n * u with u a v-unit; returns (n, u)."""
    if v.kind == REAL:
        raise UnsupportedField("the real place is not discrete")
    _check_value(v, x)
    if v.kind == FINITE:
        rf = x.rep
        a = _poly_multiplicity(rf.num, v.pi)
        b = _poly_multiplicity(rf.den, v.pi)
        num, den = rf.num, rf.den
        for _ in range(a):
            num = num // v.pi
        for _ in range(b):
            den = den // v.pi
        return a - b, v.field.element(RationalFunction(num, den))
    if v.kind == INFINITE:
        rf = x.rep
        n = rf.den.degree - rf.num.degree
        k = v.field.base
        xpow = Polynomial.x(k) ** abs(n)
        if n >= 0:
            u = RationalFunction(rf.num * xpow, rf.den)
        else:
            u = RationalFunction(rf.num, rf.den * xpow)
        return n, v.field.element(u)
    q = x.rep
    a = _int_multiplicity(q.numerator, v.p)
    b = _int_multiplicity(q.denominator, v.p)
    n = a - b
    return n, rationals().element(q / Fraction(v.p) ** n)


def residue(v: Valuation, x: FieldElement) -> FieldElement:
    """Image of a v-unit in the residue field."""
    n, u = unit_part(v, x)
    if n != 0:
        raise DegenerateInput(f"not a unit at {v}")
    return _unit_residue(v, u)


def _unit_residue(v: Valuation, u: FieldElement) -> FieldElement:
    rf = u.rep
    if v.kind == FINITE:
        kv = v.residue_field()
        if v.pi.degree == 1:
            root = -v.pi.coeffs[0]
            return rf.num.evaluate(root) / rf.den.evaluate(root)
        return (element_from_poly(kv, rf.num % v.pi)
                / element_from_poly(kv, rf.den % v.pi))
    if v.kind == INFINITE:
        return rf.num.lc() / rf.den.lc()
    q = rf
    fp = prime_field(v.p)
    return fp.from_int(q.numerator) / fp.from_int(q.denominator)


def tame_symbol(v: Valuation, x: MilnorExpression) -> MilnorExpression:
    """Boundary map at v: weight l over the valued field to weight l-1 over
    the residue field.

    Each entry is split as pi^n * u and the symbol is expanded multilinearly
    in the pi-versus-unit choice. A subset S of pi-positions contributes the
    product of their exponents; repeated pi entries collapse to -1 (such
    symbols are 2-torsion, so the in-place replacement is exact), the
    surviving pi is moved to the last slot with the usual sign, and the
    boundary then strips it, leaving the residues of the unit parts.
    """
    if x.weight < 1:
        raise ArityMismatch("the boundary map needs weight >= 1")
    if v.kind == REAL:
        raise UnsupportedField("the real place has no boundary map")
    if x.field != v.field:
        raise DescriptorMismatch("expression not over the valued field")
    kv = v.residue_field()
    minus1 = kv.minus_one()
    acc: dict[tuple, int] = {}
    for entries, coeff in x.items():
        m = len(entries)
        vals = []
        residues = []
        for e in entries:
            n, u = unit_part(v, e)
            vals.append(n)
            residues.append(_unit_residue(v, u))
        positions = [i for i in range(m) if vals[i] != 0]
        if not positions:
            continue
        npos = len(positions)
        for mask in range(1, 1 << npos):
            subset = [positions[b] for b in range(npos) if mask >> b & 1]
            mult = coeff
            for i in subset:
                mult *= vals[i]
            j0 = subset[0]
            chosen = set(subset)
            res_entries = []
            dead = False
            for i in range(m):
                if i == j0:
                    continue
                val = minus1 if i in chosen else residues[i]
                if val.is_one():
                    dead = True
                    break
                res_entries.append(val)
            if dead:
                continue
            if (m - 1 - j0) % 2:
                mult = -mult
            key = tuple(res_entries)
            acc[key] = acc.get(key, 0) + mult
    return MilnorExpression(kv, x.weight - 1, acc)


def support(x: MilnorExpression) -> list[Valuation]:
    """Places that can see x: where some entry is a non-unit.

    Over k(X) the infinite place is always included (it is the one place
    with no uniformizer among the entries' irreducible factors). Over Q the
    list is every prime dividing some entry, 2 included.
    """
    field = x.field
    if field.kind == FUNCTION:
        pis: set[Polynomial] = set()
        for entries, _ in x.items():
            for e in entries:
                rf = e.rep
                for poly in (rf.num, rf.den):
                    if poly.degree >= 1:
                        for g, _m in factor(poly)[1]:
                            pis.add(g)
        places = [finite_place(field, pi) for pi in sorted(pis, key=poly_sort_key)]
        places.append(infinite_place(field))
        return places
    if field.kind == RATIONALS:
        from mkt.numutil import factor_int
        primes: set[int] = set()
        for entries, _ in x.items():
            for e in entries:
                q = e.rep
                primes.update(factor_int(abs(q.numerator)))
                primes.update(factor_int(q.denominator))
        return [rational_prime(p) for p in sorted(primes)]
    raise UnsupportedField(f"no place structure over {field}")
