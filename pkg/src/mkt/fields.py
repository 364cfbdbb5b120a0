"""Field descriptors, exact field elements, polynomials, rational functions.

Supported fields: the rationals, prime fields F_p, simple extension steps
k[x]/(m) stacked into towers, and rational function fields k(X). All values
are immutable and hashable; arithmetic never leaves exact representations
(Fraction for Q, residues for F_p, fixed-length coefficient tuples for
extension steps, reduced num/den pairs for k(X)).

Coefficient lists everywhere are ordered lowest degree first, highest degree
last. The zero polynomial has degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator

from mkt import zkernel
from mkt.errors import (
    BadModulus,
    DescriptorMismatch,
    DivisionByZero,
    UnsupportedField,
    ZeroPolynomial,
)
from mkt.numutil import is_prime

RATIONALS = "rationals"
PRIME = "prime"
EXTENSION = "extension"
FUNCTION = "function"


class FieldDescriptor:
    """Identity of a field. Structural equality; do not mutate."""

    __slots__ = ("kind", "p", "base", "modulus", "_hash", "_mod_ints")

    def __init__(self, kind: str, p: int | None = None,
                 base: "FieldDescriptor | None" = None,
                 modulus: "Polynomial | None" = None):
        self.kind = kind
        self.p = p
        self.base = base
        self.modulus = modulus
        self._hash = None
        self._mod_ints = None

    # -- construction ------------------------------------------------------

    @property
    def step_degree(self) -> int:
        """Degree of this extension step over its base (1 for base fields)."""
        if self.kind == EXTENSION:
            return self.modulus.degree
        return 1

    def characteristic(self) -> int:
        if self.kind == RATIONALS:
            return 0
        if self.kind == PRIME:
            return self.p
        return self.base.characteristic()

    def is_finite(self) -> bool:
        if self.kind == PRIME:
            return True
        if self.kind == EXTENSION:
            return self.base.is_finite()
        return False

    def absolute_degree(self) -> int:
        """Total degree over the prime field (finite) or over Q."""
        if self.kind == EXTENSION:
            return self.modulus.degree * self.base.absolute_degree()
        if self.kind == FUNCTION:
            raise UnsupportedField("function fields have no finite degree")
        return 1

    def order(self) -> int:
        if not self.is_finite():
            raise UnsupportedField("infinite field has no order")
        return self.characteristic() ** self.absolute_degree()

    # -- elements ----------------------------------------------------------

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def minus_one(self) -> "FieldElement":
        return self.from_int(-1)

    def from_int(self, n: int) -> "FieldElement":
        if self.kind == RATIONALS:
            return FieldElement(self, Fraction(n))
        if self.kind == PRIME:
            return FieldElement(self, n % self.p)
        if self.kind == EXTENSION:
            d = self.step_degree
            rep = (self.base.from_int(n),) + tuple(self.base.zero() for _ in range(d - 1))
        else:
            k = self.base
            rep = RationalFunction(Polynomial(k, [k.from_int(n)]), Polynomial.one(k))
        return FieldElement(self, rep)

    def element(self, value) -> "FieldElement":
        """Coerce value into this field.

        Accepts ints anywhere, Fractions over Q, coefficient sequences for
        extension steps, and Polynomial/RationalFunction over k for k(X).
        """
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DescriptorMismatch(f"element of {value.field} given to {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if self.kind == RATIONALS and isinstance(value, Fraction):
            return FieldElement(self, value)
        if self.kind == EXTENSION and isinstance(value, (tuple, list)):
            d = self.step_degree
            if len(value) > d:
                raise ValueError(f"coefficient sequence longer than step degree {d}")
            coeffs = [self.base.element(c) for c in value]
            coeffs += [self.base.zero()] * (d - len(coeffs))
            return FieldElement(self, tuple(coeffs))
        if self.kind == FUNCTION:
            if isinstance(value, RationalFunction):
                if value.num.field != self.base:
                    raise DescriptorMismatch("rational function over wrong coefficient field")
                return FieldElement(self, value)
            if isinstance(value, Polynomial):
                if value.field != self.base:
                    raise DescriptorMismatch("polynomial over wrong coefficient field")
                return FieldElement(self, RationalFunction(value, Polynomial.one(self.base)))
        raise ValueError(f"cannot coerce {value!r} into {self}")

    def gen(self) -> "FieldElement":
        """The class of x in k[x]/(m), or X in k(X)."""
        if self.kind == EXTENSION:
            d = self.step_degree
            coeffs = [self.base.zero()] * d
            if d == 1:
                # x = root of a linear modulus is a base constant
                return FieldElement(self, (-self.modulus.coeffs[0],))
            coeffs[1] = self.base.one()
            return FieldElement(self, tuple(coeffs))
        if self.kind == FUNCTION:
            return FieldElement(self, RationalFunction(Polynomial.x(self.base),
                                                       Polynomial.one(self.base)))
        raise UnsupportedField("gen() needs an extension or function field")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldDescriptor):
            return NotImplemented
        if self.kind != other.kind or self.p != other.p:
            return False
        if self.kind in (RATIONALS, PRIME):
            return True
        if self.kind == FUNCTION:
            return self.base == other.base
        return self.base == other.base and self.modulus.same_coeffs(other.modulus)

    def __hash__(self):
        if self._hash is None:
            if self.kind in (RATIONALS, PRIME):
                self._hash = hash((self.kind, self.p))
            elif self.kind == FUNCTION:
                self._hash = hash((self.kind, self.base))
            else:
                self._hash = hash((self.kind, self.base, self.modulus.coeff_key()))
        return self._hash

    def __repr__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME:
            return f"F_{self.p}"
        if self.kind == FUNCTION:
            return f"{self.base!r}(X)"
        return f"{self.base!r}[x]/({self.modulus})"

    def modulus_ints(self) -> list[int]:
        """Modulus coefficients as ints (extension over a prime field only)."""
        if self._mod_ints is None:
            self._mod_ints = [c.rep for c in self.modulus.coeffs]
        return self._mod_ints


_RATIONALS = FieldDescriptor(RATIONALS)
_PRIME_CACHE: dict[int, FieldDescriptor] = {}


def rationals() -> FieldDescriptor:
    return _RATIONALS


def prime_field(p: int) -> FieldDescriptor:
    got = _PRIME_CACHE.get(p)
    if got is None:
        if not is_prime(p):
            raise BadModulus(f"{p} is not prime")
        got = FieldDescriptor(PRIME, p=p)
        _PRIME_CACHE[p] = got
    return got


def extension(base: FieldDescriptor, modulus: "Polynomial", check: bool = True) -> FieldDescriptor:
    """Simple extension base[x]/(modulus); modulus must be monic irreducible."""
    if modulus.field != base:
        raise DescriptorMismatch("modulus is not over the base field")
    if modulus.degree < 1:
        raise BadModulus("modulus must have degree >= 1")
    if not modulus.is_monic():
        raise BadModulus("modulus must be monic")
    if base.kind == FUNCTION:
        raise UnsupportedField("extensions of function fields are not supported")
    if check:
        from mkt.factor import is_irreducible

        if not is_irreducible(modulus):
            raise BadModulus(f"modulus {modulus} is reducible")
    return FieldDescriptor(EXTENSION, base=base, modulus=modulus)


def function_field(base: FieldDescriptor) -> FieldDescriptor:
    if base.kind == FUNCTION:
        raise UnsupportedField("iterated function fields are not supported")
    return FieldDescriptor(FUNCTION, base=base)


class FieldElement:
    """An element of the field named by `field`. Immutable."""

    __slots__ = ("field", "rep", "_hash")

    def __init__(self, field: FieldDescriptor, rep):
        self.field = field
        self.rep = rep
        self._hash = None

    def is_zero(self) -> bool:
        k = self.field.kind
        if k == RATIONALS or k == PRIME:
            return self.rep == 0
        if k == EXTENSION:
            return all(c.is_zero() for c in self.rep)
        return self.rep.num.degree < 0

    def is_one(self) -> bool:
        return self == self.field.one()

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Sign in {-1, 0, 1}; rationals only (ordered-field queries)."""
        if self.field.kind != RATIONALS:
            raise UnsupportedField("sign is only defined over Q")
        r = self.rep
        return (r > 0) - (r < 0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction) and self.field.kind == RATIONALS:
            return FieldElement(self.field, other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        k = self.field.kind
        if k == RATIONALS:
            return FieldElement(self.field, self.rep + b.rep)
        if k == PRIME:
            return FieldElement(self.field, (self.rep + b.rep) % self.field.p)
        if k == EXTENSION:
            return FieldElement(self.field, tuple(x + y for x, y in zip(self.rep, b.rep)))
        return FieldElement(self.field, self.rep.add(b.rep))

    __radd__ = __add__

    def __neg__(self):
        k = self.field.kind
        if k == RATIONALS:
            return FieldElement(self.field, -self.rep)
        if k == PRIME:
            return FieldElement(self.field, (-self.rep) % self.field.p)
        if k == EXTENSION:
            return FieldElement(self.field, tuple(-x for x in self.rep))
        return FieldElement(self.field, self.rep.neg())

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        k = self.field.kind
        if k == RATIONALS:
            return FieldElement(self.field, self.rep * b.rep)
        if k == PRIME:
            return FieldElement(self.field, self.rep * b.rep % self.field.p)
        if k == EXTENSION:
            return self._ext_mul(b)
        return FieldElement(self.field, self.rep.mul(b.rep))

    __rmul__ = __mul__

    def _ext_mul(self, b: "FieldElement") -> "FieldElement":
        fld = self.field
        base = fld.base
        d = fld.step_degree
        if base.kind == PRIME:
            p = base.p
            a_ints = _trim_ints([c.rep for c in self.rep])
            b_ints = _trim_ints([c.rep for c in b.rep])
            prod = zkernel.zp_mulmod(a_ints, b_ints, fld.modulus_ints(), p)
            return _ext_from_ints(fld, prod)
        ac = _eltrim(list(self.rep))
        bc = _eltrim(list(b.rep))
        prod = _elmul(base, ac, bc)
        prod = _elrem(base, prod, list(fld.modulus.coeffs))
        return _ext_from_coeffs(fld, prod)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero(f"inverse of zero in {self.field}")
        k = self.field.kind
        if k == RATIONALS:
            return FieldElement(self.field, 1 / self.rep)
        if k == PRIME:
            return FieldElement(self.field, pow(self.rep, self.field.p - 2, self.field.p))
        if k == EXTENSION:
            fld = self.field
            base = fld.base
            if base.kind == PRIME:
                inv = zkernel.zp_invmod(_trim_ints([c.rep for c in self.rep]),
                                        fld.modulus_ints(), base.p)
                return _ext_from_ints(fld, inv)
            inv = _elinvmod(base, _eltrim(list(self.rep)), list(fld.modulus.coeffs))
            return _ext_from_coeffs(fld, inv)
        return FieldElement(self.field, self.rep.inverse())

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- identity ----------------------------------------------------------

    def _key(self):
        k = self.field.kind
        if k == EXTENSION:
            return tuple(c._key() for c in self.rep)
        if k == FUNCTION:
            return (self.rep.num.coeff_key(), self.rep.den.coeff_key())
        return self.rep

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self._key()))
        return self._hash

    def __repr__(self):
        k = self.field.kind
        if k == RATIONALS or k == PRIME:
            return str(self.rep)
        if k == FUNCTION:
            return repr(self.rep)
        names = "abcdefg"
        depth = 0
        f = self.field.base
        while f.kind == EXTENSION:
            depth += 1
            f = f.base
        name = names[depth % len(names)]
        parts = []
        for i, c in enumerate(self.rep):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(repr(c))
            elif i == 1:
                parts.append(f"{c!r}*{name}" if not c.is_one() else name)
            else:
                parts.append(f"{c!r}*{name}^{i}" if not c.is_one() else f"{name}^{i}")
        return " + ".join(parts) if parts else "0"


def _trim_ints(a: list[int]) -> list[int]:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _ext_from_ints(fld: FieldDescriptor, ints: list[int]) -> FieldElement:
    base = fld.base
    d = fld.step_degree
    coeffs = [FieldElement(base, ints[i] if i < len(ints) else 0) for i in range(d)]
    return FieldElement(fld, tuple(coeffs))


def _ext_from_coeffs(fld: FieldDescriptor, coeffs: list[FieldElement]) -> FieldElement:
    d = fld.step_degree
    out = list(coeffs) + [fld.base.zero()] * (d - len(coeffs))
    return FieldElement(fld, tuple(out[:d]))


# Generic coefficient-list arithmetic over an arbitrary coefficient field.
# Used for extension steps whose base is not a prime field and by Polynomial.

def _eltrim(a: list[FieldElement]) -> list[FieldElement]:
    n = len(a)
    while n and a[n - 1].is_zero():
        n -= 1
    return a[:n]


def _eladd(base, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _eltrim(out)


def _elsub(base, a, b):
    n = max(len(a), len(b))
    z = base.zero()
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(x - y)
    return _eltrim(out)


def _elmul(base, a, b):
    if not a or not b:
        return []
    z = base.zero()
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _eltrim(out)


def _eldivmod(base, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], _eltrim(r)
    inv_lead = b[db].inverse()
    z = base.zero()
    q = [z] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = r[db + k]
        if not c.is_zero():
            c = c * inv_lead
            q[k] = c
            for i in range(db + 1):
                r[i + k] = r[i + k] - c * b[i]
    return _eltrim(q), _eltrim(r)


def _elrem(base, a, b):
    return _eldivmod(base, a, b)[1]


def _elinvmod(base, a, f):
    r0, r1 = list(f), _elrem(base, a, f)
    s0, s1 = [], [base.one()]
    while r1:
        q, r2 = _eldivmod(base, r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, _elsub(base, s0, _elmul(base, q, s1))
    if len(r0) != 1:
        raise DivisionByZero("element not invertible modulo f")
    inv = r0[0].inverse()
    return _eltrim([c * inv for c in s0])


class Polynomial:
    """Dense univariate polynomial over a field descriptor."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDescriptor, coeffs: Iterable):
        elems = [field.element(c) if not isinstance(c, FieldElement) else c
                 for c in coeffs]
        for c in elems:
            if c.field != field:
                raise DescriptorMismatch("coefficient over wrong field")
        self.field = field
        self.coeffs = tuple(_eltrim(elems))
        self._hash = None

    @classmethod
    def zero(cls, field) -> "Polynomial":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "Polynomial":
        return cls(field, [field.one()])

    @classmethod
    def x(cls, field) -> "Polynomial":
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def constant(cls, c: FieldElement) -> "Polynomial":
        return cls(c.field, [c])

    @classmethod
    def from_ints(cls, field, ints: Iterable[int]) -> "Polynomial":
        return cls(field, [field.from_int(n) for n in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> FieldElement:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> FieldElement:
        return self.coeffs[0] if self.coeffs else self.field.zero()

    # kernel path helpers
    def _ints(self) -> list[int]:
        return [c.rep for c in self.coeffs]

    def _wrap_ints(self, ints: list[int]) -> "Polynomial":
        fld = self.field
        out = Polynomial.__new__(Polynomial)
        out.field = fld
        out.coeffs = tuple(FieldElement(fld, v) for v in ints)
        out._hash = None
        return out

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise DescriptorMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial(self.field, [self.field.element(other)
                                           if isinstance(other, int) else other])
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.field.kind == PRIME:
            return self._wrap_ints(zkernel.zp_add(self._ints(), b._ints(), self.field.p))
        return Polynomial(self.field, _eladd(self.field, list(self.coeffs), list(b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.field.kind == PRIME:
            return self._wrap_ints(zkernel.zp_sub(self._ints(), b._ints(), self.field.p))
        return Polynomial(self.field, _elsub(self.field, list(self.coeffs), list(b.coeffs)))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) and not isinstance(other, Polynomial):
            c = self.field.element(other) if isinstance(other, int) else other
            return Polynomial(self.field, [x * c for x in self.coeffs])
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.field.kind == PRIME:
            return self._wrap_ints(zkernel.zp_mul(self._ints(), b._ints(), self.field.p))
        return Polynomial(self.field, _elmul(self.field, list(self.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.field.kind == PRIME:
            q, r = zkernel.zp_divmod(self._ints(), b._ints(), self.field.p)
            return self._wrap_ints(q), self._wrap_ints(r)
        q, r = _eldivmod(self.field, list(self.coeffs), list(b.coeffs))
        return Polynomial(self.field, q), Polynomial(self.field, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        if self.is_monic():
            return self
        inv = self.lc().inverse()
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial(self.field,
                          [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def shift_x(self) -> "Polynomial":
        """Multiply by X."""
        if self.is_zero():
            return self
        return Polynomial(self.field, [self.field.zero()] + list(self.coeffs))

    def evaluate(self, point: FieldElement) -> FieldElement:
        """Horner evaluation; `point` may live in an extension of this field."""
        target = point.field
        if target == self.field:
            acc = self.field.zero()
            for c in reversed(self.coeffs):
                acc = acc * point + c
            return acc
        if not is_ancestor(self.field, target):
            raise DescriptorMismatch("evaluation point not in an extension of the coefficients")
        acc = target.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + embed(c, target)
        return acc

    def same_coeffs(self, other: "Polynomial") -> bool:
        return self.coeffs == other.coeffs

    def coeff_key(self):
        return tuple(c._key() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeff_key()))
        return self._hash

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(repr(c))
            else:
                xs = "X" if i == 1 else f"X^{i}"
                parts.append(xs if c.is_one() else f"{c!r}*{xs}")
        return " + ".join(parts)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; poly_gcd(0, 0) = 0."""
    if f.field != g.field:
        raise DescriptorMismatch("gcd of polynomials over different fields")
    if f.field.kind == PRIME:
        return f._wrap_ints(zkernel.zp_gcd(f._ints(), g._ints(), f.field.p))
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RationalFunction:
    """Reduced quotient of polynomials; denominator monic and nonzero."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.field != den.field:
            raise DescriptorMismatch("numerator/denominator field mismatch")
        if num.is_zero():
            num, den = Polynomial.zero(num.field), Polynomial.one(num.field)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lc()
            if not lead.is_one():
                inv = lead.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, f: Polynomial) -> "RationalFunction":
        return cls(f, Polynomial.one(f.field))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def add(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def neg(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def mul(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"


# -- embeddings and coordinates ---------------------------------------------

def is_ancestor(k: FieldDescriptor, L: FieldDescriptor) -> bool:
    """True when k appears in L's tower (k == L included)."""
    while True:
        if k == L:
            return True
        if L.kind in (EXTENSION, FUNCTION):
            L = L.base
        else:
            return False


def embed(x: FieldElement, L: FieldDescriptor) -> FieldElement:
    """Include x along the tower k -> L."""
    if x.field == L:
        return x
    if L.kind == EXTENSION:
        below = embed(x, L.base)
        return _ext_from_coeffs(L, [below])
    if L.kind == FUNCTION:
        below = embed(x, L.base)
        return L.element(Polynomial.constant(below))
    raise DescriptorMismatch(f"{x.field} does not embed into {L}")


def embed_poly(f: Polynomial, L: FieldDescriptor) -> Polynomial:
    if f.field == L:
        return f
    return Polynomial(L, [embed(c, L) for c in f.coeffs])


def tower_degree(L: FieldDescriptor, base: FieldDescriptor) -> int:
    d = 1
    while L != base:
        if L.kind != EXTENSION:
            raise DescriptorMismatch(f"{base} is not below {L}")
        d *= L.step_degree
        L = L.base
    return d


def tower_steps(L: FieldDescriptor, base: FieldDescriptor) -> list[FieldDescriptor]:
    """Descriptors from base (exclusive) up to L (inclusive), bottom first."""
    steps = []
    while L != base:
        if L.kind != EXTENSION:
            raise DescriptorMismatch(f"{base} is not below {L}")
        steps.append(L)
        L = L.base
    steps.reverse()
    return steps


def coordinates(x: FieldElement, base: FieldDescriptor) -> list[FieldElement]:
    """Coordinates of x over base w.r.t. the tower basis.

    Basis order: for L = M[x]/(m) with M-basis (b_j), the L-basis over the
    bottom is (b_j * x^i) listed i-major, matching from_coordinates.
    """
    if x.field == base:
        return [x]
    if x.field.kind != EXTENSION or not is_ancestor(base, x.field):
        raise DescriptorMismatch(f"{base} is not below {x.field}")
    out: list[FieldElement] = []
    for c in x.rep:
        out.extend(coordinates(c, base))
    return out


def from_coordinates(vec: list[FieldElement], L: FieldDescriptor,
                     base: FieldDescriptor) -> FieldElement:
    if L == base:
        if len(vec) != 1:
            raise ValueError("coordinate length mismatch")
        return vec[0]
    step = tower_degree(L.base, base)
    if len(vec) != step * L.step_degree:
        raise ValueError("coordinate length mismatch")
    coeffs = [from_coordinates(vec[i * step:(i + 1) * step], L.base, base)
              for i in range(L.step_degree)]
    return _ext_from_coeffs(L, coeffs)


def element_from_poly(L: FieldDescriptor, g: Polynomial) -> FieldElement:
    """The class of g(x) in L = k[x]/(m); g must be over k with deg g < deg m."""
    if L.kind != EXTENSION:
        raise UnsupportedField("element_from_poly needs an extension step")
    if g.field != L.base:
        raise DescriptorMismatch("polynomial not over the base field")
    if g.degree >= L.step_degree:
        g = g % L.modulus
    return _ext_from_coeffs(L, list(g.coeffs))


def poly_of_element(x: FieldElement) -> Polynomial:
    """Canonical representative of an extension element as a base polynomial."""
    if x.field.kind != EXTENSION:
        raise UnsupportedField("poly_of_element needs an extension element")
    return Polynomial(x.field.base, list(x.rep))


def all_elements(field: FieldDescriptor) -> Iterator[FieldElement]:
    """Every element of a finite field, in a fixed order."""
    if field.kind == PRIME:
        for v in range(field.p):
            yield FieldElement(field, v)
        return
    if field.kind == EXTENSION and field.is_finite():
        base_elems = list(all_elements(field.base))
        d = field.step_degree
        idx = [0] * d
        total = len(base_elems) ** d
        for _ in range(total):
            yield FieldElement(field, tuple(base_elems[i] for i in idx))
            for pos in range(d):
                idx[pos] += 1
                if idx[pos] < len(base_elems):
                    break
                idx[pos] = 0
        return
    raise UnsupportedField("all_elements needs a finite field")


_ARITH_OPS: dict[str, Callable] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact field arithmetic by operator symbol (+, -, *, /)."""
    if op not in _ARITH_OPS:
        raise ValueError(f"unknown operator {op!r}")
    return _ARITH_OPS[op](a, b)
