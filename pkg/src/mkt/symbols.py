"""Formal integer combinations of symbols over a fixed field.

A weight-l symbol is a tuple of l nonzero field elements written {a_1,...,a_l};
an expression is a finite Z-linear combination of symbols of one common
weight. Expressions are purely syntactic: no relation is applied unless an
operator (multilinear expansion, boundary, rewriting) does so explicitly.
"""

from __future__ import annotations

import itertools
from typing import Callable, Mapping, Sequence

from mkt.errors import (ArityMismatch, DegenerateDifferences, DegenerateInput,
                        DescriptorMismatch, ZeroEntry)
from mkt.factor import element_sort_key
from mkt.fields import RATIONALS, FieldDescriptor, FieldElement
from mkt.numutil import factor_int

SplitFn = Callable[[FieldElement], "list[tuple[FieldElement, int]]"]


def _check_entries(field: FieldDescriptor, entries: Sequence) -> tuple:
    out = []
    for e in entries:
        if isinstance(e, int):
            e = field.from_int(e)
        if not isinstance(e, FieldElement) or e.field != field:
            raise DescriptorMismatch("symbol entries must share the expression field")
        if e.is_zero():
            raise ZeroEntry("symbol entries must be nonzero")
        out.append(e)
    return tuple(out)


class MilnorExpression:
    """Z-linear combination of weight-l symbols over one field."""

    __slots__ = ("field", "weight", "_terms", "_sorted")

    def __init__(self, field: FieldDescriptor, weight: int,
                 terms: Mapping[tuple, int] | None = None):
        if weight < 0:
            raise ArityMismatch("weight must be nonnegative")
        clean: dict[tuple, int] = {}
        for entries, c in (terms or {}).items():
            if not isinstance(c, int):
                raise DegenerateInput("coefficients must be integers")
            if c == 0:
                continue
            if len(entries) != weight:
                raise ArityMismatch("mixed weights in one expression")
            key = _check_entries(field, entries)
            clean[key] = clean.get(key, 0) + c
            if clean[key] == 0:
                del clean[key]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_sorted", None)

    def __setattr__(self, name, value):
        raise AttributeError("MilnorExpression is immutable")

    def items(self) -> list[tuple[tuple, int]]:
        """Terms as (entries, coefficient), canonically ordered."""
        cached = self._sorted
        if cached is None:
            cached = sorted(self._terms.items(),
                            key=lambda kv: [element_sort_key(e) for e in kv[0]])
            object.__setattr__(self, "_sorted", cached)
        return list(cached)

    def __iter__(self):
        return iter(self.items())

    def coefficient(self, entries: Sequence) -> int:
        return self._terms.get(_check_entries(self.field, entries), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def term_count(self) -> int:
        return len(self._terms)

    def _binop(self, other: "MilnorExpression", flip: bool) -> "MilnorExpression":
        if not isinstance(other, MilnorExpression):
            raise DescriptorMismatch("expected a MilnorExpression")
        if other.field != self.field:
            raise DescriptorMismatch("expressions over different fields")
        if other.weight != self.weight:
            raise ArityMismatch("expressions of different weights")
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + (-c if flip else c)
        return MilnorExpression(self.field, self.weight, acc)

    def __add__(self, other):
        return self._binop(other, flip=False)

    def __sub__(self, other):
        return self._binop(other, flip=True)

    def __neg__(self):
        return MilnorExpression(self.field, self.weight,
                                {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return MilnorExpression(self.field, self.weight,
                                    {k: c * other for k, c in self._terms.items()})
        if isinstance(other, MilnorExpression):
            if other.field != self.field:
                raise DescriptorMismatch("expressions over different fields")
            acc: dict[tuple, int] = {}
            for k1, c1 in self._terms.items():
                for k2, c2 in other._terms.items():
                    key = k1 + k2
                    acc[key] = acc.get(key, 0) + c1 * c2
            return MilnorExpression(self.field, self.weight + other.weight, acc)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def map_entries(self, fn: Callable[[FieldElement], FieldElement],
                    field: FieldDescriptor | None = None) -> "MilnorExpression":
        """Apply a field map entrywise (embeddings, isomorphisms)."""
        target = field or self.field
        acc: dict[tuple, int] = {}
        for k, c in self._terms.items():
            key = tuple(fn(e) for e in k)
            acc[key] = acc.get(key, 0) + c
        return MilnorExpression(target, self.weight, acc)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MilnorExpression) and self.field == other.field
                and self.weight == other.weight and self._terms == other._terms)

    def __hash__(self):
        return hash((self.field, self.weight, tuple(self.items())))

    def __repr__(self):
        if not self._terms:
            return f"0<w{self.weight}>"
        parts = []
        for entries, c in self.items():
            body = "{" + ", ".join(str(e) for e in entries) + "}"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def symbol(entries: Sequence, field: FieldDescriptor | None = None) -> MilnorExpression:
    """The single symbol {a_1,...,a_l} with coefficient one."""
    entries = list(entries)
    if field is None:
        for e in entries:
            if isinstance(e, FieldElement):
                field = e.field
                break
        if field is None:
            raise DegenerateInput("cannot infer the field; pass it explicitly")
    key = _check_entries(field, entries)
    return MilnorExpression(field, len(key), {key: 1})


def zero_expression(field: FieldDescriptor, weight: int) -> MilnorExpression:
    return MilnorExpression(field, weight, {})


def constant_expression(field: FieldDescriptor, n: int) -> MilnorExpression:
    """Weight-zero expression, i.e. the integer n."""
    return MilnorExpression(field, 0, {(): n})


def default_split(e: FieldElement) -> list[tuple[FieldElement, int]]:
    """Trivial factorization; drops the entry value one."""
    if e.is_one():
        return []
    return [(e, 1)]


def rational_split(e: FieldElement) -> list[tuple[FieldElement, int]]:
    """Factor a nonzero rational into -1 and prime powers."""
    q = e.rep
    field = e.field
    out: list[tuple[FieldElement, int]] = []
    if q < 0:
        out.append((field.from_int(-1), 1))
    exps: dict[int, int] = {}
    for p, m in factor_int(abs(q.numerator)).items():
        exps[p] = exps.get(p, 0) + m
    for p, m in factor_int(q.denominator).items():
        exps[p] = exps.get(p, 0) - m
    for p in sorted(exps):
        if exps[p]:
            out.append((field.from_int(p), exps[p]))
    return out


def expand_multilinear(x: MilnorExpression,
                       split: SplitFn | None = None) -> MilnorExpression:
    """Rewrite every entry through a factorization and distribute.

    With split(e) = [(b_1,e_1),...,(b_r,e_r)] meaning e = prod b_i^{e_i},
    each symbol becomes the full multilinear expansion over its entries.
    Entries that split to an empty list (value one) kill their terms. Over Q
    the default split separates sign and prime powers; elsewhere it only
    drops ones.
    """
    field = x.field
    if split is None:
        split = rational_split if field.kind == RATIONALS else default_split
    acc: dict[tuple, int] = {}
    for entries, c in x._terms.items():
        lists = [split(e) for e in entries]
        if any(not lst for lst in lists):
            continue
        for combo in itertools.product(*lists):
            coeff = c
            key = []
            for base, exp in combo:
                coeff *= exp
                key.append(base)
            k = tuple(key)
            acc[k] = acc.get(k, 0) + coeff
    return MilnorExpression(field, x.weight, acc)


def cyclic_difference_identity(points: Sequence[FieldElement]
                               ) -> tuple[MilnorExpression, MilnorExpression]:
    """Both sides of the cyclic difference identity on l+1 points.

    For pairwise distinct x_0,...,x_l the signed sum of the difference
    symbols {x_{i+1}-x_i, ..., x_{i+l}-x_i} (indices cyclic) equals
    {-1,...,-1}. Returns (left side, right side); the equality holds at the
    level of symbol classes, not termwise.
    """
    pts = list(points)
    if len(pts) < 2:
        raise DegenerateInput("need at least two points")
    field = pts[0].field
    weight = len(pts) - 1
    m = len(pts)
    lhs = zero_expression(field, weight)
    for i in range(m):
        entries = []
        for s in range(1, m):
            d = pts[(i + s) % m] - pts[i]
            if d.is_zero():
                raise DegenerateDifferences("coincident points")
            entries.append(d)
        sign = -1 if (weight * (i + 1)) % 2 else 1
        lhs = lhs + symbol(entries, field) * sign
    rhs = symbol([field.minus_one()] * weight, field)
    return lhs, rhs


def symbol_shift_identity(c: FieldElement, d: FieldElement, variant: str = "difference"
                          ) -> tuple[MilnorExpression, MilnorExpression]:
    """A two-entry symbol rewritten through one of two difference forms.

    variant "difference": {c,d} = {c/d, d-c} + {-1, d}, needs d != c.
    variant "sum":        {c,d} = {-c/d, d+c},          needs d != -c.
    Returns (left side, right side); equal as symbol classes.
    """
    if c.is_zero() or d.is_zero():
        raise ZeroEntry("symbol entries must be nonzero")
    field = c.field
    lhs = symbol([c, d], field)
    if variant == "difference":
        if (d - c).is_zero():
            raise DegenerateInput("difference variant needs d != c")
        rhs = symbol([c / d, d - c], field) + symbol([field.minus_one(), d], field)
    elif variant == "sum":
        if (d + c).is_zero():
            raise DegenerateInput("sum variant needs d != -c")
        rhs = symbol([-(c / d), d + c], field)
    else:
        raise ValueError(f"unknown variant: {variant!r}")
    return lhs, rhs
