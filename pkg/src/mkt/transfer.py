"""Transfers (norms) of symbol expressions along finite field extensions.

The route: an expression over a simple extension k_v = k[x]/(pi_v) is first
rewritten into combinations {a_1,...,a_s, f_1(alpha),...,f_r(alpha)} with
the a_i constants from k and the f_i monic irreducible over k of strictly
increasing degrees below deg pi_v. Those generator forms are then pushed
down to k: constants-only forms scale by the extension degree, single-poly
forms admit a norm shortcut, and the general case runs the reciprocity
recursion over the places of k(X), which strictly decreases degrees and so
terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from mkt.canonical import canonical_class
from mkt.errors import (ArityMismatch, DescriptorMismatch,
                        RecursionInvariantViolated, UnsupportedField)
from mkt.factor import element_sort_key, factor, poly_sort_key
from mkt.fields import (EXTENSION, FUNCTION, FieldDescriptor, FieldElement,
                        Polynomial, element_from_poly, embed, function_field,
                        is_ancestor, poly_of_element, tower_steps)
from mkt.symbols import MilnorExpression, symbol, zero_expression
from mkt.towers import norm_element, present_as_simple
from mkt.valuations import (INFINITE, Valuation, finite_place, infinite_place,
                            support, tame_symbol)

CONST = "c"
POLY = "p"


@dataclass(frozen=True)
class ResidueSymbolForm:
    """One generator form {a_1,...,a_s, f_1(alpha),...,f_r(alpha)}.

    constants: elements of the base field k, none equal to one.
    polys: monic irreducible over k, strictly increasing degrees.
    """

    coeff: int
    constants: tuple
    polys: tuple

    @property
    def rank(self) -> int:
        return len(self.polys)

    def as_expression(self, kv: FieldDescriptor) -> MilnorExpression:
        entries = [embed(a, kv) for a in self.constants]
        entries += [element_from_poly(kv, f) for f in self.polys]
        return symbol(entries, kv) * self.coeff


def _entry_items(e: FieldElement, k: FieldDescriptor) -> list[tuple]:
    """Multilinear expansion choices for one entry of kv = k[x]/(m).

    Returns (tag, payload, exponent) triples; an empty list means the entry
    is one and the whole term dies. Items with value one never appear.
    """
    g = poly_of_element(e)
    if g.degree <= 0:
        a = g.constant_term()
        return [] if a.is_one() else [(CONST, a, 1)]
    unit, parts = factor(g)
    items: list[tuple] = []
    if not unit.is_one():
        items.append((CONST, unit, 1))
    for f, m in parts:
        # deg f < deg modulus, so f(alpha) is neither 0 nor 1
        items.append((POLY, f, m))
    return items


def _tag_key(tagged: tuple):
    tag, payload = tagged
    if tag == CONST:
        return (0, element_sort_key(payload))
    return (1, payload.degree, poly_sort_key(payload))


def _sorted_with_sign(entries: tuple) -> tuple[tuple, int]:
    order = sorted(range(len(entries)), key=lambda i: _tag_key(entries[i]))
    inv = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                inv += 1
    out = tuple(entries[i] for i in order)
    return out, (-1 if inv % 2 else 1)


def rewrite_to_generators(x: MilnorExpression) -> list[ResidueSymbolForm]:
    """Rewrite an expression over a simple extension into generator forms.

    Each output form has constant entries first and polynomial entries of
    strictly increasing degrees after; the rewriting only uses relations
    that hold for symbol classes, so the sum of the forms equals x.
    """
    kv = x.field
    if kv.kind != EXTENSION:
        raise UnsupportedField("generator forms need a simple extension field")
    k = kv.base
    minus1 = k.minus_one()
    minus1_dead = minus1.is_one()  # characteristic two
    work: list[tuple[int, tuple]] = []
    for entries, c in x.items():
        lists = [_entry_items(e, k) for e in entries]
        if any(not lst for lst in lists):
            continue
        stack = [(c, ())]
        for lst in lists:
            stack = [(cf * exp, chosen + ((tag, payload),))
                     for cf, chosen in stack
                     for tag, payload, exp in lst]
        work.extend(stack)

    acc: dict[tuple, int] = {}
    while work:
        coeff, entries = work.pop()
        entries, sign = _sorted_with_sign(entries)
        coeff *= sign
        offender = None
        for i in range(len(entries) - 1):
            t1, p1 = entries[i]
            t2, p2 = entries[i + 1]
            if t1 == POLY and t2 == POLY and p1.degree == p2.degree:
                offender = i
                break
        if offender is None:
            consts = tuple(p for t, p in entries if t == CONST)
            polys = tuple(p for t, p in entries if t == POLY)
            key = (consts, polys)
            acc[key] = acc.get(key, 0) + coeff
            continue
        i = offender
        f, g = entries[i][1], entries[i + 1][1]
        rest_before, rest_after = entries[:i], entries[i + 2:]
        if f == g:
            # {f, f} = {-1, f}; in characteristic two that is {1, f} = 0
            if not minus1_dead:
                work.append((coeff,
                             rest_before + ((CONST, minus1), (POLY, f)) + rest_after))
            continue
        # {f, g} = {h, g} - {h, f} + {-1, f} with h = f - g (degree drops)
        h = f - g
        if h.degree <= 0:
            h_items = [] if h.constant_term().is_one() else [(CONST, h.constant_term(), 1)]
        else:
            unit, parts = factor(h)
            h_items = [] if unit.is_one() else [(CONST, unit, 1)]
            h_items += [(POLY, q, m) for q, m in parts]
        for tag, payload, exp in h_items:
            work.append((coeff * exp,
                         rest_before + ((tag, payload), (POLY, g)) + rest_after))
            work.append((-coeff * exp,
                         rest_before + ((tag, payload), (POLY, f)) + rest_after))
        if not minus1_dead:
            work.append((coeff,
                         rest_before + ((CONST, minus1), (POLY, f)) + rest_after))

    forms = [ResidueSymbolForm(c, consts, polys)
             for (consts, polys), c in acc.items() if c]
    forms.sort(key=lambda fm: (len(fm.polys),
                               [poly_sort_key(f) for f in fm.polys],
                               [element_sort_key(a) for a in fm.constants]))
    return forms


def _form_transfer(v: Valuation, form: ResidueSymbolForm,
                   use_shortcuts: bool) -> MilnorExpression:
    kv = v.residue_field()
    k = v.field.base
    d = v.pi.degree
    weight = len(form.constants) + len(form.polys)
    if form.rank == 0:
        if weight == 0:
            return MilnorExpression(k, 0, {(): form.coeff * d})
        return symbol(form.constants, k) * (form.coeff * d)
    if form.rank == 1 and use_shortcuts:
        beta = element_from_poly(kv, form.polys[0])
        nb = norm_element(beta, k)
        if nb.is_one():
            return zero_expression(k, weight)
        return symbol((*form.constants, nb), k) * form.coeff
    return _reciprocity_transfer(v, form, use_shortcuts)


def _reciprocity_transfer(v: Valuation, form: ResidueSymbolForm,
                          use_shortcuts: bool) -> MilnorExpression:
    """Push one generator form down to k through the places of k(X)."""
    ff = v.field
    k = ff.base
    kv = v.residue_field()
    entries = [embed(a, ff) for a in form.constants]
    entries += [ff.element(f) for f in form.polys]
    entries.append(ff.element(v.pi))
    y = symbol(entries, ff)
    expected = symbol([embed(a, kv) for a in form.constants]
                      + [element_from_poly(kv, f) for f in form.polys], kv)
    if tame_symbol(v, y) != expected:
        raise RecursionInvariantViolated("the lift does not reduce to its form")
    weight = expected.weight
    acc = zero_expression(k, weight)
    for f in form.polys:
        w = finite_place(ff, f)
        t = tame_symbol(w, y)
        if t.is_zero():
            continue
        if f.degree == 1:
            acc = acc + t
        else:
            if f.degree >= v.pi.degree:
                raise RecursionInvariantViolated(
                    "generator degree failed to decrease")
            acc = acc + transfer(w, t, use_shortcuts=use_shortcuts)
    acc = acc + tame_symbol(infinite_place(ff), y)
    return (-acc) * form.coeff


def transfer(v: Valuation, x: MilnorExpression,
             use_shortcuts: bool = True) -> MilnorExpression:
    """Norm map along the residue extension of a finite place.

    x lives over the residue field of v; the result lives over the
    coefficient field k. Weight is preserved; degree-one places give the
    identity.
    """
    if v.kind != "finite":
        raise UnsupportedField("transfers go along finite places")
    kv = v.residue_field()
    if x.field != kv:
        raise DescriptorMismatch("expression not over the residue field")
    if v.pi.degree == 1:
        return x
    k = v.field.base
    if x.weight == 0:
        return MilnorExpression(k, 0, {(): x.coefficient([]) * v.pi.degree})
    out = zero_expression(k, x.weight)
    for form in rewrite_to_generators(x):
        out = out + _form_transfer(v, form, use_shortcuts)
    return out


def transfer_ext(E: FieldDescriptor, x: MilnorExpression,
                 use_shortcuts: bool = True) -> MilnorExpression:
    """Transfer along a single extension step E = k[x]/(m) down to k."""
    if E.kind != EXTENSION:
        raise UnsupportedField("transfer_ext needs an extension field")
    if x.field != E:
        raise DescriptorMismatch("expression not over the named field")
    if E.modulus.degree == 1:
        # degree-one step: the norm is evaluation at the root of the modulus
        root = -E.modulus.coeffs[0]
        return x.map_entries(lambda e: poly_of_element(e).evaluate(root), E.base)
    ff = function_field(E.base)
    return transfer(finite_place(ff, E.modulus), x, use_shortcuts=use_shortcuts)


def transfer_tower(x: MilnorExpression, base: FieldDescriptor,
                   use_shortcuts: bool = True) -> MilnorExpression:
    """Transfer from a tower top all the way down to base.

    Height >= 2 towers are first collapsed to a simple presentation, which
    restricts them to finite fields; height one and zero work everywhere.
    """
    L = x.field
    if L == base:
        return x
    if not is_ancestor(base, L):
        raise DescriptorMismatch(f"{base} is not below {L}")
    steps = tower_steps(L, base)
    if len(steps) == 1:
        return transfer_ext(L, x, use_shortcuts=use_shortcuts)
    pres = present_as_simple(L, base)
    collapsed = x.map_entries(pres.to_simple, pres.simple_field)
    return transfer_ext(pres.simple_field, collapsed, use_shortcuts=use_shortcuts)


def transfer_tower_stepwise(x: MilnorExpression, base: FieldDescriptor,
                            use_shortcuts: bool = True) -> MilnorExpression:
    """Compose single-step transfers down the tower; same value as
    transfer_tower on classes, useful as a cross-check."""
    L = x.field
    if not is_ancestor(base, L):
        raise DescriptorMismatch(f"{base} is not below {L}")
    while x.field != base:
        x = transfer_ext(x.field, x, use_shortcuts=use_shortcuts)
    return x


def base_change(x: MilnorExpression, L: FieldDescriptor) -> MilnorExpression:
    """Entrywise inclusion of an expression into an overfield."""
    if not is_ancestor(x.field, L):
        raise DescriptorMismatch(f"{x.field} is not below {L}")
    return x.map_entries(lambda e: embed(e, L), L)


def reciprocity_check(w: MilnorExpression, use_shortcuts: bool = True):
    """Sum of transferred boundaries over every place of k(X).

    Returns (canonical class of the sum, per-place rows). The class is zero
    exactly when reciprocity holds for w; rows carry (place, boundary,
    transferred boundary) for reporting.
    """
    ff = w.field
    if ff.kind != FUNCTION:
        raise UnsupportedField("reciprocity runs over a rational function field")
    if w.weight < 1:
        raise ArityMismatch("reciprocity needs weight >= 1")
    k = ff.base
    total = zero_expression(k, w.weight - 1)
    rows = []
    for v in support(w):
        t = tame_symbol(v, w)
        if v.kind == INFINITE or v.pi.degree == 1:
            n = t
        else:
            n = transfer(v, t, use_shortcuts=use_shortcuts)
        total = total + n
        rows.append((v, t, n))
    return canonical_class(total), rows
