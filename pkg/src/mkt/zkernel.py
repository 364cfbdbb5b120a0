"""Backend selector for the Z/p polynomial kernel.

Imports the compiled kernel when available, otherwise the pure-Python twin.
MKT_PURE_PYTHON=1 forces the fallback. Primes at or above 2^31 always use the
pure backend (the compiled one computes in int64).
"""

from __future__ import annotations

import os

from mkt import _zpoly_py as _pure

_compiled = None
if os.environ.get("MKT_PURE_PYTHON") != "1":
    try:
        from mkt import _zpoly as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_P_LIMIT = 1 << 31


def backend_name() -> str:
    return "compiled" if _compiled is not None else "pure"


def trim(a):
    return _pure.trim(a)


def _pick(p: int):
    if _compiled is not None and p < _P_LIMIT:
        return _compiled
    return _pure


def zp_add(a, b, p):
    return _pick(p).zp_add(a, b, p)


def zp_sub(a, b, p):
    return _pick(p).zp_sub(a, b, p)


def zp_neg(a, p):
    return _pick(p).zp_neg(a, p)


def zp_scale(a, c, p):
    return _pick(p).zp_scale(a, c, p)


def zp_mul(a, b, p):
    return _pick(p).zp_mul(a, b, p)


def zp_divmod(a, b, p):
    return _pick(p).zp_divmod(a, b, p)


def zp_rem(a, b, p):
    return _pick(p).zp_rem(a, b, p)


def zp_gcd(a, b, p):
    return _pick(p).zp_gcd(a, b, p)


def zp_invmod(a, f, p):
    return _pick(p).zp_invmod(a, f, p)


def zp_mulmod(a, b, f, p):
    return _pick(p).zp_mulmod(a, b, f, p)


def zp_powmod(a, e, f, p):
    return _pick(p).zp_powmod(a, e, f, p)


def zp_eval(a, x, p):
    return _pick(p).zp_eval(a, x, p)
