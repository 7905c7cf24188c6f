"""Certified floor/ceiling of transcendental expressions via interval arithmetic."""

from mpmath import iv

_MAX_PREC = 1 << 16


def _floor(raw):
    """Exact floor of a raw mpf tuple (no detour through float)."""
    sign, man, exp, _ = raw
    if sign:
        man = -man
    if exp >= 0:
        return man << exp
    return man >> -exp


def _ceil(raw):
    sign, man, exp, bc = raw
    return -_floor((1 - sign, man, exp, bc))


def _bounds(expr, prec):
    old = iv.prec
    iv.prec = prec
    try:
        value = expr(iv)
        return value._mpi_
    finally:
        iv.prec = old


def certified_floor(expr, prec=64):
    """``floor`` of ``expr(iv)``, widening precision until it is unambiguous.

    ``expr`` receives the mpmath interval context and must build the value
    from interval operations only.
    """
    while prec <= _MAX_PREC:
        lo, hi = _bounds(expr, prec)
        a, b = _floor(lo), _floor(hi)
        if a == b:
            return int(a)
        prec *= 2
    raise ArithmeticError("could not certify floor; value may be an integer")


def certified_ceil(expr, prec=64):
    while prec <= _MAX_PREC:
        lo, hi = _bounds(expr, prec)
        a, b = _ceil(lo), _ceil(hi)
        if a == b:
            return int(a)
        prec *= 2
    raise ArithmeticError("could not certify ceiling; value may be an integer")
