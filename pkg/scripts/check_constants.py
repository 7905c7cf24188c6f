"""Recompute the decision constants with stdlib Decimal at 80 digits.

Shares no code with d0leq (which uses mpmath interval arithmetic), so the
two routes cross-check each other. Prints one line per constant and exits
non-zero if any floor/ceiling sits too close to an integer to call.
"""

import sys
from decimal import Decimal, getcontext, ROUND_CEILING, ROUND_FLOOR

getcontext().prec = 80
GUARD = Decimal("1e-60")


def _int(value, rounding):
    r = value.to_integral_value(rounding=rounding)
    if abs(value - r) < GUARD:
        raise ArithmeticError(f"{value} too close to an integer")
    return int(r)


def a_of_n(n):
    n = Decimal(n)
    return _int(9 * n**3 * (n * n.ln()).sqrt(), ROUND_FLOOR)


def unity_order_bound(n):
    n = Decimal(n)
    return _int((6 * n * n.ln()).sqrt().exp(), ROUND_FLOOR)


def bal_upper_bound(n, m):
    nd = Decimal(n)
    value = Decimal(m) ** (2 * n - 1) * (nd * nd * (1 + (6 * nd * nd.ln()).sqrt())).exp()
    return _int(value, ROUND_CEILING)


def table(max_n=12):
    rows = {}
    for n in range(2, max_n + 1):
        rows[("a_of_n", n)] = a_of_n(n)
        rows[("unity_order_bound", n)] = unity_order_bound(n)
    for n, m in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 4)]:
        rows[("bal_upper_bound", n, m)] = bal_upper_bound(n, m)
    return rows


if __name__ == "__main__":
    try:
        for key, value in table().items():
            print(*key, value)
    except ArithmeticError as exc:
        print(exc, file=sys.stderr)
        sys.exit(1)
