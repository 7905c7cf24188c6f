"""Finiteness of the balance ``sup_{x,k} ||g g^k(x)| - |h g^k(x)||``.

For a letter ``j`` the quantity is ``u_k = δ · M^k e_j`` with ``δ`` the
difference of the image-length rows of ``g`` and ``h`` and ``M`` the
incidence matrix of ``g``. Each ``u_k`` is an integer sequence obeying a
linear recurrence of order at most ``n``; it is bounded iff it is eventually
periodic iff its minimal annihilating polynomial is ``z^s Q(z)`` with ``Q``
dividing ``1 - z^p`` for some ``p``. The admissible ``p`` are bounded by
``exp(sqrt(6 n ln n))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import List, Optional, Tuple

from ._interval import certified_ceil, certified_floor
from .core import (
    Matrix,
    MorphismTower,
    TowerLike,
    Vector,
    as_tower,
    image_length_row,
    tower_matrix,
    vec_mat,
)
from .errors import InputError


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def split_z_power(self) -> Tuple[int, "IntPolynomial"]:
        """Return ``(s, Q)`` with ``self == z**s * Q`` and ``Q(0) != 0``."""
        s = 0
        while s < len(self.coeffs) and self.coeffs[s] == 0:
            s += 1
        return s, IntPolynomial(self.coeffs[s:])

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            mag = abs(c)
            body = f"{mag}" if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _divides(divisor: Tuple[int, ...], dividend: List[int]) -> bool:
    # Monic-up-to-sign divisor, so long division stays in the integers.
    rem = list(dividend)
    d = len(divisor) - 1
    lead = divisor[-1]
    for i in range(len(rem) - 1, d - 1, -1):
        if rem[i]:
            q = rem[i] * lead  # lead is +-1
            for k in range(d + 1):
                rem[i - d + k] -= q * divisor[k]
    return not any(rem[:d])


def _unit_ends(poly: IntPolynomial) -> Optional[Tuple[int, ...]]:
    """Primitive part of ``poly`` if its end coefficients are units, else None.

    A factor of ``1 - z^p`` in ``Z[z]`` (Gauss) has leading and constant
    coefficients ``+-1``; anything else cannot divide it.
    """
    content = reduce(gcd, poly.coeffs, 0)
    coeffs = tuple(c // content for c in poly.coeffs)
    if abs(coeffs[-1]) != 1 or abs(coeffs[0]) > 1:
        return None
    return coeffs


def divides_one_minus_zp(poly: IntPolynomial, p: int) -> bool:
    """Exact test of ``poly | 1 - z**p`` in ``Q[z]``."""
    if poly.is_zero:
        raise InputError("the zero polynomial divides nothing")
    if p < 1:
        raise InputError("p must be positive")
    coeffs = _unit_ends(poly)
    if coeffs is None or coeffs[0] == 0 or len(coeffs) - 1 > p:
        return False
    return _divides(coeffs, [1] + [0] * (p - 1) + [-1])


def unity_order_bound(n: int) -> int:
    """``floor(exp(sqrt(6 n ln n)))``, certified."""
    if n < 2:
        raise InputError("n must be at least 2")
    return certified_floor(lambda c: c.exp(c.sqrt(6 * n * c.log(n))))


def bal_upper_bound(n: int, m: int) -> int:
    """``ceil(m^(2n-1) exp(n^2 (1 + sqrt(6 n ln n))))``, certified."""
    if n < 2 or m < 1:
        raise InputError("need n >= 2 and m >= 1")
    big = m ** (2 * n - 1)
    return certified_ceil(
        lambda c: c.mpf(big) * c.exp(n * n * (1 + c.sqrt(6 * n * c.log(n))))
    )


@dataclass(frozen=True)
class BalanceInstance:
    first: MorphismTower
    second: MorphismTower

    def __post_init__(self):
        object.__setattr__(self, "first", as_tower(self.first))
        object.__setattr__(self, "second", as_tower(self.second))
        if self.first.alphabet != self.second.alphabet:
            raise InputError("balance instance towers use different alphabets")

    @property
    def n(self) -> int:
        return self.first.alphabet.n

    @cached_property
    def delta(self) -> Vector:
        a, b = image_length_row(self.first), image_length_row(self.second)
        return tuple(x - y for x, y in zip(a, b))

    @cached_property
    def M(self) -> Matrix:
        return tower_matrix(self.first)

    def rows(self, count: int) -> List[Vector]:
        """``δ M^k`` for ``k < count``."""
        out = []
        v = self.delta
        for _ in range(count):
            out.append(v)
            v = vec_mat(v, self.M)
        return out

    def sequence(self, letter: str, count: int) -> List[int]:
        j = self.first.alphabet.index[letter]
        return [v[j] for v in self.rows(count)]


def berlekamp_massey(seq) -> Tuple[List[Fraction], int]:
    """Shortest connection polynomial ``C`` (``C[0] == 1``) and its length."""
    s = [Fraction(x) for x in seq]
    c, b = [Fraction(1)], [Fraction(1)]
    length, shift, last = 0, 1, Fraction(1)
    for i in range(len(s)):
        d = s[i] + sum(c[j] * s[i - j] for j in range(1, min(length, len(c) - 1) + 1))
        if d == 0:
            shift += 1
            continue
        coef = d / last
        new = c + [Fraction(0)] * max(0, len(b) + shift - len(c))
        for k, bk in enumerate(b):
            new[k + shift] -= coef * bk
        if 2 * length <= i:
            b, last, length, shift = c, d, i + 1 - length, 1
        else:
            shift += 1
        c = new
    return c, length


def _to_int_poly(coeffs: List[Fraction]) -> IntPolynomial:
    den = reduce(lambda a, q: a * q.denominator // gcd(a, q.denominator), coeffs, 1)
    ints = [int(q * den) for q in coeffs]
    g = reduce(gcd, ints, 0) or 1
    ints = [x // g for x in ints]
    poly = IntPolynomial(tuple(ints))
    if not poly.is_zero and poly.coeffs[-1] < 0:
        poly = IntPolynomial(tuple(-x for x in poly.coeffs))
    return poly


def minimal_annihilator(inst: BalanceInstance, letter: str) -> IntPolynomial:
    """Least-degree polynomial annihilating ``k -> δ M^k e_letter``.

    The characteristic polynomial of ``M`` annihilates the sequence, so the
    minimal one has degree at most ``n`` and Berlekamp-Massey on ``2n + 2``
    terms recovers it exactly.
    """
    seq = inst.sequence(letter, 2 * inst.n + 2)
    conn, length = berlekamp_massey(seq)
    conn = conn + [Fraction(0)] * (length + 1 - len(conn))
    # Reverse the connection polynomial into the characteristic form.
    return _to_int_poly(list(reversed(conn[: length + 1])))


@dataclass
class LetterBalance:
    letter: str
    annihilator: IntPolynomial
    transient: int
    period: Optional[int]
    bounded: bool


@dataclass
class BalanceReport:
    letters: List[LetterBalance] = field(default_factory=list)
    p_bound: int = 0

    @property
    def finite(self) -> bool:
        return all(lb.bounded for lb in self.letters)


def _first_period(poly: IntPolynomial, bound: int, strip_transient: bool) -> Optional[int]:
    s, q = poly.split_z_power()
    coeffs = _unit_ends(poly)
    for p in range(1, bound + 1):
        if strip_transient:
            if divides_one_minus_zp(q, p):
                return p
        elif coeffs is not None and len(coeffs) <= s + p + 1:
            # z^s Q | z^s (1 - z^p)
            if _divides(coeffs, [0] * s + [1] + [0] * (p - 1) + [-1]):
                return p
    return None


def balance_report(inst: BalanceInstance, bound_multiplier=1, strip_transient=True) -> BalanceReport:
    bound = unity_order_bound(max(inst.n, 2))
    bound = int(bound * bound_multiplier)
    report = BalanceReport(p_bound=bound)
    for letter in inst.first.alphabet:
        poly = minimal_annihilator(inst, letter)
        s, q = poly.split_z_power()
        if q.degree == 0:
            report.letters.append(LetterBalance(letter, poly, s, 1, True))
            continue
        p = _first_period(poly, bound, strip_transient)
        report.letters.append(LetterBalance(letter, poly, s, p, p is not None))
    return report


def bal_finite(inst: BalanceInstance, bound_multiplier=1, strip_transient=True) -> bool:
    """True iff every ``δ M^k e_j`` is bounded in ``k``."""
    return balance_report(inst, bound_multiplier, strip_transient).finite


def balance_instance(first: TowerLike, second: TowerLike) -> BalanceInstance:
    return BalanceInstance(as_tower(first), as_tower(second))
