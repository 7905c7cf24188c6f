"""Structural predicates on morphisms and small word-combinatorics utilities."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import FrozenSet, Iterable, Union

from .core import Alphabet, Morphism, column_sums, mat_mul
from .errors import InputError, UnsupportedInputError


def _bool_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(any(x and y for x, y in zip(row, col)) for col in cols) for row in a)


def _bool_matrix(m: Morphism):
    return tuple(tuple(bool(x) for x in row) for row in m.matrix)


def _bool_pow(a, k):
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else _bool_mul(result, base)
        k >>= 1
        if k:
            base = _bool_mul(base, base)
    return result


def is_primitive(m: Morphism) -> bool:
    """True iff some power of ``m`` has every letter in every letter image.

    A nonnegative n×n matrix is primitive iff its power at the Wielandt
    exponent ``n**2 - 2n + 2`` is strictly positive.
    """
    n = m.alphabet.n
    p = _bool_pow(_bool_matrix(m), n * n - 2 * n + 2)
    return all(all(row) for row in p)


def _reach(m: Morphism):
    """reach[i][j]: letter j occurs in some m^k(letter i), k >= 0."""
    n = m.alphabet.n
    reach = [[i == j for j in range(n)] for i in range(n)]
    succ = [[m.alphabet.index[c] for c in set(img)] for img in m.images]
    for i in range(n):
        stack = [i]
        while stack:
            u = stack.pop()
            for v in succ[u]:
                if not reach[i][v]:
                    reach[i][v] = True
                    stack.append(v)
    return reach


def _growing_indices(m: Morphism) -> FrozenSet[int]:
    # m must be nonerasing. A letter y expands on a cycle when y occurs in
    # m^k(y) with |m^k(y)| >= 2 for some 1 <= k <= n; a letter grows iff it
    # reaches such a y.
    n = m.alphabet.n
    expanding = set()
    p = m.matrix
    for _ in range(n):
        sums = column_sums(p)
        for y in range(n):
            if p[y][y] and sums[y] >= 2:
                expanding.add(y)
        p = mat_mul(p, m.matrix)
    reach = _reach(m)
    return frozenset(i for i in range(n) if any(reach[i][y] for y in expanding))


def growing_letters(m: Morphism) -> FrozenSet[str]:
    if m.is_erasing:
        raise UnsupportedInputError("growth test needs a nonerasing morphism")
    return frozenset(m.alphabet.symbols[i] for i in _growing_indices(m))


def is_growing(m: Morphism) -> bool:
    """True iff ``|m^k(x)| -> oo`` for every letter ``x`` (nonerasing ``m`` only)."""
    return len(growing_letters(m)) == m.alphabet.n


def cyclic_letters(m: Morphism) -> FrozenSet[str]:
    return frozenset(s for s, img in zip(m.alphabet.symbols, m.images) if s in img)


def _mortal_letters(m: Morphism) -> FrozenSet[str]:
    mortal = set()
    changed = True
    while changed:
        changed = False
        for s, img in zip(m.alphabet.symbols, m.images):
            if s not in mortal and set(img) <= mortal:
                mortal.add(s)
                changed = True
    return frozenset(mortal)


def omega_exists(m: Morphism, x: str) -> bool:
    """True iff ``m^ω(x)`` is defined: ``x`` is a proper prefix of ``m(x)``
    and the iterates of ``x`` grow without bound."""
    img = m.image(x)
    if not img.startswith(x) or len(img) < 2:
        return False
    if not m.is_erasing:
        return x in growing_letters(m)
    # Mortal letters die out after at most n steps, so deleting them
    # leaves a nonerasing morphism with the same growth behaviour.
    mortal = _mortal_letters(m)
    keep = tuple(s for s in m.alphabet.symbols if s not in mortal)
    if x not in keep:
        return False
    sub = Alphabet(keep)
    strip = str.maketrans("", "", "".join(mortal))
    reduced = Morphism(sub, tuple(m.image(s).translate(strip) for s in keep))
    return x in growing_letters(reduced)


@dataclass(frozen=True)
class MorphismProfile:
    primitive: bool
    growing: bool
    cyclic_letters: FrozenSet[str]
    max_image_len: int


def profile(m: Morphism) -> MorphismProfile:
    growing = False if m.is_erasing else is_growing(m)
    return MorphismProfile(
        primitive=is_primitive(m),
        growing=growing,
        cyclic_letters=cyclic_letters(m),
        max_image_len=m.max_image_len,
    )


# -- words -------------------------------------------------------------------

def pref_q(w: Union[str, Iterable[str]], q: int) -> str:
    """Prefix of length ``q``; the whole word when it is shorter.

    ``w`` may be any iterable of symbols, e.g. a lazy stream of an
    infinite word.
    """
    if q < 0:
        raise InputError("prefix length must be nonnegative")
    if isinstance(w, str):
        return w[:q]
    return "".join(islice(w, q))


def factors_q(w: str, q: int) -> set:
    if q < 1:
        raise InputError("factor length must be positive")
    return {w[i:i + q] for i in range(len(w) - q + 1)}


def failure_function(w: str) -> list:
    """KMP table: ``fail[i]`` is the longest proper border of ``w[:i+1]``."""
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def period(w: str) -> int:
    """Smallest ``p`` with ``w[i + p] == w[i]`` wherever both are defined."""
    if not w:
        raise InputError("period of the empty word is undefined")
    return len(w) - failure_function(w)[-1]


def alph(w: str) -> FrozenSet[str]:
    return frozenset(w)
