"""Brute-force reference implementations.

Everything here materializes words and compares letter by letter. These are
the checks the rest of the package is tested against, so they stay dumb.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .analysis import omega_exists
from .core import Morphism, TowerLike, as_tower, image_length_row, matrix_pow, tower_matrix, vec_mat
from .errors import InputError, PreconditionError, ResourceLimitError

ORACLE_BUDGET = 10**7


@dataclass(frozen=True)
class OracleReport:
    examined: int
    position: Optional[int] = None
    left: Optional[str] = None
    right: Optional[str] = None

    @property
    def mismatch(self) -> bool:
        return self.position is not None


def omega_prefix(g: Morphism, x: str, length: int, budget: int = ORACLE_BUDGET) -> str:
    """First ``length`` letters of ``g^ω(x)`` by plain iteration."""
    if not omega_exists(g, x):
        raise PreconditionError(f"g^ω({x}) does not exist for g = {g}")
    if length > budget:
        raise ResourceLimitError(f"oracle prefix of {length} letters exceeds budget {budget}")
    w = x
    while len(w) < length:
        w = g.apply_unchecked(w)
    return w[:length]


def naive_equal_up_to(g: Morphism, h: Morphism, x: str, length: int,
                      budget: int = ORACLE_BUDGET) -> OracleReport:
    u = omega_prefix(g, x, length, budget)
    v = omega_prefix(h, x, length, budget)
    if u == v:
        return OracleReport(length)
    for i in range(length):
        if u[i] != v[i]:
            return OracleReport(i + 1, i, u[i], v[i])
    return OracleReport(length)


def naive_bal(g: TowerLike, h: TowerLike, k_max: int) -> int:
    """``max ||g g^k(x)| - |h g^k(x)||`` over letters ``x`` and ``k <= k_max``."""
    if k_max < 0:
        raise InputError("k_max must be nonnegative")
    mg = tower_matrix(g)
    rg, rh = image_length_row(g), image_length_row(h)
    best = 0
    for k in range(k_max + 1):
        p = matrix_pow(mg, k)
        a, b = vec_mat(rg, p), vec_mat(rh, p)
        best = max(best, max(abs(x - y) for x, y in zip(a, b)))
    return best


def vector_cycle(g: TowerLike, h: TowerLike, k_cap: int) -> bool:
    """True iff the rows ``δ M^k`` repeat for some ``k < k_cap``.

    A bounded integer sequence of vectors must cycle; an unbounded one never
    does, so within a generous cap this tells finite balance from infinite.
    """
    mg = tower_matrix(g)
    v = tuple(x - y for x, y in zip(image_length_row(g), image_length_row(h)))
    seen = set()
    for _ in range(k_cap):
        if v in seen:
            return True
        seen.add(v)
        v = vec_mat(v, mg)
    return False


def naive_comp_member(g: TowerLike, h: TowerLike, w: str) -> bool:
    """Whether one of ``g(w)``, ``h(w)`` is a prefix of the other."""
    u = as_tower(g)(w, ORACLE_BUDGET)
    v = as_tower(h)(w, ORACLE_BUDGET)
    return u.startswith(v) or v.startswith(u)


def mixed_composition(seq: Sequence[int], g1: Morphism, g2: Morphism, x: str,
                      budget: int = ORACLE_BUDGET) -> str:
    """``g_{i_k}(...g_{i_1}(x)...)`` for ``seq = [i_1, ..., i_k]``."""
    w = x
    for i in seq:
        if i not in (1, 2):
            raise InputError(f"sequence entries must be 1 or 2, got {i}")
        w = (g1 if i == 1 else g2)(w)
        if len(w) > budget:
            raise ResourceLimitError(f"mixed composition exceeds budget {budget}")
    return w
