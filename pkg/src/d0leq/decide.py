"""Decide ``g^ω(x) == h^ω(x)`` for primitive morphisms ``g`` and ``h``.

With ``n`` letters, put ``f1 = g^(2n-2) h^(2n-2)`` and
``f2 = h^(2n-2) g^(2n-2)``. The two infinite words coincide exactly when

* the length differences ``|f1 f1^k(y)| - |f2 f1^k(y)|`` stay bounded, and
* ``f1(W)`` and ``f2(W)`` are prefix-comparable for ``W = f1^A(n)(x)``,
  where ``A(n) = floor(9 n^3 sqrt(n ln n))``.

Neither ``W`` nor the letter images of ``f1``/``f2`` beyond the
materialization budget are ever built; see :mod:`d0leq.engine`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from ._interval import certified_floor
from .analysis import is_primitive, omega_exists
from .balance import BalanceInstance, bal_upper_bound, balance_report
from .core import DEFAULT_MATERIALIZATION_BUDGET, Morphism, MorphismTower, compose
from .engine import DEFAULT_OVERFLOW_CAP, ImageComparator, LayeredWordSpec, Outcome as _Cmp
from .errors import InputError, PreconditionError, ResourceLimitError
from .oracle import naive_equal_up_to


def a_of_n(n: int) -> int:
    """``floor(9 n^3 sqrt(n ln n))``, certified by interval arithmetic."""
    if n < 2:
        raise PreconditionError(f"alphabet must have at least 2 letters, has {n}")
    return certified_floor(lambda c: 9 * c.mpf(n) ** 3 * c.sqrt(n * c.log(n)))


@dataclass
class DecisionConfig:
    overflow_cap: int = DEFAULT_OVERFLOW_CAP
    a_multiplier: Fraction = Fraction(1)
    materialization_budget: int = DEFAULT_MATERIALIZATION_BUDGET
    locate_mismatch: bool = False
    locate_budget: int = 10**5
    unity_bound_multiplier: Fraction = Fraction(1)

    def __post_init__(self):
        self.a_multiplier = Fraction(str(self.a_multiplier))
        self.unity_bound_multiplier = Fraction(str(self.unity_bound_multiplier))
        if self.a_multiplier < 1:
            raise InputError("a_multiplier must be at least 1")
        if self.unity_bound_multiplier < 1:
            raise InputError("unity_bound_multiplier must be at least 1")
        if self.overflow_cap < 1 or self.materialization_budget < 1:
            raise InputError("overflow_cap and materialization_budget must be positive")


class Outcome(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"


class Reason(enum.Enum):
    BALANCE_INFINITE = "balance_infinite"
    PREFIX_MISMATCH = "prefix_mismatch"


@dataclass
class Verdict:
    outcome: Outcome
    reason: Optional[Reason] = None
    position: Optional[int] = None
    left: Optional[str] = None
    right: Optional[str] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.outcome is Outcome.EQUAL

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "reason": self.reason.value if self.reason else None,
            "position": None if self.position is None else str(self.position),
            "left": self.left,
            "right": self.right,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(
            outcome=Outcome(d["outcome"]),
            reason=Reason(d["reason"]) if d.get("reason") else None,
            position=None if d.get("position") is None else int(d["position"]),
            left=d.get("left"),
            right=d.get("right"),
            diagnostics=dict(d.get("diagnostics") or {}),
        )


def _same_alphabet(g: Morphism, h: Morphism):
    if g.alphabet != h.alphabet:
        raise InputError(
            f"g and h use different alphabets: {''.join(g.alphabet)} vs {''.join(h.alphabet)}"
        )


def build_f1_f2(g: Morphism, h: Morphism) -> Tuple[MorphismTower, MorphismTower]:
    _same_alphabet(g, h)
    n = g.alphabet.n
    if n < 2:
        raise PreconditionError(f"alphabet must have at least 2 letters, has {n}")
    k = 2 * n - 2
    return (
        MorphismTower((g,) * k + (h,) * k),
        MorphismTower((h,) * k + (g,) * k),
    )


def check_preconditions(g: Morphism, h: Morphism, x: str):
    """Raise :class:`PreconditionError` listing every failed requirement."""
    _same_alphabet(g, h)
    if x not in g.alphabet:
        raise InputError(f"letter {x!r} not in alphabet")
    failures = []
    if g.alphabet.n < 2:
        failures.append(f"alphabet must have at least 2 letters, has {g.alphabet.n}")
    for name, m in (("g", g), ("h", h)):
        if not is_primitive(m):
            failures.append(f"{name} is not primitive")
        if not omega_exists(m, x):
            failures.append(f"{name}^ω({x}) does not exist")
    if failures:
        raise PreconditionError("; ".join(failures), failures)


def swap_reduction(g: Morphism, h: Morphism, x: str) -> Tuple[Morphism, Morphism]:
    """The pair ``(g∘h, h∘g)``; their fixed points at ``x`` agree iff ``g``'s and ``h``'s do."""
    _same_alphabet(g, h)
    gh, hg = compose(g, h), compose(h, g)
    for name, m in (("gh", gh), ("hg", hg), ("g", g), ("h", h)):
        if not omega_exists(m, x):
            raise PreconditionError(f"({name})^ω({x}) does not exist")
    return gh, hg


def decide_equality(g: Morphism, h: Morphism, x: str,
                    cfg: Optional[DecisionConfig] = None) -> Verdict:
    cfg = cfg or DecisionConfig()
    check_preconditions(g, h, x)
    n = g.alphabet.n
    a = a_of_n(n)
    depth = math.ceil(a * cfg.a_multiplier)
    diag = {"n": n, "A(n)": a, "iterations": depth}
    if g == h:
        diag["shortcut"] = "g == h"
        return Verdict(Outcome.EQUAL, diagnostics=diag)

    f1, f2 = build_f1_f2(g, h)
    diag["f1_layers"] = len(f1)
    diag["f2_layers"] = len(f2)
    report = balance_report(BalanceInstance(f1, f2), cfg.unity_bound_multiplier)
    diag["p_bound"] = report.p_bound
    diag["balance_periods"] = {lb.letter: lb.period for lb in report.letters}
    if not report.finite:
        verdict = Verdict(Outcome.NOT_EQUAL, Reason.BALANCE_INFINITE, diagnostics=diag)
        if cfg.locate_mismatch:
            found = naive_equal_up_to(g, h, x, cfg.locate_budget)
            diag["located_within"] = found.examined
            if found.mismatch:
                verdict.position, verdict.left, verdict.right = found.position, found.left, found.right
        return verdict

    m_max = max(max(f1.length_row), max(f2.length_row))
    diag["max_image_len_f"] = str(m_max)
    diag["theoretical_overflow_cap"] = str(depth * m_max * bal_upper_bound(n, m_max))
    spec = LayeredWordSpec.of_tower(f1, depth, x)
    diag["word_layers"] = spec.depth
    cmp = ImageComparator(spec, f1, f2, cfg.overflow_cap, cfg.materialization_budget)
    diag["word_length_digits"] = len(str(cmp.exp.length(x, spec.depth)))
    result = cmp.run()
    diag["memo"] = {
        "entries": cmp.stats.entries,
        "hits": cmp.stats.hits,
        "nodes": cmp.stats.nodes,
        "leaves": cmp.stats.leaves,
    }
    if result.outcome is _Cmp.CAP_EXCEEDED:
        raise ResourceLimitError(
            f"overflow exceeded cap {cfg.overflow_cap} at position {result.position}; "
            "raise overflow_cap",
            result.position,
        )
    if result.outcome is _Cmp.MISMATCH:
        return Verdict(Outcome.NOT_EQUAL, Reason.PREFIX_MISMATCH, result.position,
                       result.left, result.right, diag)
    return Verdict(Outcome.EQUAL, diagnostics=diag)
