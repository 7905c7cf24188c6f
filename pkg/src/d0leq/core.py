"""Alphabets, words, morphisms, composition towers and incidence matrices.

Words are plain ``str`` objects whose characters are the alphabet's symbols.
Composition follows function composition throughout: the tower ``[g, h]``
denotes ``w -> g(h(w))``, i.e. the *last* layer is applied first.

All counts are Python integers, so lengths such as ``|f^k(x)|`` stay exact
however large they get.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import InputError, ResourceLimitError

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]

DEFAULT_MATERIALIZATION_BUDGET = 10**6


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise InputError("alphabet must contain at least one symbol")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise InputError(f"symbol {s!r} is not a single character")
        if len(set(symbols)) != len(symbols):
            raise InputError(f"alphabet has repeated symbols: {''.join(symbols)!r}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.symbols)}

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.index

    def check_word(self, w: str, what: str = "word") -> str:
        bad = set(w).difference(self.index)
        if bad:
            raise InputError(
                f"{what} {w[:40]!r} uses symbols outside the alphabet: "
                + ", ".join(sorted(bad))
            )
        return w

    def parikh(self, w: str) -> Vector:
        """Letter-count vector of ``w`` in alphabet order."""
        return tuple(w.count(s) for s in self.symbols)


@dataclass(frozen=True)
class Morphism:
    """A letter-to-word map over one alphabet, extended to words."""

    alphabet: Alphabet
    images: Tuple[str, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.alphabet.n:
            raise InputError(
                f"morphism needs {self.alphabet.n} images, got {len(images)}"
            )
        for s, img in zip(self.alphabet.symbols, images):
            self.alphabet.check_word(img, f"image of {s!r}")

    @classmethod
    def from_dict(cls, rules: Mapping[str, str], alphabet=None) -> "Morphism":
        if alphabet is None:
            alphabet = Alphabet(tuple(rules))
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        missing = [s for s in alphabet if s not in rules]
        if missing:
            raise InputError(f"no image given for {', '.join(missing)}")
        extra = [s for s in rules if s not in alphabet]
        if extra:
            raise InputError(f"rule for undeclared symbol {', '.join(extra)}")
        return cls(alphabet, tuple(rules[s] for s in alphabet))

    @classmethod
    def parse(cls, text: str, alphabet=None) -> "Morphism":
        """Parse ``a -> ab`` rule lines; ``#`` starts a comment."""
        rules = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise InputError("expected 'x -> image'", f"line {lineno}")
            lhs, rhs = (part.strip() for part in line.split("->", 1))
            if len(lhs) != 1:
                raise InputError(f"left-hand side {lhs!r} is not one symbol", f"line {lineno}")
            if lhs in rules:
                raise InputError(f"duplicate rule for {lhs!r}", f"line {lineno}")
            rules[lhs] = rhs.replace(" ", "")
        if not rules:
            raise InputError("no rules found")
        if alphabet is None:
            alphabet = Alphabet(tuple(rules))
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        for sym, img in rules.items():
            bad = sorted(set(img).difference(alphabet.symbols))
            if bad:
                raise InputError(f"image of {sym!r} uses unknown symbol {', '.join(bad)}")
        return cls.from_dict(rules, alphabet)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Morphism":
        return cls(alphabet, alphabet.symbols)

    def image(self, letter: str) -> str:
        try:
            return self.images[self.alphabet.index[letter]]
        except KeyError:
            raise InputError(f"letter {letter!r} not in alphabet") from None

    def as_dict(self) -> dict:
        return dict(zip(self.alphabet.symbols, self.images))

    @cached_property
    def _table(self) -> dict:
        return {ord(s): img for s, img in zip(self.alphabet.symbols, self.images)}

    def apply_unchecked(self, w: str) -> str:
        return w.translate(self._table)

    def __call__(self, w: str) -> str:
        return apply(self, w)

    @property
    def max_image_len(self) -> int:
        return max(len(img) for img in self.images)

    @property
    def is_erasing(self) -> bool:
        return any(not img for img in self.images)

    @cached_property
    def matrix(self) -> Matrix:
        return incidence_matrix(self)

    def __str__(self):
        return ", ".join(f"{s}->{img}" for s, img in zip(self.alphabet.symbols, self.images))


def apply(m: Morphism, w: str) -> str:
    """Image of the word ``w`` under ``m``."""
    m.alphabet.check_word(w)
    return m.apply_unchecked(w)


def compose(*morphisms: Morphism) -> Morphism:
    """Materialize ``m1 ∘ m2 ∘ ... ∘ mk`` (rightmost applied first)."""
    if not morphisms:
        raise InputError("compose needs at least one morphism")
    alphabet = morphisms[0].alphabet
    for m in morphisms:
        if m.alphabet != alphabet:
            raise InputError("morphisms are over different alphabets")
    images = list(alphabet.symbols)
    for m in reversed(morphisms):
        images = [m.apply_unchecked(w) for w in images]
    return Morphism(alphabet, tuple(images))


def power(m: Morphism, k: int) -> Morphism:
    if k < 0:
        raise InputError("negative power")
    result = Morphism.identity(m.alphabet)
    for _ in range(k):
        result = compose(m, result)
    return result


def iterate(m: Morphism, w: str, k: int) -> str:
    m.alphabet.check_word(w)
    for _ in range(k):
        w = m.apply_unchecked(w)
    return w


# -- matrices ---------------------------------------------------------------

def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_mat(v: Sequence[int], a: Matrix) -> Vector:
    return tuple(sum(x * y for x, y in zip(v, col)) for col in zip(*a))


def matrix_pow(m: Matrix, k: int) -> Matrix:
    """Exact ``m**k`` by repeated squaring; ``k == 0`` gives the identity."""
    if k < 0:
        raise InputError("negative matrix power")
    result = identity_matrix(len(m))
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def column_sums(m: Matrix) -> Vector:
    return tuple(sum(col) for col in zip(*m))


def incidence_matrix(m: Morphism) -> Matrix:
    """Entry ``(a, b)`` counts occurrences of letter ``a`` in ``m(b)``."""
    counts = [m.alphabet.parikh(img) for img in m.images]
    return tuple(zip(*counts)) if counts else ()


# -- towers -----------------------------------------------------------------

@dataclass(frozen=True)
class MorphismTower:
    """An unevaluated composition ``layers[0] ∘ layers[1] ∘ ... ∘ layers[-1]``."""

    layers: Tuple[Morphism, ...]

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if not layers:
            raise InputError("a tower needs at least one layer")
        alphabet = layers[0].alphabet
        if any(m.alphabet != alphabet for m in layers):
            raise InputError("tower layers are over different alphabets")

    @classmethod
    def of(cls, *layers: Morphism) -> "MorphismTower":
        return cls(tuple(layers))

    @classmethod
    def repeat(cls, m: Morphism, k: int) -> "MorphismTower":
        if k <= 0:
            return cls((Morphism.identity(m.alphabet),))
        return cls((m,) * k)

    @property
    def alphabet(self) -> Alphabet:
        return self.layers[0].alphabet

    def __add__(self, other: "MorphismTower") -> "MorphismTower":
        return MorphismTower(self.layers + other.layers)

    def __len__(self):
        return len(self.layers)

    @cached_property
    def matrix(self) -> Matrix:
        return tower_matrix(self)

    @cached_property
    def length_row(self) -> Vector:
        return column_sums(self.matrix)

    def __call__(self, w: str, budget: int = DEFAULT_MATERIALIZATION_BUDGET) -> str:
        return apply_tower(self, w, budget)

    def materialize(self, budget: int = DEFAULT_MATERIALIZATION_BUDGET) -> Morphism:
        if max(self.length_row) > budget:
            raise ResourceLimitError(
                f"tower images reach {max(self.length_row)} symbols, budget {budget}"
            )
        return compose(*self.layers)


TowerLike = Union[Morphism, MorphismTower]


def as_tower(t: TowerLike) -> MorphismTower:
    if isinstance(t, MorphismTower):
        return t
    return MorphismTower((t,))


def apply_tower(t: TowerLike, w: str, budget: int = DEFAULT_MATERIALIZATION_BUDGET) -> str:
    """Apply the tower's layers right to left, refusing to exceed ``budget``."""
    t = as_tower(t)
    t.alphabet.check_word(w)
    v = t.alphabet.parikh(w)
    for layer in reversed(t.layers):
        v = mat_vec(layer.matrix, v)
        if sum(v) > budget:
            raise ResourceLimitError(
                f"materializing tower image needs {sum(v)} symbols, budget {budget}"
            )
    for layer in reversed(t.layers):
        w = layer.apply_unchecked(w)
    return w


def tower_matrix(t: TowerLike) -> Matrix:
    """Ordered product of the layer matrices, leftmost layer leftmost."""
    t = as_tower(t)
    result = t.layers[0].matrix
    for layer in t.layers[1:]:
        result = mat_mul(result, layer.matrix)
    return result


def image_length_row(t: TowerLike) -> Vector:
    """``|t(b)|`` for each letter ``b``, i.e. the column sums of the tower matrix."""
    return column_sums(tower_matrix(t))


def letters(words: Iterable[str]) -> frozenset:
    return frozenset().union(*map(set, words))
