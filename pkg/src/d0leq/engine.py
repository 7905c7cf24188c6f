"""Lazy expansion of layered words and the memoized comparability check.

A :class:`LayeredWordSpec` denotes ``L0(L1(...L_{N-1}(seed)))`` without ever
building it. Think of it as a tree: the seed sits at depth ``N``, and a
letter ``c`` at depth ``d`` has the letters of ``L_{d-1}(c)`` as children at
depth ``d - 1``. Depth-0 nodes are the letters of the word, left to right.

:func:`compare_images` walks that tree and feeds ``f1(c)`` and ``f2(c)`` for
every leaf ``c`` into a two-stream matcher. The matcher's only memory is the
unmatched surplus of the stream that is ahead (an :class:`OverflowState`).
The effect of a whole subtree on that state depends only on
``(letter, depth, state)``, so identical subtrees are evaluated once.
Positions are recovered from exact subtree lengths, never by counting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence, Tuple

from .core import (
    DEFAULT_MATERIALIZATION_BUDGET,
    Alphabet,
    Morphism,
    MorphismTower,
    TowerLike,
    as_tower,
    vec_mat,
)
from .errors import InputError

DEFAULT_OVERFLOW_CAP = 10**6
CHUNK = 1 << 12


@dataclass(frozen=True)
class LayeredWordSpec:
    layers: Tuple[Morphism, ...]
    seed: str

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if layers:
            alphabet = layers[0].alphabet
            if any(m.alphabet != alphabet for m in layers):
                raise InputError("spec layers are over different alphabets")
            if self.seed not in alphabet:
                raise InputError(f"seed {self.seed!r} not in alphabet")

    @classmethod
    def power(cls, m: Morphism, k: int, seed: str) -> "LayeredWordSpec":
        return cls((m,) * k, seed)

    @classmethod
    def of_tower(cls, tower: TowerLike, k: int, seed: str) -> "LayeredWordSpec":
        """The word ``tower^k(seed)``."""
        return cls(as_tower(tower).layers * k, seed)

    @property
    def depth(self) -> int:
        return len(self.layers)


class _Expansion:
    """Per-depth length rows and chunked expansion for one layered word."""

    def __init__(self, layers: Sequence[Morphism], alphabet: Alphabet):
        self.layers = tuple(layers)
        self.alphabet = alphabet
        ones = (1,) * alphabet.n
        # lengths[d][c] = |L0...L_{d-1}(c)|
        self.lengths = [ones]
        for layer in self.layers:
            self.lengths.append(vec_mat(self.lengths[-1], layer.matrix))
        self._small: Dict[Tuple[int, int], str] = {}

    def row_times(self, row):
        """``row · L0...L_{d-1}`` for every ``d``."""
        rows = [tuple(row)]
        for layer in self.layers:
            rows.append(vec_mat(rows[-1], layer.matrix))
        return rows

    def length(self, c: str, d: int) -> int:
        return self.lengths[d][self.alphabet.index[c]]

    def materialize(self, c: str, d: int) -> str:
        key = (self.alphabet.index[c], d)
        w = self._small.get(key)
        if w is None:
            w = c
            for i in range(d - 1, -1, -1):
                w = self.layers[i].apply_unchecked(w)
            if len(w) <= 4096:
                self._small[key] = w
        return w

    def chunks(self, c: str, d: int, chunk: Optional[int] = None) -> Iterator[str]:
        """The word of node ``(c, d)`` as a stream of pieces, depth first."""
        if chunk is None:
            chunk = CHUNK
        if self.length(c, d) <= chunk:
            yield self.materialize(c, d)
            return
        stack = [(self.layers[d - 1].image(c), 0, d - 1)]
        while stack:
            word, i, depth = stack[-1]
            if i == len(word):
                stack.pop()
                continue
            stack[-1] = (word, i + 1, depth)
            child = word[i]
            if self.length(child, depth) <= chunk:
                yield self.materialize(child, depth)
            else:
                stack.append((self.layers[depth - 1].image(child), 0, depth - 1))


def _alphabet_of(spec: LayeredWordSpec, fallback: Optional[Alphabet] = None) -> Alphabet:
    if spec.layers:
        return spec.layers[0].alphabet
    if fallback is not None:
        return fallback
    return Alphabet((spec.seed,))


def iter_word(spec: LayeredWordSpec) -> Iterator[str]:
    """Chunks of the spec's word, left to right."""
    exp = _Expansion(spec.layers, _alphabet_of(spec))
    return exp.chunks(spec.seed, spec.depth)


def stream_prefix(spec: LayeredWordSpec, length: int) -> str:
    """First ``min(length, |word|)`` letters, expanding only what is needed."""
    if length < 0:
        raise InputError("prefix length must be nonnegative")
    out, have = [], 0
    if length == 0:
        return ""
    for piece in iter_word(spec):
        out.append(piece)
        have += len(piece)
        if have >= length:
            break
    return "".join(out)[:length]


def spec_length(spec: LayeredWordSpec) -> int:
    exp = _Expansion(spec.layers, _alphabet_of(spec))
    return exp.length(spec.seed, spec.depth)


# -- comparability -------------------------------------------------------------

class Side(enum.Enum):
    EVEN = 0
    LEFT_AHEAD = 1
    RIGHT_AHEAD = 2


@dataclass(frozen=True)
class OverflowState:
    side: Side
    tail: str

    def __post_init__(self):
        if (self.side is Side.EVEN) != (not self.tail):
            raise ValueError("tail must be empty exactly when the streams are even")


EVEN = OverflowState(Side.EVEN, "")


class Outcome(enum.Enum):
    COMPARABLE = "comparable"
    MISMATCH = "mismatch"
    CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class Comparability:
    outcome: Outcome
    position: Optional[int] = None
    left: Optional[str] = None
    right: Optional[str] = None

    @property
    def comparable(self) -> bool:
        return self.outcome is Outcome.COMPARABLE


COMPARABLE = Comparability(Outcome.COMPARABLE)


def comparable_words(u: str, v: str) -> Comparability:
    """Comparable iff one word is a prefix of the other."""
    for i, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return Comparability(Outcome.MISMATCH, i, a, b)
    return COMPARABLE


def _first_difference(a: str, b: str) -> int:
    # a != b, equal lengths; bisect on slice equality (done in C)
    lo, hi = 0, len(a)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[lo:mid] == b[lo:mid]:
            lo = mid
        else:
            hi = mid
    return lo


# Internal results: ("ok", state) | ("mismatch", rel, left, right) | ("cap", rel)
# where rel counts matched positions from the node's entry point.


def _match(state: OverflowState, left: Iterator[str], right: Iterator[str], cap: int):
    """Feed two streams into the matcher starting from ``state``."""
    lbuf = state.tail if state.side is Side.LEFT_AHEAD else ""
    rbuf = state.tail if state.side is Side.RIGHT_AHEAD else ""
    matched = 0
    left_done = right_done = False
    while True:
        if not lbuf and not left_done:
            piece = next(left, None)
            if piece is None:
                left_done = True
            else:
                lbuf = piece
        if not rbuf and not right_done:
            piece = next(right, None)
            if piece is None:
                right_done = True
            else:
                rbuf = piece
        if lbuf and rbuf:
            m = min(len(lbuf), len(rbuf))
            a, b = lbuf[:m], rbuf[:m]
            if a != b:
                i = _first_difference(a, b)
                return ("mismatch", matched + i, a[i], b[i])
            lbuf, rbuf = lbuf[m:], rbuf[m:]
            matched += m
            continue
        if not lbuf and left_done:
            rest = [rbuf]
            size = len(rbuf)
            for piece in right:
                rest.append(piece)
                size += len(piece)
                if size > cap:
                    return ("cap", matched)
            rbuf = "".join(rest)
            break
        if not rbuf and right_done:
            rest = [lbuf]
            size = len(lbuf)
            for piece in left:
                rest.append(piece)
                size += len(piece)
                if size > cap:
                    return ("cap", matched)
            lbuf = "".join(rest)
            break
    if len(lbuf) > cap or len(rbuf) > cap:
        return ("cap", matched)
    if lbuf:
        return ("ok", OverflowState(Side.LEFT_AHEAD, lbuf))
    if rbuf:
        return ("ok", OverflowState(Side.RIGHT_AHEAD, rbuf))
    return ("ok", EVEN)


@dataclass
class MemoStats:
    entries: int = 0
    hits: int = 0
    nodes: int = 0
    leaves: int = 0


@dataclass
class _Frame:
    letter: str
    depth: int
    state_in: OverflowState
    children: str
    index: int = 0
    state: OverflowState = EVEN
    rel: int = 0


class ImageComparator:
    """Reusable comparison of ``f1(W)`` against ``f2(W)`` for layered ``W``."""

    def __init__(
        self,
        spec: LayeredWordSpec,
        f1: TowerLike,
        f2: TowerLike,
        cap: int = DEFAULT_OVERFLOW_CAP,
        budget: int = DEFAULT_MATERIALIZATION_BUDGET,
        memoize: bool = True,
    ):
        self.f1, self.f2 = as_tower(f1), as_tower(f2)
        alphabet = self.f1.alphabet
        if self.f2.alphabet != alphabet:
            raise InputError("f1 and f2 are over different alphabets")
        if spec.layers and spec.layers[0].alphabet != alphabet:
            raise InputError("spec and towers are over different alphabets")
        if spec.seed not in alphabet:
            raise InputError(f"seed {spec.seed!r} not in alphabet")
        if cap < 1:
            raise InputError("overflow cap must be positive")
        self.spec, self.cap, self.budget, self.memoize = spec, cap, budget, memoize
        self.alphabet = alphabet
        self.exp = _Expansion(spec.layers, alphabet)
        # |f_i(word of node (c, d))| for every depth d
        self.len1 = self.exp.row_times(self.f1.length_row)
        self.len2 = self.exp.row_times(self.f2.length_row)
        self.images1 = self._leaf_images(self.f1)
        self.images2 = self._leaf_images(self.f2)
        self.memo: Dict[tuple, tuple] = {}
        self.stats = MemoStats()

    def _leaf_images(self, tower: MorphismTower):
        if max(tower.length_row) <= self.budget:
            return tower.materialize(self.budget).as_dict()
        return None

    def _leaf_stream(self, tower, images, c):
        if images is not None:
            return iter((images[c],))
        return _Expansion(tower.layers, self.alphabet).chunks(c, len(tower.layers))

    def _leaf(self, c: str, state: OverflowState):
        self.stats.leaves += 1
        return _match(
            state,
            self._leaf_stream(self.f1, self.images1, c),
            self._leaf_stream(self.f2, self.images2, c),
            self.cap,
        )

    def _advance(self, c, d, state_in, state_out):
        """Matched positions gained by the subtree ``(c, d)``."""
        j = self.alphabet.index[c]
        before = len(state_in.tail) if state_in.side is Side.LEFT_AHEAD else 0
        after = len(state_out.tail) if state_out.side is Side.LEFT_AHEAD else 0
        return self.len1[d][j] + before - after

    def _lookup(self, key):
        if not self.memoize:
            return None
        res = self.memo.get(key)
        if res is not None:
            self.stats.hits += 1
        return res

    def _store(self, key, res):
        if self.memoize:
            self.memo[key] = res
            self.stats.entries = len(self.memo)

    def run(self) -> Comparability:
        seed, depth = self.spec.seed, self.spec.depth
        res = self._solve(seed, depth, EVEN)
        kind = res[0]
        if kind == "ok":
            return COMPARABLE
        if kind == "mismatch":
            return Comparability(Outcome.MISMATCH, res[1], res[2], res[3])
        return Comparability(Outcome.CAP_EXCEEDED, res[1])

    def _solve(self, c: str, d: int, state: OverflowState):
        key = (c, d, state)
        res = self._lookup(key)
        if res is not None:
            return res
        if d == 0:
            res = self._leaf(c, state)
            self._store(key, res)
            return res
        layers = self.spec.layers
        stack = [_Frame(c, d, state, layers[d - 1].image(c), state=state)]
        self.stats.nodes += 1
        result = None
        while stack:
            fr = stack[-1]
            if result is not None:
                if result[0] != "ok":
                    # shift the failure position to this frame's entry point
                    failed = (result[0], fr.rel + result[1]) + result[2:]
                    self._store((fr.letter, fr.depth, fr.state_in), failed)
                    stack.pop()
                    result = failed
                    continue
                child = fr.children[fr.index]
                new_state = result[1]
                fr.rel += self._advance(child, fr.depth - 1, fr.state, new_state)
                fr.state = new_state
                fr.index += 1
                result = None
            if fr.index == len(fr.children):
                done = ("ok", fr.state)
                self._store((fr.letter, fr.depth, fr.state_in), done)
                stack.pop()
                result = done
                continue
            child, cd = fr.children[fr.index], fr.depth - 1
            key = (child, cd, fr.state)
            hit = self._lookup(key)
            if hit is not None:
                result = hit
            elif cd == 0:
                result = self._leaf(child, fr.state)
                self._store(key, result)
            else:
                self.stats.nodes += 1
                stack.append(_Frame(child, cd, fr.state, layers[cd - 1].image(child), state=fr.state))
        return result


def compare_images(
    spec: LayeredWordSpec,
    f1: TowerLike,
    f2: TowerLike,
    cap: int = DEFAULT_OVERFLOW_CAP,
    budget: int = DEFAULT_MATERIALIZATION_BUDGET,
    memoize: bool = True,
) -> Comparability:
    """Decide whether ``f1(W)`` and ``f2(W)`` are prefix-comparable.

    ``W`` is the word denoted by ``spec``. A mismatch reports the exact
    0-based position of the first differing letter.
    """
    return ImageComparator(spec, f1, f2, cap, budget, memoize).run()
