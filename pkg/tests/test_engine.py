import pytest
from hypothesis import given, strategies as st

from conftest import morphisms
from corpus import engine_cases, materialize
from d0leq import (
    InputError,
    LayeredWordSpec,
    Morphism,
    MorphismTower,
    OverflowState,
    apply_tower,
    comparable_words,
    compare_images,
    omega_exists,
    spec_length,
    stream_prefix,
)
from d0leq.engine import EVEN, Outcome, Side, iter_word
import d0leq.engine as engine


def test_stream_prefix_examples(thue_morse, fib):
    assert stream_prefix(LayeredWordSpec.power(thue_morse, 6, "a"), 8) == "abbabaab"
    assert stream_prefix(LayeredWordSpec.power(thue_morse, 6, "a"), 0) == ""
    assert stream_prefix(LayeredWordSpec.power(fib, 5, "a"), 13) == "abaababaabaab"
    # asking past the end returns the whole word
    assert stream_prefix(LayeredWordSpec.power(fib, 5, "a"), 100) == "abaababaabaab"
    with pytest.raises(InputError):
        stream_prefix(LayeredWordSpec.power(fib, 5, "a"), -1)


def test_spec_length_examples(thue_morse, fib):
    assert spec_length(LayeredWordSpec.power(thue_morse, 6, "a")) == 64
    assert spec_length(LayeredWordSpec((), "a")) == 1
    assert spec_length(LayeredWordSpec.power(fib, 5, "a")) == 13


def test_spec_length_is_exact_for_huge_words(thue_morse):
    assert spec_length(LayeredWordSpec.power(thue_morse, 500, "a")) == 2**500


def test_stream_prefix_of_huge_word_is_cheap(thue_morse):
    spec = LayeredWordSpec.power(thue_morse, 10_000, "a")
    assert stream_prefix(spec, 16) == "abbabaabbaababba"


def test_compare_images_examples(thue_morse, tm_variant):
    spec = LayeredWordSpec((), "a")
    assert compare_images(spec, thue_morse, thue_morse).comparable
    assert compare_images(spec, thue_morse, tm_variant).comparable
    res = compare_images(LayeredWordSpec((thue_morse,), "a"), thue_morse, tm_variant)
    assert res.outcome is Outcome.MISMATCH
    assert (res.position, res.left, res.right) == (2, "b", "a")


def test_identical_towers_are_comparable(fib):
    spec = LayeredWordSpec.power(fib, 200, "a")
    t = MorphismTower.of(fib, fib)
    assert compare_images(spec, t, t).comparable


def test_comparable_words_examples():
    assert comparable_words("ab", "abba").comparable
    res = comparable_words("abb", "aba")
    assert (res.outcome, res.position) == (Outcome.MISMATCH, 2)
    assert comparable_words("", "abc").comparable


def test_overflow_state_invariant():
    assert EVEN.side is Side.EVEN
    with pytest.raises(ValueError):
        OverflowState(Side.EVEN, "a")
    with pytest.raises(ValueError):
        OverflowState(Side.LEFT_AHEAD, "")


def test_cap_exceeded(thue_morse):
    tm = thue_morse
    big = Morphism.from_dict({"a": "abbabaab", "b": "baababba"})
    res = compare_images(LayeredWordSpec.power(tm, 8, "a"), big, tm, cap=10)
    assert res.outcome is Outcome.CAP_EXCEEDED
    assert compare_images(LayeredWordSpec.power(tm, 8, "a"), big, tm, cap=10**6).comparable


def test_mismatch_position_deep_inside_a_huge_word():
    # W = a^(2^300 - 1) b; f1 and f2 agree on a and differ in the b-image
    f1 = Morphism.from_dict({"a": "ab", "b": "ba"})
    f2 = Morphism.from_dict({"a": "ab", "b": "bb"})
    spec = LayeredWordSpec.power(Morphism.from_dict({"a": "aa", "b": "ab"}), 300, "b")
    res = compare_images(spec, f1, f2)
    assert res.outcome is Outcome.MISMATCH
    assert res.position == 2 * (2**300 - 1) + 1
    assert (res.left, res.right) == ("a", "b")


def check_engine_case(spec, f1, f2):
    w = materialize(spec)
    expected = comparable_words(apply_tower(f1, w), apply_tower(f2, w))
    got = compare_images(spec, f1, f2)
    assert got == expected
    assert compare_images(spec, f1, f2, memoize=False) == got
    return got


def test_engine_matches_materialized_oracle():
    outcomes = set()
    for spec, f1, f2 in engine_cases(5, 120):
        outcomes.add(check_engine_case(spec, f1, f2).outcome)
    assert outcomes == {Outcome.COMPARABLE, Outcome.MISMATCH}


def test_engine_streams_leaf_images_when_over_budget(monkeypatch):
    monkeypatch.setattr(engine, "CHUNK", 3)
    for spec, f1, f2 in engine_cases(9, 60):
        w = materialize(spec)
        expected = comparable_words(apply_tower(f1, w), apply_tower(f2, w))
        assert compare_images(spec, f1, f2, budget=1) == expected


@given(morphisms(min_len=0, max_len=3), st.integers(0, 6), st.integers(0, 80), st.integers(0, 80))
def test_stream_prefix_is_prefix_monotone(m, k, a, b):
    spec = LayeredWordSpec.power(m, k, m.alphabet.symbols[0])
    lo, hi = sorted((a, b))
    full = materialize(spec)
    assert stream_prefix(spec, hi) == full[:hi]
    assert full[:hi].startswith(stream_prefix(spec, lo))


@given(morphisms(min_len=1, max_len=3), st.integers(0, 6), st.integers(1, 60))
def test_small_chunks_stream_the_same_word(m, k, chunk):
    spec = LayeredWordSpec.power(m, k, m.alphabet.symbols[0])
    exp = engine._Expansion(spec.layers, m.alphabet)
    assert "".join(exp.chunks(spec.seed, spec.depth, chunk)) == materialize(spec)


@given(morphisms(n=2, min_len=1, max_len=3) | morphisms(n=3, min_len=1, max_len=3), st.integers(0, 5))
def test_fixed_point_prefix_law(m, k):
    x = m.alphabet.symbols[0]
    if not omega_exists(m, x):
        return
    shorter = stream_prefix(LayeredWordSpec.power(m, k, x), 500)
    longer = stream_prefix(LayeredWordSpec.power(m, k + 1, x), 500)
    assert longer.startswith(shorter)


def test_iter_word_concatenates_to_the_word(fib):
    spec = LayeredWordSpec.power(fib, 12, "a")
    assert "".join(iter_word(spec)) == materialize(spec)
