import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import morphisms
from corpus import f3_sets, pref2_orbit, random_growing, random_primitive
from d0leq import (
    Alphabet,
    InputError,
    Morphism,
    UnsupportedInputError,
    cyclic_letters,
    factors_q,
    is_growing,
    is_primitive,
    omega_exists,
    period,
    pref_q,
    profile,
)
from d0leq.core import column_sums, matrix_pow
from d0leq.engine import LayeredWordSpec, iter_word

AB = Alphabet(("a", "b"))


def brute_period(w):
    return next(p for p in range(1, len(w) + 1)
                if all(w[i + p] == w[i] for i in range(len(w) - p)))


def test_is_primitive_examples(thue_morse, fib):
    assert is_primitive(thue_morse)
    assert not is_primitive(Morphism.identity(AB))
    assert is_primitive(fib)


def test_is_growing_examples(thue_morse):
    assert is_growing(thue_morse)
    assert not is_growing(Morphism.from_dict({"a": "a", "b": "ab"}))
    with pytest.raises(UnsupportedInputError):
        is_growing(Morphism.from_dict({"a": "ab", "b": ""}))


def test_growth_needs_a_cycle_not_just_a_long_image():
    # a -> bc has a long image but its iterates stay at length 2
    m = Morphism.from_dict({"a": "bc", "b": "b", "c": "c"})
    assert not is_growing(m)
    assert profile(m).growing is False


def test_cyclic_letters_examples(thue_morse, fib):
    assert cyclic_letters(thue_morse) == {"a", "b"}
    assert cyclic_letters(Morphism.from_dict({"a": "b", "b": "a"})) == set()
    assert cyclic_letters(fib) == {"a"}


def test_omega_exists_examples(thue_morse):
    assert omega_exists(thue_morse, "a")
    # b -> ba begins with b, so the fixed point from b exists as well
    assert omega_exists(thue_morse, "b")
    assert not omega_exists(Morphism.from_dict({"a": "ab", "b": "ab"}), "b")
    assert not omega_exists(Morphism.identity(AB), "a")


def test_omega_exists_with_erasing_letters():
    assert omega_exists(Morphism.from_dict({"a": "aab", "b": ""}), "a")
    # iterates of a are always "ab": b is erased every step
    assert not omega_exists(Morphism.from_dict({"a": "ab", "b": ""}), "a")
    assert omega_exists(Morphism.from_dict({"a": "ab", "b": "c", "c": "bb"}), "a")


def test_pref_q_examples(thue_morse):
    assert pref_q("abbab", 3) == "abb"
    assert pref_q("ab", 5) == "ab"
    word = iter_word(LayeredWordSpec.power(thue_morse, 10, "a"))
    stream = itertools.chain.from_iterable(word)
    assert pref_q(stream, 4) == "abba"
    with pytest.raises(InputError):
        pref_q("ab", -1)


def test_factors_q_examples():
    assert factors_q("abba", 2) == {"ab", "bb", "ba"}
    assert factors_q("ab", 3) == set()
    assert factors_q("aaa", 1) == {"a"}


def test_period_examples():
    assert period("aaaa") == 1
    assert period("abaab") == 3
    assert period("abc") == 3
    with pytest.raises(InputError):
        period("")


def test_brute_period_oracle_by_hand():
    assert brute_period("abaab") == 3
    assert brute_period("abab") == 2


@given(st.text(alphabet="abc", min_size=1, max_size=30))
def test_period_matches_definition(w):
    assert period(w) == brute_period(w)


def _primitive_by_iteration(m):
    """Look for a positive power among the first 3n^2 powers."""
    n = m.alphabet.n
    for k in range(1, 3 * n * n + 1):
        p = matrix_pow(m.matrix, k)
        if all(all(row) for row in p):
            return True
    return False


def _growing_by_lengths(m):
    n = m.alphabet.n
    a = column_sums(matrix_pow(m.matrix, 2 * n))
    b = column_sums(matrix_pow(m.matrix, 3 * n))
    return all(y > x for x, y in zip(a, b))


@given(morphisms(max_len=3))
def test_is_primitive_matches_iteration(m):
    assert is_primitive(m) == _primitive_by_iteration(m)


@given(morphisms(min_len=1, max_len=3))
def test_is_growing_matches_length_iteration(m):
    assert is_growing(m) == _growing_by_lengths(m)


@given(morphisms(n=2, min_len=1, max_len=3) | morphisms(n=3, min_len=1, max_len=3))
def test_primitive_implies_growing(m):
    if is_primitive(m):
        assert is_growing(m)
        assert profile(m).max_image_len == max(len(img) for img in m.images)


def check_power_coverage(m):
    n = m.alphabet.n
    x_lengths = column_sums(matrix_pow(m.matrix, n))
    assert min(x_lengths) >= m.max_image_len
    if cyclic_letters(m):
        p = matrix_pow(m.matrix, 2 * n - 2)
        for x in range(n):
            assert all(p[y][x] for y in range(n))


def test_powers_cover_alphabet_on_random_primitive_morphisms():
    rng = random.Random(7)
    for _ in range(60):
        check_power_coverage(random_primitive(rng, rng.choice((2, 3, 4)), max_len=4))


def check_prefix_stabilization(m, w):
    n = m.alphabet.n
    prefs = pref2_orbit(m, w, 10 * n)
    early = set(prefs[: 3 * n - 2 + 1])
    assert set(prefs[3 * n - 2 + 1:]) <= early
    sets = f3_sets(m, w, 10 * n * n)
    cut = 2 * n * n + 2 * n - 3
    early3 = set().union(*sets[: cut + 1])
    late3 = set().union(*sets[cut + 1:])
    assert late3 <= early3


def test_f3_helper_matches_materialized_words(thue_morse):
    m = Morphism.from_dict({"a": "abc", "b": "c", "c": "ba"})
    sets = f3_sets(m, "a", 8)
    u = "a"
    for i in range(9):
        assert sets[i] == factors_q(u, 3)
        u = m(u)


def test_prefixes_and_factors_stabilize_on_random_growing_morphisms():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.choice((2, 3))
        m = random_growing(rng, n)
        w = "".join(rng.choice(m.alphabet.symbols) for _ in range(rng.randint(0, 4)))
        check_prefix_stabilization(m, w)
