"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s`` to see the lines
as they are produced; they are also echoed into the ``-v`` log.
"""

import importlib.util
import itertools
import pathlib
import random
import time

import pytest

from corpus import (
    SYMBOLS,
    engine_cases,
    materialize,
    random_corpus,
    random_growing,
    random_morphism,
    random_primitive,
    random_tower,
)
from d0leq import (
    BalanceInstance,
    Morphism,
    MorphismTower,
    a_of_n,
    apply_tower,
    bal_finite,
    comparable_words,
    compare_images,
    decide_equality,
    naive_equal_up_to,
    period,
    unity_order_bound,
    vector_cycle,
)
from d0leq.decide import Reason
from test_analysis import brute_period, check_power_coverage, check_prefix_stabilization

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIB = Morphism.from_dict({"a": "ab", "b": "a"})
FIB2 = Morphism.from_dict({"a": "aba", "b": "ab"})
TM = Morphism.from_dict({"a": "ab", "b": "ba"})
TM_VARIANT = Morphism.from_dict({"a": "ab", "b": "aa"})


@pytest.fixture
def report(capsys):
    """Print one result line per criterion, then fail if it did not pass."""
    start = time.perf_counter()

    def done(number, ok, detail, limit):
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        line = (f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}  "
                f"[{elapsed:.2f}s, limit {limit}s]")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return done


def test_criterion_1_constants(report):
    path = ROOT / "scripts" / "check_constants.py"
    spec = importlib.util.spec_from_file_location("check_constants", path)
    script = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(script)
    a2, u2 = a_of_n(2), unity_order_bound(2)
    ok = (a2, u2) == (84, 17) and (script.a_of_n(2), script.unity_order_bound(2)) == (84, 17)
    report(1, ok, f"A(2) = {a2}, p-bound(2) = {u2}, script agrees", 1)


def test_criterion_2_known_equal(report):
    v = decide_equality(FIB, FIB2, "a")
    oracle = naive_equal_up_to(FIB, FIB2, "a", 10**6)
    ok = v.equal and not oracle.mismatch
    report(2, ok, f"verdict {v.outcome.value}, oracle clean to {oracle.examined}", 10)


def test_criterion_3_known_unequal(report):
    v = decide_equality(TM, TM_VARIANT, "a")
    oracle = naive_equal_up_to(TM, TM_VARIANT, "a", 100)
    ok = (not v.equal and v.position == 2 == oracle.position
          and (v.left, v.right) == (oracle.left, oracle.right))
    report(3, ok, f"mismatch at {v.position} ({v.left!r} vs {v.right!r}), oracle {oracle.position}", 10)


def test_criterion_4_corpus_agreement(report):
    length = 2 * 10**5
    corpus = random_corpus(seed=2024, count=500)
    counts = {"equal": 0, "mismatch": 0, "balance": 0}
    disagreements = []
    for g, h, x in corpus:
        v = decide_equality(g, h, x)
        oracle = naive_equal_up_to(g, h, x, length)
        if v.equal:
            counts["equal"] += 1
            if oracle.mismatch:
                disagreements.append((g, h, x, v, oracle))
        elif v.reason is Reason.PREFIX_MISMATCH:
            counts["mismatch"] += 1
            if v.position <= length and (oracle.position, oracle.left, oracle.right) != (v.position, v.left, v.right):
                disagreements.append((g, h, x, v, oracle))
        else:
            counts["balance"] += 1
    ok = len(corpus) >= 500 and not disagreements
    report(4, ok, f"{len(corpus)} pairs {counts}, {len(disagreements)} disagreements", 600)


def _same_matrix(rng, tower):
    """A tower whose layers are letter-shuffled copies of ``tower``'s."""
    layers = []
    for m in tower.layers:
        images = tuple("".join(rng.sample(img, len(img))) for img in m.images)
        layers.append(Morphism(m.alphabet, images))
    return MorphismTower(tuple(layers))


def test_criterion_5_balance(report):
    rng = random.Random(55)
    agree = finite = 0
    for i in range(200):
        n = rng.choice((2, 3))
        t1 = random_tower(rng, n)
        kind = i % 3
        if kind == 0:
            t2 = _same_matrix(rng, t1)
        elif kind == 1:
            t2 = MorphismTower(tuple(random_morphism(rng, n, max_len=3, min_len=0) for _ in range(2)))
        else:
            t2 = random_tower(rng, n)
        verdict = bal_finite(BalanceInstance(t1, t2))
        finite += verdict
        agree += verdict == vector_cycle(t1, t2, 400)
    fib_tower = bal_finite(BalanceInstance(MorphismTower.of(FIB), MorphismTower.of(FIB2)))
    identical = all(
        bal_finite(BalanceInstance(t, t))
        for t in (random_tower(rng, rng.choice((2, 3))) for _ in range(50))
    )
    ok = agree == 200 and 0 < finite < 200 and not fib_tower and identical
    report(5, ok, f"{agree}/200 agree ({finite} finite), fib vs fib^2 finite={fib_tower}, "
                  f"50 identical towers finite={identical}", 60)


def test_criterion_6_engine(report):
    cases = engine_cases(seed=66, count=200)
    agree = same_without_memo = 0
    outcomes = set()
    for spec, f1, f2 in cases:
        w = materialize(spec)
        expected = comparable_words(apply_tower(f1, w), apply_tower(f2, w))
        got = compare_images(spec, f1, f2)
        outcomes.add(got.outcome.value)
        agree += got == expected
        same_without_memo += compare_images(spec, f1, f2, memoize=False) == got
    ok = agree == same_without_memo == 200 and len(outcomes) == 2
    report(6, ok, f"{agree}/200 match materialized, {same_without_memo}/200 memo-off identical, "
                  f"outcomes {sorted(outcomes)}", 60)


def test_criterion_7_power_coverage(report):
    rng = random.Random(77)
    failures = 0
    for _ in range(200):
        m = random_primitive(rng, rng.choice((2, 3, 4)), max_len=4)
        try:
            check_power_coverage(m)
        except AssertionError:
            failures += 1
    report(7, failures == 0, f"200 primitive morphisms, {failures} violations", 60)


def test_criterion_8_prefix_stabilization(report):
    rng = random.Random(88)
    failures = 0
    for _ in range(100):
        n = rng.choice((2, 3))
        m = random_growing(rng, n)
        w = "".join(rng.choice(SYMBOLS[:n]) for _ in range(rng.randint(0, 4)))
        try:
            check_prefix_stabilization(m, w)
        except AssertionError:
            failures += 1
    report(8, failures == 0, f"100 growing morphisms, {failures} violations", 120)


def test_criterion_9_period(report):
    checked = mismatched = 0
    for length in range(1, 13):
        for letters in itertools.product("ab", repeat=length):
            w = "".join(letters)
            checked += 1
            mismatched += period(w) != brute_period(w)
    report(9, mismatched == 0, f"{checked} binary words, {mismatched} mismatches", 60)
