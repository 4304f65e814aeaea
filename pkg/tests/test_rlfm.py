import random

import numpy as np

from conftest import to_codes
from gfi.bwt import bwt_of
from gfi.rlfm import EMPTY_RANGE, BwtRange, RLFMIndex

LEVEL1_BWT = [5, 3, 3, 2, 4, 0, 5, 1]  # ECCBD$EA


def sorted_suffixes(s):
    t = list(s) + [0]
    return sorted(range(len(t)), key=lambda i: t[i:])


def test_run_counts():
    assert RLFMIndex.from_bwt(LEVEL1_BWT).run_count == 7  # ECCBD$EA
    table1 = to_codes(b"cccbbaa").tolist() + [0] + to_codes(b"ccbaaba").tolist()
    assert RLFMIndex.from_bwt(table1).run_count == 9
    assert RLFMIndex.from_bwt([1, 1, 1, 0]).run_count == 2


def test_rank_examples():
    fm = RLFMIndex.from_bwt(LEVEL1_BWT)
    assert fm.rank(3, 5) == 2
    assert fm.rank(3, 0) == 0
    assert fm.rank(99, 4) == 0
    table1 = to_codes(b"cccbbaa").tolist() + [0] + to_codes(b"ccbaaba").tolist()
    fm0 = RLFMIndex.from_bwt(table1)
    assert fm0.rank(3, 6) == 3


def test_backward_step_examples():
    fm = RLFMIndex.from_bwt(LEVEL1_BWT)
    step1 = fm.backward_step(BwtRange(2, 5), 3)
    assert (step1.lo, step1.hi) == (4, 5)
    step2 = fm.backward_step(step1, 2)
    assert (step2.lo, step2.hi) == (3, 3)
    assert fm.backward_step(EMPTY_RANGE, 3).empty


def test_count_symbols_in_range():
    fm = RLFMIndex.from_bwt(LEVEL1_BWT)
    assert fm.count_symbols_in_range(BwtRange(3, 3), [1, 3, 5]) == 1
    full = fm.full_range()
    assert fm.count_symbols_in_range(full, range(fm.alphabet_size)) == fm.total_length
    assert fm.count_symbols_in_range(full, []) == 0


def test_initial_range_level0():
    fm = RLFMIndex.from_bwt(bwt_of(to_codes(b"bacabacaacbcbc")))
    rng_a = fm.initial_range(1)
    assert (rng_a.lo, rng_a.hi) == (2, 6)
    rng_ca = fm.backward_step(rng_a, 3)
    assert (rng_ca.lo, rng_ca.hi) == (12, 13)
    assert fm.initial_range(9).empty


def test_invariants():
    fm = RLFMIndex.from_bwt(LEVEL1_BWT)
    assert int(fm.run_lengths.sum()) == fm.total_length == len(LEVEL1_BWT)
    assert np.all(np.diff(fm.C) >= 0)
    assert fm.C[-1] == fm.total_length
    for c in range(fm.alphabet_size):
        assert fm.rank(c, fm.total_length) == LEVEL1_BWT.count(c)


def test_rank_monotone_random():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 300)
        s = [rng.randint(1, 4) for _ in range(n)]
        fm = RLFMIndex.from_bwt(bwt_of(np.array(s)))
        for c in range(fm.alphabet_size):
            last = 0
            total = fm.rank(c, fm.total_length)
            for i in range(fm.total_length + 1):
                r = fm.rank(c, i)
                assert last <= r <= total
                last = r


def test_backward_step_matches_suffix_filter():
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(1, 500)
        sigma = rng.choice([2, 3, 4])
        s = [rng.randint(1, sigma) for _ in range(n)]
        fm = RLFMIndex.from_bwt(bwt_of(np.array(s)))
        t = s + [0]
        suffixes = sorted_suffixes(s)

        def range_of(w):
            rows = [k for k, i in enumerate(suffixes) if t[i : i + len(w)] == w]
            if not rows:
                return EMPTY_RANGE
            return BwtRange(rows[0] + 1, rows[-1] + 1)

        for _ in range(20):
            m = rng.randint(0, 6)
            w = [rng.randint(1, sigma) for _ in range(m)]
            base = range_of(w) if m else fm.full_range()
            for c in range(1, sigma + 1):
                stepped = fm.backward_step(base, c)
                expect = range_of([c] + w)
                if expect.empty:
                    assert stepped.empty
                else:
                    assert (stepped.lo, stepped.hi) == (expect.lo, expect.hi)


def test_baseline_count_matches_naive():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(1, 400)
        sigma = rng.choice([2, 3, 4])
        s = [rng.randint(1, sigma) for _ in range(n)]
        fm = RLFMIndex.from_bwt(bwt_of(np.array(s)))
        for _ in range(15):
            m = rng.randint(1, 10)
            if rng.random() < 0.5 and n >= m:
                i = rng.randint(0, n - m)
                p = s[i : i + m]
            else:
                p = [rng.randint(1, sigma) for _ in range(m)]
            naive = sum(
                1 for i in range(n - m + 1) if s[i : i + m] == p
            )
            assert fm.count_plain(p) == naive


def test_rank_instrumentation_counts_calls():
    fm = RLFMIndex.from_bwt(LEVEL1_BWT)
    fm.stats.reset()
    fm.count_plain([3, 1])  # CA as ids
    assert fm.stats.rank_calls == 4
    assert fm.stats.step_calls == 2
    fm.stats.reset()
    assert fm.stats.rank_calls == 0
