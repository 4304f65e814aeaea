import random

import numpy as np
import pytest

from conftest import to_codes
from gfi import grammar as gm
from gfi.errors import InvalidPatternError
from gfi.index import build_index
from gfi.lms import chunk_string
from gfi.oracle import naive_count
from gfi.query import (
    QueryTrace,
    count,
    count_codes,
    pattern_factors,
    plan_branches,
    trailing_run,
)


def test_count_examples(running_example_index):
    idx = running_example_index
    assert count(idx, b"cabaca") == 1
    assert count(idx, b"ca") == 2
    assert count(idx, b"zz") == 0
    assert count(idx, b"a") == 5


def test_count_rejects_empty(running_example_index):
    with pytest.raises(InvalidPatternError):
        count(running_example_index, b"")


def test_short_patterns_use_trie(running_example_index):
    idx = running_example_index
    assert count(idx, b"bc") == 2
    assert count(idx, b"aac") == 1
    assert count(idx, b"cc") == 0


def test_trailing_run():
    assert trailing_run(b"acc") == 2
    assert trailing_run(b"aaaa") == 4
    assert trailing_run(b"ab") == 1


def test_plan_structure_cabaca(running_example_index):
    g = running_example_index.grammar
    plan = plan_branches(to_codes(b"cabaca"), g)
    assert not plan.paired and not plan.dead
    assert plan.core_ids == (2,)  # the ab rule
    anchors = sorted(lb.anchor for lb in plan.last_branches)
    assert anchors == [bytes([1]), bytes([1, 3, 1])]  # run remainder a; whole factor aca
    by_anchor = {lb.anchor: lb.exact_ids for lb in plan.last_branches}
    assert by_anchor[bytes([1, 3, 1])] == ()
    assert by_anchor[bytes([1])] == (3,)  # the ac rule carries the stem
    assert len(plan.first_branches) == 1
    fb = plan.first_branches[0]
    assert fb.exact_ids == () and fb.suffix_query == bytes([3])


def test_plan_structure_trailing_run_transfer():
    g = gm.Grammar(lam=2, sigma=3, rhs=[bytes([1]), bytes([1, 3]), bytes([3]), bytes([3, 3])])
    plan = plan_branches(to_codes(b"bacc"), g)  # factors b | acc
    assert plan.core_ids == ()  # two factors leave no interior
    by_anchor = {lb.anchor: lb.exact_ids for lb in plan.last_branches}
    assert by_anchor[bytes([3])] == (2,)  # plain: exact ac, anchor on final chunk c
    assert by_anchor[bytes([3, 3])] == (1,)  # transfer: exact a, anchor on the run cc


def test_plan_suppresses_indistinguishable_transfer_branch():
    # stem length on the chunk grid: the transferred-run search would be
    # identical to the plain one, so only the plain branch is emitted
    g = gm.Grammar(lam=2, sigma=3, rhs=[bytes([1, 2]), bytes([2]), bytes([3, 3])])
    plan = plan_branches(to_codes(b"babcc"), g)  # factors b | abcc
    assert len(plan.last_branches) == 1
    assert plan.last_branches[0].anchor == bytes([3, 3])
    assert plan.last_branches[0].exact_ids == (1,)


def test_plan_dead_when_core_chunk_missing():
    idx = build_index(b"bacabacaacbcbc", 4)
    # the pattern's interior factor abc never occurs as a rule
    plan = plan_branches(to_codes(b"cabcaca"), idx.grammar)
    assert plan.dead
    assert count(idx, b"cabcaca") == 0


def test_count_single_factor_patterns():
    idx = build_index(b"cccccccccc", 2)
    assert count(idx, b"cccc") == 7
    assert count(idx, b"cc") == 9
    idx2 = build_index(b"abababab", 3)
    assert count(idx2, b"ababa") == 2


def chain_constraints(plan, grammar):
    """Expand a plan into explicit slot-constraint chains.

    Each chain is (suffix_query, slots) where slots are sets of allowed
    symbols left to right; the final slot comes from the anchor.
    """
    chains = []
    if plan.dead:
        return chains

    def anchor_set(anchor):
        lo, hi = grammar.prefix_range(anchor)
        return set(range(lo, hi + 1))

    if plan.paired:
        combos = zip(plan.last_branches, plan.first_branches)
    else:
        combos = (
            (lb, fb) for lb in plan.last_branches for fb in plan.first_branches
        )
    for lb, fb in combos:
        slots = [
            {sym}
            for sym in list(fb.exact_ids) + list(plan.core_ids) + list(lb.exact_ids)
        ]
        slots.append(anchor_set(lb.anchor))
        if fb.suffix_query is not None:
            slots.insert(0, set(grammar.suffix_symbols(fb.suffix_query)))
        chains.append((fb.suffix_query, slots))
    return chains


def simulate_positions(chain, grammar, level1):
    """Text positions (0-based) where the chain matches the symbol string."""
    suffix_query, slots = chain
    lengths = grammar.expansion_lengths()
    exp_start = np.zeros(len(level1) + 1, dtype=np.int64)
    np.cumsum(lengths[level1], out=exp_start[1:])
    out = []
    k = len(slots)
    seq = level1.tolist()
    for j in range(len(seq) - k + 1):
        if all(seq[j + d] in slots[d] for d in range(k)):
            start = int(exp_start[j])
            if suffix_query is not None:
                start += int(lengths[seq[j]]) - len(suffix_query)
            out.append(start)
    return out


def test_branches_partition_the_occurrences():
    """Each text occurrence is matched by exactly one branch chain."""
    rng = random.Random(18)
    checked = 0
    for _ in range(300):
        sigma = rng.choice([2, 3])
        n = rng.randint(4, 120)
        raw = bytes(rng.randint(97, 96 + sigma) for _ in range(n))
        lam = rng.randint(1, 4)
        text = to_codes(raw)
        g, level1 = gm.build(text, lam)
        m = rng.randint(lam, min(n, 24))
        if rng.random() < 0.7:
            i = rng.randint(0, n - m)
            pat = raw[i : i + m]
        else:
            pat = bytes(rng.randint(97, 96 + sigma) for _ in range(m))
        plan = plan_branches(to_codes(pat), g)
        positions = []
        for chain in chain_constraints(plan, g):
            positions.extend(simulate_positions(chain, g, level1))
        expect = [
            i for i in range(n - m + 1) if raw[i : i + m] == pat
        ]
        assert len(positions) == len(set(positions)), (raw, lam, pat)
        assert sorted(positions) == expect, (raw, lam, pat)
        checked += 1
    assert checked == 300


def test_core_step_count_formula():
    """A branch that walks the whole core does so in exactly one backward
    step per interior chunk."""
    rng = random.Random(19)
    seen = 0
    for _ in range(200):
        sigma = rng.choice([2, 3, 4])
        n = rng.randint(30, 400)
        raw = bytes(rng.randint(97, 96 + sigma) for _ in range(n))
        lam = rng.randint(1, 4)
        idx = build_index(raw, lam)
        m = rng.randint(max(lam, 12), min(n, 48))
        i = rng.randint(0, n - m)
        pat = raw[i : i + m]
        factors = pattern_factors(to_codes(pat))
        if len(factors) < 3:
            continue
        expect = sum(len(chunk_string(f, lam)) for f in factors[1:-1])
        trace = QueryTrace()
        got = count(idx, pat, trace)
        assert got >= 1
        completed = [s for s, done in trace.core_traversals if done]
        assert completed, (raw, lam, pat)
        assert all(s == expect for s in completed)
        seen += 1
    assert seen > 50


def test_oracle_equivalence_randomized():
    rng = random.Random(20)
    for _ in range(120):
        sigma = rng.choice([2, 3, 4, 16])
        n = rng.randint(2, 2000)
        raw = bytes(rng.randint(97, 96 + sigma) for _ in range(n))
        lam = rng.randint(1, 8)
        idx = build_index(raw, lam, with_baseline=True)
        text = to_codes(raw)
        for _ in range(20):
            m = rng.randint(1, 64)
            if rng.random() < 0.5 and n >= m:
                i = rng.randint(0, n - m)
                pat = raw[i : i + m]
            else:
                pat = bytes(rng.randint(97, 96 + sigma) for _ in range(m))
            want = naive_count(text, to_codes(pat))
            assert count(idx, pat) == want, (raw, lam, pat)
            assert idx.count_baseline(pat) == want


def test_count_codes_rejects_out_of_alphabet(running_example_index):
    assert count_codes(running_example_index, np.array([1, 9])) == 0
