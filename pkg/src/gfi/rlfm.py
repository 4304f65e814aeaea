"""Run-length FM machinery over an integer alphabet.

Rank is answered from the run decomposition of the BWT: a binary search
locates the run covering the queried position, per-symbol prefix sums give
the mass of earlier runs of the symbol, and the covering run contributes a
partial length.  The same structure serves the raw-text baseline index and
the rewritten-text index.

Every rank invocation bumps a resettable counter so query cost can be
measured in index operations rather than wall-clock time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BwtRange:
    """1-based inclusive interval of rows in sorted-suffix order."""

    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __len__(self) -> int:
        return 0 if self.empty else self.hi - self.lo + 1


EMPTY_RANGE = BwtRange(1, 0)


@dataclass
class RankStats:
    rank_calls: int = 0
    step_calls: int = 0

    def reset(self):
        self.rank_calls = 0
        self.step_calls = 0


class RLFMIndex:
    """FM index over a run-length compressed BWT.

    Queries are read-only after construction; the instrumentation counters
    are plain integers and only meaningful for single-threaded runs.
    """

    def __init__(self, run_heads, run_lengths):
        self.run_heads = np.asarray(run_heads, dtype=np.int64)
        self.run_lengths = np.asarray(run_lengths, dtype=np.int64)
        if np.any(self.run_heads[1:] == self.run_heads[:-1]):
            raise ValueError("adjacent runs must differ")
        self.total_length = int(self.run_lengths.sum())
        # 1-based start position of each run
        self.run_starts = np.empty(len(self.run_heads), dtype=np.int64)
        self.run_starts[0] = 1
        np.cumsum(self.run_lengths[:-1], out=self.run_starts[1:])
        self.run_starts[1:] += 1
        self.alphabet_size = int(self.run_heads.max()) + 1 if len(self.run_heads) else 1

        order = np.argsort(self.run_heads, kind="stable")
        heads_sorted = self.run_heads[order]
        boundaries = np.searchsorted(heads_sorted, np.arange(self.alphabet_size + 1))
        self.sym_runs: list[np.ndarray] = []
        self.sym_cum: list[np.ndarray] = []
        counts = np.zeros(self.alphabet_size, dtype=np.int64)
        for c in range(self.alphabet_size):
            runs_of_c = order[boundaries[c] : boundaries[c + 1]]
            runs_of_c.sort()
            self.sym_runs.append(runs_of_c)
            cum = np.cumsum(self.run_lengths[runs_of_c])
            self.sym_cum.append(cum)
            counts[c] = cum[-1] if len(cum) else 0
        self.C = np.zeros(self.alphabet_size + 1, dtype=np.int64)
        np.cumsum(counts, out=self.C[1:])
        self.stats = RankStats()

    @classmethod
    def from_bwt(cls, bwt) -> "RLFMIndex":
        bwt = np.asarray(bwt, dtype=np.int64)
        change = np.flatnonzero(bwt[1:] != bwt[:-1])
        starts = np.concatenate([[0], change + 1])
        ends = np.concatenate([change + 1, [len(bwt)]])
        return cls(run_heads=bwt[starts], run_lengths=ends - starts)

    @property
    def run_count(self) -> int:
        return len(self.run_heads)

    def symbol_count(self, c: int) -> int:
        if c < 0 or c >= self.alphabet_size:
            return 0
        return int(self.C[c + 1] - self.C[c])

    def rank(self, c: int, i: int) -> int:
        """Occurrences of c in BWT[1..i]; rank(c, 0) = 0."""
        self.stats.rank_calls += 1
        if i <= 0 or c < 0 or c >= self.alphabet_size:
            return 0
        i = min(i, self.total_length)
        k = int(np.searchsorted(self.run_starts, i, side="right")) - 1
        runs = self.sym_runs[c]
        idx = int(np.searchsorted(runs, k, side="left"))
        before = int(self.sym_cum[c][idx - 1]) if idx > 0 else 0
        if idx < len(runs) and runs[idx] == k:
            before += i - int(self.run_starts[k]) + 1
        return before

    def initial_range(self, c: int) -> BwtRange:
        """Rows whose suffix starts with c."""
        if c < 0 or c >= self.alphabet_size:
            return EMPTY_RANGE
        return BwtRange(int(self.C[c]) + 1, int(self.C[c + 1]))

    def id_interval_range(self, lo_id: int, hi_id: int) -> BwtRange:
        """Rows whose suffix starts with any symbol in the id interval."""
        if lo_id > hi_id:
            return EMPTY_RANGE
        lo_id = max(lo_id, 0)
        hi_id = min(hi_id, self.alphabet_size - 1)
        if lo_id > hi_id:
            return EMPTY_RANGE
        return BwtRange(int(self.C[lo_id]) + 1, int(self.C[hi_id + 1]))

    def backward_step(self, rng: BwtRange, c: int) -> BwtRange:
        """Extend the matched string one symbol to the left."""
        if rng.empty:
            return EMPTY_RANGE
        if c < 0 or c >= self.alphabet_size:
            return EMPTY_RANGE
        self.stats.step_calls += 1
        base = int(self.C[c])
        lo = base + self.rank(c, rng.lo - 1) + 1
        hi = base + self.rank(c, rng.hi)
        return BwtRange(lo, hi)

    def count_symbols_in_range(self, rng: BwtRange, symbols) -> int:
        """Total occurrences of the given symbols within the row range."""
        if rng.empty:
            return 0
        total = 0
        for c in symbols:
            hi = self.rank(c, rng.hi)
            lo = self.rank(c, rng.lo - 1)
            if hi > lo:
                total += hi - lo
        return total

    def full_range(self) -> BwtRange:
        return BwtRange(1, self.total_length)

    def count_plain(self, pattern) -> int:
        """Baseline count by one backward step per pattern symbol.

        Starting from the full row range makes the cost exactly two rank
        calls per symbol when the pattern occurs.
        """
        rng = self.full_range()
        for c in reversed(pattern.tolist() if isinstance(pattern, np.ndarray) else list(pattern)):
            rng = self.backward_step(rng, int(c))
            if rng.empty:
                return 0
        return len(rng)
