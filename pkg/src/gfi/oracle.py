"""Ground-truth counting and reproducible dataset generators.

The generators use ``random.Random`` (Mersenne Twister), which produces
identical sequences for a given seed on every platform, so generated
corpora and benchmark CSVs are reproducible.
"""

from __future__ import annotations

import random

import numpy as np

from gfi.errors import InvalidPatternError

ARTIFICIAL_ALPHABET = b"ACGT"
ARTIFICIAL_BASE_LENGTH = 5 * 2**10
ARTIFICIAL_COPIES = 100


def naive_count(text, pattern) -> int:
    """Occurrences of pattern in text by direct scan (overlaps included)."""
    if len(pattern) == 0:
        raise InvalidPatternError("empty pattern")
    t = np.asarray(text, dtype=np.int64)
    p = np.asarray(pattern, dtype=np.int64)
    m, n = len(p), len(t)
    if m > n:
        return 0
    hits = np.ones(n - m + 1, dtype=bool)
    for j in range(m):
        hits &= t[j : n - m + 1 + j] == p[j]
        if not hits.any():
            return 0
    return int(hits.sum())


def gen_random_text(sigma: int, n: int, seed: int) -> np.ndarray:
    """Uniform random codes 1..sigma; resampled until every code occurs.

    Requires n >= sigma so that full coverage is possible.
    """
    rng = random.Random(seed)
    while True:
        codes = np.array([rng.randint(1, sigma) for _ in range(n)], dtype=np.int64)
        if len(np.unique(codes)) == sigma:
            return codes


def gen_artificial(mutation_percent: float, seed: int) -> bytes:
    """A random DNA base string followed by 100 noisy copies.

    Each character of each copy is independently mutated with probability
    mutation_percent/100; a mutation is a coin flip between substitution
    (uniform over the three other characters) and deletion.
    """
    rng = random.Random(seed)
    base = bytes(rng.choice(ARTIFICIAL_ALPHABET) for _ in range(ARTIFICIAL_BASE_LENGTH))
    p = mutation_percent / 100.0
    parts = [base]
    for _ in range(ARTIFICIAL_COPIES):
        copy = bytearray()
        for ch in base:
            if rng.random() < p:
                if rng.random() < 0.5:
                    continue  # deletion
                others = [c for c in ARTIFICIAL_ALPHABET if c != ch]
                copy.append(rng.choice(others))
            else:
                copy.append(ch)
        parts.append(bytes(copy))
    return b"".join(parts)


def extract_patterns(text, length: int, samples: int, seed: int) -> list:
    """Substrings of the text drawn uniformly at random; all of them occur."""
    t = np.asarray(text)
    n = len(t)
    if length > n:
        raise ValueError("pattern length exceeds the text length")
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        i = rng.randint(0, n - length)
        out.append(t[i : i + length].copy())
    return out
