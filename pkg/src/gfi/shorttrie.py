"""Exact occurrence counts for every text substring shorter than the chunk size.

Patterns shorter than the chunk size can straddle chunk boundaries in the
text, so they bypass the dictionary search entirely and are answered from
this trie.  Nodes are stored as flat parallel arrays (parent, edge code,
count) with ids assigned level by level in lexicographic order, which
makes the serialized form deterministic.
"""

from __future__ import annotations

import numpy as np


class ShortPatternTrie:
    """Trie of depth lam-1 over the dense alphabet; node counts are exact."""

    def __init__(self, depth: int, parents, edges, counts):
        self.depth = depth
        self.parents = np.asarray(parents, dtype=np.int64)
        self.edges = np.asarray(edges, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)
        self.children: dict[tuple[int, int], int] = {}
        for node in range(len(self.parents)):
            self.children[(int(self.parents[node]), int(self.edges[node]))] = node + 1

    @classmethod
    def build(cls, text: np.ndarray, lam: int) -> "ShortPatternTrie":
        """Count all k-mers for k < lam with one vectorized pass per length."""
        text = np.asarray(text, dtype=np.int64)
        depth = lam - 1
        sigma = int(text.max()) if len(text) else 0
        base = sigma + 1
        parents: list[int] = []
        edges: list[int] = []
        counts: list[int] = []
        node_of: dict[bytes, int] = {b"": 0}
        vals = None
        for k in range(1, depth + 1):
            if k > len(text):
                break
            if vals is None:
                vals = text.copy()
            else:
                vals = vals[:-1] * base + text[k - 1 :]
            uniq, cnt = np.unique(vals, return_counts=True)
            kmers = []
            for v, c in zip(uniq.tolist(), cnt.tolist()):
                digits = []
                for _ in range(k):
                    digits.append(v % base)
                    v //= base
                kmers.append((bytes(digits[::-1]), c))
            kmers.sort()
            for s, c in kmers:
                node_of[s] = len(parents) + 1
                parents.append(node_of[s[:-1]])
                edges.append(s[-1])
                counts.append(c)
        return cls(depth=depth, parents=parents, edges=edges, counts=counts)

    @property
    def node_count(self) -> int:
        """Number of stored nodes, the root excluded."""
        return len(self.parents)

    def count(self, pattern) -> int:
        """Occurrences of the pattern, 0 when the walk falls off the trie."""
        node = 0
        for c in pattern:
            nxt = self.children.get((node, int(c)))
            if nxt is None:
                return 0
            node = nxt
        if node == 0:
            return 0
        return int(self.counts[node - 1])
