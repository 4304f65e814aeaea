"""Index assembly and the on-disk format.

The serialized file stores only primary data: the alphabet map, the rule
strings in lexicographic order, the run-length compressed BWT of the
rewritten text, the short-pattern trie nodes, and optionally the baseline
BWT runs.  Rank structures, the sparse bit dictionaries and the colex
permutation are rebuilt on load, so serialize -> load -> serialize is
byte-identical.

All multi-byte integers are little-endian; counts are unsigned 32-bit.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np

from gfi import bwt as bwt_mod
from gfi import grammar as grammar_mod
from gfi.alphabet import DenseAlphabet, densify
from gfi.errors import InvalidParameterError
from gfi.rlfm import RLFMIndex
from gfi.shorttrie import ShortPatternTrie

MAGIC = b"GFI1"
VERSION = 1


@dataclass
class TextIndex:
    """Everything needed to answer count queries, plus build statistics."""

    alphabet: DenseAlphabet
    lam: int
    grammar: grammar_mod.Grammar
    rlfm1: RLFMIndex
    trie: ShortPatternTrie
    rlfm0: RLFMIndex | None = None

    @property
    def n(self) -> int:
        """Text length, recovered from symbol frequencies and rule lengths."""
        lengths = self.grammar.expansion_lengths()
        total = 0
        for sym in range(1, self.rlfm1.alphabet_size):
            total += self.rlfm1.symbol_count(sym) * int(lengths[sym])
        return total

    def count(self, pattern: bytes, trace=None) -> int:
        from gfi import query

        return query.count(self, pattern, trace)

    def count_baseline(self, pattern: bytes) -> int:
        """Count on the raw-text baseline index (requires --baseline at build)."""
        if self.rlfm0 is None:
            raise ValueError("index was built without the baseline section")
        codes = self.alphabet.encode(pattern)
        if codes is None:
            return 0
        return self.rlfm0.count_plain(codes)


def build_index(data: bytes, lam: int, with_baseline: bool = False) -> TextIndex:
    """Build the full index for a raw byte string."""
    if lam < 1:
        raise InvalidParameterError("chunk size must be at least 1")
    text, alphabet = densify(bytes(data))
    gram, level1 = grammar_mod.build(text.symbols, lam)
    rlfm1 = RLFMIndex.from_bwt(bwt_mod.bwt_of(level1))
    trie = ShortPatternTrie.build(text.symbols, lam)
    rlfm0 = None
    if with_baseline:
        rlfm0 = RLFMIndex.from_bwt(bwt_mod.bwt_of(text.symbols))
    return TextIndex(
        alphabet=alphabet, lam=lam, grammar=gram, rlfm1=rlfm1, trie=trie, rlfm0=rlfm0
    )


def _write_runs(out: io.BytesIO, fm: RLFMIndex):
    out.write(struct.pack("<I", fm.run_count))
    pairs = np.empty(fm.run_count * 2, dtype="<u4")
    pairs[0::2] = fm.run_heads
    pairs[1::2] = fm.run_lengths
    out.write(pairs.tobytes())


def _read_runs(buf: io.BytesIO) -> RLFMIndex:
    (count,) = struct.unpack("<I", buf.read(4))
    pairs = np.frombuffer(buf.read(count * 8), dtype="<u4").astype(np.int64)
    return RLFMIndex(run_heads=pairs[0::2], run_lengths=pairs[1::2])


def save_index(index: TextIndex) -> bytes:
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<BB", VERSION, index.lam))

    out.write(struct.pack("<I", index.alphabet.size))
    out.write(index.alphabet.code_to_byte)

    out.write(struct.pack("<I", index.grammar.size))
    for s in index.grammar.rhs:
        out.write(struct.pack("<I", len(s)))
        out.write(s)

    _write_runs(out, index.rlfm1)

    trie = index.trie
    out.write(struct.pack("<I", trie.node_count))
    rows = np.empty(trie.node_count * 3, dtype="<u4")
    rows[0::3] = trie.parents
    rows[1::3] = trie.edges
    rows[2::3] = trie.counts
    out.write(rows.tobytes())

    if index.rlfm0 is not None:
        out.write(struct.pack("<B", 1))
        _write_runs(out, index.rlfm0)
    else:
        out.write(struct.pack("<B", 0))
    return out.getvalue()


def load_index(data: bytes) -> TextIndex:
    buf = io.BytesIO(data)
    if buf.read(4) != MAGIC:
        raise ValueError("not an index file")
    version, lam = struct.unpack("<BB", buf.read(2))
    if version != VERSION:
        raise ValueError("unsupported index version %d" % version)

    (sigma,) = struct.unpack("<I", buf.read(4))
    alphabet = DenseAlphabet(code_to_byte=buf.read(sigma))

    (rule_count,) = struct.unpack("<I", buf.read(4))
    rhs = []
    for _ in range(rule_count):
        (length,) = struct.unpack("<I", buf.read(4))
        rhs.append(buf.read(length))
    gram = grammar_mod.Grammar(lam=lam, sigma=sigma, rhs=rhs)

    rlfm1 = _read_runs(buf)

    (node_count,) = struct.unpack("<I", buf.read(4))
    rows = np.frombuffer(buf.read(node_count * 12), dtype="<u4").astype(np.int64)
    trie = ShortPatternTrie(
        depth=lam - 1, parents=rows[0::3], edges=rows[1::3], counts=rows[2::3]
    )

    (has_baseline,) = struct.unpack("<B", buf.read(1))
    rlfm0 = _read_runs(buf) if has_baseline else None
    return TextIndex(
        alphabet=alphabet, lam=lam, grammar=gram, rlfm1=rlfm1, trie=trie, rlfm0=rlfm0
    )


def save_index_file(index: TextIndex, path: str):
    with open(path, "wb") as fh:
        fh.write(save_index(index))


def load_index_file(path: str) -> TextIndex:
    with open(path, "rb") as fh:
        return load_index(fh.read())


def section_sizes(index: TextIndex) -> dict[str, int]:
    """Serialized byte size per file section."""
    sizes = {
        "header": 6,
        "alphabet": 4 + index.alphabet.size,
        "grammar": 4 + sum(4 + len(s) for s in index.grammar.rhs),
        "level1_bwt": 4 + 8 * index.rlfm1.run_count,
        "short_trie": 4 + 12 * index.trie.node_count,
        "baseline": 1 + (4 + 8 * index.rlfm0.run_count if index.rlfm0 else 0),
    }
    sizes["total"] = sum(sizes.values())
    return sizes
