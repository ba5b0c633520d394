"""Encrypted word search over fixed-width words.

Index construction, per word position i:

    X_i = word_encrypt(k'', W_i)            n-bit keyed permutation
    L_i = top n-m bits of X_i, R_i = bottom m bits
    k_i = prf(k', L_i)                      per-position check key
    S_i = stream bits [i*(n-m), (i+1)*(n-m)) of the seed
    C_i = X_i XOR ( S_i || prf_bits(k_i, S_i, m) )

Searching for W reveals (X, k) to the server; position i matches when
C_i XOR X splits into (s, t) with t == prf_bits(k, s, m). True positions
always match; every other position matches with probability ~= 2^-m.

The index owner can invert every cell (recover_word), so the index doubles
as encrypted storage of the word list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..crypto import AlgorithmProvider, default_provider
from ..errors import SearchError


@dataclass(frozen=True)
class SearchParams:
    """Word width n, check width m (bits), and the three key inputs."""

    n: int
    m: int
    word_key: bytes  # k'': word pre-encryption
    derive_key: bytes  # k': per-position key derivation
    stream_seed: bytes

    def __post_init__(self):
        if self.n % 8:
            raise SearchError("word size n must be a multiple of 8 bits")
        if self.n % 2:
            raise SearchError("word size n must be even")
        if not (1 <= self.m <= self.n - 1):
            raise SearchError("check size m must satisfy 1 <= m <= n-1")


@dataclass(frozen=True)
class EncryptedIndex:
    params: SearchParams
    cells: tuple[int, ...]  # n-bit ciphertexts, one per word position

    def __post_init__(self):
        top = 1 << self.params.n
        for c in self.cells:
            if not (0 <= c < top):
                raise SearchError("index cell wider than n bits")


def canonical_word(word: str | bytes, n: int) -> int:
    """UTF-8 encode, then truncate or zero-pad to exactly n bits."""
    raw = word.encode("utf-8") if isinstance(word, str) else bytes(word)
    nbytes = n // 8
    if len(raw) > nbytes:
        raw = raw[:nbytes]
    else:
        raw = raw + b"\x00" * (nbytes - len(raw))
    return int.from_bytes(raw, "big")


def _bits_to_bytes(value: int, nbits: int) -> bytes:
    return value.to_bytes((nbits + 7) // 8, "big")


def _cell_key(params: SearchParams, left: int, provider: AlgorithmProvider) -> bytes:
    k = provider.prf_bits(params.derive_key, _bits_to_bytes(left, params.n - params.m), 256)
    return k.to_bytes(32, "big")


def index_build(
    words: Iterable[str | bytes],
    params: SearchParams,
    provider: Optional[AlgorithmProvider] = None,
) -> EncryptedIndex:
    p = provider or default_provider()
    n, m = params.n, params.m
    cells = []
    for i, word in enumerate(words):
        x = p.word_encrypt(params.word_key, canonical_word(word, n), n)
        left = x >> m
        s = p.stream_bits(params.stream_seed, i * (n - m), n - m)
        check = p.prf_bits(_cell_key(params, left, p), _bits_to_bytes(s, n - m), m)
        cells.append(x ^ ((s << m) | check))
    return EncryptedIndex(params, tuple(cells))


def search_trapdoor(
    word: str | bytes,
    params: SearchParams,
    provider: Optional[AlgorithmProvider] = None,
) -> tuple[int, bytes]:
    """(X, k) the client hands to the server for one equality query."""
    p = provider or default_provider()
    x = p.word_encrypt(params.word_key, canonical_word(word, params.n), params.n)
    return x, _cell_key(params, x >> params.m, p)


def index_search(
    index: EncryptedIndex,
    word: str | bytes,
    provider: Optional[AlgorithmProvider] = None,
) -> list[int]:
    p = provider or default_provider()
    params = index.params
    n, m = params.n, params.m
    x, key = search_trapdoor(word, params, p)
    mask = (1 << m) - 1
    hits = []
    for i, cell in enumerate(index.cells):
        d = cell ^ x
        s, t = d >> m, d & mask
        if p.prf_bits(key, _bits_to_bytes(s, n - m), m) == t:
            hits.append(i)
    return hits


def recover_word(
    index: EncryptedIndex,
    position: int,
    provider: Optional[AlgorithmProvider] = None,
) -> int:
    """Client-side inversion of one cell back to its n-bit word."""
    p = provider or default_provider()
    params = index.params
    n, m = params.n, params.m
    if not (0 <= position < len(index.cells)):
        raise SearchError("position out of range")
    cell = index.cells[position]
    s = p.stream_bits(params.stream_seed, position * (n - m), n - m)
    left = (cell >> m) ^ s
    check = p.prf_bits(_cell_key(params, left, p), _bits_to_bytes(s, n - m), m)
    right = (cell & ((1 << m) - 1)) ^ check
    return p.word_decrypt(params.word_key, (left << m) | right, n)
