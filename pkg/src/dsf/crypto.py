"""Pluggable algorithm provider and the keyed primitives built on top of it.

A provider bundles the replaceable vendor algorithms (block cipher, two hash
functions, keyed MAC, signatures, randomness). Everything else in this module
is a documented construction over those primitives, so an independent
implementation can reproduce bits exactly:

  prf_bits(key, data, nbits):
      block_j = HMAC-hashA(key, BE32(nbits) || BE32(j) || data)
      output  = first nbits of block_0 || block_1 || ...  (MSB-first),
      returned as an integer in [0, 2^nbits).
      nbits is bound into the MAC input, so different requested lengths give
      unrelated outputs (no prefix property).

  stream bit i for seed s:
      block_j = HMAC-hashA(s, BE64(j)); bit i is bit (i mod W) of block
      (i div W), MSB-first, W = 8 * hashA output size.

  word_encrypt(key, x, nbits):
      4-round balanced Feistel over the nbits-wide integer x (nbits even);
      round function F(r, half) = prf_bits(key, b"feistel" || BE32(r) ||
      BE32(nbits) || half_bytes, nbits // 2). Deterministic and invertible:
      the word pre-encryption step of the searchable index and the block
      sealing step of the image watermark both use it.

CBC padding is pad-byte == pad-length (1..B, always applied).
"""

from __future__ import annotations

import hashlib
import hmac as _hmac
import os
import random
from typing import Optional

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from .core.model import (
    KEY_CIPHER,
    KEY_HMAC,
    KEY_PRF,
    KEY_SIGN_PRIVATE,
    KEY_SIGN_PUBLIC,
    KeyMaterial,
)
from .errors import ConfidentialityError, KeyMaterialError, PaddingError


class AlgorithmProvider:
    """Base provider: concrete vendors supply the primitives below.

    The derived constructions (prf_bits, stream_bits, word_encrypt, CBC)
    are shared so every provider exposes the same deterministic behavior
    over its own primitives.
    """

    block_size: int = 0
    hash_a_size: int = 0
    hash_b_size: int = 0

    # -- primitives ---------------------------------------------------

    def encrypt_block(self, key: bytes, block: bytes) -> bytes:
        raise NotImplementedError

    def decrypt_block(self, key: bytes, block: bytes) -> bytes:
        raise NotImplementedError

    def hash_a(self, data: bytes) -> bytes:
        raise NotImplementedError

    def hash_b(self, data: bytes) -> bytes:
        raise NotImplementedError

    def sign(self, private_key: bytes, message: bytes) -> bytes:
        raise NotImplementedError

    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        raise NotImplementedError

    def random_bytes(self, n: int) -> bytes:
        raise NotImplementedError

    # -- shared constructions ------------------------------------------

    def hmac(self, key: bytes, data: bytes, hash_choice: str = "A") -> bytes:
        if hash_choice == "A":
            digestmod, _ = self._digestmod_a()
        elif hash_choice == "B":
            digestmod, _ = self._digestmod_b()
        else:
            raise KeyMaterialError(f"hash choice must be A or B, got {hash_choice!r}")
        return _hmac.new(key, data, digestmod).digest()

    def _digestmod_a(self):
        raise NotImplementedError

    def _digestmod_b(self):
        raise NotImplementedError

    def prf_bits(self, key: bytes, data: bytes, nbits: int) -> int:
        if nbits <= 0:
            raise ValueError("nbits must be positive")
        out = bytearray()
        block = 0
        header = nbits.to_bytes(4, "big")
        while len(out) * 8 < nbits:
            out += self.hmac(key, header + block.to_bytes(4, "big") + data)
            block += 1
        nbytes = (nbits + 7) // 8
        value = int.from_bytes(out[:nbytes], "big")
        return value >> (8 * nbytes - nbits)

    def stream_bits(self, seed: bytes, start: int, count: int) -> int:
        """Bits [start, start+count) of the seed's bit stream, as an integer."""
        if count <= 0:
            raise ValueError("count must be positive")
        if start < 0:
            raise ValueError("start must be non-negative")
        width = 8 * self.hash_a_size
        first = start // width
        last = (start + count - 1) // width
        raw = b"".join(
            self.hmac(seed, j.to_bytes(8, "big")) for j in range(first, last + 1)
        )
        total = int.from_bytes(raw, "big")
        avail = 8 * len(raw)
        offset = start - first * width
        return (total >> (avail - offset - count)) & ((1 << count) - 1)

    def word_encrypt(self, key: bytes, value: int, nbits: int) -> int:
        return self._feistel(key, value, nbits, decrypt=False)

    def word_decrypt(self, key: bytes, value: int, nbits: int) -> int:
        return self._feistel(key, value, nbits, decrypt=True)

    def _feistel(self, key: bytes, value: int, nbits: int, decrypt: bool) -> int:
        if nbits < 2 or nbits % 2:
            raise ValueError("word width must be an even number of bits >= 2")
        if not (0 <= value < (1 << nbits)):
            raise ValueError("value does not fit the stated width")
        half = nbits // 2
        mask = (1 << half) - 1
        nbytes = (half + 7) // 8
        left, right = value >> half, value & mask

        def round_f(r: int, h: int) -> int:
            data = b"feistel" + r.to_bytes(4, "big") + nbits.to_bytes(4, "big")
            return self.prf_bits(key, data + h.to_bytes(nbytes, "big"), half)

        if not decrypt:
            for r in range(4):
                left, right = right, left ^ round_f(r, right)
        else:
            for r in reversed(range(4)):
                left, right = right ^ round_f(r, left), left
        return (left << half) | right

    def hash_expand(self, data: bytes, nbits: int) -> int:
        """Expand hashA(data) to exactly nbits via a counter chain."""
        if nbits <= 0:
            raise ValueError("nbits must be positive")
        out = bytearray(self.hash_a(data))
        counter = 1
        while len(out) * 8 < nbits:
            out += self.hash_a(bytes(out[-self.hash_a_size :]) + counter.to_bytes(4, "big"))
            counter += 1
        nbytes = (nbits + 7) // 8
        return int.from_bytes(out[:nbytes], "big") >> (8 * nbytes - nbits)

    def generate_signing_keypair(self, key_id: str = "signer"):
        seed = self.random_bytes(32)
        sk = Ed25519PrivateKey.from_private_bytes(seed)
        pk = sk.public_key().public_bytes_raw()
        return (
            KeyMaterial(key_id, seed, KEY_SIGN_PRIVATE),
            KeyMaterial(key_id + ".pub", pk, KEY_SIGN_PUBLIC),
        )


class DefaultProvider(AlgorithmProvider):
    """AES block cipher, SHA-256/SHA-1 hash pair, Ed25519 signatures.

    These are the build-time algorithm choices; the framework depends only
    on the size contracts (block 16, hashA 32, hashB 20).
    """

    block_size = 16
    hash_a_size = 32
    hash_b_size = 20

    def __init__(self, seed: Optional[int] = None):
        self._rng = random.Random(seed) if seed is not None else None

    def encrypt_block(self, key: bytes, block: bytes) -> bytes:
        if len(block) != self.block_size:
            raise ConfidentialityError("block must be exactly one cipher block")
        enc = Cipher(algorithms.AES(key), modes.ECB()).encryptor()
        return enc.update(block) + enc.finalize()

    def decrypt_block(self, key: bytes, block: bytes) -> bytes:
        if len(block) != self.block_size:
            raise ConfidentialityError("block must be exactly one cipher block")
        dec = Cipher(algorithms.AES(key), modes.ECB()).decryptor()
        return dec.update(block) + dec.finalize()

    def hash_a(self, data: bytes) -> bytes:
        return hashlib.sha256(data).digest()

    def hash_b(self, data: bytes) -> bytes:
        return hashlib.sha1(data).digest()

    def _digestmod_a(self):
        return hashlib.sha256, self.hash_a_size

    def _digestmod_b(self):
        return hashlib.sha1, self.hash_b_size

    def sign(self, private_key: bytes, message: bytes) -> bytes:
        return Ed25519PrivateKey.from_private_bytes(private_key).sign(message)

    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        try:
            Ed25519PublicKey.from_public_bytes(public_key).verify(signature, message)
            return True
        except (InvalidSignature, ValueError):
            return False

    def random_bytes(self, n: int) -> bytes:
        return self._rng.randbytes(n) if self._rng is not None else os.urandom(n)


_default = DefaultProvider()


def default_provider() -> AlgorithmProvider:
    return _default


# ---------------------------------------------------------------------------
# Keyed operations over KeyMaterial (kind-checked entry points)
# ---------------------------------------------------------------------------


def cbc_encrypt(
    key: KeyMaterial,
    iv: bytes,
    plaintext: bytes,
    provider: Optional[AlgorithmProvider] = None,
) -> bytes:
    """CBC-chain the padded plaintext; the iv is stored separately by callers."""
    p = provider or _default
    key.require(KEY_CIPHER)
    b = p.block_size
    if len(iv) != b:
        raise ConfidentialityError(f"iv must be {b} bytes")
    pad = b - (len(plaintext) % b)
    padded = plaintext + bytes([pad]) * pad
    prev = iv
    out = bytearray()
    for i in range(0, len(padded), b):
        block = bytes(x ^ y for x, y in zip(padded[i : i + b], prev))
        prev = p.encrypt_block(key.bytes, block)
        out += prev
    return bytes(out)


def cbc_decrypt(
    key: KeyMaterial,
    iv: bytes,
    ciphertext: bytes,
    provider: Optional[AlgorithmProvider] = None,
) -> bytes:
    p = provider or _default
    key.require(KEY_CIPHER)
    b = p.block_size
    if len(iv) != b:
        raise ConfidentialityError(f"iv must be {b} bytes")
    if not ciphertext or len(ciphertext) % b:
        raise ConfidentialityError("ciphertext length must be a positive multiple of the block size")
    prev = iv
    padded = bytearray()
    for i in range(0, len(ciphertext), b):
        block = ciphertext[i : i + b]
        padded += bytes(x ^ y for x, y in zip(p.decrypt_block(key.bytes, block), prev))
        prev = block
    pad = padded[-1]
    if not (1 <= pad <= b) or padded[-pad:] != bytes([pad]) * pad:
        raise PaddingError("invalid padding (tampered ciphertext or wrong key)")
    return bytes(padded[:-pad])


def hmac_tag(
    key: KeyMaterial,
    data: bytes,
    hash_choice: str = "A",
    provider: Optional[AlgorithmProvider] = None,
) -> bytes:
    p = provider or _default
    key.require(KEY_HMAC)
    return p.hmac(key.bytes, data, hash_choice)


def prf_bits(
    key: KeyMaterial,
    data: bytes,
    nbits: int,
    provider: Optional[AlgorithmProvider] = None,
) -> int:
    p = provider or _default
    key.require(KEY_PRF)
    return p.prf_bits(key.bytes, data, nbits)


def sign(
    key: KeyMaterial,
    message: bytes,
    provider: Optional[AlgorithmProvider] = None,
) -> bytes:
    p = provider or _default
    key.require(KEY_SIGN_PRIVATE)
    return p.sign(key.bytes, message)


def verify(
    key: KeyMaterial,
    message: bytes,
    signature: bytes,
    provider: Optional[AlgorithmProvider] = None,
) -> bool:
    p = provider or _default
    key.require(KEY_SIGN_PUBLIC)
    return p.verify(key.bytes, message, signature)
