"""Deterministic binary codec for security envelopes.

Layout (all integers big-endian):

    flags      1 byte   bit0 confidentiality, bit1 stamp present, bit2 tag present
    recordId   8 bytes
    payload    4-byte length + bytes
    stamp      8-byte timestamp + 4-byte mac length + mac          (if bit1)
    tag        1-byte scheme + 4-byte tag length + tag
               + 4-byte signerId length + signerId (UTF-8)         (if bit2)

The layout is a contract of this framework: persisted stores, proof files
and golden tests all depend on it being bit-exact.
"""

from __future__ import annotations

from .model import AuthenticationTag, IntegrityStamp, SecurityEnvelope
from ..errors import EnvelopeError

MAX_PAYLOAD = 2**32 - 1

_FLAG_CONF = 0x01
_FLAG_STAMP = 0x02
_FLAG_TAG = 0x04

_SCHEME_CODES = {"hmac": 0, "signature": 1}
_SCHEME_NAMES = {v: k for k, v in _SCHEME_CODES.items()}


def envelope_encode(env: SecurityEnvelope) -> bytes:
    if len(env.payload) > MAX_PAYLOAD:
        raise EnvelopeError("payload exceeds 2^32-1 bytes")
    flags = 0
    if env.confidentialityApplied:
        flags |= _FLAG_CONF
    if env.integrityStamp is not None:
        flags |= _FLAG_STAMP
    if env.authTag is not None:
        flags |= _FLAG_TAG
    out = bytearray()
    out.append(flags)
    out += env.recordId.to_bytes(8, "big")
    out += len(env.payload).to_bytes(4, "big")
    out += env.payload
    if env.integrityStamp is not None:
        st = env.integrityStamp
        out += st.timestamp.to_bytes(8, "big")
        out += len(st.mac).to_bytes(4, "big")
        out += st.mac
    if env.authTag is not None:
        tag = env.authTag
        out.append(_SCHEME_CODES[tag.scheme])
        out += len(tag.tag).to_bytes(4, "big")
        out += tag.tag
        signer = tag.signerId.encode("utf-8")
        out += len(signer).to_bytes(4, "big")
        out += signer
    return bytes(out)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise EnvelopeError("envelope truncated")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return int.from_bytes(self.take(4), "big")

    def u64(self) -> int:
        return int.from_bytes(self.take(8), "big")


def envelope_decode(data: bytes) -> SecurityEnvelope:
    r = _Reader(data)
    flags = r.u8()
    if flags & ~(_FLAG_CONF | _FLAG_STAMP | _FLAG_TAG):
        raise EnvelopeError(f"unknown envelope flags 0x{flags:02x}")
    record_id = r.u64()
    payload = r.take(r.u32())
    stamp = None
    if flags & _FLAG_STAMP:
        ts = r.u64()
        stamp = IntegrityStamp(ts, r.take(r.u32()))
    tag = None
    if flags & _FLAG_TAG:
        scheme_code = r.u8()
        if scheme_code not in _SCHEME_NAMES:
            raise EnvelopeError(f"unknown tag scheme code {scheme_code}")
        tag_bytes = r.take(r.u32())
        signer = r.take(r.u32()).decode("utf-8")
        tag = AuthenticationTag(_SCHEME_NAMES[scheme_code], tag_bytes, signer)
    if r.pos != len(data):
        raise EnvelopeError("trailing bytes after envelope")
    return SecurityEnvelope(
        recordId=record_id,
        payload=bytes(payload),
        confidentialityApplied=bool(flags & _FLAG_CONF),
        integrityStamp=stamp,
        authTag=tag,
    )
