"""Domain types shared by every aspect: records, tables, keys, envelopes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import EnvelopeError, KeyMaterialError, StoreError

Value = Union[int, str, bytes]

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# Column kind tags, also used in CSV headers and the record codec.
KIND_INT = "int"
KIND_STR = "str"
KIND_BYTES = "bytes"
KINDS = (KIND_INT, KIND_STR, KIND_BYTES)


def kind_of(value: Value) -> str:
    if isinstance(value, bool):
        raise StoreError("boolean values are not a supported column kind")
    if isinstance(value, int):
        return KIND_INT
    if isinstance(value, str):
        return KIND_STR
    if isinstance(value, bytes):
        return KIND_BYTES
    raise StoreError(f"unsupported value type {type(value).__name__}")


@dataclass(frozen=True)
class Record:
    """One stored row: a non-negative integer primary key plus named values."""

    id: int
    values: tuple[Value, ...]

    def __post_init__(self):
        if self.id < 0:
            raise StoreError("record id must be non-negative")
        object.__setattr__(self, "values", tuple(self.values))
        for v in self.values:
            if kind_of(v) == KIND_INT and not (INT64_MIN <= v <= INT64_MAX):
                raise StoreError("integer column value outside signed 64-bit range")


@dataclass(frozen=True)
class Table:
    """A named relation: ordered (column, kind) schema plus records."""

    name: str
    columns: tuple[str, ...]
    kinds: tuple[str, ...]
    records: tuple[Record, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "records", tuple(self.records))
        if len(self.columns) < 1:
            raise StoreError("table schema must have at least one column")
        if len(self.columns) != len(self.kinds):
            raise StoreError("schema column/kind arity mismatch")
        for k in self.kinds:
            if k not in KINDS:
                raise StoreError(f"unknown column kind {k!r}")
        seen_ids = set()
        for r in self.records:
            if len(r.values) != len(self.columns):
                raise StoreError(f"record {r.id} arity differs from schema")
            if r.id in seen_ids:
                raise StoreError(f"duplicate record id {r.id}")
            seen_ids.add(r.id)
            for v, k in zip(r.values, self.kinds):
                if kind_of(v) != k:
                    raise StoreError(
                        f"record {r.id}: value {v!r} does not match declared kind {k}"
                    )

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise StoreError(f"no column named {name!r}") from None

    def value(self, record: Record, column: str) -> Value:
        return record.values[self.column_index(column)]

    def with_records(self, records) -> "Table":
        return Table(self.name, self.columns, self.kinds, tuple(records))


# Key kinds accepted by KeyMaterial. Length requirements follow the backing
# algorithms of the default provider (AES, HMAC-SHA, Ed25519).
KEY_CIPHER = "cipher"
KEY_HMAC = "hmac"
KEY_SIGN_PRIVATE = "signature-private"
KEY_SIGN_PUBLIC = "signature-public"
KEY_PRF = "prf"

_KEY_LENGTHS = {
    KEY_CIPHER: (16, 24, 32),
    KEY_SIGN_PRIVATE: (32,),
    KEY_SIGN_PUBLIC: (32,),
}
_KEY_MIN_LENGTH = {KEY_HMAC: 16, KEY_PRF: 16}


@dataclass(frozen=True)
class KeyMaterial:
    keyId: str
    bytes: bytes
    kind: str

    def __post_init__(self):
        if self.kind in _KEY_LENGTHS:
            if len(self.bytes) not in _KEY_LENGTHS[self.kind]:
                raise KeyMaterialError(
                    f"key {self.keyId!r}: kind {self.kind} requires length in "
                    f"{_KEY_LENGTHS[self.kind]}, got {len(self.bytes)}"
                )
        elif self.kind in _KEY_MIN_LENGTH:
            if len(self.bytes) < _KEY_MIN_LENGTH[self.kind]:
                raise KeyMaterialError(
                    f"key {self.keyId!r}: kind {self.kind} requires at least "
                    f"{_KEY_MIN_LENGTH[self.kind]} bytes"
                )
        else:
            raise KeyMaterialError(f"unknown key kind {self.kind!r}")

    def require(self, kind: str) -> "KeyMaterial":
        if self.kind != kind:
            raise KeyMaterialError(
                f"key {self.keyId!r} has kind {self.kind}, operation needs {kind}"
            )
        return self


@dataclass(frozen=True)
class IntegrityStamp:
    """Timestamped MAC appended to a record by the trusted front-end."""

    timestamp: int
    mac: bytes


@dataclass(frozen=True)
class AuthenticationTag:
    """Origin-authentication tag: keyed MAC or signature over the payload."""

    scheme: str  # "hmac" | "signature"
    tag: bytes
    signerId: str = ""

    def __post_init__(self):
        if self.scheme not in ("hmac", "signature"):
            raise EnvelopeError(f"unknown tag scheme {self.scheme!r}")


@dataclass(frozen=True)
class SecurityEnvelope:
    """A stored record plus whatever security layers were applied to it."""

    recordId: int
    payload: bytes
    confidentialityApplied: bool = False
    integrityStamp: Optional[IntegrityStamp] = None
    authTag: Optional[AuthenticationTag] = None


def record_encode(record: Record) -> bytes:
    """Canonical record bytes: id, then kind-tagged length-prefixed values.

    This is both the envelope payload produced by the store pipeline and
    the byte string integrity stamps are computed over.
    """
    out = bytearray()
    out += record.id.to_bytes(8, "big")
    out += len(record.values).to_bytes(4, "big")
    for v in record.values:
        k = kind_of(v)
        if k == KIND_INT:
            out += b"\x00" + v.to_bytes(8, "big", signed=True)
        elif k == KIND_STR:
            enc = v.encode("utf-8")
            out += b"\x01" + len(enc).to_bytes(4, "big") + enc
        else:
            out += b"\x02" + len(v).to_bytes(4, "big") + v
    return bytes(out)


def record_decode(data: bytes) -> Record:
    if len(data) < 12:
        raise EnvelopeError("record bytes truncated")
    rid = int.from_bytes(data[:8], "big")
    count = int.from_bytes(data[8:12], "big")
    pos = 12
    values: list[Value] = []
    for _ in range(count):
        if pos >= len(data):
            raise EnvelopeError("record bytes truncated")
        tag = data[pos]
        pos += 1
        if tag == 0:
            if pos + 8 > len(data):
                raise EnvelopeError("record bytes truncated")
            values.append(int.from_bytes(data[pos : pos + 8], "big", signed=True))
            pos += 8
        elif tag in (1, 2):
            if pos + 4 > len(data):
                raise EnvelopeError("record bytes truncated")
            n = int.from_bytes(data[pos : pos + 4], "big")
            pos += 4
            if pos + n > len(data):
                raise EnvelopeError("record bytes truncated")
            raw = data[pos : pos + n]
            pos += n
            values.append(raw.decode("utf-8") if tag == 1 else bytes(raw))
        else:
            raise EnvelopeError(f"unknown value tag {tag}")
    if pos != len(data):
        raise EnvelopeError("trailing bytes after record")
    return Record(rid, tuple(values))
