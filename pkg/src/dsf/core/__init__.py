from .model import (
    KEY_CIPHER,
    KEY_HMAC,
    KEY_PRF,
    KEY_SIGN_PRIVATE,
    KEY_SIGN_PUBLIC,
    KIND_BYTES,
    KIND_INT,
    KIND_STR,
    KINDS,
    AuthenticationTag,
    IntegrityStamp,
    KeyMaterial,
    Record,
    SecurityEnvelope,
    Table,
    kind_of,
    record_decode,
    record_encode,
)
from .envelope import envelope_decode, envelope_encode
from .config import (
    AspectConfig,
    RandomizationConfig,
    SecurityConfig,
    WatermarkConfig,
    config_from_pairs,
    dump_config,
    load_config,
    parse_properties,
)

__all__ = [
    "AspectConfig",
    "AuthenticationTag",
    "IntegrityStamp",
    "KeyMaterial",
    "Record",
    "RandomizationConfig",
    "SecurityConfig",
    "SecurityEnvelope",
    "Table",
    "WatermarkConfig",
    "config_from_pairs",
    "dump_config",
    "envelope_decode",
    "envelope_encode",
    "kind_of",
    "load_config",
    "parse_properties",
    "record_decode",
    "record_encode",
    "KEY_CIPHER",
    "KEY_HMAC",
    "KEY_PRF",
    "KEY_SIGN_PRIVATE",
    "KEY_SIGN_PUBLIC",
    "KIND_BYTES",
    "KIND_INT",
    "KIND_STR",
    "KINDS",
]
