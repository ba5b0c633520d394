"""Exception hierarchy shared by every aspect of the framework.

The store and CLI rely on these classes being distinguishable: a reader must
be able to tell a forged origin (AuthenticationError) from tampered content
(IntegrityError) from a failed decryption (ConfidentialityError).
"""


class DsfError(Exception):
    """Base class for all framework errors."""


class ConfigError(DsfError):
    """Malformed or inconsistent security configuration."""


class KeyMaterialError(DsfError):
    """Key of the wrong kind, wrong length, or missing from the key store."""


class ConfidentialityError(DsfError):
    """Decryption failure: bad padding, wrong length, wrong key."""


class PaddingError(ConfidentialityError):
    """Ciphertext unpadded to an invalid value (tampering or wrong key)."""


class IntegrityError(DsfError):
    """Integrity stamp or watermark check failed."""


class AuthenticationError(DsfError):
    """Origin authentication (tag / signature) check failed."""


class EnvelopeError(DsfError):
    """Security envelope cannot be encoded or decoded."""


class ConfigMismatchError(DsfError):
    """Stored envelope flags disagree with the active configuration."""


class StoreError(DsfError):
    """Record store failure not covered by a more specific class."""


class HierarchyError(DsfError):
    """Generalization hierarchy is malformed or does not cover a value."""


class AnonymityError(DsfError):
    """No generalization satisfies the anonymity requirement."""


class SearchError(DsfError):
    """Encrypted-search parameter or word-size violation."""


class WatermarkError(DsfError):
    """Watermark parameters incompatible with the target table or image."""


class MerkleError(DsfError):
    """Authenticated-structure build or proof construction failure."""


class EmptyRangeError(DsfError):
    """MIN/MAX requested over a key range containing no entries."""


class UnsupportedAggregateError(DsfError):
    """Aggregate kind the authenticated tree does not support (e.g. MEDIAN)."""


class RandomizationError(DsfError):
    """SQL randomization failure (double randomization, bad key material)."""


class FramingError(DsfError):
    """Proxy wire-framing violation; the connection must be closed."""
