"""Rank-metric codes and RQC-style encryption built on Extended Gabidulin-Kronecker codes."""

from .codes import DecodeOutcome, EGCode, EGKCode
from .galois import GF2m, get_field
from .params import BWE, NH, REGISTRY, UR, SchemeParams, get_params
from .schemes import (
    Ciphertext,
    DecryptionError,
    KemReject,
    PublicKey,
    SecretKey,
    decrypt,
    encrypt,
    kem_decapsulate,
    kem_encapsulate,
    keygen,
)

__version__ = "0.1.0"

__all__ = [
    "BWE",
    "NH",
    "UR",
    "REGISTRY",
    "Ciphertext",
    "DecodeOutcome",
    "DecryptionError",
    "EGCode",
    "EGKCode",
    "GF2m",
    "KemReject",
    "PublicKey",
    "SchemeParams",
    "SecretKey",
    "decrypt",
    "encrypt",
    "get_field",
    "get_params",
    "kem_decapsulate",
    "kem_encapsulate",
    "keygen",
]
