"""From-scratch symmetric ciphers with a file-encryption benchmark.

Five ciphers implemented from their primitive operations: AES-128,
Blowfish, and Twofish (block, run in CBC with PKCS#7 padding) plus
Salsa20 and ChaCha20 (stream, original 64-bit-nonce variants). On top of
the cipher layer sit an encrypted-file container format, a corpus
generator, a timing/throughput benchmark harness, result tables with
averages, and a CLI (``cipherbench``).

Compiled fast paths (Cython) back the same algorithms when built; the
pure-Python implementations are the reference and the test suite pins
the two to byte-identical behavior.
"""

from cipherbench.core import (
    CipherId,
    CipherKind,
    CipherProfile,
    iv_length,
    profile_of,
)
from cipherbench.engines import (
    BlockEngine,
    KeyedEngine,
    StreamEngine,
    make_engine,
)
from cipherbench.errors import (
    CipherBenchError,
    ConfigError,
    CounterOverflowError,
    FormatError,
    IncompleteGridError,
    KeyLengthError,
    LengthError,
    NonceLengthError,
    PaddingError,
    VectorError,
    ZeroElapsedError,
    ZeroSizeError,
)
from cipherbench.modes import (
    cbc_decrypt,
    cbc_encrypt,
    decrypt_bytes,
    decrypt_file,
    encrypt_bytes,
    encrypt_file,
    pkcs7_pad,
    pkcs7_unpad,
)
from cipherbench.stream import build_state, keystream_xor, seek_block

__version__ = "0.1.0"

__all__ = [
    "CipherId",
    "CipherKind",
    "CipherProfile",
    "profile_of",
    "iv_length",
    "make_engine",
    "KeyedEngine",
    "BlockEngine",
    "StreamEngine",
    "pkcs7_pad",
    "pkcs7_unpad",
    "cbc_encrypt",
    "cbc_decrypt",
    "encrypt_bytes",
    "decrypt_bytes",
    "encrypt_file",
    "decrypt_file",
    "build_state",
    "keystream_xor",
    "seek_block",
    "CipherBenchError",
    "KeyLengthError",
    "NonceLengthError",
    "CounterOverflowError",
    "PaddingError",
    "LengthError",
    "FormatError",
    "ConfigError",
    "ZeroElapsedError",
    "ZeroSizeError",
    "IncompleteGridError",
    "VectorError",
    "__version__",
]
