"""Compiled fast paths for the cipher cores.

Each attribute is the compiled extension module, or None when the
extensions have not been built. Callers must produce byte-identical
results either way; the pure-Python implementations are the reference.
"""

try:
    from cipherbench._fast import _aes as aes
except ImportError:  # pragma: no cover - build-dependent
    aes = None

try:
    from cipherbench._fast import _blowfish as blowfish
except ImportError:  # pragma: no cover - build-dependent
    blowfish = None

try:
    from cipherbench._fast import _twofish as twofish
except ImportError:  # pragma: no cover - build-dependent
    twofish = None

try:
    from cipherbench._fast import _stream as stream
except ImportError:  # pragma: no cover - build-dependent
    stream = None


def available() -> bool:
    """True when every compiled cipher backend is importable."""
    return None not in (aes, blowfish, twofish, stream)
