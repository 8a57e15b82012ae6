"""Exception types shared across the library."""


class CipherBenchError(Exception):
    """Base class for every error raised by this library."""


class KeyLengthError(CipherBenchError):
    """Key length is not permitted for the target cipher."""


class NonceLengthError(CipherBenchError):
    """IV or nonce length does not match the cipher's requirement."""


class CounterOverflowError(CipherBenchError):
    """Keystream consumption would overflow the 64-bit block counter."""


class PaddingError(CipherBenchError):
    """PKCS#7 padding is malformed."""


class LengthError(CipherBenchError):
    """Data length is incompatible with the cipher block size."""


class FormatError(CipherBenchError):
    """Encrypted container is malformed (magic, version, or field layout)."""


class ConfigError(CipherBenchError):
    """Invalid benchmark or corpus configuration."""


class ZeroElapsedError(CipherBenchError):
    """Zero elapsed time; clock resolution too coarse for a throughput."""


class ZeroSizeError(CipherBenchError):
    """Non-positive average size passed to the time-per-size metric."""


class IncompleteGridError(CipherBenchError):
    """Benchmark records do not cover the full file-by-cipher grid."""

    def __init__(self, missing):
        self.missing = sorted(missing)
        cells = ", ".join(f"({name}, {cipher})" for name, cipher in self.missing)
        super().__init__(f"missing benchmark cells: {cells}")


class VectorError(CipherBenchError):
    """Known-answer vector data is missing or unreadable."""
