"""Arbitrary-length encryption: CBC + PKCS#7, keystream XOR, and the
encrypted-file container.

Block ciphers run in CBC with PKCS#7 padding; stream ciphers XOR the
keystream starting at block counter 0. Encrypted files use a fixed
container layout (all integers big-endian where multi-byte):

    magic           4 bytes  0x43 0x42 0x4E 0x43 ("CBNC")
    format_version  1 byte   0x01
    cipher_id       1 byte   0=AES 1=Blowfish 2=Twofish 3=Salsa20 4=ChaCha20
    key_bits        2 bytes
    iv_length       1 byte
    iv_or_nonce     iv_length bytes
    payload         ciphertext to end of file

The layout is normative and bit-exact; overhead is 9 bytes + IV length
plus block-cipher padding. Stream payloads equal the plaintext length.
"""

from __future__ import annotations

import os
import secrets
from pathlib import Path

from cipherbench.core import CipherId, CipherKind, iv_length, profile_of
from cipherbench.engines import BlockEngine, StreamEngine, make_engine
from cipherbench.errors import (
    FormatError,
    KeyLengthError,
    LengthError,
    NonceLengthError,
    PaddingError,
)

MAGIC = b"CBNC"
FORMAT_VERSION = 1

_CIPHER_CODES = {
    CipherId.AES: 0,
    CipherId.BLOWFISH: 1,
    CipherId.TWOFISH: 2,
    CipherId.SALSA20: 3,
    CipherId.CHACHA20: 4,
}
_CODE_TO_CIPHER = {code: cipher for cipher, code in _CIPHER_CODES.items()}

# A 64-bit-block cipher must never process 2^32 blocks under one IV.
_MAX_BLOWFISH_BLOCKS = 1 << 32


def pkcs7_pad(data: bytes, block_bytes: int) -> bytes:
    """Pad to the next multiple of ``block_bytes``; always appends."""
    if not 1 <= block_bytes <= 255:
        raise ValueError(f"block size must be 1..255, got {block_bytes}")
    pad = block_bytes - len(data) % block_bytes
    return data + bytes([pad]) * pad


def pkcs7_unpad(data: bytes, block_bytes: int) -> bytes:
    """Strip a valid PKCS#7 pad; exact inverse of :func:`pkcs7_pad`."""
    if not data or len(data) % block_bytes != 0:
        raise LengthError(
            f"padded data length {len(data)} is not a positive multiple of {block_bytes}"
        )
    pad = data[-1]
    if pad == 0 or pad > block_bytes:
        raise PaddingError(f"invalid pad byte 0x{pad:02x}")
    if data[-pad:] != bytes([pad]) * pad:
        raise PaddingError("pad bytes disagree")
    return data[:-pad]


def cbc_encrypt(engine: BlockEngine, iv: bytes, plaintext: bytes) -> bytes:
    """PKCS#7-pad then CBC-encrypt: C[i] = E(P[i] XOR C[i-1]), C[-1] = IV."""
    bb = engine.block_bytes
    if len(iv) != bb:
        raise NonceLengthError(f"{engine.cipher} IV must be {bb} bytes, got {len(iv)}")
    return engine.cbc_encrypt_raw(iv, pkcs7_pad(plaintext, bb))


def cbc_decrypt(engine: BlockEngine, iv: bytes, ciphertext: bytes) -> bytes:
    """CBC-decrypt then unpad: P[i] = D(C[i]) XOR C[i-1]."""
    bb = engine.block_bytes
    if len(iv) != bb:
        raise NonceLengthError(f"{engine.cipher} IV must be {bb} bytes, got {len(iv)}")
    if not ciphertext or len(ciphertext) % bb != 0:
        raise LengthError(
            f"ciphertext length {len(ciphertext)} is not a positive multiple of {bb}"
        )
    return pkcs7_unpad(engine.cbc_decrypt_raw(iv, ciphertext), bb)


def encrypt_bytes(cipher: CipherId, key: bytes, iv: bytes, data: bytes) -> bytes:
    """Encrypt a byte string to a raw ciphertext payload (no container)."""
    engine = make_engine(cipher, key)
    if isinstance(engine, StreamEngine):
        if len(iv) != iv_length(cipher):
            raise NonceLengthError(
                f"{cipher} nonce must be {iv_length(cipher)} bytes, got {len(iv)}"
            )
        return engine.keystream_xor(iv, 0, data)
    if cipher is CipherId.BLOWFISH and len(data) // 8 + 1 > _MAX_BLOWFISH_BLOCKS:
        raise LengthError("file too large for a 64-bit block cipher under one IV")
    return cbc_encrypt(engine, iv, data)


def decrypt_bytes(cipher: CipherId, key: bytes, iv: bytes, payload: bytes) -> bytes:
    """Inverse of :func:`encrypt_bytes`."""
    engine = make_engine(cipher, key)
    if isinstance(engine, StreamEngine):
        if len(iv) != iv_length(cipher):
            raise NonceLengthError(
                f"{cipher} nonce must be {iv_length(cipher)} bytes, got {len(iv)}"
            )
        return engine.keystream_xor(iv, 0, payload)
    return cbc_decrypt(engine, iv, payload)


def write_container(cipher: CipherId, key_bits: int, iv: bytes, payload: bytes) -> bytes:
    header = (
        MAGIC
        + bytes([FORMAT_VERSION, _CIPHER_CODES[cipher]])
        + key_bits.to_bytes(2, "big")
        + bytes([len(iv)])
        + iv
    )
    return header + payload


def parse_container(blob: bytes) -> tuple[CipherId, int, bytes, bytes]:
    """Split a container into (cipher, key_bits, iv, payload)."""
    if len(blob) < 9 or blob[:4] != MAGIC:
        raise FormatError("bad magic; not an encrypted container")
    if blob[4] != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {blob[4]}")
    code = blob[5]
    if code not in _CODE_TO_CIPHER:
        raise FormatError(f"unknown cipher id {code}")
    cipher = _CODE_TO_CIPHER[code]
    key_bits = int.from_bytes(blob[6:8], "big")
    ivlen = blob[8]
    if ivlen != iv_length(cipher):
        raise FormatError(
            f"iv length {ivlen} does not match {cipher} (expected {iv_length(cipher)})"
        )
    if len(blob) < 9 + ivlen:
        raise FormatError("truncated container header")
    return cipher, key_bits, blob[9 : 9 + ivlen], blob[9 + ivlen :]


def encrypt_file(
    input_path: str | os.PathLike,
    output_path: str | os.PathLike,
    cipher: CipherId,
    key: bytes,
    iv: bytes | None = None,
) -> int:
    """Encrypt a file into a container; returns the payload byte count.

    When ``iv`` is absent a fresh one is drawn from the OS CSPRNG (the
    benchmark harness always passes a fixed, documented IV instead).
    """
    data = Path(input_path).read_bytes()
    if iv is None:
        iv = secrets.token_bytes(iv_length(cipher))
    payload = encrypt_bytes(cipher, key, iv, data)
    Path(output_path).write_bytes(
        write_container(cipher, 8 * len(key), iv, payload)
    )
    return len(payload)


def decrypt_file(
    input_path: str | os.PathLike,
    output_path: str | os.PathLike,
    key: bytes,
    iv: bytes | None = None,
) -> int:
    """Decrypt a container file; returns the plaintext byte count.

    The cipher and IV are read from the container; an explicitly supplied
    ``iv`` must match the embedded one or FormatError is raised.
    """
    cipher, key_bits, embedded_iv, payload = parse_container(
        Path(input_path).read_bytes()
    )
    if iv is not None and iv != embedded_iv:
        raise FormatError("supplied IV does not match the container's IV")
    if 8 * len(key) != key_bits:
        raise KeyLengthError(
            f"container was written with a {key_bits}-bit key; got {8 * len(key)} bits"
        )
    plain = decrypt_bytes(cipher, key, embedded_iv, payload)
    Path(output_path).write_bytes(plain)
    return len(plain)
