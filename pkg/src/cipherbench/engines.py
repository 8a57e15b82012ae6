"""Keyed cipher engines: one immutable object per (cipher, key).

``make_engine`` validates the key against the cipher's supported sizes,
computes the key schedule once, and returns an engine that is safe to
share between threads; no operation mutates it afterwards. Engines are
cached per (cipher, key), so repeated construction with the same key is
cheap and the returned instance may be shared.

When the compiled backends are built, each engine also carries the
compiled schedule blob and exposes fused CBC/keystream entry points; the
pure implementations remain the reference and both paths must agree
byte-for-byte.
"""

from __future__ import annotations

import functools

from cipherbench import _fast
from cipherbench.block import aes, blowfish, twofish
from cipherbench.core import CipherId, CipherKind, CipherProfile, profile_of
from cipherbench.errors import KeyLengthError
from cipherbench import stream as _stream

_BLOWFISH_INIT_BLOB = b"".join(w.to_bytes(4, "little") for w in blowfish.PI_WORDS)


class KeyedEngine:
    """Common engine surface: identity, profile, and the raw key."""

    cipher: CipherId
    profile: CipherProfile

    def __init__(self, cipher: CipherId, key: bytes):
        self.cipher = cipher
        self.profile = profile_of(cipher)
        self.key = bytes(key)

    @property
    def key_bits(self) -> int:
        return 8 * len(self.key)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.cipher} {self.key_bits}-bit>"


class BlockEngine(KeyedEngine):
    """Block cipher engine: single-block primitives plus fused CBC hooks.

    ``cbc_encrypt_raw``/``cbc_decrypt_raw`` operate on data whose length
    is already a multiple of the block size (padding belongs to the mode
    layer) and are bound to the compiled backend when available.
    """

    block_bytes: int

    def encrypt_block(self, block: bytes) -> bytes:
        raise NotImplementedError

    def decrypt_block(self, block: bytes) -> bytes:
        raise NotImplementedError

    def cbc_encrypt_raw(self, iv: bytes, padded: bytes) -> bytes:
        out = bytearray()
        prev = iv
        bb = self.block_bytes
        for i in range(0, len(padded), bb):
            block = bytes(a ^ b for a, b in zip(padded[i : i + bb], prev))
            prev = self.encrypt_block(block)
            out += prev
        return bytes(out)

    def cbc_decrypt_raw(self, iv: bytes, ciphertext: bytes) -> bytes:
        out = bytearray()
        prev = iv
        bb = self.block_bytes
        for i in range(0, len(ciphertext), bb):
            chunk = ciphertext[i : i + bb]
            plain = self.decrypt_block(chunk)
            out += bytes(a ^ b for a, b in zip(plain, prev))
            prev = chunk
        return bytes(out)


class AesEngine(BlockEngine):
    block_bytes = 16

    def __init__(self, key: bytes):
        super().__init__(CipherId.AES, key)
        if _fast.aes is not None:
            self._blob = _fast.aes.expand_key(key)
            self._round_keys = None
        else:
            self._blob = None
            self._round_keys = aes.aes128_expand_key(key)

    @property
    def round_keys(self) -> tuple[bytes, ...]:
        if self._round_keys is None:
            self._round_keys = aes.aes128_expand_key(self.key)
        return self._round_keys

    def encrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.aes.encrypt_block(self._blob, block)
        return aes.aes128_encrypt_block(block, self.round_keys)

    def decrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.aes.decrypt_block(self._blob, block)
        return aes.aes128_decrypt_block(block, self.round_keys)

    def cbc_encrypt_raw(self, iv: bytes, padded: bytes) -> bytes:
        if self._blob is not None:
            return _fast.aes.cbc_encrypt(self._blob, iv, padded)
        return super().cbc_encrypt_raw(iv, padded)

    def cbc_decrypt_raw(self, iv: bytes, ciphertext: bytes) -> bytes:
        if self._blob is not None:
            return _fast.aes.cbc_decrypt(self._blob, iv, ciphertext)
        return super().cbc_decrypt_raw(iv, ciphertext)


class BlowfishEngine(BlockEngine):
    block_bytes = 8

    def __init__(self, key: bytes):
        super().__init__(CipherId.BLOWFISH, key)
        if _fast.blowfish is not None:
            self._blob = _fast.blowfish.expand_key(key, _BLOWFISH_INIT_BLOB)
            self._subkeys = None
        else:
            self._blob = None
            self._subkeys = blowfish.blowfish_expand_key(key)

    @property
    def subkeys(self) -> blowfish.BlowfishSubkeys:
        if self._subkeys is None:
            self._subkeys = blowfish.blowfish_expand_key(self.key)
        return self._subkeys

    def encrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.blowfish.encrypt_block(self._blob, block)
        return blowfish.blowfish_encrypt_block(block, self.subkeys)

    def decrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.blowfish.decrypt_block(self._blob, block)
        return blowfish.blowfish_decrypt_block(block, self.subkeys)

    def cbc_encrypt_raw(self, iv: bytes, padded: bytes) -> bytes:
        if self._blob is not None:
            return _fast.blowfish.cbc_encrypt(self._blob, iv, padded)
        return super().cbc_encrypt_raw(iv, padded)

    def cbc_decrypt_raw(self, iv: bytes, ciphertext: bytes) -> bytes:
        if self._blob is not None:
            return _fast.blowfish.cbc_decrypt(self._blob, iv, ciphertext)
        return super().cbc_decrypt_raw(iv, ciphertext)


class TwofishEngine(BlockEngine):
    block_bytes = 16

    def __init__(self, key: bytes):
        super().__init__(CipherId.TWOFISH, key)
        if _fast.twofish is not None:
            self._blob = _fast.twofish.expand_key(
                key, bytes(twofish.Q0), bytes(twofish.Q1)
            )
            self._subkeys = None
        else:
            self._blob = None
            self._subkeys = twofish.twofish_expand_key(key)

    @property
    def subkeys(self) -> twofish.TwofishSubkeys:
        if self._subkeys is None:
            self._subkeys = twofish.twofish_expand_key(self.key)
        return self._subkeys

    def encrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.twofish.encrypt_block(self._blob, block)
        return twofish.twofish_encrypt_block(block, self.subkeys)

    def decrypt_block(self, block: bytes) -> bytes:
        if self._blob is not None:
            return _fast.twofish.decrypt_block(self._blob, block)
        return twofish.twofish_decrypt_block(block, self.subkeys)

    def cbc_encrypt_raw(self, iv: bytes, padded: bytes) -> bytes:
        if self._blob is not None:
            return _fast.twofish.cbc_encrypt(self._blob, iv, padded)
        return super().cbc_encrypt_raw(iv, padded)

    def cbc_decrypt_raw(self, iv: bytes, ciphertext: bytes) -> bytes:
        if self._blob is not None:
            return _fast.twofish.cbc_decrypt(self._blob, iv, ciphertext)
        return super().cbc_decrypt_raw(iv, ciphertext)


class StreamEngine(KeyedEngine):
    """Stream cipher engine; the nonce and counter are supplied per call."""

    def keystream_xor(self, nonce: bytes, start_counter: int, data: bytes) -> bytes:
        return _stream.keystream_xor(self.cipher, self.key, nonce, start_counter, data)

    def seek_block(self, nonce: bytes, block_index: int) -> bytes:
        return _stream.seek_block(self.cipher, self.key, nonce, block_index)


_SUPPORTED_KEY_BYTES = {
    # AES-192/256 round counts are out of scope; the benchmark uses 128-bit
    # keys for AES and Twofish throughout.
    CipherId.AES: "AES-128 requires a 16-byte key",
    CipherId.TWOFISH: "this build supports the 16-byte (128-bit) Twofish key only",
}


def _validate_key(cipher: CipherId, key: bytes) -> None:
    n = len(key)
    if cipher in (CipherId.AES, CipherId.TWOFISH):
        if n != 16:
            raise KeyLengthError(f"{_SUPPORTED_KEY_BYTES[cipher]}; got {n} bytes")
    elif cipher is CipherId.BLOWFISH:
        if not 4 <= n <= 56:
            raise KeyLengthError(f"Blowfish key must be 4..56 bytes, got {n}")
    else:
        if n not in (16, 32):
            raise KeyLengthError(f"{cipher} key must be 16 or 32 bytes, got {n}")


@functools.lru_cache(maxsize=64)
def _cached_engine(cipher: CipherId, key: bytes) -> KeyedEngine:
    if cipher is CipherId.AES:
        return AesEngine(key)
    if cipher is CipherId.BLOWFISH:
        return BlowfishEngine(key)
    if cipher is CipherId.TWOFISH:
        return TwofishEngine(key)
    return StreamEngine(cipher, key)


def make_engine(cipher: CipherId, key: bytes) -> KeyedEngine:
    """Build (or fetch the cached) keyed engine for a cipher.

    Raises KeyLengthError when the key size is not supported.
    """
    _validate_key(cipher, key)
    return _cached_engine(cipher, bytes(key))
