"""Salsa20 and ChaCha20 stream ciphers (original 64-bit-nonce variants).

Both ciphers expand a (key, nonce, counter) triple into 64-byte keystream
blocks via 20 rounds of add-rotate-xor operations on a 16-word state and
encrypt by XOR, so encryption and decryption are the same operation. The
original 64-bit nonce / 64-bit block counter layout is used; the 96-bit
IETF nonce variant is deliberately unsupported. All word serialization is
little-endian.

A core state is a list of sixteen 32-bit words. Salsa20 places its four
constant words on the main diagonal; ChaCha20 places them in the first
row. The constants are the ASCII strings "expand 16-byte k" /
"expand 32-byte k", selecting the key-length variant (16-byte keys fill
the eight key words by repetition).
"""

from __future__ import annotations

import struct

from cipherbench import _fast
from cipherbench.core import CipherId
from cipherbench.errors import (
    CounterOverflowError,
    KeyLengthError,
    NonceLengthError,
)

NONCE_BYTES = 8
BLOCK_BYTES = 64

_MASK32 = 0xFFFFFFFF
_COUNTER_SPACE = 1 << 64

SIGMA = struct.unpack("<4I", b"expand 32-byte k")
TAU = struct.unpack("<4I", b"expand 16-byte k")

# Quarter-round index groups making up one double round.
_SALSA_COLUMNS = ((0, 4, 8, 12), (5, 9, 13, 1), (10, 14, 2, 6), (15, 3, 7, 11))
_SALSA_ROWS = ((0, 1, 2, 3), (5, 6, 7, 4), (10, 11, 8, 9), (15, 12, 13, 14))
_CHACHA_COLUMNS = ((0, 4, 8, 12), (1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15))
_CHACHA_DIAGONALS = ((0, 5, 10, 15), (1, 6, 11, 12), (2, 7, 8, 13), (3, 4, 9, 14))

# Positions of the (low, high) counter words in each layout.
_COUNTER_SLOTS = {CipherId.SALSA20: (8, 9), CipherId.CHACHA20: (12, 13)}


def _key_words(key: bytes, cipher: CipherId):
    if len(key) == 16:
        words = struct.unpack("<4I", key)
        return TAU, words + words
    if len(key) == 32:
        return SIGMA, struct.unpack("<8I", key)
    raise KeyLengthError(f"{cipher} key must be 16 or 32 bytes, got {len(key)}")


def build_state(cipher: CipherId, key: bytes, nonce: bytes, counter: int) -> list[int]:
    """Build the 16-word core state for SALSA20 or CHACHA20.

    ``counter`` is the 64-bit block index, split into the low word t0 and
    high word t1.
    """
    if cipher not in _COUNTER_SLOTS:
        raise ValueError(f"not a stream cipher: {cipher}")
    constants, k = _key_words(key, cipher)
    if len(nonce) != NONCE_BYTES:
        raise NonceLengthError(
            f"{cipher} nonce must be {NONCE_BYTES} bytes, got {len(nonce)}"
        )
    if not 0 <= counter < _COUNTER_SPACE:
        raise CounterOverflowError(f"block counter out of 64-bit range: {counter}")
    v0, v1 = struct.unpack("<2I", nonce)
    t0, t1 = counter & _MASK32, counter >> 32
    c0, c1, c2, c3 = constants
    if cipher is CipherId.SALSA20:
        return [c0, k[0], k[1], k[2], k[3], c1, v0, v1, t0, t1, c2, k[4], k[5], k[6], k[7], c3]
    return [c0, c1, c2, c3, *k, t0, t1, v0, v1]


def _rotl32(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _MASK32


def _salsa20_quarter(x: list[int], a: int, b: int, c: int, d: int) -> None:
    x[b] ^= _rotl32((x[a] + x[d]) & _MASK32, 7)
    x[c] ^= _rotl32((x[b] + x[a]) & _MASK32, 9)
    x[d] ^= _rotl32((x[c] + x[b]) & _MASK32, 13)
    x[a] ^= _rotl32((x[d] + x[c]) & _MASK32, 18)


def salsa20_core(state: list[int]) -> bytes:
    """Run the 20-round Salsa20 core over a built state; emit 64 bytes."""
    x = list(state)
    for _ in range(10):
        for a, b, c, d in _SALSA_COLUMNS:
            _salsa20_quarter(x, a, b, c, d)
        for a, b, c, d in _SALSA_ROWS:
            _salsa20_quarter(x, a, b, c, d)
    return struct.pack("<16I", *((x[i] + state[i]) & _MASK32 for i in range(16)))


def chacha20_quarter_round(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    """One ChaCha20 quarter round: ARX steps with rotations 16, 12, 8, 7."""
    a = (a + b) & _MASK32
    d = _rotl32(d ^ a, 16)
    c = (c + d) & _MASK32
    b = _rotl32(b ^ c, 12)
    a = (a + b) & _MASK32
    d = _rotl32(d ^ a, 8)
    c = (c + d) & _MASK32
    b = _rotl32(b ^ c, 7)
    return a, b, c, d


def chacha20_core(state: list[int]) -> bytes:
    """Run the 20-round ChaCha20 core over a built state; emit 64 bytes."""
    x = list(state)
    for _ in range(10):
        for a, b, c, d in _CHACHA_COLUMNS:
            x[a], x[b], x[c], x[d] = chacha20_quarter_round(x[a], x[b], x[c], x[d])
        for a, b, c, d in _CHACHA_DIAGONALS:
            x[a], x[b], x[c], x[d] = chacha20_quarter_round(x[a], x[b], x[c], x[d])
    return struct.pack("<16I", *((x[i] + state[i]) & _MASK32 for i in range(16)))


_CORES = {CipherId.SALSA20: salsa20_core, CipherId.CHACHA20: chacha20_core}


def seek_block(cipher: CipherId, key: bytes, nonce: bytes, block_index: int) -> bytes:
    """Compute keystream block ``block_index`` directly.

    Work is independent of the index; equals the block produced at that
    position by sequential generation.
    """
    return _CORES[cipher](build_state(cipher, key, nonce, block_index))


def keystream_xor(
    cipher: CipherId, key: bytes, nonce: bytes, start_counter: int, data: bytes
) -> bytes:
    """XOR ``data`` with the keystream starting at block ``start_counter``.

    The identical call performs encryption and decryption. Raises
    CounterOverflowError if the needed blocks would run past the 64-bit
    counter space (wraparound would silently reuse keystream).
    """
    blocks_needed = (len(data) + BLOCK_BYTES - 1) // BLOCK_BYTES
    if start_counter < 0 or start_counter + blocks_needed > _COUNTER_SPACE:
        raise CounterOverflowError(
            f"keystream range [{start_counter}, {start_counter + blocks_needed}) "
            "exceeds the 64-bit counter space"
        )
    # Validates key/nonce/counter even when data is empty.
    state = build_state(cipher, key, nonce, start_counter)
    if not data:
        return b""

    if _fast.stream is not None:
        if cipher is CipherId.SALSA20:
            return _fast.stream.salsa20_xor(key, nonce, start_counter, data)
        return _fast.stream.chacha20_xor(key, nonce, start_counter, data)

    core = _CORES[cipher]
    lo, hi = _COUNTER_SLOTS[cipher]
    out = bytearray(len(data))
    for i in range(blocks_needed):
        block = core(state)
        chunk = data[i * BLOCK_BYTES : (i + 1) * BLOCK_BYTES]
        n = len(chunk)
        out[i * BLOCK_BYTES : i * BLOCK_BYTES + n] = (
            int.from_bytes(chunk, "little") ^ int.from_bytes(block[:n], "little")
        ).to_bytes(n, "little")
        state[lo] = (state[lo] + 1) & _MASK32
        if state[lo] == 0:
            state[hi] = (state[hi] + 1) & _MASK32
    return bytes(out)
