"""AES-128 block cipher (FIPS 197), byte-oriented implementation.

Only the 128-bit-key configuration (10 rounds, 11 round keys) is
implemented; the 192/256-bit variants are out of scope for this library.
The S-box and its inverse are derived at import time from the GF(2^8)
multiplicative inverse plus the standard affine transform rather than
being transcribed as literal tables.
"""

from __future__ import annotations

from cipherbench.errors import KeyLengthError, LengthError

BLOCK_BYTES = 16
KEY_BYTES = 16
ROUNDS = 10


def _rotl8(x: int, n: int) -> int:
    return ((x << n) | (x >> (8 - n))) & 0xFF


def _make_sbox() -> list[int]:
    # Walk the multiplicative group of GF(2^8) via the generator 0x03:
    # p tracks 3^i, q tracks 3^-i, so q is always the inverse of p.
    sbox = [0] * 256
    p = q = 1
    while True:
        p ^= ((p << 1) ^ (0x1B if p & 0x80 else 0)) & 0xFF
        q ^= (q << 1) & 0xFF
        q ^= (q << 2) & 0xFF
        q ^= (q << 4) & 0xFF
        if q & 0x80:
            q ^= 0x09
        sbox[p] = q ^ _rotl8(q, 1) ^ _rotl8(q, 2) ^ _rotl8(q, 3) ^ _rotl8(q, 4) ^ 0x63
        if p == 1:
            break
    sbox[0] = 0x63
    return sbox


def _gf_mul(a: int, b: int) -> int:
    # Multiplication in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
        b >>= 1
    return r


SBOX = tuple(_make_sbox())
INV_SBOX = tuple(sorted(range(256), key=SBOX.__getitem__))

_MUL2 = tuple(_gf_mul(x, 2) for x in range(256))
_MUL3 = tuple(_gf_mul(x, 3) for x in range(256))
_MUL9 = tuple(_gf_mul(x, 9) for x in range(256))
_MUL11 = tuple(_gf_mul(x, 11) for x in range(256))
_MUL13 = tuple(_gf_mul(x, 13) for x in range(256))
_MUL14 = tuple(_gf_mul(x, 14) for x in range(256))

_RCON = (0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1B, 0x36)

# ShiftRows source index for each state position (column-major layout,
# state[r + 4c] = byte r of column c).
_SHIFT = tuple((i + 4 * (i % 4)) % 16 for i in range(16))
_INV_SHIFT = tuple(_SHIFT.index(i) for i in range(16))


def aes128_expand_key(key: bytes) -> tuple[bytes, ...]:
    """Expand a 16-byte key into the 11 round keys of AES-128.

    Round key 0 is the cipher key itself.
    """
    if len(key) != KEY_BYTES:
        raise KeyLengthError(f"AES-128 key must be 16 bytes, got {len(key)}")
    words = [key[i : i + 4] for i in range(0, 16, 4)]
    for i in range(4, 4 * (ROUNDS + 1)):
        prev = words[i - 1]
        if i % 4 == 0:
            rot = prev[1:] + prev[:1]
            prev = bytes(
                (SBOX[rot[0]] ^ _RCON[i // 4 - 1], SBOX[rot[1]], SBOX[rot[2]], SBOX[rot[3]])
            )
        words.append(bytes(a ^ b for a, b in zip(words[i - 4], prev)))
    return tuple(b"".join(words[4 * r : 4 * r + 4]) for r in range(ROUNDS + 1))


def _add_round_key(state: list[int], rk: bytes) -> None:
    for i in range(16):
        state[i] ^= rk[i]


def _mix_columns(state: list[int]) -> None:
    for c in range(0, 16, 4):
        a0, a1, a2, a3 = state[c : c + 4]
        state[c] = _MUL2[a0] ^ _MUL3[a1] ^ a2 ^ a3
        state[c + 1] = a0 ^ _MUL2[a1] ^ _MUL3[a2] ^ a3
        state[c + 2] = a0 ^ a1 ^ _MUL2[a2] ^ _MUL3[a3]
        state[c + 3] = _MUL3[a0] ^ a1 ^ a2 ^ _MUL2[a3]


def _inv_mix_columns(state: list[int]) -> None:
    for c in range(0, 16, 4):
        a0, a1, a2, a3 = state[c : c + 4]
        state[c] = _MUL14[a0] ^ _MUL11[a1] ^ _MUL13[a2] ^ _MUL9[a3]
        state[c + 1] = _MUL9[a0] ^ _MUL14[a1] ^ _MUL11[a2] ^ _MUL13[a3]
        state[c + 2] = _MUL13[a0] ^ _MUL9[a1] ^ _MUL14[a2] ^ _MUL11[a3]
        state[c + 3] = _MUL11[a0] ^ _MUL13[a1] ^ _MUL9[a2] ^ _MUL14[a3]


def aes128_encrypt_block(block: bytes, round_keys: tuple[bytes, ...]) -> bytes:
    """Encrypt one 16-byte block under an expanded AES-128 key."""
    if len(block) != BLOCK_BYTES:
        raise LengthError(f"AES block must be 16 bytes, got {len(block)}")
    state = list(block)
    _add_round_key(state, round_keys[0])
    for r in range(1, ROUNDS):
        state = [SBOX[state[_SHIFT[i]]] for i in range(16)]
        _mix_columns(state)
        _add_round_key(state, round_keys[r])
    state = [SBOX[state[_SHIFT[i]]] for i in range(16)]
    _add_round_key(state, round_keys[ROUNDS])
    return bytes(state)


def aes128_decrypt_block(block: bytes, round_keys: tuple[bytes, ...]) -> bytes:
    """Exact inverse of :func:`aes128_encrypt_block`."""
    if len(block) != BLOCK_BYTES:
        raise LengthError(f"AES block must be 16 bytes, got {len(block)}")
    state = list(block)
    _add_round_key(state, round_keys[ROUNDS])
    for r in range(ROUNDS - 1, 0, -1):
        state = [INV_SBOX[state[_INV_SHIFT[i]]] for i in range(16)]
        _add_round_key(state, round_keys[r])
        _inv_mix_columns(state)
    state = [INV_SBOX[state[_INV_SHIFT[i]]] for i in range(16)]
    _add_round_key(state, round_keys[0])
    return bytes(state)
