"""Twofish block cipher, 128-bit key configuration.

128-bit blocks, 16 Feistel-style rounds with key-dependent S-boxes, an MDS
diffusion matrix over GF(2^8), and the pseudo-Hadamard transform (PHT) as
the mixing step. Words are little-endian per the designers' convention.
S-boxes are evaluated on the fly from the key material; the compiled fast
path precomputes full tables, and the two must stay bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from cipherbench.errors import KeyLengthError, LengthError

BLOCK_BYTES = 16
KEY_BYTES = 16
ROUNDS = 16

_MASK32 = 0xFFFFFFFF

# 4-bit permutation tables from which the fixed q0/q1 byte permutations
# are assembled.
_Q_TABLES = (
    (
        (0x8, 0x1, 0x7, 0xD, 0x6, 0xF, 0x3, 0x2, 0x0, 0xB, 0x5, 0x9, 0xE, 0xC, 0xA, 0x4),
        (0xE, 0xC, 0xB, 0x8, 0x1, 0x2, 0x3, 0x5, 0xF, 0x4, 0xA, 0x6, 0x7, 0x0, 0x9, 0xD),
        (0xB, 0xA, 0x5, 0xE, 0x6, 0xD, 0x9, 0x0, 0xC, 0x8, 0xF, 0x3, 0x2, 0x4, 0x7, 0x1),
        (0xD, 0x7, 0xF, 0x4, 0x1, 0x2, 0x6, 0xE, 0x9, 0xB, 0x3, 0x0, 0x8, 0x5, 0xC, 0xA),
    ),
    (
        (0x2, 0x8, 0xB, 0xD, 0xF, 0x7, 0x6, 0xE, 0x3, 0x1, 0x9, 0x4, 0x0, 0xA, 0xC, 0x5),
        (0x1, 0xE, 0x2, 0xB, 0x4, 0xC, 0x3, 0x7, 0x6, 0xD, 0xA, 0x5, 0xF, 0x9, 0x0, 0x8),
        (0x4, 0xC, 0x7, 0x5, 0x1, 0x6, 0x9, 0xA, 0x0, 0xE, 0xD, 0x8, 0x2, 0xB, 0x3, 0xF),
        (0xB, 0x9, 0x5, 0x1, 0xC, 0x3, 0xD, 0xE, 0x6, 0x4, 0x7, 0xF, 0x2, 0x0, 0x8, 0xA),
    ),
)

_MDS = (
    (0x01, 0xEF, 0x5B, 0x5B),
    (0x5B, 0xEF, 0xEF, 0x01),
    (0xEF, 0x5B, 0x01, 0xEF),
    (0xEF, 0x01, 0xEF, 0x5B),
)
_MDS_POLY = 0x169  # x^8 + x^6 + x^5 + x^3 + 1

_RS = (
    (0x01, 0xA4, 0x55, 0x87, 0x5A, 0x58, 0xDB, 0x9E),
    (0xA4, 0x56, 0x82, 0xF3, 0x1E, 0xC6, 0x68, 0xE5),
    (0x02, 0xA1, 0xFC, 0xC1, 0x47, 0xAE, 0x3D, 0x19),
    (0xA4, 0x55, 0x87, 0x5A, 0x58, 0xDB, 0x9E, 0x03),
)
_RS_POLY = 0x14D  # x^8 + x^6 + x^3 + x^2 + 1


def _gf_mul(a: int, b: int, poly: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= poly
        b >>= 1
    return r


def _build_q(which: int) -> tuple[int, ...]:
    t0, t1, t2, t3 = _Q_TABLES[which]
    out = []
    for x in range(256):
        a, b = x >> 4, x & 0xF
        a, b = a ^ b, (a ^ ((b >> 1) | ((b & 1) << 3)) ^ ((a << 3) & 0xF)) & 0xF
        a, b = t0[a], t1[b]
        a, b = a ^ b, (a ^ ((b >> 1) | ((b & 1) << 3)) ^ ((a << 3) & 0xF)) & 0xF
        out.append((t3[b] << 4) | t2[a])
    return tuple(out)


Q0 = _build_q(0)
Q1 = _build_q(1)

# MDS columns only ever multiply by 0x01, 0x5B, or 0xEF.
_MUL5B = tuple(_gf_mul(x, 0x5B, _MDS_POLY) for x in range(256))
_MULEF = tuple(_gf_mul(x, 0xEF, _MDS_POLY) for x in range(256))
_MDS_MULS = {0x01: tuple(range(256)), 0x5B: _MUL5B, 0xEF: _MULEF}


def _rol32(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _MASK32


def _ror32(x: int, n: int) -> int:
    return (x >> n) | ((x << (32 - n)) & _MASK32)


def pht(a: int, b: int) -> tuple[int, int]:
    """Pseudo-Hadamard transform: (a + b, a + 2b), both modulo 2^32."""
    return (a + b) & _MASK32, (a + 2 * b) & _MASK32


def _mds_word(y0: int, y1: int, y2: int, y3: int) -> int:
    y = (y0, y1, y2, y3)
    word = 0
    for row in range(4):
        acc = 0
        for col in range(4):
            acc ^= _MDS_MULS[_MDS[row][col]][y[col]]
        word |= acc << (8 * row)
    return word


def _h(x: int, l0: int, l1: int) -> int:
    # Two-stage keyed byte substitution for 128-bit keys, then MDS.
    y0, y1, y2, y3 = x & 0xFF, (x >> 8) & 0xFF, (x >> 16) & 0xFF, (x >> 24) & 0xFF
    y0 = Q0[y0] ^ (l1 & 0xFF)
    y1 = Q1[y1] ^ ((l1 >> 8) & 0xFF)
    y2 = Q0[y2] ^ ((l1 >> 16) & 0xFF)
    y3 = Q1[y3] ^ ((l1 >> 24) & 0xFF)
    y0 = Q0[y0] ^ (l0 & 0xFF)
    y1 = Q0[y1] ^ ((l0 >> 8) & 0xFF)
    y2 = Q1[y2] ^ ((l0 >> 16) & 0xFF)
    y3 = Q1[y3] ^ ((l0 >> 24) & 0xFF)
    return _mds_word(Q1[y0], Q0[y1], Q1[y2], Q0[y3])


def _rs_word(chunk: bytes) -> int:
    word = 0
    for row in range(4):
        acc = 0
        for col in range(8):
            acc ^= _gf_mul(_RS[row][col], chunk[col], _RS_POLY)
        word |= acc << (8 * row)
    return word


@dataclass(frozen=True)
class TwofishSubkeys:
    """Expanded Twofish key: 40 round-subkey words plus S-box key material.

    ``sbox_key`` holds the two RS-derived words (little-endian), half the
    cipher key's length, ordered as consumed by the round function.
    """

    k: tuple[int, ...]
    sbox_key: bytes

    @property
    def sbox_words(self) -> tuple[int, int]:
        return (
            int.from_bytes(self.sbox_key[:4], "little"),
            int.from_bytes(self.sbox_key[4:], "little"),
        )


def twofish_expand_key(key: bytes) -> TwofishSubkeys:
    """Expand a 16-byte key into 40 subkey words and S-box material."""
    if len(key) != KEY_BYTES:
        raise KeyLengthError(f"Twofish key must be 16 bytes, got {len(key)}")
    m = [int.from_bytes(key[i : i + 4], "little") for i in range(0, 16, 4)]
    m_even = (m[0], m[2])
    m_odd = (m[1], m[3])
    # S-box words come from the RS code over the key bytes, in reversed
    # group order.
    s1 = _rs_word(key[0:8])
    s0 = _rs_word(key[8:16])
    rho = 0x01010101
    k = []
    for i in range(20):
        a = _h(2 * i * rho, m_even[0], m_even[1])
        b = _rol32(_h((2 * i + 1) * rho, m_odd[0], m_odd[1]), 8)
        first, second = pht(a, b)
        k.append(first)
        k.append(_rol32(second, 9))
    sbox_key = s0.to_bytes(4, "little") + s1.to_bytes(4, "little")
    return TwofishSubkeys(tuple(k), sbox_key)


def _g(x: int, s0: int, s1: int) -> int:
    return _h(x, s0, s1)


def twofish_encrypt_block(block: bytes, subkeys: TwofishSubkeys) -> bytes:
    """Encrypt one 16-byte block (four little-endian 32-bit words)."""
    if len(block) != BLOCK_BYTES:
        raise LengthError(f"Twofish block must be 16 bytes, got {len(block)}")
    k = subkeys.k
    s0, s1 = subkeys.sbox_words
    r0, r1, r2, r3 = (
        int.from_bytes(block[i : i + 4], "little") ^ k[i // 4]
        for i in range(0, 16, 4)
    )
    for rnd in range(ROUNDS):
        t0 = _g(r0, s0, s1)
        t1 = _g(_rol32(r1, 8), s0, s1)
        f0, f1 = pht(t0, t1)
        f0 = (f0 + k[2 * rnd + 8]) & _MASK32
        f1 = (f1 + k[2 * rnd + 9]) & _MASK32
        r0, r1, r2, r3 = _ror32(r2 ^ f0, 1), _rol32(r3, 1) ^ f1, r0, r1
    # Undo the last swap, then output whitening.
    c = (r2 ^ k[4], r3 ^ k[5], r0 ^ k[6], r1 ^ k[7])
    return b"".join(w.to_bytes(4, "little") for w in c)


def twofish_decrypt_block(block: bytes, subkeys: TwofishSubkeys) -> bytes:
    """Exact inverse of :func:`twofish_encrypt_block`."""
    if len(block) != BLOCK_BYTES:
        raise LengthError(f"Twofish block must be 16 bytes, got {len(block)}")
    k = subkeys.k
    s0, s1 = subkeys.sbox_words
    c = [int.from_bytes(block[i : i + 4], "little") for i in range(0, 16, 4)]
    r0, r1, r2, r3 = c[2] ^ k[6], c[3] ^ k[7], c[0] ^ k[4], c[1] ^ k[5]
    for rnd in range(ROUNDS - 1, -1, -1):
        t0 = _g(r2, s0, s1)
        t1 = _g(_rol32(r3, 8), s0, s1)
        f0, f1 = pht(t0, t1)
        f0 = (f0 + k[2 * rnd + 8]) & _MASK32
        f1 = (f1 + k[2 * rnd + 9]) & _MASK32
        r0, r1, r2, r3 = r2, r3, _rol32(r0, 1) ^ f0, _ror32(r1 ^ f1, 1)
    p = (r0 ^ k[0], r1 ^ k[1], r2 ^ k[2], r3 ^ k[3])
    return b"".join(w.to_bytes(4, "little") for w in p)
