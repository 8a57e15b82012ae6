# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled AES-128 core: key expansion, block ops, and fused CBC loops.

Must stay bit-identical to cipherbench.block.aes; the test suite enforces
equality on known-answer vectors and random data.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdint cimport uint8_t
from libc.string cimport memcpy

cdef uint8_t SBOX[256]
cdef uint8_t INV_SBOX[256]
cdef uint8_t MUL2[256]
cdef uint8_t MUL3[256]
cdef uint8_t MUL9[256]
cdef uint8_t MUL11[256]
cdef uint8_t MUL13[256]
cdef uint8_t MUL14[256]
cdef uint8_t RCON[10]

cdef uint8_t _gf_mul(int a, int b):
    cdef int r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
        b >>= 1
    return <uint8_t> r

cdef void _init_tables():
    cdef int p = 1, q = 1, x, i
    while True:
        p ^= ((p << 1) ^ (0x1B if p & 0x80 else 0)) & 0xFF
        q ^= (q << 1) & 0xFF
        q ^= (q << 2) & 0xFF
        q ^= (q << 4) & 0xFF
        if q & 0x80:
            q ^= 0x09
        x = q ^ (((q << 1) | (q >> 7)) & 0xFF) ^ (((q << 2) | (q >> 6)) & 0xFF) \
            ^ (((q << 3) | (q >> 5)) & 0xFF) ^ (((q << 4) | (q >> 4)) & 0xFF)
        SBOX[p] = <uint8_t> (x ^ 0x63)
        if p == 1:
            break
    SBOX[0] = 0x63
    for i in range(256):
        INV_SBOX[SBOX[i]] = <uint8_t> i
        MUL2[i] = _gf_mul(i, 2)
        MUL3[i] = _gf_mul(i, 3)
        MUL9[i] = _gf_mul(i, 9)
        MUL11[i] = _gf_mul(i, 11)
        MUL13[i] = _gf_mul(i, 13)
        MUL14[i] = _gf_mul(i, 14)
    RCON[0] = 0x01
    for i in range(1, 10):
        RCON[i] = _gf_mul(RCON[i - 1], 2)

_init_tables()

# ShiftRows source index per position (column-major state).
cdef int SHIFT[16]
cdef int INV_SHIFT[16]

cdef void _init_shift():
    cdef int i
    for i in range(16):
        SHIFT[i] = (i + 4 * (i % 4)) % 16
    for i in range(16):
        INV_SHIFT[SHIFT[i]] = i

_init_shift()


cdef void _encrypt(const uint8_t *rk, const uint8_t *inp, uint8_t *out) noexcept:
    cdef uint8_t s[16]
    cdef uint8_t t[16]
    cdef int i, r, c
    cdef uint8_t a0, a1, a2, a3
    for i in range(16):
        s[i] = inp[i] ^ rk[i]
    for r in range(1, 10):
        for i in range(16):
            t[i] = SBOX[s[SHIFT[i]]]
        for c in range(0, 16, 4):
            a0 = t[c]; a1 = t[c + 1]; a2 = t[c + 2]; a3 = t[c + 3]
            s[c] = MUL2[a0] ^ MUL3[a1] ^ a2 ^ a3
            s[c + 1] = a0 ^ MUL2[a1] ^ MUL3[a2] ^ a3
            s[c + 2] = a0 ^ a1 ^ MUL2[a2] ^ MUL3[a3]
            s[c + 3] = MUL3[a0] ^ a1 ^ a2 ^ MUL2[a3]
        for i in range(16):
            s[i] ^= rk[16 * r + i]
    for i in range(16):
        t[i] = SBOX[s[SHIFT[i]]]
    for i in range(16):
        out[i] = t[i] ^ rk[160 + i]


cdef void _decrypt(const uint8_t *rk, const uint8_t *inp, uint8_t *out) noexcept:
    cdef uint8_t s[16]
    cdef uint8_t t[16]
    cdef int i, r, c
    cdef uint8_t a0, a1, a2, a3
    for i in range(16):
        s[i] = inp[i] ^ rk[160 + i]
    for r in range(9, 0, -1):
        for i in range(16):
            t[i] = INV_SBOX[s[INV_SHIFT[i]]]
        for i in range(16):
            t[i] ^= rk[16 * r + i]
        for c in range(0, 16, 4):
            a0 = t[c]; a1 = t[c + 1]; a2 = t[c + 2]; a3 = t[c + 3]
            s[c] = MUL14[a0] ^ MUL11[a1] ^ MUL13[a2] ^ MUL9[a3]
            s[c + 1] = MUL9[a0] ^ MUL14[a1] ^ MUL11[a2] ^ MUL13[a3]
            s[c + 2] = MUL13[a0] ^ MUL9[a1] ^ MUL14[a2] ^ MUL11[a3]
            s[c + 3] = MUL11[a0] ^ MUL13[a1] ^ MUL9[a2] ^ MUL14[a3]
    for i in range(16):
        t[i] = INV_SBOX[s[INV_SHIFT[i]]]
    for i in range(16):
        out[i] = t[i] ^ rk[i]


def expand_key(const uint8_t[::1] key not None):
    """Expand a 16-byte key into the 176-byte round-key blob."""
    if key.shape[0] != 16:
        raise ValueError("AES-128 key must be 16 bytes")
    out = PyBytes_FromStringAndSize(NULL, 176)
    cdef uint8_t *rk = <uint8_t *> PyBytes_AS_STRING(out)
    cdef int i, j
    cdef uint8_t w0, w1, w2, w3
    memcpy(rk, &key[0], 16)
    for i in range(4, 44):
        j = 4 * i
        w0 = rk[j - 4]; w1 = rk[j - 3]; w2 = rk[j - 2]; w3 = rk[j - 1]
        if i % 4 == 0:
            w0, w1, w2, w3 = SBOX[w1] ^ RCON[i // 4 - 1], SBOX[w2], SBOX[w3], SBOX[w0]
        rk[j] = rk[j - 16] ^ w0
        rk[j + 1] = rk[j - 15] ^ w1
        rk[j + 2] = rk[j - 14] ^ w2
        rk[j + 3] = rk[j - 13] ^ w3
    return out


def encrypt_block(const uint8_t[::1] rk not None, const uint8_t[::1] block not None):
    if rk.shape[0] != 176 or block.shape[0] != 16:
        raise ValueError("bad round-key or block length")
    out = PyBytes_FromStringAndSize(NULL, 16)
    _encrypt(&rk[0], &block[0], <uint8_t *> PyBytes_AS_STRING(out))
    return out


def decrypt_block(const uint8_t[::1] rk not None, const uint8_t[::1] block not None):
    if rk.shape[0] != 176 or block.shape[0] != 16:
        raise ValueError("bad round-key or block length")
    out = PyBytes_FromStringAndSize(NULL, 16)
    _decrypt(&rk[0], &block[0], <uint8_t *> PyBytes_AS_STRING(out))
    return out


def cbc_encrypt(const uint8_t[::1] rk not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-encrypt pre-padded data (length a multiple of 16)."""
    cdef Py_ssize_t n = data.shape[0]
    if rk.shape[0] != 176 or iv.shape[0] != 16 or n % 16 != 0:
        raise ValueError("bad argument length")
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef uint8_t buf[16]
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 16):
        for i in range(16):
            buf[i] = data[off + i] ^ prev[i]
        _encrypt(&rk[0], buf, o + off)
        prev = o + off
    return out


def cbc_decrypt(const uint8_t[::1] rk not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-decrypt ciphertext (length a multiple of 16); no unpadding."""
    cdef Py_ssize_t n = data.shape[0]
    if rk.shape[0] != 176 or iv.shape[0] != 16 or n % 16 != 0:
        raise ValueError("bad argument length")
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 16):
        _decrypt(&rk[0], &data[off], o + off)
        for i in range(16):
            o[off + i] ^= prev[i]
        prev = &data[off]
    return out
