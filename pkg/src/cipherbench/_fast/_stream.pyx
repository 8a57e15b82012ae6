# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Salsa20/ChaCha20 keystream-XOR loops.

Original 64-bit nonce / 64-bit counter variants, 20 rounds, little-endian
serialization; 16-byte keys select the "expand 16-byte k" constants and
repeat the key words. The caller validates lengths and counter range.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdint cimport uint8_t, uint32_t, uint64_t

cdef inline uint32_t _rotl(uint32_t x, int n) noexcept:
    return (x << n) | (x >> (32 - n))

cdef inline uint32_t _load_le(const uint8_t *p) noexcept:
    return (<uint32_t> p[0]) | (<uint32_t> p[1] << 8) | (<uint32_t> p[2] << 16) | (<uint32_t> p[3] << 24)


cdef void _fill_key_words(const uint8_t[::1] key, uint32_t *constants, uint32_t *k) except *:
    cdef const char *tau = b"expand 16-byte k"
    cdef const char *sigma = b"expand 32-byte k"
    cdef const uint8_t *cbytes
    cdef int i
    if key.shape[0] == 16:
        cbytes = <const uint8_t *> tau
        for i in range(4):
            k[i] = _load_le(&key[4 * i])
            k[i + 4] = k[i]
    elif key.shape[0] == 32:
        cbytes = <const uint8_t *> sigma
        for i in range(8):
            k[i] = _load_le(&key[4 * i])
    else:
        raise ValueError("key must be 16 or 32 bytes")
    for i in range(4):
        constants[i] = _load_le(cbytes + 4 * i)


cdef void _salsa_block(const uint32_t *s, uint8_t *out) noexcept:
    cdef uint32_t x[16]
    cdef int i, r
    for i in range(16):
        x[i] = s[i]
    for r in range(10):
        # column round
        x[4] ^= _rotl(x[0] + x[12], 7);  x[8] ^= _rotl(x[4] + x[0], 9)
        x[12] ^= _rotl(x[8] + x[4], 13); x[0] ^= _rotl(x[12] + x[8], 18)
        x[9] ^= _rotl(x[5] + x[1], 7);   x[13] ^= _rotl(x[9] + x[5], 9)
        x[1] ^= _rotl(x[13] + x[9], 13); x[5] ^= _rotl(x[1] + x[13], 18)
        x[14] ^= _rotl(x[10] + x[6], 7); x[2] ^= _rotl(x[14] + x[10], 9)
        x[6] ^= _rotl(x[2] + x[14], 13); x[10] ^= _rotl(x[6] + x[2], 18)
        x[3] ^= _rotl(x[15] + x[11], 7); x[7] ^= _rotl(x[3] + x[15], 9)
        x[11] ^= _rotl(x[7] + x[3], 13); x[15] ^= _rotl(x[11] + x[7], 18)
        # row round
        x[1] ^= _rotl(x[0] + x[3], 7);   x[2] ^= _rotl(x[1] + x[0], 9)
        x[3] ^= _rotl(x[2] + x[1], 13);  x[0] ^= _rotl(x[3] + x[2], 18)
        x[6] ^= _rotl(x[5] + x[4], 7);   x[7] ^= _rotl(x[6] + x[5], 9)
        x[4] ^= _rotl(x[7] + x[6], 13);  x[5] ^= _rotl(x[4] + x[7], 18)
        x[11] ^= _rotl(x[10] + x[9], 7); x[8] ^= _rotl(x[11] + x[10], 9)
        x[9] ^= _rotl(x[8] + x[11], 13); x[10] ^= _rotl(x[9] + x[8], 18)
        x[12] ^= _rotl(x[15] + x[14], 7); x[13] ^= _rotl(x[12] + x[15], 9)
        x[14] ^= _rotl(x[13] + x[12], 13); x[15] ^= _rotl(x[14] + x[13], 18)
    cdef uint32_t w
    for i in range(16):
        w = x[i] + s[i]
        out[4 * i] = <uint8_t> w
        out[4 * i + 1] = <uint8_t> (w >> 8)
        out[4 * i + 2] = <uint8_t> (w >> 16)
        out[4 * i + 3] = <uint8_t> (w >> 24)


cdef inline void _chacha_qr(uint32_t *x, int a, int b, int c, int d) noexcept:
    x[a] += x[b]; x[d] = _rotl(x[d] ^ x[a], 16)
    x[c] += x[d]; x[b] = _rotl(x[b] ^ x[c], 12)
    x[a] += x[b]; x[d] = _rotl(x[d] ^ x[a], 8)
    x[c] += x[d]; x[b] = _rotl(x[b] ^ x[c], 7)


cdef void _chacha_block(const uint32_t *s, uint8_t *out) noexcept:
    cdef uint32_t x[16]
    cdef int i, r
    for i in range(16):
        x[i] = s[i]
    for r in range(10):
        _chacha_qr(x, 0, 4, 8, 12)
        _chacha_qr(x, 1, 5, 9, 13)
        _chacha_qr(x, 2, 6, 10, 14)
        _chacha_qr(x, 3, 7, 11, 15)
        _chacha_qr(x, 0, 5, 10, 15)
        _chacha_qr(x, 1, 6, 11, 12)
        _chacha_qr(x, 2, 7, 8, 13)
        _chacha_qr(x, 3, 4, 9, 14)
    cdef uint32_t w
    for i in range(16):
        w = x[i] + s[i]
        out[4 * i] = <uint8_t> w
        out[4 * i + 1] = <uint8_t> (w >> 8)
        out[4 * i + 2] = <uint8_t> (w >> 16)
        out[4 * i + 3] = <uint8_t> (w >> 24)


def salsa20_xor(const uint8_t[::1] key not None, const uint8_t[::1] nonce not None,
                unsigned long long counter, const uint8_t[::1] data not None):
    """XOR data with the Salsa20 keystream starting at block ``counter``."""
    if nonce.shape[0] != 8:
        raise ValueError("nonce must be 8 bytes")
    cdef uint32_t c[4]
    cdef uint32_t k[8]
    _fill_key_words(key, c, k)
    cdef uint32_t s[16]
    s[0] = c[0]
    s[1] = k[0]; s[2] = k[1]; s[3] = k[2]; s[4] = k[3]
    s[5] = c[1]
    s[6] = _load_le(&nonce[0]); s[7] = _load_le(&nonce[4])
    s[8] = <uint32_t> counter; s[9] = <uint32_t> (counter >> 32)
    s[10] = c[2]
    s[11] = k[4]; s[12] = k[5]; s[13] = k[6]; s[14] = k[7]
    s[15] = c[3]
    return _xor_stream(s, 8, 9, &data[0] if data.shape[0] else NULL, data.shape[0])


def chacha20_xor(const uint8_t[::1] key not None, const uint8_t[::1] nonce not None,
                 unsigned long long counter, const uint8_t[::1] data not None):
    """XOR data with the ChaCha20 keystream starting at block ``counter``."""
    if nonce.shape[0] != 8:
        raise ValueError("nonce must be 8 bytes")
    cdef uint32_t c[4]
    cdef uint32_t k[8]
    _fill_key_words(key, c, k)
    cdef uint32_t s[16]
    cdef int i
    for i in range(4):
        s[i] = c[i]
    for i in range(8):
        s[4 + i] = k[i]
    s[12] = <uint32_t> counter; s[13] = <uint32_t> (counter >> 32)
    s[14] = _load_le(&nonce[0]); s[15] = _load_le(&nonce[4])
    return _xor_stream(s, 12, 13, &data[0] if data.shape[0] else NULL, data.shape[0])


cdef object _xor_stream(uint32_t *s, int lo, int hi, const uint8_t *data, Py_ssize_t n):
    out = PyBytes_FromStringAndSize(NULL, n)
    if n == 0:
        return out
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef uint8_t block[64]
    cdef Py_ssize_t off = 0
    cdef int i, m
    cdef bint is_salsa = lo == 8
    while off < n:
        if is_salsa:
            _salsa_block(s, block)
        else:
            _chacha_block(s, block)
        m = 64 if n - off >= 64 else <int> (n - off)
        for i in range(m):
            o[off + i] = data[off + i] ^ block[i]
        s[lo] += 1
        if s[lo] == 0:
            s[hi] += 1
        off += 64
    return out
