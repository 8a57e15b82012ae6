# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Blowfish core: key expansion, block ops, and fused CBC loops.

The canonical pre-keying tables are supplied by the caller as 4168 bytes
of little-endian words (single source of truth in cipherbench.block.
blowfish). Schedules are passed around as the same 4168-byte layout:
18 P words followed by 4x256 S words.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdint cimport uint8_t, uint32_t

cdef Py_ssize_t N_WORDS = 1042  # 18 + 4 * 256


cdef inline uint32_t _load_le(const uint8_t *p) noexcept:
    return (<uint32_t> p[0]) | (<uint32_t> p[1] << 8) | (<uint32_t> p[2] << 16) | (<uint32_t> p[3] << 24)


cdef inline uint32_t _f(const uint32_t *s, uint32_t x) noexcept:
    return (((s[x >> 24] + s[256 + ((x >> 16) & 0xFF)]) ^ s[512 + ((x >> 8) & 0xFF)])
            + s[768 + (x & 0xFF)])


cdef void _encrypt_words(const uint32_t *p, const uint32_t *s,
                         uint32_t *left, uint32_t *right) noexcept:
    cdef uint32_t l = left[0], r = right[0], tmp
    cdef int i
    for i in range(16):
        l ^= p[i]
        r ^= _f(s, l)
        tmp = l; l = r; r = tmp
    tmp = l; l = r; r = tmp
    left[0] = l ^ p[17]
    right[0] = r ^ p[16]


cdef void _decrypt_words(const uint32_t *p, const uint32_t *s,
                         uint32_t *left, uint32_t *right) noexcept:
    cdef uint32_t l = left[0], r = right[0], tmp
    cdef int i
    for i in range(17, 1, -1):
        l ^= p[i]
        r ^= _f(s, l)
        tmp = l; l = r; r = tmp
    tmp = l; l = r; r = tmp
    left[0] = l ^ p[0]
    right[0] = r ^ p[1]


def expand_key(const uint8_t[::1] key not None, const uint8_t[::1] init_blob not None):
    """Expand a 4..56 byte key; returns the 4168-byte schedule blob."""
    cdef int klen = <int> key.shape[0]
    if not 4 <= klen <= 56:
        raise ValueError("Blowfish key must be 4..56 bytes")
    if init_blob.shape[0] != 4 * N_WORDS:
        raise ValueError("bad init table blob")
    out = PyBytes_FromStringAndSize(NULL, 4 * N_WORDS)
    cdef uint32_t *words = <uint32_t *> PyBytes_AS_STRING(out)
    cdef uint32_t *p = words
    cdef uint32_t *s = words + 18
    cdef int i, k, j = 0
    cdef uint32_t w, l = 0, r = 0
    for i in range(N_WORDS):
        words[i] = _load_le(&init_blob[4 * i])
    for i in range(18):
        w = 0
        for k in range(4):
            w = (w << 8) | key[j]
            j += 1
            if j == klen:
                j = 0
        p[i] ^= w
    for i in range(0, 18, 2):
        _encrypt_words(p, s, &l, &r)
        p[i] = l
        p[i + 1] = r
    for i in range(0, 1024, 2):
        _encrypt_words(p, s, &l, &r)
        s[i] = l
        s[i + 1] = r
    return out


cdef inline int _check_sched(const uint8_t[::1] sched) except -1:
    if sched.shape[0] != 4 * N_WORDS:
        raise ValueError("bad schedule blob")
    return 0


def encrypt_block(const uint8_t[::1] sched not None, const uint8_t[::1] block not None):
    _check_sched(sched)
    if block.shape[0] != 8:
        raise ValueError("Blowfish block must be 8 bytes")
    cdef const uint32_t *words = <const uint32_t *> &sched[0]
    cdef uint32_t l = (<uint32_t> block[0] << 24) | (<uint32_t> block[1] << 16) | (<uint32_t> block[2] << 8) | block[3]
    cdef uint32_t r = (<uint32_t> block[4] << 24) | (<uint32_t> block[5] << 16) | (<uint32_t> block[6] << 8) | block[7]
    _encrypt_words(words, words + 18, &l, &r)
    out = PyBytes_FromStringAndSize(NULL, 8)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    _store_be(o, l); _store_be(o + 4, r)
    return out


def decrypt_block(const uint8_t[::1] sched not None, const uint8_t[::1] block not None):
    _check_sched(sched)
    if block.shape[0] != 8:
        raise ValueError("Blowfish block must be 8 bytes")
    cdef const uint32_t *words = <const uint32_t *> &sched[0]
    cdef uint32_t l = (<uint32_t> block[0] << 24) | (<uint32_t> block[1] << 16) | (<uint32_t> block[2] << 8) | block[3]
    cdef uint32_t r = (<uint32_t> block[4] << 24) | (<uint32_t> block[5] << 16) | (<uint32_t> block[6] << 8) | block[7]
    _decrypt_words(words, words + 18, &l, &r)
    out = PyBytes_FromStringAndSize(NULL, 8)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    _store_be(o, l); _store_be(o + 4, r)
    return out


cdef inline void _store_be(uint8_t *p, uint32_t w) noexcept:
    p[0] = <uint8_t> (w >> 24)
    p[1] = <uint8_t> (w >> 16)
    p[2] = <uint8_t> (w >> 8)
    p[3] = <uint8_t> w


def cbc_encrypt(const uint8_t[::1] sched not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-encrypt pre-padded data (length a multiple of 8)."""
    _check_sched(sched)
    cdef Py_ssize_t n = data.shape[0]
    if iv.shape[0] != 8 or n % 8 != 0:
        raise ValueError("bad argument length")
    cdef const uint32_t *words = <const uint32_t *> &sched[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef uint8_t buf[8]
    cdef uint32_t l, r
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 8):
        for i in range(8):
            buf[i] = data[off + i] ^ prev[i]
        l = (<uint32_t> buf[0] << 24) | (<uint32_t> buf[1] << 16) | (<uint32_t> buf[2] << 8) | buf[3]
        r = (<uint32_t> buf[4] << 24) | (<uint32_t> buf[5] << 16) | (<uint32_t> buf[6] << 8) | buf[7]
        _encrypt_words(words, words + 18, &l, &r)
        _store_be(o + off, l)
        _store_be(o + off + 4, r)
        prev = o + off
    return out


def cbc_decrypt(const uint8_t[::1] sched not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-decrypt ciphertext (length a multiple of 8); no unpadding."""
    _check_sched(sched)
    cdef Py_ssize_t n = data.shape[0]
    if iv.shape[0] != 8 or n % 8 != 0:
        raise ValueError("bad argument length")
    cdef const uint32_t *words = <const uint32_t *> &sched[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef uint32_t l, r
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 8):
        l = (<uint32_t> data[off] << 24) | (<uint32_t> data[off + 1] << 16) | (<uint32_t> data[off + 2] << 8) | data[off + 3]
        r = (<uint32_t> data[off + 4] << 24) | (<uint32_t> data[off + 5] << 16) | (<uint32_t> data[off + 6] << 8) | data[off + 7]
        _decrypt_words(words, words + 18, &l, &r)
        _store_be(o + off, l)
        _store_be(o + off + 4, r)
        for i in range(8):
            o[off + i] ^= prev[i]
        prev = &data[off]
    return out
