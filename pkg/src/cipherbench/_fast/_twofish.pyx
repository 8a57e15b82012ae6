# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Twofish core (128-bit keys) with full-keying table precompute.

The schedule blob is 40 round-subkey words followed by four 256-entry
tables holding the key-dependent S-boxes with the MDS multiply folded in,
all as native words: g(x) reduces to four lookups and three XORs. The
q0/q1 permutations are supplied by the caller (single source of truth in
cipherbench.block.twofish). Results must stay bit-identical to the pure
on-the-fly implementation.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdint cimport uint8_t, uint32_t

cdef Py_ssize_t BLOB_WORDS = 40 + 4 * 256


cdef uint8_t _gf_mul(int a, int b, int poly) noexcept:
    cdef int r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= poly
        b >>= 1
    return <uint8_t> r

cdef int MDS_POLY = 0x169
cdef int RS_POLY = 0x14D

cdef uint8_t RS[4][8]
cdef uint8_t MDS[4][4]

cdef void _init_matrices() noexcept:
    cdef uint8_t rs[32]
    cdef uint8_t mds[16]
    cdef int i
    rs_flat = [0x01, 0xA4, 0x55, 0x87, 0x5A, 0x58, 0xDB, 0x9E,
               0xA4, 0x56, 0x82, 0xF3, 0x1E, 0xC6, 0x68, 0xE5,
               0x02, 0xA1, 0xFC, 0xC1, 0x47, 0xAE, 0x3D, 0x19,
               0xA4, 0x55, 0x87, 0x5A, 0x58, 0xDB, 0x9E, 0x03]
    mds_flat = [0x01, 0xEF, 0x5B, 0x5B,
                0x5B, 0xEF, 0xEF, 0x01,
                0xEF, 0x5B, 0x01, 0xEF,
                0xEF, 0x01, 0xEF, 0x5B]
    for i in range(32):
        RS[i // 8][i % 8] = <uint8_t> rs_flat[i]
    for i in range(16):
        MDS[i // 4][i % 4] = <uint8_t> mds_flat[i]

_init_matrices()


cdef inline uint32_t _rol32(uint32_t x, int n) noexcept:
    return (x << n) | (x >> (32 - n))

cdef inline uint32_t _ror32(uint32_t x, int n) noexcept:
    return (x >> n) | (x << (32 - n))


cdef uint32_t _h(uint32_t x, uint32_t l0, uint32_t l1, const uint8_t *q0, const uint8_t *q1) noexcept:
    cdef uint8_t y0 = <uint8_t> x, y1 = <uint8_t> (x >> 8), y2 = <uint8_t> (x >> 16), y3 = <uint8_t> (x >> 24)
    cdef uint32_t word = 0
    cdef uint8_t y[4]
    cdef int row
    cdef uint8_t acc
    y0 = q0[y0] ^ <uint8_t> l1
    y1 = q1[y1] ^ <uint8_t> (l1 >> 8)
    y2 = q0[y2] ^ <uint8_t> (l1 >> 16)
    y3 = q1[y3] ^ <uint8_t> (l1 >> 24)
    y0 = q0[y0] ^ <uint8_t> l0
    y1 = q0[y1] ^ <uint8_t> (l0 >> 8)
    y2 = q1[y2] ^ <uint8_t> (l0 >> 16)
    y3 = q1[y3] ^ <uint8_t> (l0 >> 24)
    y[0] = q1[y0]; y[1] = q0[y1]; y[2] = q1[y2]; y[3] = q0[y3]
    for row in range(4):
        acc = 0
        acc ^= _gf_mul(MDS[row][0], y[0], MDS_POLY)
        acc ^= _gf_mul(MDS[row][1], y[1], MDS_POLY)
        acc ^= _gf_mul(MDS[row][2], y[2], MDS_POLY)
        acc ^= _gf_mul(MDS[row][3], y[3], MDS_POLY)
        word |= (<uint32_t> acc) << (8 * row)
    return word


def expand_key(const uint8_t[::1] key not None,
               const uint8_t[::1] q0 not None, const uint8_t[::1] q1 not None):
    """Expand a 16-byte key into the (subkeys + full S-box tables) blob."""
    if key.shape[0] != 16:
        raise ValueError("Twofish key must be 16 bytes")
    if q0.shape[0] != 256 or q1.shape[0] != 256:
        raise ValueError("bad q permutation tables")
    out = PyBytes_FromStringAndSize(NULL, 4 * BLOB_WORDS)
    cdef uint32_t *blob = <uint32_t *> PyBytes_AS_STRING(out)
    cdef uint32_t *k = blob
    cdef uint32_t *tab = blob + 40

    cdef uint32_t m[4]
    cdef int i, row, col, v
    for i in range(4):
        m[i] = (<uint32_t> key[4 * i]) | (<uint32_t> key[4 * i + 1] << 8) \
             | (<uint32_t> key[4 * i + 2] << 16) | (<uint32_t> key[4 * i + 3] << 24)

    # RS-derived S-box words: s1 from key bytes 0..7, s0 from bytes 8..15.
    cdef uint32_t s0 = 0, s1 = 0
    cdef uint8_t acc
    for row in range(4):
        acc = 0
        for col in range(8):
            acc ^= _gf_mul(RS[row][col], key[col], RS_POLY)
        s1 |= (<uint32_t> acc) << (8 * row)
        acc = 0
        for col in range(8):
            acc ^= _gf_mul(RS[row][col], key[8 + col], RS_POLY)
        s0 |= (<uint32_t> acc) << (8 * row)

    cdef uint32_t rho = 0x01010101
    cdef uint32_t a, b
    for i in range(20):
        a = _h((<uint32_t> (2 * i)) * rho, m[0], m[2], &q0[0], &q1[0])
        b = _rol32(_h((<uint32_t> (2 * i + 1)) * rho, m[1], m[3], &q0[0], &q1[0]), 8)
        k[2 * i] = a + b
        k[2 * i + 1] = _rol32(a + 2 * b, 9)

    # Full keying: fold the two-stage keyed substitution and the MDS
    # column multiply into one table per byte lane.
    cdef uint8_t sub
    for v in range(256):
        sub = q1[(q0[(q0[v] ^ <uint8_t> s1) & 0xFF] ^ <uint8_t> s0) & 0xFF]
        tab[v] = _mds_column(sub, 0)
        sub = q0[(q0[(q1[v] ^ <uint8_t> (s1 >> 8)) & 0xFF] ^ <uint8_t> (s0 >> 8)) & 0xFF]
        tab[256 + v] = _mds_column(sub, 1)
        sub = q1[(q1[(q0[v] ^ <uint8_t> (s1 >> 16)) & 0xFF] ^ <uint8_t> (s0 >> 16)) & 0xFF]
        tab[512 + v] = _mds_column(sub, 2)
        sub = q0[(q1[(q1[v] ^ <uint8_t> (s1 >> 24)) & 0xFF] ^ <uint8_t> (s0 >> 24)) & 0xFF]
        tab[768 + v] = _mds_column(sub, 3)
    return out


cdef uint32_t _mds_column(uint8_t y, int col) noexcept:
    cdef uint32_t word = 0
    cdef int row
    for row in range(4):
        word |= (<uint32_t> _gf_mul(MDS[row][col], y, MDS_POLY)) << (8 * row)
    return word


cdef inline uint32_t _g(const uint32_t *tab, uint32_t x) noexcept:
    return (tab[x & 0xFF] ^ tab[256 + ((x >> 8) & 0xFF)]
            ^ tab[512 + ((x >> 16) & 0xFF)] ^ tab[768 + (x >> 24)])


cdef inline int _check_blob(const uint8_t[::1] blob) except -1:
    if blob.shape[0] != 4 * BLOB_WORDS:
        raise ValueError("bad schedule blob")
    return 0


cdef inline uint32_t _load_le(const uint8_t *p) noexcept:
    return (<uint32_t> p[0]) | (<uint32_t> p[1] << 8) | (<uint32_t> p[2] << 16) | (<uint32_t> p[3] << 24)

cdef inline void _store_le(uint8_t *p, uint32_t w) noexcept:
    p[0] = <uint8_t> w
    p[1] = <uint8_t> (w >> 8)
    p[2] = <uint8_t> (w >> 16)
    p[3] = <uint8_t> (w >> 24)


cdef void _encrypt(const uint32_t *k, const uint32_t *tab,
                   const uint8_t *inp, uint8_t *out) noexcept:
    cdef uint32_t r0 = _load_le(inp) ^ k[0]
    cdef uint32_t r1 = _load_le(inp + 4) ^ k[1]
    cdef uint32_t r2 = _load_le(inp + 8) ^ k[2]
    cdef uint32_t r3 = _load_le(inp + 12) ^ k[3]
    cdef uint32_t t0, t1, f0, f1, tmp0, tmp1
    cdef int rnd
    for rnd in range(16):
        t0 = _g(tab, r0)
        t1 = _g(tab, _rol32(r1, 8))
        f0 = t0 + t1 + k[2 * rnd + 8]
        f1 = t0 + 2 * t1 + k[2 * rnd + 9]
        tmp0 = _ror32(r2 ^ f0, 1)
        tmp1 = _rol32(r3, 1) ^ f1
        r2 = r0; r3 = r1; r0 = tmp0; r1 = tmp1
    _store_le(out, r2 ^ k[4])
    _store_le(out + 4, r3 ^ k[5])
    _store_le(out + 8, r0 ^ k[6])
    _store_le(out + 12, r1 ^ k[7])


cdef void _decrypt(const uint32_t *k, const uint32_t *tab,
                   const uint8_t *inp, uint8_t *out) noexcept:
    cdef uint32_t r0 = _load_le(inp + 8) ^ k[6]
    cdef uint32_t r1 = _load_le(inp + 12) ^ k[7]
    cdef uint32_t r2 = _load_le(inp) ^ k[4]
    cdef uint32_t r3 = _load_le(inp + 4) ^ k[5]
    cdef uint32_t t0, t1, f0, f1, tmp2, tmp3
    cdef int rnd
    for rnd in range(15, -1, -1):
        t0 = _g(tab, r2)
        t1 = _g(tab, _rol32(r3, 8))
        f0 = t0 + t1 + k[2 * rnd + 8]
        f1 = t0 + 2 * t1 + k[2 * rnd + 9]
        tmp2 = _rol32(r0, 1) ^ f0
        tmp3 = _ror32(r1 ^ f1, 1)
        r0 = r2; r1 = r3; r2 = tmp2; r3 = tmp3
    _store_le(out, r0 ^ k[0])
    _store_le(out + 4, r1 ^ k[1])
    _store_le(out + 8, r2 ^ k[2])
    _store_le(out + 12, r3 ^ k[3])


def encrypt_block(const uint8_t[::1] blob not None, const uint8_t[::1] block not None):
    _check_blob(blob)
    if block.shape[0] != 16:
        raise ValueError("Twofish block must be 16 bytes")
    cdef const uint32_t *words = <const uint32_t *> &blob[0]
    out = PyBytes_FromStringAndSize(NULL, 16)
    _encrypt(words, words + 40, &block[0], <uint8_t *> PyBytes_AS_STRING(out))
    return out


def decrypt_block(const uint8_t[::1] blob not None, const uint8_t[::1] block not None):
    _check_blob(blob)
    if block.shape[0] != 16:
        raise ValueError("Twofish block must be 16 bytes")
    cdef const uint32_t *words = <const uint32_t *> &blob[0]
    out = PyBytes_FromStringAndSize(NULL, 16)
    _decrypt(words, words + 40, &block[0], <uint8_t *> PyBytes_AS_STRING(out))
    return out


def cbc_encrypt(const uint8_t[::1] blob not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-encrypt pre-padded data (length a multiple of 16)."""
    _check_blob(blob)
    cdef Py_ssize_t n = data.shape[0]
    if iv.shape[0] != 16 or n % 16 != 0:
        raise ValueError("bad argument length")
    cdef const uint32_t *words = <const uint32_t *> &blob[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef uint8_t buf[16]
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 16):
        for i in range(16):
            buf[i] = data[off + i] ^ prev[i]
        _encrypt(words, words + 40, buf, o + off)
        prev = o + off
    return out


def cbc_decrypt(const uint8_t[::1] blob not None, const uint8_t[::1] iv not None,
                const uint8_t[::1] data not None):
    """CBC-decrypt ciphertext (length a multiple of 16); no unpadding."""
    _check_blob(blob)
    cdef Py_ssize_t n = data.shape[0]
    if iv.shape[0] != 16 or n % 16 != 0:
        raise ValueError("bad argument length")
    cdef const uint32_t *words = <const uint32_t *> &blob[0]
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef uint8_t *o = <uint8_t *> PyBytes_AS_STRING(out)
    cdef const uint8_t *prev = &iv[0]
    cdef Py_ssize_t off
    cdef int i
    for off in range(0, n, 16):
        _decrypt(words, words + 40, &data[off], o + off)
        for i in range(16):
            o[off + i] ^= prev[i]
        prev = &data[off]
    return out
