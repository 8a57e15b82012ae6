"""Twofish primitives: PHT, key schedule, block ops, iterated chain."""

import random

import pytest

from cipherbench.block.twofish import (
    pht,
    twofish_decrypt_block,
    twofish_encrypt_block,
    twofish_expand_key,
)
from cipherbench.errors import KeyLengthError, LengthError

MASK32 = 0xFFFFFFFF


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (0, 0, (0, 0)),
        (1, 1, (2, 3)),
        (0xFFFFFFFF, 1, (0, 1)),
        (0x01234567, 0x89ABCDEF, (0x8ACF1356, 0x147AE145)),
    ],
)
def test_pht_examples(a, b, expected):
    assert pht(a, b) == expected


def test_pht_is_linear_mod_2_32():
    rng = random.Random(0x9417)
    for _ in range(200):
        a1, a2, b1, b2 = (rng.getrandbits(32) for _ in range(4))
        lhs = pht((a1 + a2) & MASK32, (b1 + b2) & MASK32)
        p1, p2 = pht(a1, b1), pht(a2, b2)
        rhs = ((p1[0] + p2[0]) & MASK32, (p1[1] + p2[1]) & MASK32)
        assert lhs == rhs


def test_expand_key_shapes():
    sk = twofish_expand_key(bytes(16))
    assert len(sk.k) == 40
    assert all(0 <= w <= MASK32 for w in sk.k)
    # S-box material is half the key length
    assert len(sk.sbox_key) == 8


@pytest.mark.parametrize("n", [0, 8, 15, 20, 24, 32])
def test_expand_key_rejects_wrong_lengths(n):
    with pytest.raises(KeyLengthError):
        twofish_expand_key(bytes(n))


def test_designer_zero_vector():
    sk = twofish_expand_key(bytes(16))
    ct = twofish_encrypt_block(bytes(16), sk)
    assert ct.hex() == "9f589f5cf6122c32b6bfec2f2ae8c35a"
    assert twofish_decrypt_block(ct, sk) == bytes(16)


def test_iterated_chain_49_steps():
    # designers' chained procedure: the key of step i+1 is the plaintext
    # of step i, the plaintext of step i+1 is the ciphertext of step i
    key = pt = bytes(16)
    ct = b""
    for _ in range(49):
        ct = twofish_encrypt_block(pt, twofish_expand_key(key))
        key, pt = pt, ct
    assert ct.hex() == "5d9d4eeffa9151575524f115815a12e0"


def test_inverse_on_random_blocks():
    rng = random.Random(0x7F15)
    sk = twofish_expand_key(rng.randbytes(16))
    for _ in range(1000):
        block = rng.randbytes(16)
        assert twofish_decrypt_block(twofish_encrypt_block(block, sk), sk) == block


@pytest.mark.parametrize("n", [0, 8, 15, 17])
def test_block_length_errors(n):
    sk = twofish_expand_key(bytes(16))
    with pytest.raises(LengthError):
        twofish_encrypt_block(bytes(n), sk)
    with pytest.raises(LengthError):
        twofish_decrypt_block(bytes(n), sk)
