"""Blowfish primitives: pi-derived tables, key schedule, block ops."""

import random

import pytest

from cipherbench.block.blowfish import (
    PI_WORDS,
    blowfish_decrypt_block,
    blowfish_encrypt_block,
    blowfish_expand_key,
)
from cipherbench.errors import KeyLengthError, LengthError


def test_pre_keying_p0_is_pi_fraction():
    assert PI_WORDS[0] == 0x243F6A88


def test_pi_tables_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.prec = 1042 * 32 + 64
    x = mpmath.mp.pi - 3
    for i in range(1042):
        x = x * (1 << 32)
        word = int(x)
        x -= word
        assert PI_WORDS[i] == word, f"pi word {i} mismatch"


def test_subkey_material_is_4168_bytes_for_every_key_length():
    for n in (4, 5, 16, 32, 56):
        assert blowfish_expand_key(bytes([0x5A] * n)).total_bytes == 4168


def test_designer_zero_vector():
    sk = blowfish_expand_key(bytes(8))
    assert blowfish_encrypt_block(bytes(8), sk).hex() == "4ef997456198dd78"
    assert blowfish_decrypt_block(bytes.fromhex("4ef997456198dd78"), sk) == bytes(8)


@pytest.mark.parametrize("n", [0, 1, 3, 57, 64])
def test_key_length_errors(n):
    with pytest.raises(KeyLengthError):
        blowfish_expand_key(bytes(n))


def test_single_bit_key_flips_change_ciphertext():
    base_key = b"\x13\x37\x00\x42\x99\xab\xcd\xef"
    block = bytes.fromhex("0123456789abcdef")
    base_ct = blowfish_encrypt_block(block, blowfish_expand_key(base_key))
    for bit in (0, 17, 42, 63):
        flipped = bytearray(base_key)
        flipped[bit // 8] ^= 1 << (bit % 8)
        ct = blowfish_encrypt_block(block, blowfish_expand_key(bytes(flipped)))
        assert ct != base_ct


def test_inverse_on_random_blocks():
    rng = random.Random(0xBF)
    sk = blowfish_expand_key(rng.randbytes(16))
    for _ in range(1000):
        block = rng.randbytes(8)
        assert blowfish_decrypt_block(blowfish_encrypt_block(block, sk), sk) == block


def test_zero_roundtrip():
    sk = blowfish_expand_key(b"benchkey")
    assert blowfish_decrypt_block(blowfish_encrypt_block(bytes(8), sk), sk) == bytes(8)


@pytest.mark.parametrize("n", [0, 7, 9, 16])
def test_block_length_errors(n):
    sk = blowfish_expand_key(bytes(8))
    with pytest.raises(LengthError):
        blowfish_encrypt_block(bytes(n), sk)
    with pytest.raises(LengthError):
        blowfish_decrypt_block(bytes(n), sk)
