"""Salsa20/ChaCha20: state construction, cores, XOR, and seeking."""

import random
import struct

import pytest

from cipherbench import (
    CipherId,
    CounterOverflowError,
    KeyLengthError,
    NonceLengthError,
    build_state,
    keystream_xor,
    seek_block,
)
from cipherbench.stream import (
    SIGMA,
    TAU,
    chacha20_core,
    chacha20_quarter_round,
    salsa20_core,
)

MASK32 = 0xFFFFFFFF


def test_constants_come_from_the_ascii_strings():
    assert SIGMA == struct.unpack("<4I", b"expand 32-byte k")
    assert TAU == struct.unpack("<4I", b"expand 16-byte k")


def test_salsa_state_layout():
    key = bytes(range(32))
    nonce = bytes.fromhex("0001020304050607")
    state = build_state(CipherId.SALSA20, key, nonce, (5 << 32) | 7)
    kw = struct.unpack("<8I", key)
    assert state[0] == SIGMA[0] and state[5] == SIGMA[1]
    assert state[10] == SIGMA[2] and state[15] == SIGMA[3]
    assert tuple(state[1:5]) == kw[:4] and tuple(state[11:15]) == kw[4:]
    assert tuple(state[6:8]) == struct.unpack("<2I", nonce)
    assert state[8] == 7 and state[9] == 5  # (t0, t1) little-endian split


def test_chacha_state_layout():
    key = bytes(range(32))
    nonce = bytes.fromhex("0001020304050607")
    state = build_state(CipherId.CHACHA20, key, nonce, (5 << 32) | 7)
    assert tuple(state[:4]) == SIGMA
    assert tuple(state[4:12]) == struct.unpack("<8I", key)
    assert state[12] == 7 and state[13] == 5
    assert tuple(state[14:16]) == struct.unpack("<2I", nonce)


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_16_byte_keys_repeat_and_select_the_16_byte_constants(cipher):
    key = bytes(range(16))
    state = build_state(cipher, key, bytes(8), 0)
    kw = struct.unpack("<4I", key)
    if cipher is CipherId.SALSA20:
        assert (state[0], state[5], state[10], state[15]) == TAU
        assert tuple(state[1:5]) == kw and tuple(state[11:15]) == kw
    else:
        assert tuple(state[:4]) == TAU
        assert tuple(state[4:8]) == kw and tuple(state[8:12]) == kw


def test_zero_counter_state():
    state = build_state(CipherId.SALSA20, bytes(32), bytes(8), 0)
    assert state[8] == 0 and state[9] == 0


def test_build_state_errors():
    with pytest.raises(KeyLengthError):
        build_state(CipherId.SALSA20, bytes(24), bytes(8), 0)
    # the 96-bit IETF nonce variant is out of scope
    with pytest.raises(NonceLengthError):
        build_state(CipherId.CHACHA20, bytes(32), bytes(12), 0)
    with pytest.raises(CounterOverflowError):
        build_state(CipherId.CHACHA20, bytes(32), bytes(8), 1 << 64)


# eSTREAM reference, 128-bit key 80 00 .. 00, zero nonce, first block
SALSA_ESTREAM_BLOCK0 = bytes.fromhex(
    "4dfa5e481da23ea09a31022050859936da52fcee218005164f267cb65f5cfd7f"
    "2b4f97e0ff16924a52df269515110a07f9e460bc65ef95da58f740b7d1dbb0aa"
)

# published reference, 256-bit zero key, zero nonce, first block
CHACHA_REF_BLOCK0 = bytes.fromhex(
    "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7"
    "da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586"
)


def test_salsa20_core_reference_block():
    state = build_state(CipherId.SALSA20, b"\x80" + bytes(15), bytes(8), 0)
    assert salsa20_core(state) == SALSA_ESTREAM_BLOCK0


def test_chacha20_core_reference_block():
    state = build_state(CipherId.CHACHA20, bytes(32), bytes(8), 0)
    assert chacha20_core(state) == CHACHA_REF_BLOCK0


@pytest.mark.parametrize(
    "cipher,core", [(CipherId.SALSA20, salsa20_core), (CipherId.CHACHA20, chacha20_core)]
)
def test_feed_forward_makes_core_non_permutation(cipher, core):
    # with a zero key/nonce/counter the input words are just the constants;
    # the feed-forward addition guarantees the output is not a permutation
    # of the input words and never the zero block
    state = build_state(cipher, bytes(32), bytes(8), 0)
    out = core(state)
    assert out != bytes(64)
    out_words = struct.unpack("<16I", out)
    assert set(out_words) != set(state)


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_consecutive_counters_differ(cipher):
    key = bytes(32)
    assert seek_block(cipher, key, bytes(8), 0) != seek_block(cipher, key, bytes(8), 1)


def test_quarter_round_published_example():
    out = chacha20_quarter_round(0x11111111, 0x01020304, 0x9B8D6F43, 0x01234567)
    assert out == (0xEA2A92F4, 0xCB1CF8CE, 0x4581472E, 0x5881C4BB)


def _inverse_quarter_round(a, b, c, d):
    def rotr(x, n):
        return ((x >> n) | (x << (32 - n))) & MASK32

    b = rotr(b, 7) ^ c
    c = (c - d) & MASK32
    d = rotr(d, 8) ^ a
    a = (a - b) & MASK32
    b = rotr(b, 12) ^ c
    c = (c - d) & MASK32
    d = rotr(d, 16) ^ a
    a = (a - b) & MASK32
    return a, b, c, d


def test_quarter_round_inverse_restores_inputs():
    rng = random.Random(0x04B)
    for _ in range(500):
        words = tuple(rng.getrandbits(32) for _ in range(4))
        assert _inverse_quarter_round(*chacha20_quarter_round(*words)) == words


def test_quarter_round_bijection_on_sampled_pairs():
    rng = random.Random(2)
    seen = {}
    for _ in range(300):
        words = tuple(rng.getrandbits(32) for _ in range(4))
        out = chacha20_quarter_round(*words)
        assert seen.setdefault(out, words) == words


def test_keystream_xor_empty():
    assert keystream_xor(CipherId.CHACHA20, bytes(32), bytes(8), 0, b"") == b""


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_keystream_xor_involution(cipher):
    rng = random.Random(0x10)
    for n in (1, 63, 64, 65, 1000):
        key, nonce, data = rng.randbytes(32), rng.randbytes(8), rng.randbytes(n)
        once = keystream_xor(cipher, key, nonce, 3, data)
        assert keystream_xor(cipher, key, nonce, 3, once) == data


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_130_bytes_consume_three_blocks(cipher):
    key, nonce = b"\x44" * 32, bytes.fromhex("1122334455667788")
    out = keystream_xor(cipher, key, nonce, 9, bytes(130))
    blocks = [seek_block(cipher, key, nonce, 9 + i) for i in range(3)]
    assert out[:64] == blocks[0]
    assert out[64:128] == blocks[1]
    # bytes 128..129 come from the third block
    assert out[128:] == blocks[2][:2]


def sequential_blocks(cipher, key, nonce, start, count):
    """Independent oracle: step the counter words one block at a time."""
    state = build_state(cipher, key, nonce, start)
    lo, hi = (8, 9) if cipher is CipherId.SALSA20 else (12, 13)
    core = salsa20_core if cipher is CipherId.SALSA20 else chacha20_core
    blocks = []
    for _ in range(count):
        blocks.append(core(state))
        state[lo] = (state[lo] + 1) & MASK32
        if state[lo] == 0:
            state[hi] = (state[hi] + 1) & MASK32
    return blocks


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_seek_matches_sequential_generation(cipher):
    key, nonce = b"\x21" * 32, b"\x05" * 8
    generated = sequential_blocks(cipher, key, nonce, 0, 1001)
    for n in (0, 1, 5, 1000):
        assert seek_block(cipher, key, nonce, n) == generated[n]


@pytest.mark.parametrize("cipher", [CipherId.SALSA20, CipherId.CHACHA20])
def test_seek_across_counter_word_rollover(cipher):
    # stepping sequentially over the 2^32 boundary must agree with the
    # direct split of the 64-bit index into (t0, t1)
    key, nonce = b"\x66" * 32, b"\x01" * 8
    start = (1 << 32) - 2
    generated = sequential_blocks(cipher, key, nonce, start, 3)
    assert seek_block(cipher, key, nonce, start) == generated[0]
    assert seek_block(cipher, key, nonce, (1 << 32) - 1) == generated[1]
    assert seek_block(cipher, key, nonce, 1 << 32) == generated[2]
    # and the bulk XOR path crosses the same boundary identically
    stream = keystream_xor(cipher, key, nonce, start, bytes(192))
    assert stream == b"".join(generated)


def test_keystream_determinism():
    a = seek_block(CipherId.CHACHA20, b"\x01" * 32, b"\x02" * 8, 77)
    b = seek_block(CipherId.CHACHA20, b"\x01" * 32, b"\x02" * 8, 77)
    assert a == b and len(a) == 64


def test_distinct_nonces_yield_distinct_first_blocks():
    rng = random.Random(0xD1)
    key = rng.randbytes(32)
    nonces = {rng.randbytes(8) for _ in range(64)}
    for cipher in (CipherId.SALSA20, CipherId.CHACHA20):
        blocks = {seek_block(cipher, key, nonce, 0) for nonce in nonces}
        assert len(blocks) == len(nonces)


def test_counter_overflow_is_an_error():
    with pytest.raises(CounterOverflowError):
        keystream_xor(CipherId.CHACHA20, bytes(32), bytes(8), (1 << 64) - 1, bytes(128))
    with pytest.raises(CounterOverflowError):
        seek_block(CipherId.SALSA20, bytes(32), bytes(8), 1 << 64)
    # the last representable block is still reachable
    seek_block(CipherId.SALSA20, bytes(32), bytes(8), (1 << 64) - 1)
