"""Known-answer vector suite.

Vector files live in the packaged ``kat/`` directory, one JSON file per
cipher, holding block vectors, keystream vectors, the iterated Twofish
chain, and the quarter-round / PHT micro-vectors. Every vector was
derived from published reference values or independent implementations
before this library was written; see each file's ``sources`` field.

Each vector is run through the pure implementation and, when built, the
compiled fast path as well; both must reproduce the expected bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from cipherbench import _fast
from cipherbench.block import (
    aes,
    blowfish,
    pht,
    twofish,
)
from cipherbench.core import CipherId
from cipherbench.errors import VectorError
from cipherbench.stream import seek_block, chacha20_quarter_round

FILES = ("aes.json", "blowfish.json", "twofish.json", "salsa20.json", "chacha20.json")


@dataclass(frozen=True)
class VectorResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        suffix = f" ({self.detail})" if (self.detail and not self.ok) else ""
        return f"{status}  {self.name}{suffix}"


def _load(kat_dir: str | Path | None, filename: str) -> dict:
    try:
        if kat_dir is not None:
            text = (Path(kat_dir) / filename).read_text(encoding="utf-8")
        else:
            text = (
                resources.files("cipherbench").joinpath("kat", filename).read_text("utf-8")
            )
    except (OSError, FileNotFoundError) as exc:
        raise VectorError(f"cannot read vector file {filename}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise VectorError(f"vector file {filename} is not valid JSON: {exc}") from exc


def _check(name: str, expected: bytes, actual: bytes) -> VectorResult:
    if expected == actual:
        return VectorResult(name, True)
    return VectorResult(
        name, False, f"expected {expected.hex()} actual {actual.hex()}"
    )


def _block_backends(cipher: CipherId):
    """(label, encrypt(key, pt), decrypt(key, ct)) per available backend."""
    if cipher is CipherId.AES:
        yield (
            "pure",
            lambda k, p: aes.aes128_encrypt_block(p, aes.aes128_expand_key(k)),
            lambda k, c: aes.aes128_decrypt_block(c, aes.aes128_expand_key(k)),
        )
        if _fast.aes is not None:
            yield (
                "fast",
                lambda k, p: _fast.aes.encrypt_block(_fast.aes.expand_key(k), p),
                lambda k, c: _fast.aes.decrypt_block(_fast.aes.expand_key(k), c),
            )
    elif cipher is CipherId.BLOWFISH:
        yield (
            "pure",
            lambda k, p: blowfish.blowfish_encrypt_block(p, blowfish.blowfish_expand_key(k)),
            lambda k, c: blowfish.blowfish_decrypt_block(c, blowfish.blowfish_expand_key(k)),
        )
        if _fast.blowfish is not None:
            init = b"".join(w.to_bytes(4, "little") for w in blowfish.PI_WORDS)
            yield (
                "fast",
                lambda k, p: _fast.blowfish.encrypt_block(_fast.blowfish.expand_key(k, init), p),
                lambda k, c: _fast.blowfish.decrypt_block(_fast.blowfish.expand_key(k, init), c),
            )
    else:
        yield (
            "pure",
            lambda k, p: twofish.twofish_encrypt_block(p, twofish.twofish_expand_key(k)),
            lambda k, c: twofish.twofish_decrypt_block(c, twofish.twofish_expand_key(k)),
        )
        if _fast.twofish is not None:
            q0, q1 = bytes(twofish.Q0), bytes(twofish.Q1)
            yield (
                "fast",
                lambda k, p: _fast.twofish.encrypt_block(_fast.twofish.expand_key(k, q0, q1), p),
                lambda k, c: _fast.twofish.decrypt_block(_fast.twofish.expand_key(k, q0, q1), c),
            )


def _run_block_file(cipher: CipherId, data: dict) -> list[VectorResult]:
    results = []
    for vec in data["block_vectors"]:
        key = bytes.fromhex(vec["key"])
        pt = bytes.fromhex(vec["plaintext"])
        ct = bytes.fromhex(vec["ciphertext"])
        for label, enc, dec in _block_backends(cipher):
            results.append(_check(f"{cipher}/{vec['name']}/encrypt/{label}", ct, enc(key, pt)))
            results.append(_check(f"{cipher}/{vec['name']}/decrypt/{label}", pt, dec(key, ct)))
    return results


def _run_twofish_chain(data: dict) -> list[VectorResult]:
    chain = data["chain"]
    expected = bytes.fromhex(chain["final_ciphertext"])
    key = pt = bytes(16)
    ct = b""
    for _ in range(chain["steps"]):
        ct = twofish.twofish_encrypt_block(pt, twofish.twofish_expand_key(key))
        key, pt = pt, ct
    return [_check(f"Twofish/{chain['name']}", expected, ct)]


def _run_pht(data: dict) -> list[VectorResult]:
    results = []
    for vec in data.get("pht_vectors", ()):
        a, b = int(vec["a"], 16), int(vec["b"], 16)
        expected = (int(vec["a_prime"], 16), int(vec["b_prime"], 16))
        got = pht(a, b)
        ok = got == expected
        detail = "" if ok else f"expected {expected} actual {got}"
        results.append(VectorResult(f"Twofish/pht({vec['a']},{vec['b']})", ok, detail))
    return results


def _run_keystream_file(cipher: CipherId, data: dict) -> list[VectorResult]:
    results = []
    for vec in data["keystream_vectors"]:
        key = bytes.fromhex(vec["key"])
        nonce = bytes.fromhex(vec["nonce"])
        index = vec["block_index"]
        expected = bytes.fromhex(vec["keystream"])
        got = seek_block(cipher, key, nonce, index)
        results.append(_check(f"{cipher}/{vec['name']}/pure", expected, got))
        if _fast.stream is not None:
            fn = (
                _fast.stream.salsa20_xor
                if cipher is CipherId.SALSA20
                else _fast.stream.chacha20_xor
            )
            got_fast = fn(key, nonce, index, bytes(64))
            results.append(_check(f"{cipher}/{vec['name']}/fast", expected, got_fast))
    return results


def _run_quarter_round(data: dict) -> list[VectorResult]:
    results = []
    for vec in data.get("quarter_round_vectors", ()):
        inp = tuple(int(w, 16) for w in vec["input"])
        expected = tuple(int(w, 16) for w in vec["output"])
        got = chacha20_quarter_round(*inp)
        ok = got == expected
        detail = (
            ""
            if ok
            else f"expected {[f'{w:08x}' for w in expected]} actual {[f'{w:08x}' for w in got]}"
        )
        results.append(VectorResult(f"ChaCha20/quarter-round/{vec['name']}", ok, detail))
    return results


def run_all(kat_dir: str | Path | None = None) -> list[VectorResult]:
    """Run every known-answer vector; raises VectorError on missing files."""
    results = []
    data = _load(kat_dir, "aes.json")
    results += _run_block_file(CipherId.AES, data)
    data = _load(kat_dir, "blowfish.json")
    results += _run_block_file(CipherId.BLOWFISH, data)
    data = _load(kat_dir, "twofish.json")
    results += _run_block_file(CipherId.TWOFISH, data)
    results += _run_twofish_chain(data)
    results += _run_pht(data)
    data = _load(kat_dir, "salsa20.json")
    results += _run_keystream_file(CipherId.SALSA20, data)
    data = _load(kat_dir, "chacha20.json")
    results += _run_keystream_file(CipherId.CHACHA20, data)
    results += _run_quarter_round(data)
    return results
