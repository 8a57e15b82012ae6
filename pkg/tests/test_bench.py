"""Benchmark harness: config, corpus, timing, throughput, suite runs."""

import json
import random

import pytest

from cipherbench import CipherId, ConfigError, ZeroElapsedError
from cipherbench.bench import (
    BenchmarkRecord,
    SuiteConfig,
    TimingSample,
    default_iv,
    default_key,
    ensure_corpus,
    generate_corpus,
    measure_decryption,
    measure_encryption,
    run_suite,
    throughput_kb_s,
)


class TestConfig:
    def test_defaults_match_the_reference_suite(self):
        config = SuiteConfig()
        assert [str(c) for c in config.ciphers] == [
            "AES",
            "Blowfish",
            "Twofish",
            "Salsa20",
            "ChaCha20",
        ]
        assert config.corpus_sizes_kb == (137, 795, 3901, 7903, 9328)
        assert config.repetitions == 5
        assert config.warmup_runs == 2
        assert config.file_names == ("Image01", "Image02", "Image03", "Image04", "Image05")

    def test_default_keys_are_documented_pattern(self):
        assert default_key(CipherId.AES) == b"\x01" * 16
        # ChaCha20 benchmarks with a 256-bit key
        assert default_key(CipherId.CHACHA20) == b"\x01" * 32
        assert default_key(CipherId.SALSA20) == b"\x01" * 16
        assert default_iv(CipherId.AES) == bytes(range(16))
        assert default_iv(CipherId.CHACHA20) == bytes(range(8))

    def test_chacha20_key_overridable_to_128_bits(self, tmp_path):
        config = SuiteConfig(
            ciphers=(CipherId.CHACHA20,),
            corpus_sizes_kb=(2,),
            repetitions=1,
            warmup_runs=0,
            keys={CipherId.CHACHA20: b"\x01" * 16},
        )
        records = run_suite(config, tmp_path)
        assert records[0].ok

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"repetitions": 0},
            {"warmup_runs": -1},
            {"corpus_sizes_kb": ()},
            {"corpus_sizes_kb": (10, 0)},
            {"corpus_sizes_kb": (-5,)},
            {"ciphers": ()},
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            SuiteConfig(**kwargs)


class TestCorpus:
    def test_default_sizes_in_bytes(self, tmp_path):
        config = SuiteConfig()
        paths = generate_corpus(config, tmp_path)
        sizes = [p.stat().st_size for p in paths]
        assert sizes == [140288, 814080, 3994624, 8092672, 9551872]
        assert [p.name for p in paths] == list(config.file_names)

    def test_same_seed_is_byte_identical(self, tmp_path):
        config = SuiteConfig(corpus_sizes_kb=(3, 7), rng_seed=99)
        first = [p.read_bytes() for p in generate_corpus(config, tmp_path / "a")]
        second = [p.read_bytes() for p in generate_corpus(config, tmp_path / "b")]
        assert first == second

    def test_different_seeds_differ(self, tmp_path):
        a = generate_corpus(SuiteConfig(corpus_sizes_kb=(3,), rng_seed=1), tmp_path / "a")
        b = generate_corpus(SuiteConfig(corpus_sizes_kb=(3,), rng_seed=2), tmp_path / "b")
        assert a[0].read_bytes() != b[0].read_bytes()

    def test_ensure_corpus_reuses_existing(self, tmp_path):
        config = SuiteConfig(corpus_sizes_kb=(3,))
        paths = generate_corpus(config, tmp_path)
        marker = paths[0].read_bytes()
        again = ensure_corpus(config, tmp_path)
        assert again[0].read_bytes() == marker

    def test_ensure_corpus_regenerates_wrong_sizes(self, tmp_path):
        config = SuiteConfig(corpus_sizes_kb=(3,))
        (tmp_path / "Image01").write_bytes(b"tiny")
        paths = ensure_corpus(config, tmp_path)
        assert paths[0].stat().st_size == 3 * 1024


class TestThroughput:
    def test_hand_derived_anchor(self):
        # 137 KiB in 2 ms -> 68500 KB/s
        assert throughput_kb_s(140288, 2.0) == pytest.approx(68500.0, abs=0.01)

    def test_zero_bytes(self):
        assert throughput_kb_s(0, 5.0) == 0.0

    def test_zero_elapsed_is_an_error(self):
        with pytest.raises(ZeroElapsedError):
            throughput_kb_s(1000, 0.0)

    def test_formula_identity_on_random_pairs(self):
        rng = random.Random(0x7B)
        for _ in range(1000):
            byte_count = rng.randrange(1, 10**9)
            elapsed_ms = rng.uniform(0.001, 10000.0)
            tp = throughput_kb_s(byte_count, elapsed_ms)
            reconstructed = tp * (elapsed_ms / 1000) * 1024
            assert abs(reconstructed - byte_count) / byte_count < 0.001


class TestTimingSample:
    def test_elapsed_ms(self):
        sample = TimingSample(1_000_000, 3_500_000, 42)
        assert sample.elapsed_ms == 2.5

    def test_record_consistency_invariant(self):
        sample = TimingSample(0, 2_000_000, 140288)
        record = BenchmarkRecord("f", 137, CipherId.AES, (sample,), (sample,))
        lhs = record.enc_throughput_kb_s * (record.enc_ms / 1000)
        assert abs(lhs - record.enc_bytes / 1024) / (record.enc_bytes / 1024) < 0.001


class TestMeasure:
    def test_measurements_wrap_file_ops(self, tmp_path):
        src = tmp_path / "src"
        src.write_bytes(random.Random(0).randbytes(10000))
        enc, dec = tmp_path / "enc", tmp_path / "dec"
        key, iv = default_key(CipherId.AES), default_iv(CipherId.AES)
        sample = measure_encryption(CipherId.AES, key, iv, src, enc)
        assert sample.elapsed_ms >= 0
        assert sample.byte_count == 10000 + 16 - 10000 % 16
        sample2 = measure_decryption(key, enc, dec)
        assert sample2.byte_count == 10000
        assert dec.read_bytes() == src.read_bytes()

    def test_repeated_runs_have_identical_byte_counts(self, tmp_path):
        src = tmp_path / "src"
        src.write_bytes(bytes(5000))
        enc = tmp_path / "enc"
        key, iv = default_key(CipherId.TWOFISH), default_iv(CipherId.TWOFISH)
        counts = {
            measure_encryption(CipherId.TWOFISH, key, iv, src, enc).byte_count
            for _ in range(3)
        }
        assert len(counts) == 1


class TestRunSuite:
    def small_config(self, **kwargs):
        defaults = dict(
            corpus_sizes_kb=(2, 5),
            ciphers=(CipherId.AES, CipherId.CHACHA20),
            repetitions=2,
            warmup_runs=1,
        )
        defaults.update(kwargs)
        return SuiteConfig(**defaults)

    def test_record_cardinality(self, tmp_path):
        records = run_suite(self.small_config(), tmp_path)
        assert len(records) == 4
        assert all(r.ok for r in records)
        assert all(len(r.enc_samples) == 2 for r in records)

    def test_single_shot_mode(self, tmp_path):
        records = run_suite(
            self.small_config(repetitions=1, warmup_runs=0), tmp_path
        )
        assert all(len(r.enc_samples) == 1 for r in records)

    def test_jsonl_one_line_per_repetition(self, tmp_path):
        jsonl = tmp_path / "results.jsonl"
        run_suite(self.small_config(), tmp_path, jsonl_path=jsonl)
        lines = [json.loads(l) for l in jsonl.read_text().splitlines()]
        assert len(lines) == 2 * 2 * 2  # files x ciphers x repetitions
        row = lines[0]
        for field in (
            "file_name", "size_kb", "cipher", "repetition",
            "enc_ms", "enc_bytes", "enc_throughput_kb_s",
            "dec_ms", "dec_bytes", "dec_throughput_kb_s",
        ):
            assert field in row

    def test_ciphertext_artifacts_are_deterministic(self, tmp_path):
        config = self.small_config()
        run_suite(config, tmp_path / "r1", work_dir=tmp_path / "w1")
        run_suite(config, tmp_path / "r2", work_dir=tmp_path / "w2")
        for name in ("Image01.AES.enc", "Image02.ChaCha20.enc"):
            assert (tmp_path / "w1" / name).read_bytes() == (
                tmp_path / "w2" / name
            ).read_bytes()

    def test_failing_cell_is_recorded_not_fatal(self, tmp_path, monkeypatch):
        import cipherbench.bench as bench_mod

        real = bench_mod.encrypt_file

        def sabotaged(input_path, output_path, cipher, key, iv=None):
            if cipher is CipherId.AES:
                raise OSError("disk on fire")
            return real(input_path, output_path, cipher, key, iv)

        monkeypatch.setattr(bench_mod, "encrypt_file", sabotaged)
        records = run_suite(self.small_config(), tmp_path)
        by_cipher = {r.cipher: r for r in records if r.file_name == "Image01"}
        assert not by_cipher[CipherId.AES].ok
        assert "disk on fire" in by_cipher[CipherId.AES].error
        assert by_cipher[CipherId.CHACHA20].ok

    def test_roundtrip_verification_gates_timings(self, tmp_path, monkeypatch):
        import cipherbench.bench as bench_mod

        real = bench_mod.decrypt_file

        def corrupting(encrypted_path, output_path, key, iv=None):
            n = real(encrypted_path, output_path, key, iv)
            from pathlib import Path

            data = bytearray(Path(output_path).read_bytes())
            if data:
                data[0] ^= 0xFF
            Path(output_path).write_bytes(bytes(data))
            return n

        monkeypatch.setattr(bench_mod, "decrypt_file", corrupting)
        records = run_suite(self.small_config(), tmp_path)
        assert all(not r.ok for r in records)
        assert all("verification" in r.error for r in records)
