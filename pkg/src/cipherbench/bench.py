"""Benchmark harness: corpus generation, timed runs, and throughput.

Timing uses the monotonic nanosecond clock and is reported as fractional
milliseconds (whole-millisecond resolution is far too coarse for fast
ciphers on small files). Throughput is kilobytes (KiB) of processed data
per second: (bytes / 1024) / (elapsed_ms / 1000).

A suite run covers every (corpus file, cipher) cell: a number of unmeasured
warmup passes, then the measured repetitions. After every measured
decryption the output is compared byte-for-byte against the source file;
a cell whose verification or cipher work fails is recorded as failed and
excluded from averages rather than aborting the suite. Measured passes run
strictly sequentially on one thread.
"""

from __future__ import annotations

import json
import random
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

from cipherbench.core import CipherId, iv_length, profile_of
from cipherbench.errors import CipherBenchError, ConfigError, ZeroElapsedError
from cipherbench.modes import decrypt_file, encrypt_file

DEFAULT_CIPHERS = (
    CipherId.AES,
    CipherId.BLOWFISH,
    CipherId.TWOFISH,
    CipherId.SALSA20,
    CipherId.CHACHA20,
)
DEFAULT_SIZES_KB = (137, 795, 3901, 7903, 9328)
DEFAULT_SEED = 20240501


def default_key(cipher: CipherId) -> bytes:
    """Documented benchmark key: 0x01 repeated to the benchmark size."""
    return b"\x01" * (profile_of(cipher).benchmark_key_bits // 8)


def default_iv(cipher: CipherId) -> bytes:
    """Documented benchmark IV/nonce: ascending bytes from zero."""
    return bytes(range(iv_length(cipher)))


@dataclass(frozen=True)
class SuiteConfig:
    """Configuration of one benchmark suite run."""

    ciphers: tuple[CipherId, ...] = DEFAULT_CIPHERS
    corpus_sizes_kb: tuple[int, ...] = DEFAULT_SIZES_KB
    repetitions: int = 5
    warmup_runs: int = 2
    rng_seed: int = DEFAULT_SEED
    keys: dict[CipherId, bytes] = field(default_factory=dict)
    ivs: dict[CipherId, bytes] = field(default_factory=dict)

    def __post_init__(self):
        if self.repetitions < 1:
            raise ConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.warmup_runs < 0:
            raise ConfigError(f"warmup_runs must be >= 0, got {self.warmup_runs}")
        if not self.corpus_sizes_kb:
            raise ConfigError("corpus_sizes_kb must not be empty")
        for size in self.corpus_sizes_kb:
            if size <= 0:
                raise ConfigError(f"corpus sizes must be positive, got {size}")
        if not self.ciphers:
            raise ConfigError("ciphers must not be empty")

    def key_for(self, cipher: CipherId) -> bytes:
        return self.keys.get(cipher, default_key(cipher))

    def iv_for(self, cipher: CipherId) -> bytes:
        return self.ivs.get(cipher, default_iv(cipher))

    @property
    def file_names(self) -> tuple[str, ...]:
        return tuple(f"Image{i:02d}" for i in range(1, len(self.corpus_sizes_kb) + 1))


@dataclass(frozen=True)
class TimingSample:
    """One measured run: start/end instants (ns, monotonic) and bytes."""

    start_ns: int
    end_ns: int
    byte_count: int

    @property
    def elapsed_ms(self) -> float:
        return (self.end_ns - self.start_ns) / 1e6


def throughput_kb_s(byte_count: int, elapsed_ms: float) -> float:
    """Kilobytes per second: (bytes / 1024) / (elapsed_ms / 1000)."""
    if elapsed_ms <= 0:
        raise ZeroElapsedError(
            "elapsed time is zero; clock resolution too coarse (rerun with more repetitions)"
        )
    return (byte_count / 1024) / (elapsed_ms / 1000)


@dataclass(frozen=True)
class BenchmarkRecord:
    """Aggregated result of one (file, cipher) cell.

    Holds every raw repetition sample; the headline numbers are the means,
    with minima retained.
    """

    file_name: str
    size_kb: int
    cipher: CipherId
    enc_samples: tuple[TimingSample, ...] = ()
    dec_samples: tuple[TimingSample, ...] = ()
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def enc_ms(self) -> float:
        return statistics.fmean(s.elapsed_ms for s in self.enc_samples)

    @property
    def dec_ms(self) -> float:
        return statistics.fmean(s.elapsed_ms for s in self.dec_samples)

    @property
    def enc_ms_min(self) -> float:
        return min(s.elapsed_ms for s in self.enc_samples)

    @property
    def dec_ms_min(self) -> float:
        return min(s.elapsed_ms for s in self.dec_samples)

    @property
    def enc_bytes(self) -> int:
        return self.enc_samples[0].byte_count

    @property
    def dec_bytes(self) -> int:
        return self.dec_samples[0].byte_count

    @property
    def enc_throughput_kb_s(self) -> float:
        return throughput_kb_s(self.enc_bytes, self.enc_ms)

    @property
    def dec_throughput_kb_s(self) -> float:
        return throughput_kb_s(self.dec_bytes, self.dec_ms)


def generate_corpus(config: SuiteConfig, directory: str | Path) -> list[Path]:
    """Write one deterministic random file per configured size.

    Content depends only on (rng_seed, file name), so equal seeds yield
    byte-identical corpora.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, size_kb in zip(config.file_names, config.corpus_sizes_kb):
        rng = random.Random(f"{config.rng_seed}:{name}")
        path = directory / name
        path.write_bytes(rng.randbytes(size_kb * 1024))
        paths.append(path)
    return paths


def ensure_corpus(config: SuiteConfig, directory: str | Path) -> list[Path]:
    """Generate the corpus unless files of the expected sizes exist."""
    directory = Path(directory)
    paths = [directory / name for name in config.file_names]
    sizes = [s * 1024 for s in config.corpus_sizes_kb]
    if all(p.is_file() and p.stat().st_size == n for p, n in zip(paths, sizes)):
        return paths
    return generate_corpus(config, directory)


def measure_encryption(
    cipher: CipherId,
    key: bytes,
    iv: bytes,
    input_path: str | Path,
    output_path: str | Path,
) -> TimingSample:
    """Time one encrypt_file call; byte_count is the payload written."""
    start = time.perf_counter_ns()
    n = encrypt_file(input_path, output_path, cipher, key, iv)
    end = time.perf_counter_ns()
    return TimingSample(start, end, n)


def measure_decryption(
    key: bytes,
    encrypted_path: str | Path,
    output_path: str | Path,
) -> TimingSample:
    """Time one decrypt_file call; byte_count is the plaintext written."""
    start = time.perf_counter_ns()
    n = decrypt_file(encrypted_path, output_path, key)
    end = time.perf_counter_ns()
    return TimingSample(start, end, n)


def run_suite(
    config: SuiteConfig,
    corpus_dir: str | Path,
    work_dir: str | Path | None = None,
    jsonl_path: str | Path | None = None,
) -> list[BenchmarkRecord]:
    """Run the full (file x cipher) grid and return one record per cell.

    Ciphertext artifacts are kept under ``work_dir``; with fixed keys/IVs
    they are byte-identical across runs. When ``jsonl_path`` is given, one
    JSON line is appended per (file, cipher, repetition).
    """
    corpus_dir = Path(corpus_dir)
    work_dir = Path(work_dir) if work_dir is not None else corpus_dir / "work"
    work_dir.mkdir(parents=True, exist_ok=True)
    paths = ensure_corpus(config, corpus_dir)

    jsonl_file = open(jsonl_path, "w", encoding="utf-8") if jsonl_path else None
    records = []
    try:
        for path, size_kb in zip(paths, config.corpus_sizes_kb):
            source = path.read_bytes()
            for cipher in config.ciphers:
                records.append(
                    _run_cell(
                        config, cipher, path, size_kb, source, work_dir, jsonl_file
                    )
                )
    finally:
        if jsonl_file:
            jsonl_file.close()
    return records


def _run_cell(config, cipher, path, size_kb, source, work_dir, jsonl_file):
    key, iv = config.key_for(cipher), config.iv_for(cipher)
    enc_path = work_dir / f"{path.name}.{cipher}.enc"
    dec_path = work_dir / f"{path.name}.{cipher}.dec"
    enc_samples, dec_samples = [], []
    try:
        for _ in range(config.warmup_runs):
            encrypt_file(path, enc_path, cipher, key, iv)
            decrypt_file(enc_path, dec_path, key)
        for rep in range(config.repetitions):
            enc = measure_encryption(cipher, key, iv, path, enc_path)
            dec = measure_decryption(key, enc_path, dec_path)
            if dec_path.read_bytes() != source:
                raise CipherBenchError("roundtrip verification failed")
            enc_samples.append(enc)
            dec_samples.append(dec)
            if jsonl_file:
                jsonl_file.write(
                    json.dumps(
                        {
                            "file_name": path.name,
                            "size_kb": size_kb,
                            "cipher": str(cipher),
                            "repetition": rep,
                            "enc_start_ns": enc.start_ns,
                            "enc_end_ns": enc.end_ns,
                            "enc_ms": enc.elapsed_ms,
                            "enc_bytes": enc.byte_count,
                            "enc_throughput_kb_s": throughput_kb_s(
                                enc.byte_count, enc.elapsed_ms
                            ),
                            "dec_start_ns": dec.start_ns,
                            "dec_end_ns": dec.end_ns,
                            "dec_ms": dec.elapsed_ms,
                            "dec_bytes": dec.byte_count,
                            "dec_throughput_kb_s": throughput_kb_s(
                                dec.byte_count, dec.elapsed_ms
                            ),
                        }
                    )
                    + "\n"
                )
    except (CipherBenchError, OSError) as exc:
        return BenchmarkRecord(path.name, size_kb, cipher, error=str(exc))
    finally:
        dec_path.unlink(missing_ok=True)
    return BenchmarkRecord(
        path.name, size_kb, cipher, tuple(enc_samples), tuple(dec_samples)
    )
