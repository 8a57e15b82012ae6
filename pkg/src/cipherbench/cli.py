"""Command-line interface.

Subcommands: encrypt, decrypt, bench, corpus, vectors. Exit codes are a
stable contract: 0 success, 1 runtime failure (crypto/IO), 2 usage or
configuration error.

Keys are given as hex, or as ``@path`` to read key material from a file
(hex text, or raw bytes when the content is not hex).
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from cipherbench.bench import (
    DEFAULT_SEED,
    SuiteConfig,
    generate_corpus,
    run_suite,
)
from cipherbench.core import CipherId
from cipherbench.errors import CipherBenchError, ConfigError, VectorError
from cipherbench.modes import decrypt_file, encrypt_file
from cipherbench.report import Metric, build_table, render, summarize
from cipherbench.vectors import run_all

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad argument values detected after argparse (exit code 2)."""


def _parse_hex(value: str, what: str) -> bytes:
    try:
        return bytes.fromhex(value)
    except ValueError:
        raise UsageError(f"{what} is not valid hex: {value!r}") from None


def _parse_key(value: str) -> bytes:
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read key file {path}: {exc}") from None
        text = raw.decode("ascii", errors="ignore").strip()
        if text and all(c in "0123456789abcdefABCDEF" for c in text) and len(text) % 2 == 0:
            return bytes.fromhex(text)
        return raw
    return _parse_hex(value, "key")


def _parse_cipher(name: str) -> CipherId:
    try:
        return CipherId.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers: {text!r}") from None
    return sizes


def _parse_ciphers(text: str) -> tuple[CipherId, ...]:
    return tuple(_parse_cipher(part.strip()) for part in text.split(","))


def cmd_encrypt(args) -> int:
    cipher = _parse_cipher(args.cipher)
    key = _parse_key(args.key)
    iv = _parse_hex(args.iv, "iv") if args.iv else None
    # Key problems on the encrypt side are usage errors.
    from cipherbench.engines import make_engine

    try:
        make_engine(cipher, key)
    except CipherBenchError as exc:
        raise UsageError(str(exc)) from None
    n = encrypt_file(args.infile, args.outfile, cipher, key, iv)
    print(n)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _parse_key(args.key)
    n = decrypt_file(args.infile, args.outfile, key)
    print(n)
    return EXIT_OK


def cmd_corpus(args) -> int:
    config = _suite_config(args)
    paths = generate_corpus(config, args.out)
    for path in paths:
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        print(f"{path.name}  {path.stat().st_size} bytes  sha256 {digest}")
    return EXIT_OK


def cmd_bench(args) -> int:
    config = _suite_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = run_suite(
        config,
        corpus_dir=out_dir / "corpus",
        work_dir=out_dir / "artifacts",
        jsonl_path=out_dir / "results.jsonl",
    )
    ok_records = [r for r in records if r.ok]
    failed = [r for r in records if not r.ok]
    for record in failed:
        print(
            f"FAILED cell ({record.file_name}, {record.cipher}): {record.error}",
            file=sys.stderr,
        )
    tables = {
        Metric.ENC_TIME: "enc_time",
        Metric.DEC_TIME: "dec_time",
        Metric.ENC_THROUGHPUT: "enc_throughput",
        Metric.DEC_THROUGHPUT: "dec_throughput",
    }
    for metric, stem in tables.items():
        table = build_table(records, metric)
        text = render(table, args.format)
        (out_dir / f"{stem}.{args.format}").write_text(text, encoding="utf-8")
        print(f"# {metric.title}")
        print(render(table, "plain"))
    if ok_records:
        summary = summarize(ok_records)
        (out_dir / "summary.txt").write_text(summary, encoding="utf-8")
        print(summary)
    return EXIT_RUNTIME if failed else EXIT_OK


def cmd_vectors(args) -> int:
    results = run_all(args.kat_dir)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} vectors passed")
    return EXIT_RUNTIME if failed else EXIT_OK


def _suite_config(args) -> SuiteConfig:
    kwargs = {}
    if getattr(args, "sizes", None):
        kwargs["corpus_sizes_kb"] = _parse_sizes(args.sizes)
    if getattr(args, "ciphers", None):
        kwargs["ciphers"] = _parse_ciphers(args.ciphers)
    if getattr(args, "reps", None) is not None:
        kwargs["repetitions"] = args.reps
    if getattr(args, "warmup", None) is not None:
        kwargs["warmup_runs"] = args.warmup
    if getattr(args, "seed", None) is not None:
        kwargs["rng_seed"] = args.seed
    try:
        return SuiteConfig(**kwargs)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cipherbench",
        description="Encrypt/decrypt files with from-scratch symmetric ciphers "
        "and benchmark their speed.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="encrypt a file into a container")
    enc.add_argument("--cipher", required=True, help="AES, Blowfish, Twofish, Salsa20, or ChaCha20")
    enc.add_argument("--key", required=True, help="hex key, or @path to a key file")
    enc.add_argument("--iv", help="hex IV/nonce; generated when omitted")
    enc.add_argument("--in", dest="infile", required=True, help="plaintext input path")
    enc.add_argument("--out", dest="outfile", required=True, help="container output path")
    enc.set_defaults(func=cmd_encrypt)

    dec = sub.add_parser("decrypt", help="decrypt a container file")
    dec.add_argument("--key", required=True, help="hex key, or @path to a key file")
    dec.add_argument("--in", dest="infile", required=True, help="container input path")
    dec.add_argument("--out", dest="outfile", required=True, help="plaintext output path")
    dec.set_defaults(func=cmd_decrypt)

    bench = sub.add_parser("bench", help="run the full benchmark suite")
    bench.add_argument("--out", required=True, help="output directory")
    bench.add_argument("--sizes", help="comma-separated corpus sizes in KB")
    bench.add_argument("--reps", type=int, help="measured repetitions per cell (default 5)")
    bench.add_argument("--warmup", type=int, help="unmeasured warmup runs per cell (default 2)")
    bench.add_argument("--seed", type=int, help=f"corpus RNG seed (default {DEFAULT_SEED})")
    bench.add_argument("--ciphers", help="comma-separated cipher subset")
    bench.add_argument(
        "--format", choices=("csv", "markdown", "plain"), default="csv",
        help="table file format (default csv)",
    )
    bench.set_defaults(func=cmd_bench)

    corpus = sub.add_parser("corpus", help="generate the benchmark corpus")
    corpus.add_argument("--out", required=True, help="output directory")
    corpus.add_argument("--sizes", help="comma-separated sizes in KB")
    corpus.add_argument("--seed", type=int, help="RNG seed")
    corpus.set_defaults(func=cmd_corpus)

    vectors = sub.add_parser("vectors", help="run all known-answer vectors")
    vectors.add_argument(
        "--kat-dir", help="override the packaged vector directory (testing hook)"
    )
    vectors.set_defaults(func=cmd_vectors)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CipherBenchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
