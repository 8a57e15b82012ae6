"""End-to-end CLI coverage: every subcommand, exit-code contract."""

import json

import pytest

from cipherbench.cli import main

KEY_HEX_16 = "01" * 16
KEY_HEX_32 = "02" * 32


def run(argv):
    return main(argv)


class TestEncryptDecrypt:
    def test_roundtrip(self, tmp_path, capsys):
        src = tmp_path / "plain"
        src.write_bytes(b"attack at dawn" * 100)
        enc = tmp_path / "enc"
        dec = tmp_path / "dec"
        assert run([
            "encrypt", "--cipher", "ChaCha20", "--key", KEY_HEX_32,
            "--in", str(src), "--out", str(enc),
        ]) == 0
        assert capsys.readouterr().out.strip() == "1400"
        assert run([
            "decrypt", "--key", KEY_HEX_32, "--in", str(enc), "--out", str(dec),
        ]) == 0
        assert dec.read_bytes() == src.read_bytes()

    def test_fixed_iv_is_deterministic(self, tmp_path):
        src = tmp_path / "plain"
        src.write_bytes(b"hello")
        outs = []
        for i in range(2):
            out = tmp_path / f"enc{i}"
            assert run([
                "encrypt", "--cipher", "AES", "--key", KEY_HEX_16,
                "--iv", "00" * 16, "--in", str(src), "--out", str(out),
            ]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_key_from_file(self, tmp_path):
        src = tmp_path / "plain"
        src.write_bytes(b"file-key data")
        keyfile = tmp_path / "key.hex"
        keyfile.write_text(KEY_HEX_16 + "\n")
        enc = tmp_path / "enc"
        dec = tmp_path / "dec"
        assert run([
            "encrypt", "--cipher", "Twofish", "--key", f"@{keyfile}",
            "--in", str(src), "--out", str(enc),
        ]) == 0
        assert run([
            "decrypt", "--key", KEY_HEX_16, "--in", str(enc), "--out", str(dec),
        ]) == 0
        assert dec.read_bytes() == b"file-key data"

    def test_unknown_cipher_exits_2_listing_names(self, tmp_path, capsys):
        src = tmp_path / "p"
        src.write_bytes(b"x")
        code = run([
            "encrypt", "--cipher", "Threefish", "--key", KEY_HEX_16,
            "--in", str(src), "--out", str(tmp_path / "o"),
        ])
        assert code == 2
        err = capsys.readouterr().err
        assert "Threefish" in err and "ChaCha20" in err

    def test_wrong_key_length_exits_2(self, tmp_path, capsys):
        src = tmp_path / "p"
        src.write_bytes(b"x")
        code = run([
            "encrypt", "--cipher", "AES", "--key", "aa" * 15,
            "--in", str(src), "--out", str(tmp_path / "o"),
        ])
        assert code == 2
        assert "16" in capsys.readouterr().err

    def test_bad_hex_key_exits_2(self, tmp_path):
        src = tmp_path / "p"
        src.write_bytes(b"x")
        assert run([
            "encrypt", "--cipher", "AES", "--key", "zz" * 16,
            "--in", str(src), "--out", str(tmp_path / "o"),
        ]) == 2

    def test_unknown_flag_is_an_error(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            run(["encrypt", "--chipher", "AES"])
        assert info.value.code == 2

    def test_wrong_magic_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad"
        bad.write_bytes(b"garbage")
        code = run(["decrypt", "--key", KEY_HEX_16, "--in", str(bad), "--out", str(tmp_path / "o")])
        assert code == 1
        assert "FormatError" in capsys.readouterr().err

    def test_wrong_key_on_block_container_exits_1(self, tmp_path):
        src = tmp_path / "p"
        src.write_bytes(b"q" * 1000)
        enc = tmp_path / "enc"
        assert run([
            "encrypt", "--cipher", "AES", "--key", KEY_HEX_16,
            "--in", str(src), "--out", str(enc),
        ]) == 0
        assert run([
            "decrypt", "--key", "ff" * 16, "--in", str(enc), "--out", str(tmp_path / "o"),
        ]) == 1

    def test_missing_input_file_exits_1(self, tmp_path):
        assert run([
            "encrypt", "--cipher", "AES", "--key", KEY_HEX_16,
            "--in", str(tmp_path / "nope"), "--out", str(tmp_path / "o"),
        ]) == 1


class TestCorpus:
    def test_default_names_and_digest_manifest(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        assert run(["corpus", "--out", str(out), "--sizes", "2,3"]) == 0
        manifest = capsys.readouterr().out
        assert "Image01" in manifest and "Image02" in manifest
        assert "sha256" in manifest
        assert (out / "Image01").stat().st_size == 2048

    def test_same_seed_same_digests(self, tmp_path, capsys):
        for d in ("a", "b"):
            assert run(["corpus", "--out", str(tmp_path / d), "--sizes", "4", "--seed", "7"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].split()[-1] == out[1].split()[-1]

    def test_zero_size_exits_2(self, tmp_path):
        assert run(["corpus", "--out", str(tmp_path), "--sizes", "0"]) == 2


class TestVectorsCommand:
    def test_all_pass(self, capsys):
        assert run(["vectors"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out.replace("FAILED", "")

    def test_missing_kat_dir_exits_2(self, tmp_path):
        assert run(["vectors", "--kat-dir", str(tmp_path / "void")]) == 2


class TestBench:
    def test_smoke_run_writes_all_outputs(self, tmp_path, capsys):
        out = tmp_path / "bench"
        code = run([
            "bench", "--out", str(out), "--sizes", "2,4", "--reps", "1",
            "--warmup", "0", "--ciphers", "AES,ChaCha20", "--format", "csv",
        ])
        assert code == 0
        for name in (
            "results.jsonl",
            "enc_time.csv",
            "dec_time.csv",
            "enc_throughput.csv",
            "dec_throughput.csv",
            "summary.txt",
        ):
            assert (out / name).is_file(), name
        lines = (out / "results.jsonl").read_text().splitlines()
        assert len(lines) == 2 * 2 * 1
        header = (out / "enc_time.csv").read_text().splitlines()[0]
        assert header == "File Name,Size KB,AES,ChaCha20"
        assert "Average" in capsys.readouterr().out

    def test_cipher_subset_columns(self, tmp_path):
        out = tmp_path / "bench"
        assert run([
            "bench", "--out", str(out), "--sizes", "2", "--reps", "1",
            "--warmup", "0", "--ciphers", "Blowfish", "--format", "markdown",
        ]) == 0
        text = (out / "enc_time.markdown").read_text()
        assert "| Blowfish |" in text or "Blowfish" in text.splitlines()[0]

    def test_bad_sizes_exit_2(self, tmp_path):
        assert run(["bench", "--out", str(tmp_path), "--sizes", "ten"]) == 2
        assert run(["bench", "--out", str(tmp_path), "--reps", "0", "--sizes", "2"]) == 2
