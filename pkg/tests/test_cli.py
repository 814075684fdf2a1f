import os
import shutil

import numpy as np
import pytest

from mscr import cli, shardfile
from mscr.params import ParameterError
from mscr.repair import RepairError


def roundtrip(tmp_path, data, code=(5, 3, 3, 2), drop=(1, 2), keep=None):
    src = tmp_path / "in.bin"
    src.write_bytes(data)
    out = tmp_path / "shards"
    params = cli.encode_file(src, *code, out)
    for i in drop:
        os.remove(out / cli.shard_name(i))
    counts, _ = cli.repair_shards(out)
    stripes = shardfile.read_manifest(out / cli.MANIFEST)["stripes"]
    assert all(c == stripes * params.repair_bandwidth for c in counts.values())
    if keep is not None:
        for i in range(1, params.n + 1):
            if i not in keep:
                os.remove(out / cli.shard_name(i))
    got = cli.decode_file(out, tmp_path / "out.bin")
    assert got == data
    return params, out


def test_fnv_reference_values():
    assert shardfile.fnv1a_64(b"") == 0xcbf29ce484222325
    assert shardfile.fnv1a_64(b"a") == 0xaf63dc4c8601ec8c
    assert shardfile.fnv1a_64(b"foobar") == 0x85944171f73967e8


def test_empty_file(tmp_path):
    src = tmp_path / "empty"
    src.write_bytes(b"")
    cli.encode_file(src, 5, 3, 3, 2, tmp_path / "s")
    man = shardfile.read_manifest(tmp_path / "s" / cli.MANIFEST)
    assert man["length"] == 0 and man["stripes"] == 1
    _, rows = shardfile.read_shard(tmp_path / "s" / cli.shard_name(4))
    assert not rows.any()
    assert cli.decode_file(tmp_path / "s", tmp_path / "o") == b""


def test_small_modulus_rejected(tmp_path):
    src = tmp_path / "x"
    src.write_bytes(bytes([1, 2, 3, 4, 5, 6]))
    with pytest.raises(ParameterError):
        cli.encode_file(src, 5, 3, 3, 2, tmp_path / "s", modulus=7)


@pytest.mark.parametrize("size", [0, 1, 5, 6, 7, 1000])
def test_lengths_around_stripe(tmp_path, size):
    data = np.random.default_rng(size).integers(0, 256, size, dtype=np.uint8).tobytes()
    params, _ = roundtrip(tmp_path, data, keep=(3, 4, 5))
    assert params.B == 6 and params.p == 257


def test_shortened_code_parity_heavy(tmp_path):
    data = os.urandom(3000)
    roundtrip(tmp_path, data, code=(10, 4, 8, 2), drop=(4, 9), keep=(5, 7, 8, 10))


def test_position_independent(tmp_path):
    data = os.urandom(500)
    params, out = roundtrip(tmp_path, data, code=(8, 4, 6, 2), drop=(3, 8))
    moved = tmp_path / "moved"
    moved.mkdir()
    shutil.copy(out / cli.MANIFEST, moved / cli.MANIFEST)
    for new, old in zip(("z.mscr", "a.mscr", "m.mscr", "b.mscr"), (8, 6, 2, 7)):
        shutil.copy(out / cli.shard_name(old), moved / new)
    assert cli.decode_file(moved, tmp_path / "o2") == data


def test_repair_needs_exactly_t(tmp_path):
    src = tmp_path / "x"
    src.write_bytes(b"hello world")
    out = tmp_path / "s"
    cli.encode_file(src, 5, 3, 3, 2, out)
    for i in (1, 2, 3):
        os.remove(out / cli.shard_name(i))
    with pytest.raises(RepairError):
        cli.repair_shards(out)


def test_corrupted_header(tmp_path):
    src = tmp_path / "x"
    src.write_bytes(b"hello world")
    out = tmp_path / "s"
    cli.encode_file(src, 5, 3, 3, 2, out)
    path = out / cli.shard_name(2)
    raw = bytearray(path.read_bytes())
    raw[5] = 9  # n
    path.write_bytes(bytes(raw))
    with pytest.raises(shardfile.ShardFormatError):
        cli.decode_file(out, tmp_path / "o")
    raw[0:4] = b"XXXX"
    path.write_bytes(bytes(raw))
    with pytest.raises(shardfile.ShardFormatError):
        cli.decode_file(out, tmp_path / "o")


def test_checksum_mismatch(tmp_path):
    src = tmp_path / "x"
    src.write_bytes(b"hello world")
    out = tmp_path / "s"
    cli.encode_file(src, 5, 3, 3, 2, out)
    man = (out / cli.MANIFEST).read_text().replace("checksum=", "checksum=f")
    (out / cli.MANIFEST).write_text(man)
    with pytest.raises(cli.ChecksumError):
        cli.decode_file(out, tmp_path / "o")


def test_header_layout(tmp_path):
    hdr = shardfile.ShardHeader(5, 3, 3, 2, 257, 4, 2)
    raw = hdr.pack()
    assert len(raw) == 29
    assert raw[:5] == b"MSCR\x01"
    assert raw[5:13] == bytes([5, 0, 3, 0, 3, 0, 2, 0])
    assert raw[13:17] == (257).to_bytes(4, "little")
    assert raw[17:19] == (4).to_bytes(2, "little")
    assert raw[19:23] == (2).to_bytes(4, "little")
    assert raw[23:29] == bytes(6)


def test_main_commands(tmp_path, capsys):
    src = tmp_path / "f"
    src.write_bytes(os.urandom(100))
    out = tmp_path / "s"
    assert cli.main(["encode", str(src), "--n", "5", "--k", "3", "--d", "3", "--t", "2",
                     "--out", str(out)]) == 0
    os.remove(out / cli.shard_name(1))
    os.remove(out / cli.shard_name(4))
    assert cli.main(["repair", str(out), "--helpers", "2,3,5"]) == 0
    assert "optimum d+t-1=4" in capsys.readouterr().out
    assert cli.main(["decode", str(out), "--out", str(tmp_path / "back")]) == 0
    assert (tmp_path / "back").read_bytes() == src.read_bytes()
    assert cli.main(["inspect", str(out / cli.shard_name(1))]) == 0
    assert "node_index=1" in capsys.readouterr().out
    assert cli.main(["inspect", str(out)]) == 0
    assert "modulus=257" in capsys.readouterr().out
    log = tmp_path / "traffic.csv"
    assert cli.main(["simulate", "--n", "8", "--k", "4", "--d", "6", "--t", "2",
                     "--seed", "3", "--out", str(log)]) == 0
    assert "PASS" in capsys.readouterr().out
    assert len(log.read_text().splitlines()) == 2 * 7
    assert cli.main(["encode", str(src), "--n", "6", "--k", "4", "--d", "4", "--t", "2",
                     "--out", str(out)]) == 2


def test_selftest(capsys):
    assert cli.selftest()
    assert "FAIL" not in capsys.readouterr().out
