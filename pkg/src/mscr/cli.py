"""File-level tooling: ``mscr encode|decode|repair|inspect|simulate|selftest``."""

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from . import shardfile
from .cluster_sim import (POLICIES, audit_bandwidth, create_cluster, fail_random,
                          run_cooperative_repair)
from .params import ParameterError, derive_params
from .repair import RepairError, cooperative_repair
from .shardfile import ShardFormatError, ShardHeader
from .systematic import decode_systematic, encode_systematic

MIN_MODULUS = 257  # one byte per symbol
MAX_MODULUS = 1 << 16  # u16 payload symbols
MANIFEST = "manifest.txt"


class ChecksumError(ValueError):
    pass


def shard_name(i):
    return f"shard_{i:03d}.mscr"


def file_params(n, k, d, t, modulus=None):
    if modulus is not None and modulus < MIN_MODULUS:
        raise ParameterError(f"modulus {modulus} < {MIN_MODULUS}: bytes need one symbol each")
    params = derive_params(n, k, d, t, modulus=modulus, min_modulus=MIN_MODULUS)
    if params.p >= MAX_MODULUS:
        raise ParameterError(f"modulus {params.p} does not fit 16-bit symbols")
    return params


def bytes_to_stripes(data, B):
    stripes = max(1, -(-len(data) // B))
    buf = np.zeros(stripes * B, dtype=np.int64)
    buf[: len(data)] = np.frombuffer(data, dtype=np.uint8)
    return buf.reshape(stripes, B)


def encode_file(path, n, k, d, t, out_dir, modulus=None):
    """Encode ``path`` into ``n`` shard files plus a manifest under ``out_dir``."""
    params = file_params(n, k, d, t, modulus)
    data = Path(path).read_bytes()
    message = bytes_to_stripes(data, params.B)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stripes = message.shape[0]
    for shard in encode_systematic(params, message):
        hdr = ShardHeader(n, k, d, t, params.p, shard.node_index, stripes)
        shardfile.write_shard(out / shard_name(shard.node_index), hdr, shard.symbols)
    shardfile.write_manifest(out / MANIFEST, {
        "n": n, "k": k, "d": d, "t": t, "modulus": params.p, "length": len(data),
        "stripes": stripes, "checksum": f"{shardfile.fnv1a_64(data):016x}"})
    return params


def load_dir(shard_dir):
    """Read the manifest and every consistent shard file in ``shard_dir``."""
    shard_dir = Path(shard_dir)
    man = shardfile.read_manifest(shard_dir / MANIFEST)
    params = file_params(man["n"], man["k"], man["d"], man["t"], man["modulus"])
    expect = (params.n, params.k, params.d, params.t, params.p)
    rows = {}
    for f in sorted(shard_dir.glob("*.mscr")):
        hdr, r = shardfile.read_shard(f)
        if hdr.params_tuple != expect or hdr.stripe_count != man["stripes"]:
            raise ShardFormatError(f"{f}: header {hdr} does not match manifest")
        if not 1 <= hdr.node_index <= params.n:
            raise ShardFormatError(f"{f}: node index {hdr.node_index} out of range")
        if hdr.node_index in rows:
            raise ShardFormatError(f"{f}: duplicate shard for node {hdr.node_index}")
        rows[hdr.node_index] = r
    return params, man, rows


def decode_file(shard_dir, out_path):
    params, man, rows = load_dir(shard_dir)
    if len(rows) < params.k:
        raise ValueError(f"only {len(rows)} shards present, need k={params.k}")
    chosen = {i: rows[i] for i in sorted(rows)[: params.k]}
    message = decode_systematic(params, chosen)
    if np.any(message > 255):
        raise ChecksumError("decoded symbols fall outside the byte range")
    data = message.astype(np.uint8).tobytes()[: man["length"]]
    if shardfile.fnv1a_64(data) != man["checksum"]:
        raise ChecksumError("checksum mismatch after decode")
    Path(out_path).write_bytes(data)
    return data


def parse_helpers(text):
    if text is None or text in POLICIES:
        return text
    return tuple(int(x) for x in text.split(","))


def repair_shards(shard_dir, helpers=None):
    """Regenerate the missing shard files.

    Returns ``(counts, session)``: symbols downloaded per newcomer summed over
    all stripes, and the repair session itself.
    """
    shard_dir = Path(shard_dir)
    params, man, rows = load_dir(shard_dir)
    missing = sorted(set(range(1, params.n + 1)) - set(rows))
    if len(missing) != params.t:
        raise RepairError(f"{len(missing)} shards missing; repair needs exactly t={params.t}")
    if len(rows) < params.d:
        raise RepairError(f"only {len(rows)} survivors, need d={params.d}")
    plan = None
    if isinstance(helpers, str):
        alive = sorted(rows)
        plan = {i: POLICIES[helpers](params, i, tuple(missing), alive) for i in missing}
    elif helpers is not None:
        plan = helpers
    repaired, session = cooperative_repair(params, rows, missing, plan)
    for i, r in repaired.items():
        hdr = ShardHeader(params.n, params.k, params.d, params.t, params.p, i, man["stripes"])
        shardfile.write_shard(shard_dir / shard_name(i), hdr, r)
    return {i: session.downloads(i) for i in missing}, session


def selftest(out=sys.stdout):
    """Exhaustive decode and repair checks on small instances."""
    ok = True
    rng = np.random.default_rng(0)
    for n, k, d, t in [(5, 3, 3, 2), (8, 3, 4, 3), (10, 4, 8, 2)]:
        params = derive_params(n, k, d, t)
        msg = rng.integers(0, params.p, size=(4, params.B))
        shards = {s.node_index: s.symbols for s in encode_systematic(params, msg)}
        dec = all(np.array_equal(decode_systematic(params, {i: shards[i] for i in sub}), msg)
                  for sub in itertools.combinations(range(1, n + 1), k))
        rep = True
        for failed in itertools.combinations(range(1, n + 1), t):
            alive = {j: r for j, r in shards.items() if j not in failed}
            got, session = cooperative_repair(params, alive, failed)
            rep &= all(np.array_equal(got[i], shards[i]) for i in failed)
            rep &= all(v == 4 * params.repair_bandwidth for v in session.per_newcomer().values())
        for name, good in (("decode", dec), ("repair", rep)):
            print(f"{'PASS' if good else 'FAIL'} {name} ({n},{k},{d},{t}) p={params.p}", file=out)
            ok &= good
    return ok


def build_parser():
    ap = argparse.ArgumentParser(prog="mscr", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def code_flags(p):
        for f in ("--n", "--k", "--d", "--t"):
            p.add_argument(f, type=int, required=True)
        p.add_argument("--modulus", type=int)

    p = sub.add_parser("encode", help="split a file into n shard files")
    p.add_argument("file")
    code_flags(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("decode", help="rebuild the file from any k shards")
    p.add_argument("shard_dir")
    p.add_argument("--out", required=True, help="output file")

    p = sub.add_parser("repair", help="regenerate exactly t missing shard files")
    p.add_argument("shard_dir")
    p.add_argument("--helpers", help="'lowest', 'round-robin' or comma-separated indices")

    p = sub.add_parser("inspect", help="print a shard header or manifest")
    p.add_argument("path")

    p = sub.add_parser("simulate", help="fail t nodes in a simulated cluster and repair")
    code_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--helpers", default="lowest", choices=sorted(POLICIES))
    p.add_argument("--stripes", type=int, default=1)
    p.add_argument("--out", help="write the traffic log here")

    sub.add_parser("selftest", help="run exhaustive small-instance checks")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ValueError, ArithmeticError, OSError) as e:
        print(f"mscr: error: {e}", file=sys.stderr)
        return 2


def _run(args):
    if args.command == "encode":
        params = encode_file(args.file, args.n, args.k, args.d, args.t, args.out, args.modulus)
        print(f"encoded {args.file} into {params.n} shards "
              f"(alpha={params.alpha}, B={params.B}, p={params.p})")
    elif args.command == "decode":
        data = decode_file(args.shard_dir, args.out)
        print(f"decoded {len(data)} bytes to {args.out}")
    elif args.command == "repair":
        counts, session = repair_shards(args.shard_dir, parse_helpers(args.helpers))
        bw = session.params.repair_bandwidth
        for i, c in counts.items():
            phase1 = session.downloads(i, 1)
            stripes = phase1 // session.params.d
            print(f"node {i}: downloaded {c} symbols over {stripes} stripes "
                  f"({c // stripes} per stripe, optimum d+t-1={bw})")
    elif args.command == "inspect":
        path = Path(args.path)
        if path.is_dir():
            path = path / MANIFEST
        if path.suffix == ".mscr":
            hdr, rows = shardfile.read_shard(path)
            for key, val in vars(hdr).items():
                print(f"{key}={val}")
        else:
            for key, val in shardfile.read_manifest(path).items():
                print(f"{key}={val:016x}" if key == "checksum" else f"{key}={val}")
    elif args.command == "simulate":
        params = derive_params(args.n, args.k, args.d, args.t, modulus=args.modulus)
        rng = np.random.default_rng(args.seed)
        msg = rng.integers(0, params.p, size=(args.stripes, params.B))
        cluster = create_cluster(params, msg, seed=args.seed)
        before = [s.copy() for s in cluster.nodes]
        fail_random(cluster)
        print(f"failed nodes: {list(cluster.failed())}")
        run_cooperative_repair(cluster, args.helpers)
        same = all(np.array_equal(a, b) for a, b in zip(before, cluster.nodes))
        report = audit_bandwidth(cluster)
        print(report)
        print("restored" if same else "MISMATCH")
        if args.out:
            Path(args.out).write_text(cluster.export_traffic(), encoding="utf-8")
        return 0 if same and report.passed else 1
    elif args.command == "selftest":
        return 0 if selftest() else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
