"""Command-line front end: ``rtsss split | recover | repair | audit``.

Exit codes: 0 success, 1 audit failure or other error, 2 usage error,
insufficient shares or wrong packet set, 3 malformed file or CRC mismatch,
4 inconsistent shares, 5 files from different splits, 6 helper outside the
repair set, 7 exhaustive enumeration refused.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import warnings
from pathlib import Path

from . import audit, formats, regcode, scheme
from .errors import (
    FormatError,
    InconsistentShares,
    InsufficientShares,
    MixedSchemes,
    NotInRepairSet,
    RTSSError,
    TooLargeToEnumerate,
    WrongContributionCount,
    WrongPacketSet,
)
from .gf import FieldElement, ext_field_new, int_to_poly

EXIT_CODES = (
    (InsufficientShares, 2),
    (WrongPacketSet, 2),
    (WrongContributionCount, 2),
    (FormatError, 3),
    (InconsistentShares, 4),
    (MixedSchemes, 5),
    (NotInRepairSet, 6),
    (TooLargeToEnumerate, 7),
)
INSECURE_ENV = "RTSSS_INSECURE_TEST"


class UsageError(Exception):
    pass


def _index_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


# -- split --------------------------------------------------------------------

def _select_code(args):
    """Returns ``(code, default_p, default_m)``."""
    spec = args.code
    if spec == "paper-example":
        _require_shape(args, 4, 2, 3)
        return regcode.paper_example_code(2), 2, 5
    if spec == "paper-example-naive":
        _require_shape(args, 4, 2, 3)
        return regcode.naive_example_code(), 11, 1
    if spec == "mbr":
        if None in (args.n, args.k, args.d, args.p):
            raise UsageError("--code mbr needs --n, --k, --d and --p")
        return regcode.mbr_code(args.n, args.k, args.d, args.p), args.p, None
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            kv = formats.parse_keyvalues(path.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read code file: {exc}") from None
        code = formats.code_from_fields(kv)
        _require_shape(args, code.params.n, code.params.k, code.params.d)
        return code, code.p, None
    raise UsageError(f"unknown --code {spec!r}")


def _require_shape(args, n, k, d):
    for name, want in (("n", n), ("k", k), ("d", d)):
        got = getattr(args, name)
        if got is not None and got != want:
            raise UsageError(f"this code has {name}={want}, not {got}")


def _build_config(args, rng):
    code, default_p, default_m = _select_code(args)
    p = args.p if args.p is not None else default_p
    if p != code.p:
        raise UsageError(f"--p {p} disagrees with the code's prime {code.p}")
    m = args.m if args.m is not None else default_m
    if m is None:
        raise UsageError("--m is required for this code")
    poly = int_to_poly(p, int(args.poly, 16)) if args.poly else None
    field = ext_field_new(p, m, poly)
    mode = args.mode or (scheme.NAIVE if args.code == "paper-example-naive" else scheme.LINEARIZED)
    sid = rng.getrandbits(128).to_bytes(16, "big")
    return scheme.SchemeConfig.create(field, code, mode=mode, scheme_id=sid)


def cmd_split(args) -> int:
    if args.seed is not None:
        rng = random.Random(int(args.seed, 16))
    else:
        rng = random.SystemRandom()
    config = _build_config(args, rng)
    F = config.field

    override = None
    if args.override_coeffs is not None:
        if os.environ.get(INSECURE_ENV) != "1":
            raise UsageError(f"--override-coeffs requires {INSECURE_ENV}=1")
        print("WARNING: fixed polynomial coefficients, shares are NOT secret", file=sys.stderr)
        override = [F.parse(x) for x in args.override_coeffs.split(",") if x.strip()]

    if args.secret_hex is not None:
        if F.p != 2:
            raise UsageError("byte secrets are only supported for p = 2")
        try:
            secret = bytes.fromhex(args.secret_hex)
        except ValueError:
            raise UsageError("--secret-hex is not valid hex") from None
        elements = formats.bytes_to_codes(secret, F.m)
        encoding = "bytes"
    else:
        elements = [F.parse(args.secret_element)]
        encoding = "element"

    split_fn = scheme.split if config.mode == scheme.LINEARIZED else scheme.naive_split
    per_node = [[] for _ in range(config.params.n)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scheme.InsecureTestWarning)
        for code in elements:
            shares = split_fn(FieldElement(F, code), config, rng, insecure_test_coeffs=override)
            for i, sh in enumerate(shares):
                per_node[i].append([v.code for v in sh.payload])

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = formats.Metadata(config, encoding, len(elements))
    (out / "meta.txt").write_text(formats.dump_metadata(meta))
    for i, blocks in enumerate(per_node, 1):
        data = formats.pack(formats.SHARE_VERSION, config.scheme_id, i, blocks, F)
        (out / f"share_{i}.rtss").write_bytes(data)
    print(f"wrote {config.params.n} shares and meta.txt to {out}")
    return 0


# -- recover / repair -------------------------------------------------------------

def _read_meta(path) -> formats.Metadata:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read metadata: {exc}") from None
    return formats.load_metadata(text)


def _read_blocks(path, meta, width, version):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    sid, index, blocks = formats.unpack(data, meta.config.field, width, version=version)
    if sid != meta.config.scheme_id:
        raise MixedSchemes(f"{path} belongs to a different split")
    if len(blocks) != meta.blocks:
        raise FormatError(f"{path} holds {len(blocks)} blocks, metadata says {meta.blocks}")
    return index, blocks


def _shares_per_block(meta, paths):
    cfg = meta.config
    F = cfg.field
    loaded = [_read_blocks(p, meta, cfg.params.alpha, formats.SHARE_VERSION) for p in paths]
    out = []
    for b in range(meta.blocks):
        out.append([scheme.Share(i, tuple(FieldElement(F, v) for v in blocks[b]), cfg.scheme_id)
                    for i, blocks in loaded])
    return out


def cmd_recover(args) -> int:
    meta = _read_meta(args.meta)
    cfg = meta.config
    codes = [scheme.recover(cfg, shares).code for shares in _shares_per_block(meta, args.share)]
    if meta.encoding == "bytes":
        print(formats.codes_to_bytes(codes, cfg.field.m).hex())
    else:
        print(" ".join(cfg.field.format(c) for c in codes))
    return 0


def cmd_repair_contribute(args) -> int:
    meta = _read_meta(args.meta)
    cfg = meta.config
    helpers = tuple(sorted(args.helpers))
    index, blocks = _read_blocks(args.share, meta, cfg.params.alpha, formats.SHARE_VERSION)
    F = cfg.field
    out_blocks = []
    for b in blocks:
        share = scheme.Share(index, tuple(FieldElement(F, v) for v in b), cfg.scheme_id)
        packet = scheme.repair_contribute(cfg, share, args.failed, helpers)
        out_blocks.append([v.code for v in packet.data])
    data = formats.pack(formats.PACKET_VERSION, cfg.scheme_id, index, out_blocks, F)
    Path(args.out).write_bytes(data)
    print(f"wrote packet from helper {index} for participant {args.failed} to {args.out}")
    return 0


def cmd_repair_assemble(args) -> int:
    meta = _read_meta(args.meta)
    cfg = meta.config
    F = cfg.field
    loaded = [_read_blocks(p, meta, cfg.params.beta, formats.PACKET_VERSION) for p in args.packet]
    helpers = tuple(sorted(i for i, _ in loaded))
    if len(loaded) != cfg.params.d or len(set(helpers)) != len(helpers):
        raise WrongPacketSet(f"need packets from {cfg.params.d} distinct helpers")
    out_blocks = []
    for b in range(meta.blocks):
        packets = [scheme.RepairPacket(i, args.failed, helpers,
                                       tuple(FieldElement(F, v) for v in blocks[b]), cfg.scheme_id)
                   for i, blocks in loaded]
        share = scheme.repair_assemble(cfg, args.failed, packets)
        out_blocks.append([v.code for v in share.payload])
    data = formats.pack(formats.SHARE_VERSION, cfg.scheme_id, args.failed, out_blocks, F)
    Path(args.out).write_bytes(data)
    print(f"wrote repaired share {args.failed} to {args.out}")
    return 0


# -- audit -------------------------------------------------------------------------

def cmd_audit(args) -> int:
    meta = _read_meta(args.meta)
    report = audit.run_audit(meta.config, exhaustive=args.exhaustive,
                             max_states=args.max_states, workers=args.workers)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        return 0 if report.ok else 1
    cfg = meta.config
    print(f"mode: {cfg.mode}  code: {cfg.code.name}  field: GF({cfg.field.p}^{cfg.field.m})")
    for v in report.secrecy:
        print(f"secrecy rank {_subset(v.subset)}: r={v.rank} {'PASS' if v.criterion_pass else 'FAIL'}")
    for v in report.exhaustive:
        print(f"secrecy exhaustive {_subset(v.subset)}: {'PASS' if v.criterion_pass else 'FAIL'}")
    for v in report.repair_leakage:
        print(f"repair transcript {v.detail} from {_subset(v.subset)}: "
              f"{'PASS' if v.criterion_pass else 'FAIL'}")
    dim = report.dimension
    worst = max(dim.dims.values(), default=0)
    print(f"dimension: max {worst} < t={dim.t} (bound {dim.bound}): {'PASS' if dim.ok else 'FAIL'}")
    r = report.rates
    print(f"rho_rep={r.rho_rep.numerator}/{r.rho_rep.denominator} "
          f"rho_inf={r.rho_inf.numerator}/{r.rho_inf.denominator} "
          f"bound={r.rho_inf_bound.numerator}/{r.rho_inf_bound.denominator}")
    print("PASS" if report.ok else "FAIL")
    return 0 if report.ok else 1


def _subset(S) -> str:
    return "{" + ",".join(map(str, S)) + "}"


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rtsss", description="Repairable threshold secret sharing.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("split", help="split a secret into n share files")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--code", default="mbr",
                    help="mbr | paper-example | paper-example-naive | file:PATH")
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--poly", help="defining polynomial as a hex integer of base-p digits")
    sp.add_argument("--mode", choices=scheme.MODES)
    secret = sp.add_mutually_exclusive_group(required=True)
    secret.add_argument("--secret-hex", help="byte secret (p = 2 only)")
    secret.add_argument("--secret-element", help="one field element, e.g. w^3 or [1,0,1]")
    sp.add_argument("--seed", help="hex seed for reproducible output")
    sp.add_argument("--override-coeffs", help=argparse.SUPPRESS)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_split)

    rp = sub.add_parser("recover", help="recover the secret from k or more shares")
    rp.add_argument("--meta", required=True)
    rp.add_argument("--share", action="append", required=True)
    rp.set_defaults(func=cmd_recover)

    rep = sub.add_parser("repair", help="rebuild a lost share")
    rsub = rep.add_subparsers(dest="action", required=True)
    c = rsub.add_parser("contribute")
    c.add_argument("--meta", required=True)
    c.add_argument("--share", required=True)
    c.add_argument("--failed", type=int, required=True)
    c.add_argument("--helpers", type=_index_list, required=True)
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_repair_contribute)
    a = rsub.add_parser("assemble")
    a.add_argument("--meta", required=True)
    a.add_argument("--failed", type=int, required=True)
    a.add_argument("--packet", action="append", required=True)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_repair_assemble)

    au = sub.add_parser("audit", help="check secrecy, dimension bounds and rates")
    au.add_argument("--meta", required=True)
    au.add_argument("--exhaustive", action="store_true")
    au.add_argument("--max-states", type=int, default=audit.DEFAULT_MAX_STATES)
    au.add_argument("--workers", type=int, default=1)
    au.add_argument("--json", action="store_true")
    au.set_defaults(func=cmd_audit)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rtsss: {exc}", file=sys.stderr)
        return 2
    except RTSSError as exc:
        for cls, code in EXIT_CODES:
            if isinstance(exc, cls):
                break
        else:
            code = 1
        print(f"rtsss: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
