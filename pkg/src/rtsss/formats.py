"""On-disk formats: public metadata text, binary share and packet files.

Metadata is ``key = value`` text, one key per line in a fixed order, with
list values written as JSON arrays. Share files are binary::

    "RTSS" | version (1) | scheme_id (16) | index (2, BE) | blocks (4, BE)
    | payload | CRC32 of everything before it (4, BE)

The payload holds, per block, ``width`` elements of ``m`` base-p digits,
most significant digit first, one byte per digit (two when ``p > 256``).
Share files use version 0x01 with ``width = alpha``; repair packets use
version 0x02 with ``width = beta`` and the helper's index.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass

from . import regcode
from .errors import FormatError
from .gf import FieldElement, ext_field_new
from .scheme import SchemeConfig

MAGIC = b"RTSS"
SHARE_VERSION = 0x01
PACKET_VERSION = 0x02
META_VERSION = 1
HEADER = struct.Struct(">4sB16sHI")

BUILTIN_CODES = ("paper-example-423", "naive-example-423", "product-matrix", "repair-by-transfer")
META_KEYS = (
    "format", "p", "m", "poly", "mode", "n", "k", "d", "alpha", "beta", "t",
    "points", "code", "code_prime", "code_points", "generator", "repair",
    "scheme_id", "encoding", "blocks",
)


@dataclass
class Metadata:
    config: SchemeConfig
    encoding: str = "element"   # or "bytes"
    blocks: int = 1


# -- metadata -------------------------------------------------------------------

def _code_fields(code: regcode.LinearRegenCode) -> dict:
    out = {"code": code.name, "code_prime": code.p}
    if code.name == "product-matrix":
        out["code_points"] = list(regcode.product_matrix_points(code.params.n, code.p))
    elif code.name not in BUILTIN_CODES:
        out["code"] = "inline"
        out.update(inline_code_fields(code))
    return out


def inline_code_fields(code: regcode.LinearRegenCode) -> dict:
    repair = []
    for (i, T), entry in sorted(code.repair.items()):
        repair.append([i, list(T), [[list(r) for r in entry.contributions[j]] for j in T]])
    return {"generator": [list(r) for r in code.generator], "repair": repair}


def dump_metadata(meta: Metadata) -> str:
    cfg = meta.config
    pr = cfg.params
    values = {
        "format": META_VERSION, "p": cfg.field.p, "m": cfg.field.m, "poly": list(cfg.field.poly),
        "mode": cfg.mode, "n": pr.n, "k": pr.k, "d": pr.d, "alpha": pr.alpha,
        "beta": pr.beta, "t": pr.t, "points": cfg.point_codes(),
        "scheme_id": cfg.scheme_id.hex(), "encoding": meta.encoding, "blocks": meta.blocks,
    }
    values.update(_code_fields(cfg.code))
    lines = []
    for key in META_KEYS:
        if key in values:
            v = values[key]
            text = json.dumps(v, separators=(",", ":")) if isinstance(v, list) else str(v)
            lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def parse_keyvalues(text: str) -> dict:
    out = {}
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {num}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        if key in out:
            raise FormatError(f"line {num}: duplicate key {key!r}")
        if value.startswith("["):
            try:
                out[key] = json.loads(value)
            except json.JSONDecodeError as exc:
                raise FormatError(f"line {num}: bad list: {exc}") from None
        else:
            out[key] = value
    return out


def _int(kv, key):
    try:
        return int(kv[key])
    except KeyError:
        raise FormatError(f"missing key {key!r}") from None
    except (TypeError, ValueError):
        raise FormatError(f"key {key!r} must be an integer") from None


def code_from_fields(kv: dict) -> regcode.LinearRegenCode:
    """Inline code description: params, ``generator`` and optional ``repair``."""
    n, k, d = _int(kv, "n"), _int(kv, "k"), _int(kv, "d")
    alpha, beta = _int(kv, "alpha"), _int(kv, "beta")
    p = _int(kv, "code_prime") if "code_prime" in kv else _int(kv, "p")
    params = regcode.CodeParams.derive(n, k, d, alpha, beta)
    if "t" in kv and _int(kv, "t") != params.t:
        raise FormatError(f"t={kv['t']} disagrees with the derived t={params.t}")
    gen = kv.get("generator")
    if not isinstance(gen, list) or len(gen) != params.t:
        raise FormatError("generator must be a list of t rows")
    blocks = regcode.split_blocks(gen, n, alpha)
    if kv.get("repair"):
        contributions = {}
        for item in kv["repair"]:
            try:
                i, T, mats = item
                contributions[(int(i), tuple(T))] = dict(zip(T, mats))
            except (TypeError, ValueError):
                raise FormatError("repair entries are [failed, [helpers], [matrices]]") from None
        repair = regcode.build_repair_table(params, p, blocks, contributions)
    else:
        repair = regcode.search_repair_table(params, p, blocks)
    return regcode.LinearRegenCode(params, p, blocks, repair, name="inline")


def _builtin_code(kv) -> regcode.LinearRegenCode:
    name = kv.get("code")
    n, k, d = _int(kv, "n"), _int(kv, "k"), _int(kv, "d")
    if name == "paper-example-423":
        return regcode.paper_example_code(_int(kv, "code_prime"))
    if name == "naive-example-423":
        return regcode.naive_example_code()
    if name == "product-matrix":
        code = regcode.product_matrix_mbr(n, k, d, _int(kv, "code_prime"))
        if "code_points" in kv and tuple(kv["code_points"]) != regcode.product_matrix_points(n, code.p):
            raise FormatError("product-matrix points do not match the canonical choice")
        return code
    if name == "repair-by-transfer":
        return regcode.repair_by_transfer_mbr(n, k, _int(kv, "code_prime"))
    if name == "inline":
        return code_from_fields(kv)
    raise FormatError(f"unknown code descriptor {name!r}")


def load_metadata(text: str) -> Metadata:
    kv = parse_keyvalues(text)
    if _int(kv, "format") != META_VERSION:
        raise FormatError(f"unsupported metadata format {kv['format']}")
    p, m = _int(kv, "p"), _int(kv, "m")
    poly = kv.get("poly")
    if not isinstance(poly, list):
        raise FormatError("poly must be a digit list")
    field = ext_field_new(p, m, tuple(poly))
    code = _builtin_code(kv)
    pr = code.params
    for key in ("n", "k", "d", "alpha", "beta", "t"):
        if _int(kv, key) != getattr(pr, key):
            raise FormatError(f"{key} disagrees with the code")
    points = kv.get("points")
    if not isinstance(points, list):
        raise FormatError("points must be a list")
    try:
        sid = bytes.fromhex(kv.get("scheme_id", ""))
    except ValueError:
        raise FormatError("scheme_id must be hex") from None
    pts = tuple(FieldElement(field, field.element(int(x)).code) for x in points)
    config = SchemeConfig(field, code, pts, sid, kv.get("mode", "linearized"))
    encoding = kv.get("encoding", "element")
    if encoding not in ("element", "bytes"):
        raise FormatError(f"unknown encoding {encoding!r}")
    return Metadata(config, encoding, _int(kv, "blocks"))


# -- share and packet files --------------------------------------------------------

def _digit_width(p: int) -> int:
    return 1 if p <= 256 else 2


def pack(version: int, scheme_id: bytes, index: int, blocks, field) -> bytes:
    """``blocks`` is a list of per-block code lists of equal length."""
    out = bytearray(HEADER.pack(MAGIC, version, scheme_id, index, len(blocks)))
    dw = _digit_width(field.p)
    for block in blocks:
        for code in block:
            for digit in reversed(field.digits(code)):
                out += digit.to_bytes(dw, "big")
    out += struct.pack(">I", zlib.crc32(out))
    return bytes(out)


def unpack(data: bytes, field, width: int, *, version: int):
    """Inverse of :func:`pack`; returns ``(scheme_id, index, blocks)``."""
    if len(data) < HEADER.size + 4:
        raise FormatError("file too short")
    body, crc = data[:-4], struct.unpack(">I", data[-4:])[0]
    if zlib.crc32(body) != crc:
        raise FormatError("CRC mismatch")
    magic, ver, sid, index, nblocks = HEADER.unpack_from(body)
    if magic != MAGIC:
        raise FormatError("bad magic")
    if ver != version:
        raise FormatError(f"expected version {version:#04x}, found {ver:#04x}")
    dw = _digit_width(field.p)
    m = field.m
    payload = body[HEADER.size:]
    if len(payload) != nblocks * width * m * dw:
        raise FormatError("payload length disagrees with the header")
    blocks = []
    pos = 0
    for _ in range(nblocks):
        block = []
        for _ in range(width):
            digits = []
            for _ in range(m):
                digits.append(int.from_bytes(payload[pos:pos + dw], "big"))
                pos += dw
            if any(x >= field.p for x in digits):
                raise FormatError("digit out of range")
            block.append(field.from_digits(tuple(reversed(digits))))
        blocks.append(block)
    return sid, index, blocks


# -- byte secrets (p = 2) ------------------------------------------------------------

def bytes_to_codes(secret: bytes, m: int) -> list[int]:
    """Length-prefix, zero-pad to a multiple of ``m`` bits, cut into m-bit codes."""
    data = struct.pack(">I", len(secret)) + secret
    nbits = len(data) * 8
    value = int.from_bytes(data, "big")
    pad = (-nbits) % m
    value <<= pad
    count = (nbits + pad) // m
    mask = (1 << m) - 1
    return [(value >> (m * (count - 1 - i))) & mask for i in range(count)]


def codes_to_bytes(codes, m: int) -> bytes:
    value = 0
    for c in codes:
        value = (value << m) | c
    nbits = len(codes) * m
    if nbits < 32:
        raise FormatError("chunked secret too short")
    length = value >> (nbits - 32)
    total = 8 * (4 + length)
    if not 0 <= nbits - total < m:
        raise FormatError("chunked secret length prefix disagrees with block count")
    return (value >> (nbits - total)).to_bytes(4 + length, "big")[4:]
