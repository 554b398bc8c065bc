"""File formats: compact binary ensembles, lossless JSON debug form, and
plain-text point sets.

Binary layout (all integers little-endian):

    magic   4 bytes  b"S6VE"
    version u16      format version, currently 1
    flags   u16      bit 0: variant (0 = s6v, 1 = cs6v)
    width   u32
    height  u32
    n_colors u16
    reserved u16     zero
    meta_len u32     length of a UTF-8 JSON metadata blob (may be 0)
    meta    bytes    resolved run configuration and provenance
    planes  bytes    per color c = 1..n_colors: the v plane then the h plane
                     (width*height bits, index (x-1)*height + (y-1)), then
                     the left boundary plane (height bits) and the bottom
                     boundary plane (width bits); each plane is packed
                     little-endian bit order and padded to whole 64-bit words.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .degenerations import PointSet
from .lattice import PathEnsemble, _mask_dtype

MAGIC = b"S6VE"
VERSION = 1


def _pack_plane(bits: np.ndarray) -> bytes:
    packed = np.packbits(bits.astype(np.uint8).reshape(-1), bitorder="little")
    pad = (-len(packed)) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
    return packed.tobytes()


def _unpack_plane(buf: bytes, offset: int, count: int) -> tuple[np.ndarray, int]:
    nbytes = ((count + 7) // 8 + 7) // 8 * 8
    arr = np.frombuffer(buf, dtype=np.uint8, count=nbytes, offset=offset)
    bits = np.unpackbits(arr, count=count, bitorder="little")
    return bits, offset + nbytes


def ensemble_to_bytes(e: PathEnsemble, meta: dict | None = None) -> bytes:
    meta_blob = json.dumps(meta or {}, sort_keys=True).encode("utf-8")
    head = MAGIC + struct.pack(
        "<HHIIHHI",
        VERSION,
        1 if e.variant == "cs6v" else 0,
        e.width,
        e.height,
        e.n_colors,
        0,
        len(meta_blob),
    )
    planes = []
    for c in range(e.n_colors):
        planes.append(_pack_plane((e.v_edges >> c) & 1))
        planes.append(_pack_plane((e.h_edges >> c) & 1))
        planes.append(_pack_plane((e.boundary_left >> c) & 1))
        planes.append(_pack_plane((e.boundary_bottom >> c) & 1))
    return head + meta_blob + b"".join(planes)


def ensemble_from_bytes(buf: bytes) -> tuple[PathEnsemble, dict]:
    if buf[:4] != MAGIC:
        raise ValueError("not an ensemble file (bad magic)")
    if len(buf) < 24:
        raise ValueError("truncated ensemble data")
    version, flags, width, height, n_colors, _, meta_len = struct.unpack(
        "<HHIIHHI", buf[4:24])
    if version != VERSION:
        raise ValueError(f"unsupported format version {version}")
    meta = json.loads(buf[24:24 + meta_len].decode("utf-8")) if meta_len else {}
    offset = 24 + meta_len
    dtype = _mask_dtype(n_colors)
    v = np.zeros((width, height), dtype=dtype)
    hE = np.zeros((width, height), dtype=dtype)
    left = np.zeros(height, dtype=dtype)
    bottom = np.zeros(width, dtype=dtype)
    for c in range(n_colors):
        bits, offset = _unpack_plane(buf, offset, width * height)
        v |= (bits.astype(dtype) << c).reshape(width, height)
        bits, offset = _unpack_plane(buf, offset, width * height)
        hE |= (bits.astype(dtype) << c).reshape(width, height)
        bits, offset = _unpack_plane(buf, offset, height)
        left |= bits.astype(dtype) << c
        bits, offset = _unpack_plane(buf, offset, width)
        bottom |= bits.astype(dtype) << c
    variant = "cs6v" if flags & 1 else "s6v"
    return PathEnsemble(variant, n_colors, width, height, v, hE, left, bottom), meta


def write_ensemble(e: PathEnsemble, path, meta: dict | None = None) -> None:
    with open(path, "wb") as f:
        f.write(ensemble_to_bytes(e, meta))


def read_ensemble(path) -> tuple[PathEnsemble, dict]:
    with open(path, "rb") as f:
        return ensemble_from_bytes(f.read())


def ensemble_to_json(e: PathEnsemble, meta: dict | None = None) -> dict:
    """Lossless debug form: explicit edge coordinate lists per color."""
    colors = []
    for c in range(1, e.n_colors + 1):
        vx, vy = np.nonzero((e.v_edges >> (c - 1)) & 1)
        hx, hy = np.nonzero((e.h_edges >> (c - 1)) & 1)
        colors.append({
            "color": c,
            "v": [[int(x) + 1, int(y) + 1] for x, y in zip(vx, vy)],
            "h": [[int(x) + 1, int(y) + 1] for x, y in zip(hx, hy)],
            "left": [int(y) + 1 for y in np.nonzero((e.boundary_left >> (c - 1)) & 1)[0]],
            "bottom": [int(x) + 1 for x in np.nonzero((e.boundary_bottom >> (c - 1)) & 1)[0]],
        })
    out = {
        "format": "sixvertex-ensemble",
        "version": VERSION,
        "variant": e.variant,
        "width": e.width,
        "height": e.height,
        "n_colors": e.n_colors,
        "colors": colors,
    }
    if meta is not None:
        out["meta"] = meta
    return out


def ensemble_from_json(doc: dict) -> PathEnsemble:
    if doc.get("format") != "sixvertex-ensemble":
        raise ValueError("not an ensemble document")
    width, height, n = doc["width"], doc["height"], doc["n_colors"]
    dtype = _mask_dtype(n)
    v = np.zeros((width, height), dtype=dtype)
    hE = np.zeros((width, height), dtype=dtype)
    left = np.zeros(height, dtype=dtype)
    bottom = np.zeros(width, dtype=dtype)
    for entry in doc["colors"]:
        bit = dtype(1 << (entry["color"] - 1))
        for x, y in entry["v"]:
            v[x - 1, y - 1] |= bit
        for x, y in entry["h"]:
            hE[x - 1, y - 1] |= bit
        for y in entry["left"]:
            left[y - 1] |= bit
        for x in entry["bottom"]:
            bottom[x - 1] |= bit
    return PathEnsemble(doc["variant"], n, width, height, v, hE, left, bottom)


# ---------------------------------------------------------------------------
# Point sets

def write_pointset(ps: PointSet, path) -> None:
    """One 'x y' pair per line, sorted."""
    with open(path, "w") as f:
        for x, y in ps.points():
            f.write(f"{x} {y}\n")


def read_pointset(path, width: int | None = None, height: int | None = None) -> PointSet:
    """Inverse of write_pointset; extents default to the maximal coordinates."""
    pts = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            xs, ys = line.split()
            pts.append((int(xs), int(ys)))
    w = width if width is not None else max((x for x, _ in pts), default=1)
    h = height if height is not None else max((y for _, y in pts), default=1)
    grid = np.zeros((w, h), dtype=bool)
    for x, y in pts:
        grid[x - 1, y - 1] = True
    return PointSet(w, h, grid)
