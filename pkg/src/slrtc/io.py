"""File ingestion and emission: images, frame-directory videos, tensors, masks, reports.

Binary formats
--------------
``TNSR1``: magic ``TNSR``, version byte 1, little-endian u32 order N,
N little-endian u32 extents, then the entries as little-endian float64 in
storage order (first index fastest).

``MSK1``: magic ``MSK1``, then the same header layout, then the boolean
entries in storage order packed 8 per byte, most significant bit first.

Images are 8-bit PPM (P6 color, P5 grayscale); PNG works through the same
interface when Pillow is installed.  Videos are directories of frames whose
lexicographic file order defines the frame order.
"""

from __future__ import annotations

import csv
import json
import math
import struct
from pathlib import Path

import numpy as np

__all__ = [
    "load_image",
    "save_image",
    "read_gray8",
    "load_video",
    "save_video",
    "load_tensor",
    "save_tensor",
    "load_mask",
    "save_mask",
    "json_safe",
    "write_report",
    "read_report",
    "write_history_csv",
]

_TENSOR_MAGIC = b"TNSR"
_MASK_MAGIC = b"MSK1"
_VERSION = 1
_IMAGE_SUFFIXES = (".ppm", ".pgm", ".png")


# ---------------------------------------------------------------------------
# images


def _read_pnm_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comment lines."""
    while pos < len(buf):
        c = buf[pos : pos + 1]
        if c == b"#":
            while pos < len(buf) and buf[pos : pos + 1] != b"\n":
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < len(buf) and not buf[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise ValueError("truncated PNM header")
    return buf[start:pos], pos


def _load_pnm(buf: bytes) -> np.ndarray:
    magic = buf[:2]
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"unsupported PNM magic {magic!r}")
    pos = 2
    width, pos = _read_pnm_token(buf, pos)
    height, pos = _read_pnm_token(buf, pos)
    maxval, pos = _read_pnm_token(buf, pos)
    w, h, mv = int(width), int(height), int(maxval)
    if mv <= 0 or mv > 255:
        raise ValueError(f"only 8-bit PNM supported, got maxval {mv}")
    pos += 1  # single whitespace byte separates header from raster
    channels = 3 if magic == b"P6" else 1
    need = w * h * channels
    if len(buf) - pos < need:
        raise ValueError("truncated PNM raster")
    raster = np.frombuffer(buf, dtype=np.uint8, count=need, offset=pos)
    return raster.reshape(h, w, channels)


def load_image(path) -> np.ndarray:
    """Load an 8-bit image as an (H, W, C) float tensor with values in [0, 1].

    C is 3 for color (P6 PPM, RGB PNG) and 1 for grayscale (P5 PGM, gray PNG).
    """
    path = Path(path)
    buf = path.read_bytes()
    if buf[:2] in (b"P5", b"P6"):
        raw = _load_pnm(buf)
    elif buf[:8] == b"\x89PNG\r\n\x1a\n":
        raw = _load_png(path)
    else:
        raise ValueError(f"unsupported image format: {path}")
    t = raw.astype(float) / 255.0
    if not np.all(np.isfinite(t)):
        raise ValueError(f"non-finite pixel data in {path}")
    return t


def _load_png(path: Path) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError as exc:
        raise ValueError(f"PNG support requires Pillow: {path}") from exc
    with Image.open(path) as im:
        if im.mode in ("L", "I;16", "I"):
            arr = np.asarray(im.convert("L"), dtype=np.uint8)[:, :, None]
        else:
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return arr


def save_image(t: np.ndarray, path) -> None:
    """Quantize an (H, W), (H, W, 1) or (H, W, 3) tensor in [0, 1] to an 8-bit file.

    The format follows the suffix: .png via Pillow, anything else as binary PNM
    (P6 for 3 channels, P5 for 1).
    """
    path = Path(path)
    t = np.asarray(t, dtype=float)
    if t.ndim == 2:
        t = t[:, :, None]
    if t.ndim != 3 or t.shape[2] not in (1, 3):
        raise ValueError(f"expected (H, W, 1|3) image data, got shape {t.shape}")
    raw = np.rint(np.clip(t, 0.0, 1.0) * 255.0).astype(np.uint8)
    if path.suffix.lower() == ".png":
        try:
            from PIL import Image
        except ImportError as exc:
            raise ValueError("PNG support requires Pillow") from exc
        img = raw[:, :, 0] if raw.shape[2] == 1 else raw
        Image.fromarray(img).save(path)
        return
    h, w, c = raw.shape
    magic = b"P6" if c == 3 else b"P5"
    header = magic + b"\n%d %d\n255\n" % (w, h)
    path.write_bytes(header + raw.tobytes())


def read_gray8(path) -> np.ndarray:
    """Load an image as a 2-D array of 8-bit gray levels (0..255).

    Color inputs are reduced by the channel mean.
    """
    t = load_image(path)
    g = t[:, :, 0] if t.shape[2] == 1 else t.mean(axis=2)
    return np.rint(g * 255.0).astype(np.uint8)


# ---------------------------------------------------------------------------
# videos as frame directories


def load_video(directory) -> np.ndarray:
    """Stack the image frames of a directory along a trailing mode.

    Frames are read in lexicographic file-name order.  Grayscale frames give
    an (H, W, F) tensor; color frames give (H, W, 3, F).
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ValueError(f"not a directory: {directory}")
    paths = sorted(
        p for p in directory.iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
    )
    if not paths:
        raise ValueError(f"no frames found in {directory}")
    frames = [load_image(p) for p in paths]
    shape = frames[0].shape
    for p, f in zip(paths, frames):
        if f.shape != shape:
            raise ValueError(
                f"frame size mismatch: {p} has {f.shape}, expected {shape}"
            )
    stack = np.stack(frames, axis=-1)
    if shape[2] == 1:
        stack = stack[:, :, 0, :]
    return stack


def save_video(t: np.ndarray, directory) -> None:
    """Write an (H, W, F) or (H, W, C, F) tensor as frame_%05d.ppm files."""
    t = np.asarray(t, dtype=float)
    if t.ndim not in (3, 4):
        raise ValueError(f"expected order-3 or order-4 video tensor, got shape {t.shape}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for f in range(t.shape[-1]):
        save_image(t[..., f], directory / ("frame_%05d.ppm" % f))


# ---------------------------------------------------------------------------
# TNSR1 / MSK1


def _pack_header(magic: bytes, shape: tuple[int, ...]) -> bytes:
    return (
        magic
        + bytes([_VERSION])
        + struct.pack("<I", len(shape))
        + struct.pack("<%dI" % len(shape), *shape)
    )


def _unpack_header(buf: bytes, magic: bytes, path) -> tuple[tuple[int, ...], int]:
    if buf[:4] != magic:
        raise ValueError(f"bad magic in {path}: expected {magic!r}, got {buf[:4]!r}")
    if len(buf) < 9:
        raise ValueError(f"truncated header in {path}")
    if buf[4] != _VERSION:
        raise ValueError(f"unsupported version {buf[4]} in {path}")
    (order,) = struct.unpack_from("<I", buf, 5)
    end = 9 + 4 * order
    if len(buf) < end:
        raise ValueError(f"truncated header in {path}")
    shape = struct.unpack_from("<%dI" % order, buf, 9)
    return shape, end


def save_tensor(t: np.ndarray, path) -> None:
    """Write a dense tensor in the TNSR1 format."""
    t = np.asarray(t, dtype=np.float64)
    payload = t.ravel(order="F").astype("<f8", copy=False).tobytes()
    Path(path).write_bytes(_pack_header(_TENSOR_MAGIC, t.shape) + payload)


def load_tensor(path) -> np.ndarray:
    """Read a TNSR1 file back into a dense float64 tensor."""
    buf = Path(path).read_bytes()
    shape, offset = _unpack_header(buf, _TENSOR_MAGIC, path)
    count = int(np.prod(shape)) if shape else 1
    if len(buf) - offset != 8 * count:
        raise ValueError(
            f"truncated payload in {path}: expected {8 * count} bytes, got {len(buf) - offset}"
        )
    data = np.frombuffer(buf, dtype="<f8", count=count, offset=offset)
    return data.astype(np.float64).reshape(shape, order="F")


def save_mask(mask: np.ndarray, path) -> None:
    """Write a boolean sampling mask in the MSK1 format."""
    m = np.asarray(mask, dtype=bool)
    payload = np.packbits(m.ravel(order="F")).tobytes()
    Path(path).write_bytes(_pack_header(_MASK_MAGIC, m.shape) + payload)


def load_mask(path) -> np.ndarray:
    """Read an MSK1 file back into a boolean mask."""
    buf = Path(path).read_bytes()
    shape, offset = _unpack_header(buf, _MASK_MAGIC, path)
    count = int(np.prod(shape)) if shape else 1
    need = (count + 7) // 8
    if len(buf) - offset != need:
        raise ValueError(
            f"truncated payload in {path}: expected {need} bytes, got {len(buf) - offset}"
        )
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8, offset=offset), count=count)
    return bits.astype(bool).reshape(shape, order="F")


# ---------------------------------------------------------------------------
# reports


def json_safe(value):
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def json_restore(value):
    """Inverse of json_safe for the non-finite sentinels."""
    if isinstance(value, dict):
        return {k: json_restore(v) for k, v in value.items()}
    if isinstance(value, list):
        return [json_restore(v) for v in value]
    if value == "inf":
        return math.inf
    if value == "-inf":
        return -math.inf
    return value


def write_report(report: dict, path) -> None:
    """Write a metric report as JSON; infinite values serialize as "inf"."""
    Path(path).write_text(json.dumps(json_safe(report), indent=2) + "\n")


def read_report(path) -> dict:
    """Read a metric report, restoring "inf"/"-inf" sentinels to floats."""
    return json_restore(json.loads(Path(path).read_text()))


def write_history_csv(history, path) -> None:
    """Write per-iteration solver reports as CSV.

    Columns: k, relcha, feas_y_1..N, feas_t, lagrangian, beta, elapsed_ms.
    """
    history = list(history)
    if not history:
        raise ValueError("empty history")
    n = len(history[0].feas_y)
    fields = (
        ["k", "relcha"]
        + ["feas_y_%d" % (i + 1) for i in range(n)]
        + ["feas_t", "lagrangian", "beta", "elapsed_ms"]
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        for rep in history:
            writer.writerow(
                [rep.k, repr(rep.relcha)]
                + [repr(v) for v in rep.feas_y]
                + [repr(rep.feas_t), repr(rep.lagrangian), repr(rep.beta), repr(rep.elapsed_ms)]
            )
