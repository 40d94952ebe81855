"""File formats: PNM images, frame videos, TNSR1/MSK1, reports."""

import csv
import json
import math

import numpy as np
import pytest

from slrtc.io import (
    json_safe,
    load_image,
    load_mask,
    load_tensor,
    load_video,
    read_report,
    save_image,
    save_mask,
    save_tensor,
    save_video,
    write_history_csv,
    write_report,
)
from slrtc.solvers import IterationReport


class TestImages:
    def test_white_p6(self, tmp_path):
        p = tmp_path / "w.ppm"
        p.write_bytes(b"P6\n2 2\n255\n" + b"\xff" * 12)
        t = load_image(p)
        assert t.shape == (2, 2, 3)
        assert np.array_equal(t, np.ones((2, 2, 3)))

    def test_p5_grayscale_shape(self, tmp_path):
        p = tmp_path / "g.pgm"
        p.write_bytes(b"P5\n3 2\n255\n" + bytes(range(6)))
        t = load_image(p)
        assert t.shape == (2, 3, 1)
        assert t[0, 0, 0] == 0.0
        assert t[1, 2, 0] == pytest.approx(5 / 255)

    def test_round_trip_color(self, tmp_path):
        rng = np.random.default_rng(0)
        raw = rng.integers(0, 256, size=(7, 5, 3), dtype=np.uint8)
        p = tmp_path / "c.ppm"
        save_image(raw / 255.0, p)
        assert np.array_equal(load_image(p), raw / 255.0)

    def test_round_trip_gray(self, tmp_path):
        rng = np.random.default_rng(1)
        raw = rng.integers(0, 256, size=(4, 6), dtype=np.uint8)
        p = tmp_path / "g.pgm"
        save_image(raw / 255.0, p)
        assert np.array_equal(load_image(p)[:, :, 0], raw / 255.0)

    def test_header_comments(self, tmp_path):
        p = tmp_path / "c.ppm"
        p.write_bytes(b"P6\n# a comment\n2 # inline\n1\n255\n" + b"\x00" * 6)
        assert load_image(p).shape == (1, 2, 3)

    def test_values_clipped_on_save(self, tmp_path):
        p = tmp_path / "x.pgm"
        save_image(np.array([[-0.5, 1.5]]), p)
        t = load_image(p)
        assert t[0, 0, 0] == 0.0 and t[0, 1, 0] == 1.0

    def test_sixteen_bit_rejected(self, tmp_path):
        p = tmp_path / "x.ppm"
        p.write_bytes(b"P6\n1 1\n65535\n\x00\x00\x00\x00\x00\x00")
        with pytest.raises(ValueError, match="8-bit"):
            load_image(p)

    def test_truncated_raster(self, tmp_path):
        p = tmp_path / "x.ppm"
        p.write_bytes(b"P6\n2 2\n255\n\x00\x00")
        with pytest.raises(ValueError, match="truncated"):
            load_image(p)

    def test_unsupported_format(self, tmp_path):
        p = tmp_path / "x.ppm"
        p.write_bytes(b"GIF89a....")
        with pytest.raises(ValueError, match="unsupported"):
            load_image(p)

    def test_png_round_trip(self, tmp_path):
        pytest.importorskip("PIL")
        rng = np.random.default_rng(2)
        raw = rng.integers(0, 256, size=(5, 5, 3), dtype=np.uint8)
        p = tmp_path / "x.png"
        save_image(raw / 255.0, p)
        assert np.array_equal(load_image(p), raw / 255.0)

    def test_loads_are_finite(self, tmp_path):
        p = tmp_path / "n.pgm"
        save_image(np.random.default_rng(3).random((8, 8)), p)
        assert np.all(np.isfinite(load_image(p)))


class TestVideos:
    def test_gray_stack(self, tmp_path):
        frames = np.random.default_rng(0).random((4, 5, 3))
        save_video(frames, tmp_path / "v")
        back = load_video(tmp_path / "v")
        assert back.shape == (4, 5, 3)
        quantized = np.rint(frames * 255) / 255
        assert np.allclose(back, quantized, atol=1e-12)

    def test_color_stack(self, tmp_path):
        vid = np.random.default_rng(1).random((4, 4, 3, 2))
        save_video(vid, tmp_path / "v")
        back = load_video(tmp_path / "v")
        assert back.shape == (4, 4, 3, 2)
        assert np.allclose(back, np.rint(vid * 255) / 255, atol=1e-12)

    def test_identical_frames_constant_along_last_mode(self, tmp_path):
        frame = np.random.default_rng(2).random((6, 6))
        save_video(np.stack([frame] * 3, axis=-1), tmp_path / "v")
        back = load_video(tmp_path / "v")
        assert np.array_equal(back[..., 0], back[..., 1])
        assert np.array_equal(back[..., 0], back[..., 2])

    def test_single_frame_matches_image(self, tmp_path):
        img = np.random.default_rng(3).random((5, 4, 3))
        d = tmp_path / "v"
        save_video(img[..., None], d)
        back = load_video(d)
        assert back.shape == (5, 4, 3, 1)
        assert np.array_equal(back[..., 0], load_image(d / "frame_00000.ppm"))

    def test_lexicographic_order(self, tmp_path):
        d = tmp_path / "v"
        d.mkdir()
        for i, val in enumerate((0.0, 0.5, 1.0)):
            save_image(np.full((2, 2), val), d / f"frame_{i:05d}.ppm")
        back = load_video(d)
        assert back[0, 0, 0] <= back[0, 0, 1] <= back[0, 0, 2]

    def test_size_mismatch(self, tmp_path):
        d = tmp_path / "v"
        d.mkdir()
        save_image(np.zeros((2, 2)), d / "a.ppm")
        save_image(np.zeros((3, 3)), d / "b.ppm")
        with pytest.raises(ValueError, match="mismatch"):
            load_video(d)

    def test_empty_directory(self, tmp_path):
        d = tmp_path / "v"
        d.mkdir()
        with pytest.raises(ValueError, match="no frames"):
            load_video(d)


class TestTensorFormat:
    @pytest.mark.parametrize("shape", [(5,), (3, 4), (2, 3, 4), (2, 2, 3, 2)])
    def test_round_trip_bit_exact(self, tmp_path, shape):
        t = np.random.default_rng(len(shape)).standard_normal(shape)
        p = tmp_path / "t.tnsr"
        save_tensor(t, p)
        back = load_tensor(p)
        assert back.shape == t.shape
        assert np.array_equal(back, t)

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "t.tnsr"
        save_tensor(np.ones((2, 2)), p)
        raw = bytearray(p.read_bytes())
        raw[:4] = b"NOPE"
        p.write_bytes(bytes(raw))
        with pytest.raises(ValueError, match="magic"):
            load_tensor(p)

    def test_bad_version(self, tmp_path):
        p = tmp_path / "t.tnsr"
        save_tensor(np.ones((2, 2)), p)
        raw = bytearray(p.read_bytes())
        raw[4] = 9
        p.write_bytes(bytes(raw))
        with pytest.raises(ValueError, match="version"):
            load_tensor(p)

    def test_truncated_payload(self, tmp_path):
        p = tmp_path / "t.tnsr"
        save_tensor(np.ones((3, 3)), p)
        p.write_bytes(p.read_bytes()[:-5])
        with pytest.raises(ValueError, match="truncated"):
            load_tensor(p)


class TestMaskFormat:
    @pytest.mark.parametrize("shape", [(7,), (3, 5), (4, 4, 3)])
    def test_round_trip(self, tmp_path, shape):
        m = np.random.default_rng(sum(shape)).random(shape) < 0.5
        p = tmp_path / "m.msk"
        save_mask(m, p)
        back = load_mask(p)
        assert back.shape == m.shape and back.dtype == bool
        assert np.array_equal(back, m)

    def test_empty_mask_round_trip(self, tmp_path):
        m = np.zeros((5, 3), dtype=bool)
        p = tmp_path / "m.msk"
        save_mask(m, p)
        assert not load_mask(p).any()

    def test_mask_magic_checked(self, tmp_path):
        p = tmp_path / "m.msk"
        save_tensor(np.ones((2, 2)), p)
        with pytest.raises(ValueError, match="magic"):
            load_mask(p)


class TestReports:
    def test_infinity_serialized_as_string(self, tmp_path):
        p = tmp_path / "r.json"
        report = {"psnr_db": math.inf, "ssim": 1.0, "low": [-math.inf]}
        write_report(report, p)
        doc = json.loads(p.read_text())
        assert doc["psnr_db"] == "inf"
        assert doc["low"] == ["-inf"]
        assert doc["ssim"] == 1.0
        assert read_report(p) == report

    def test_json_safe_nested(self):
        doc = json_safe({"a": [math.inf, -math.inf, 1.0], "b": np.float64(2.5)})
        assert doc == {"a": ["inf", "-inf", 1.0], "b": 2.5}

    def test_history_csv_round_trip(self, tmp_path):
        history = [
            IterationReport(
                k=k,
                relcha=0.1 / (k + 1),
                feas_y=(1.0 / (k + 1), 2.0 / (k + 1), 0.5),
                feas_t=0.25,
                lagrangian=-1.5 + k,
                beta=1e-5 * 1.2**k,
                elapsed_ms=3.25,
            )
            for k in range(1, 4)
        ]
        p = tmp_path / "h.csv"
        write_history_csv(history, p)
        with open(p, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [
            "k", "relcha", "feas_y_1", "feas_y_2", "feas_y_3",
            "feas_t", "lagrangian", "beta", "elapsed_ms",
        ]
        assert len(rows) == 4
        assert float(rows[1][7]) == history[0].beta

    def test_empty_history_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="empty"):
            write_history_csv([], tmp_path / "h.csv")
