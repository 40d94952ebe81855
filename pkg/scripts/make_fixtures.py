#!/usr/bin/env python3
"""Regenerate the committed data fixtures deterministically.

Writes into data/ (relative to the repository root):
  sample_image.ppm   256x256x3 procedural natural-statistics image
  synthetic.tnsr     20x20x3 tensor, rank-2 in every unfolding, sparse DCT
  config_wnn.json    solver defaults for the WNN model
  config_ipst.json   solver defaults for the IPST model

Running this script twice produces byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from slrtc.io import save_image, save_tensor
from slrtc.solvers import SolverConfig, config_to_json
from slrtc.synth import cp_dct_sparse, smooth_image

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


def main() -> None:
    DATA.mkdir(exist_ok=True)
    save_image(smooth_image(256, 256, seed=0), DATA / "sample_image.ppm")
    save_tensor(cp_dct_sparse((20, 20, 3), rank=2, coeffs_per_factor=3, seed=0),
                DATA / "synthetic.tnsr")
    for name, cfg in (
        ("config_wnn.json", SolverConfig(model="WNN")),
        ("config_ipst.json", SolverConfig(model="IPST")),
    ):
        (DATA / name).write_text(json.dumps(config_to_json(cfg), indent=2) + "\n")
    print(f"fixtures written to {DATA}")


if __name__ == "__main__":
    main()
