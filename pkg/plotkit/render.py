#!/usr/bin/env python3
"""Render figures from metanet export files.

Four figure kinds, selected by the "kind" field of a JSON spec:

  sensitivity  - mean p-value vs metadata correlation, one curve per
                 community strength (input: sensitivity CSV)
  neopath      - step plots of free-node count and base log-likelihood vs
                 theta, jump markers included (input: neosbm JSON)
  blockdensity - heatmap of a fitted block edge-probability matrix
                 (input: neosbm JSON; style.matrix picks which one)
  surface      - interpolated and Gaussian-smoothed score surface over the
                 2D partition embedding (input: surface CSV)

Usage: python plotkit/render.py --spec figure.json

Spec schema: {"kind": ..., "input": path, "output": image path,
"style": {...}}. Style options: grid_resolution (surface, default 160),
bandwidth (surface smoothing in grid cells, default 2.5), matrix
(blockdensity: "metadata" | "optimum" | record index, default "metadata"),
dpi (default 150). All science lives in the input files; this script only
draws them.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from scipy import ndimage
from scipy.interpolate import griddata

KINDS = ("sensitivity", "neopath", "blockdensity", "surface")

STYLE_DEFAULTS = {
    "grid_resolution": 160,
    "bandwidth": 2.5,
    "matrix": "metadata",
    "dpi": 150,
}


class SpecValidationError(ValueError):
    pass


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    missing = [k for k in ("kind", "input", "output") if k not in raw]
    if missing:
        raise SpecValidationError(
            f"figure spec is missing fields: {', '.join(missing)}")
    if raw["kind"] not in KINDS:
        raise SpecValidationError(
            f"unknown figure kind '{raw['kind']}'; choose from {KINDS}")
    style = dict(STYLE_DEFAULTS)
    style.update(raw.get("style", {}))
    return {"kind": raw["kind"], "input": raw["input"],
            "output": raw["output"], "style": style}


def _require_columns(rows, required, where):
    if not rows:
        raise SpecValidationError(f"{where}: no data rows")
    missing = [c for c in required if c not in rows[0]]
    if missing:
        raise SpecValidationError(
            f"{where} is missing fields: {', '.join(missing)}")


def _require_keys(payload, required, where):
    missing = [k for k in required if k not in payload]
    if missing:
        raise SpecValidationError(
            f"{where} is missing fields: {', '.join(missing)}")


# ---------------------------------------------------------------------------
# sensitivity curves
# ---------------------------------------------------------------------------

def render_sensitivity(spec):
    with open(spec["input"], encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    _require_columns(rows, ("epsilon", "ell", "mean_p"), "sensitivity CSV")
    by_eps = {}
    for r in rows:
        by_eps.setdefault(float(r["epsilon"]), []).append(
            (float(r["ell"]), float(r["mean_p"])))
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for eps in sorted(by_eps):
        pts = sorted(by_eps[eps])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o",
                label=f"eps = {eps:g}")
    ax.set_xlabel("metadata correlation ell")
    ax.set_ylabel("mean p-value")
    ax.set_ylim(-0.02, 1.02)
    ax.axhline(0.5, color="0.75", lw=0.8, zorder=0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


# ---------------------------------------------------------------------------
# free-node path
# ---------------------------------------------------------------------------

def render_neopath(spec):
    with open(spec["input"], encoding="utf-8") as fh:
        payload = json.load(fh)
    _require_keys(payload, ("records", "jumps"), "neosbm JSON")
    recs = payload["records"]
    if not recs:
        raise SpecValidationError("neosbm JSON: records list is empty")
    for rec in recs:
        _require_keys(rec, ("theta", "q", "L_base"), "neosbm record")
    thetas = [r["theta"] for r in recs]
    qs = [r["q"] for r in recs]
    ls = [r["L_base"] for r in recs]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(5.2, 4.4))
    ax1.step(thetas, qs, where="post", marker=".", color="tab:red")
    ax1.set_ylabel("free nodes q")
    ax2.step(thetas, ls, where="post", marker=".", color="tab:blue")
    ax2.set_ylabel("base log-likelihood")
    ax2.set_xlabel("theta")
    for j in payload["jumps"]:
        for ax in (ax1, ax2):
            ax.axvline(thetas[j], color="0.6", ls="--", lw=0.8, zorder=0)
    fig.tight_layout()
    return fig


# ---------------------------------------------------------------------------
# block density heatmap
# ---------------------------------------------------------------------------

def render_blockdensity(spec):
    with open(spec["input"], encoding="utf-8") as fh:
        payload = json.load(fh)
    which = spec["style"]["matrix"]
    if which == "metadata":
        _require_keys(payload, ("metadata_omega",), "neosbm JSON")
        omega, title = payload["metadata_omega"], "metadata partition"
    elif which == "optimum":
        _require_keys(payload, ("optimum_omega",), "neosbm JSON")
        omega, title = payload["optimum_omega"], "optimal partition"
    else:
        _require_keys(payload, ("records",), "neosbm JSON")
        idx = int(which)
        rec = payload["records"][idx]
        _require_keys(rec, ("omega", "theta"), "neosbm record")
        omega, title = rec["omega"], f"theta = {rec['theta']:g}"
    omega = np.asarray(omega, dtype=float)
    fig, ax = plt.subplots(figsize=(3.8, 3.4))
    im = ax.imshow(omega, cmap="Greys", vmin=0.0,
                   vmax=max(omega.max(), 1e-12))
    ax.set_title(title, fontsize=9)
    ax.set_xlabel("group")
    ax.set_ylabel("group")
    ax.set_xticks(range(len(omega)))
    ax.set_yticks(range(len(omega)))
    fig.colorbar(im, ax=ax, label="edge probability")
    fig.tight_layout()
    return fig


# ---------------------------------------------------------------------------
# smoothed likelihood surface
# ---------------------------------------------------------------------------

def build_surface_grid(x, y, score, resolution, bandwidth):
    """Interpolate scattered points to a grid, smooth, and mask support.

    Returns (grid_z, support_mask, extent). Cells outside the convex hull
    of the samples count as unsupported and are excluded from any
    local-maxima analysis.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    score = np.asarray(score, dtype=float)
    pad_x = 0.05 * (x.max() - x.min() or 1.0)
    pad_y = 0.05 * (y.max() - y.min() or 1.0)
    gx = np.linspace(x.min() - pad_x, x.max() + pad_x, resolution)
    gy = np.linspace(y.min() - pad_y, y.max() + pad_y, resolution)
    mx, my = np.meshgrid(gx, gy)
    pts = np.column_stack([x, y])
    linear = griddata(pts, score, (mx, my), method="linear")
    support = ~np.isnan(linear)
    nearest = griddata(pts, score, (mx, my), method="nearest")
    filled = np.where(support, linear, nearest)
    smooth = ndimage.gaussian_filter(filled, sigma=bandwidth)
    extent = (gx[0], gx[-1], gy[0], gy[-1])
    return smooth, support, extent


def count_local_maxima(grid, support):
    """Strict 8-neighbor local maxima inside the eroded support region."""
    ring = np.ones((3, 3), dtype=bool)
    ring[1, 1] = False
    neighbor_max = ndimage.maximum_filter(grid, footprint=ring,
                                          mode="constant", cval=-np.inf)
    interior = ndimage.binary_erosion(support, structure=np.ones((3, 3)))
    peaks = (grid > neighbor_max) & interior
    labeled, n = ndimage.label(peaks)
    return int(n)


def render_surface(spec):
    with open(spec["input"], encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    _require_columns(rows, ("x", "y", "score"), "surface CSV")
    x = [float(r["x"]) for r in rows]
    y = [float(r["y"]) for r in rows]
    s = [float(r["score"]) for r in rows]
    res = int(spec["style"]["grid_resolution"])
    bw = float(spec["style"]["bandwidth"])
    grid, support, extent = build_surface_grid(x, y, s, res, bw)
    shown = np.where(support, grid, np.nan)
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    im = ax.imshow(shown, origin="lower", extent=extent, cmap="viridis",
                   aspect="auto")
    ax.contour(np.linspace(extent[0], extent[1], res),
               np.linspace(extent[2], extent[3], res),
               np.where(support, grid, np.nanmin(shown)),
               levels=12, colors="w", linewidths=0.4, alpha=0.6)
    ax.scatter(x, y, s=4, c="k", alpha=0.25, linewidths=0)
    ax.set_xlabel("embedding x")
    ax.set_ylabel("embedding y")
    fig.colorbar(im, ax=ax, label="score")
    fig.tight_layout()
    return fig


RENDERERS = {
    "sensitivity": render_sensitivity,
    "neopath": render_neopath,
    "blockdensity": render_blockdensity,
    "surface": render_surface,
}


def render(spec) -> str:
    """Draw the figure described by a loaded spec; returns the output path."""
    fig = RENDERERS[spec["kind"]](spec)
    out = Path(spec["output"])
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=int(spec["style"]["dpi"]), metadata={})
    plt.close(fig)
    return str(out)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="render metanet export files")
    ap.add_argument("--spec", required=True, help="figure spec JSON")
    args = ap.parse_args(argv)
    try:
        spec = load_spec(args.spec)
        out = render(spec)
    except (SpecValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
