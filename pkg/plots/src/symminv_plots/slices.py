"""Boundary-slice contour plot with the fixed surface color convention.

Reads the region slice CSV (boundary_id, x, y) and draws surface 28 in
green, 29 in blue, and 30 in red.  An optional sample CSV provides a
scatter underlay; rows are filtered to a window around the slice's fixed
coordinate when one is given.
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ._io import DatasetError, fail, read_rows  # noqa: E402

BOUNDARY_COLORS = {"28": "green", "29": "blue", "30": "red"}


def _underlay(ax, scatter_path: str, axes: tuple[str, str], near: str | None, window: float):
    rows = read_rows(scatter_path, required=("C", "tau", "kappa"))
    if near:
        name, _, value = near.partition("=")
        name, value = name.strip(), float(value)
        rows = [r for r in rows if abs(float(r[name]) - value) <= window]
    if rows:
        ax.scatter(
            [float(r[axes[0]]) for r in rows],
            [float(r[axes[1]]) for r in rows],
            s=4, c="0.6", alpha=0.5, linewidths=0, zorder=1,
        )
    return len(rows)


def render(
    slice_path: str,
    out_image_path: str,
    scatter_path: str | None = None,
    axes: tuple[str, str] = ("C", "tau"),
    near: str | None = None,
    window: float = 0.01,
    dpi: int = 150,
) -> int:
    try:
        rows = read_rows(slice_path, required=("boundary_id", "x", "y"))
        fig, ax = plt.subplots(figsize=(6, 5))
        n_under = 0
        if scatter_path:
            n_under = _underlay(ax, scatter_path, axes, near, window)
        for bid, color in BOUNDARY_COLORS.items():
            pts = [(float(r["x"]), float(r["y"])) for r in rows if r["boundary_id"] == bid]
            if not pts:
                continue
            xs, ys = zip(*pts)
            if len(pts) > 1:
                ax.plot(xs, ys, color=color, linewidth=1.8, zorder=2)
            else:
                ax.plot(xs, ys, color=color, marker="o", markersize=4, zorder=2)
        ax.set_xlabel(axes[0] if axes[0] != "tau" else r"$\tau$")
        ax.set_ylabel(axes[1] if axes[1] != "tau" else r"$\tau$")
    except DatasetError as exc:
        return fail(str(exc))
    try:
        fig.savefig(out_image_path, dpi=dpi)
    except OSError as exc:
        return fail(f"cannot write {out_image_path}: {exc}")
    finally:
        plt.close(fig)
    extra = f", {n_under} underlay points" if scatter_path else ""
    print(f"wrote {out_image_path} ({len(rows)} boundary points{extra})")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="contours of the region boundary slice, colored by surface id"
    )
    parser.add_argument("--in", dest="slice_csv", required=True, help="slice CSV path")
    parser.add_argument("--out", dest="image", required=True, help="output PNG path")
    parser.add_argument("--scatter", help="optional sample CSV for a point underlay")
    parser.add_argument(
        "--axes", default="C,tau", help="sample columns matching the slice axes (default C,tau)"
    )
    parser.add_argument("--near", help="fixed-coordinate filter for the underlay, e.g. kappa=0.25")
    parser.add_argument("--window", type=float, default=0.01)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    axes = tuple(args.axes.split(","))
    if len(axes) != 2:
        return fail("--axes must name two columns, e.g. C,tau")
    return render(
        args.slice_csv,
        args.image,
        scatter_path=args.scatter,
        axes=axes,
        near=args.near,
        window=args.window,
        dpi=args.dpi,
    )


if __name__ == "__main__":
    sys.exit(main())
