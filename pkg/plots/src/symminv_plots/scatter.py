"""Two-view 3D scatter of sampled invariant triples.

Reads the sampler CSV (columns C, tau, kappa, verdict) and renders the
cloud from two camera angles.  Rows flagged Exterior are drawn in a
warning color and counted on stderr; a header-only file yields empty
axes and exit 0.
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from ._io import DatasetError, fail, read_rows  # noqa: E402

VIEWS = ((20.0, -55.0), (12.0, 155.0))
POINT_COLOR = "#1f6fb4"
WARNING_COLOR = "#ff7f0e"


def render(dataset_path: str, out_image_path: str, dpi: int = 150) -> int:
    try:
        rows = read_rows(dataset_path, required=("C", "tau", "kappa", "verdict"))
    except DatasetError as exc:
        return fail(str(exc))
    inside = [r for r in rows if r["verdict"] != "Exterior"]
    outside = [r for r in rows if r["verdict"] == "Exterior"]
    if outside:
        print(
            f"warning: {len(outside)} exterior record(s) in {dataset_path}",
            file=sys.stderr,
        )
    fig = plt.figure(figsize=(11, 5))
    for panel, (elev, azim) in enumerate(VIEWS, start=1):
        ax = fig.add_subplot(1, 2, panel, projection="3d")
        if inside:
            ax.scatter(
                [float(r["C"]) for r in inside],
                [float(r["tau"]) for r in inside],
                [float(r["kappa"]) for r in inside],
                s=2, c=POINT_COLOR, alpha=0.35, linewidths=0,
            )
        if outside:
            ax.scatter(
                [float(r["C"]) for r in outside],
                [float(r["tau"]) for r in outside],
                [float(r["kappa"]) for r in outside],
                s=24, c=WARNING_COLOR, marker="x",
            )
        ax.set_xlabel(r"$\mathcal{C}$")
        ax.set_ylabel(r"$\tau$")
        ax.set_zlabel(r"$\kappa$")
        ax.view_init(elev=elev, azim=azim)
    fig.tight_layout()
    try:
        fig.savefig(out_image_path, dpi=dpi)
    except OSError as exc:
        return fail(f"cannot write {out_image_path}: {exc}")
    finally:
        plt.close(fig)
    print(f"wrote {out_image_path} ({len(inside)} points, {len(outside)} flagged)")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="3D scatter of invariant triples from a symminv sample CSV"
    )
    parser.add_argument("--in", dest="dataset", required=True, help="sample CSV path")
    parser.add_argument("--out", dest="image", required=True, help="output PNG path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    return render(args.dataset, args.image, dpi=args.dpi)


if __name__ == "__main__":
    sys.exit(main())
