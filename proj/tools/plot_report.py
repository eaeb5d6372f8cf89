#!/usr/bin/env python3
"""Companion plot template for `pluri report all` bundles.

Reads the CSV tables of a report directory and renders quick-look figures.
Adjust to taste; the tool itself only emits CSV/JSON.

    pluri report all --out report-dir
    python3 tools/plot_report.py report-dir
"""

import csv
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


def plot_volume_grid(path, out):
    rows = read_csv(path)
    xs = sorted({float(r["t_re"]) for r in rows})
    ys = sorted({float(r["t_im"]) for r in rows})
    grid = [[0.0] * len(xs) for _ in ys]
    for r in rows:
        grid[ys.index(float(r["t_im"]))][xs.index(float(r["t_re"]))] = float(r["neg_log_volume"])
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.pcolormesh(xs, ys, grid, shading="nearest")
    fig.colorbar(im, ax=ax, label="-log V(t)")
    ax.set_xlabel("Re t")
    ax.set_ylabel("Im t")
    ax.set_title(path.stem)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)


def plot_lemma54(path, out):
    rows = read_csv(path)
    fig, ax = plt.subplots(figsize=(5, 4))
    for pole in sorted({r["pole_r"] for r in rows}):
        pts = [(float(r["t"]), float(r["scaled_mass"]), float(r["std_error"])) for r in rows if r["pole_r"] == pole]
        pts.sort()
        ax.errorbar([p[0] for p in pts], [p[1] for p in pts], yerr=[3 * p[2] for p in pts],
                    marker="o", capsize=3, label=f"pole r = {pole}")
    ax.set_xlabel("t")
    ax.set_ylabel("e^{-nt} Vol({g < t/2})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)


def plot_thm53(path, out):
    rows = read_csv(path)
    rows.sort(key=lambda r: float(r["pole_r"]))
    rs = [float(r["pole_r"]) for r in rows]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(rs, [float(r["minimal_norm"]) for r in rows], "o-", label="minimal extension norm")
    ax.plot(rs, [float(r["indicatrix_volume"]) for r in rows], "s--", label="V(I)")
    ax.plot(rs, [float(r["robin_bound"]) for r in rows], "^:", label="Robin-type bound")
    ax.set_xlabel("pole radius r")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)


def main():
    report_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "pluri-out")
    for path in sorted(report_dir.glob("*.csv")):
        out = path.with_suffix(".png")
        if "volume_grid" in path.name:
            plot_volume_grid(path, out)
        elif path.name.startswith("lemma54"):
            plot_lemma54(path, out)
        elif path.name.startswith("thm53"):
            plot_thm53(path, out)
        else:
            continue
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
