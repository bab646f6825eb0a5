"""CSV and PNG renderings of verification matrices and degree ladders."""
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_PNG_META = {"Software": None}


def write_csv(path, rows, columns):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        w.writeheader()
        for row in rows:
            w.writerow(row)
    return path


def verification_report(cells, out_dir, stem):
    """cells: list of verify.Cell.  Writes <stem>.csv and a pass/fail grid <stem>.png."""
    out_dir = Path(out_dir)
    rows = [c.as_dict() for c in cells]
    csv_path = write_csv(out_dir / f"{stem}.csv", rows,
                         ["table", "row", "check", "expected", "got", "passed", "seconds"])
    labels = list(dict.fromkeys(c.row for c in cells))
    checks = list(dict.fromkeys(c.check for c in cells))
    grid = [[float("nan")] * len(checks) for _ in labels]
    for c in cells:
        grid[labels.index(c.row)][checks.index(c.check)] = 1.0 if c.passed else 0.0
    fig, ax = plt.subplots(figsize=(1.6 + 1.4 * len(checks), 0.9 + 0.35 * len(labels)))
    ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(checks)), checks, rotation=30, ha="right")
    ax.set_yticks(range(len(labels)), labels)
    for i, row in enumerate(grid):
        for j, v in enumerate(row):
            if v == v:
                ax.text(j, i, "pass" if v else "FAIL", ha="center", va="center", fontsize=8)
    ax.set_title(f"table {cells[0].table}: {sum(c.passed for c in cells)}/{len(cells)} cells pass")
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, metadata=_PNG_META)
    plt.close(fig)
    return csv_path, png_path


def ladder_report(rows, out_dir, stem, K=None):
    """rows: dicts with n, count, degree, predicted.  Degree and count against n."""
    out_dir = Path(out_dir)
    csv_path = write_csv(out_dir / f"{stem}.csv", rows,
                         ["n", "count", "degree", "predicted", "method"])
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.semilogy(ns, [r["degree"] for r in rows], "o-", base=2, label="factor degree")
    ax.semilogy(ns, [r["predicted"] for r in rows], "x--", base=2, label="closed-form degree")
    ax.semilogy(ns, [r["count"] for r in rows], "s:", base=2, label="factor count")
    if K is not None:
        ax.axvline(K, color="grey", lw=0.8)
        ax.text(K, ax.get_ylim()[1], " K", va="top", color="grey")
    ax.set_xlabel("n")
    ax.set_xticks(ns)
    ax.legend(fontsize=8)
    fig.tight_layout()
    png_path = out_dir / f"{stem}.png"
    fig.savefig(png_path, metadata=_PNG_META)
    plt.close(fig)
    return csv_path, png_path
