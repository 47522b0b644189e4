"""CSV export of trajectories (17 significant digits, round-trip exact)."""
from __future__ import annotations

import csv
from pathlib import Path

from .integrate import Trajectory


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def zeros_path(path) -> Path:
    p = Path(path)
    return p.with_name(f"{p.stem}_zeros{p.suffix or '.csv'}")


def write_csv(traj: Trajectory, path) -> Path:
    """Write ``t,y,yp`` samples to ``path`` and zeros to ``<stem>_zeros.csv``.

    Returns the zeros file path.
    """
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "y", "yp"])
        for t, y, yp in traj.samples:
            w.writerow([_fmt(t), _fmt(y), _fmt(yp)])
    zp = zeros_path(path)
    with zp.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "t_zero"])
        for i, z in enumerate(traj.zeros.tolist()):
            w.writerow([i, _fmt(z)])
    return zp
