"""Concrete walls for given (delta1, delta2) and plot-ready ray data."""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .lattice import compare
from .ordering import ExponentTable


@dataclass(frozen=True)
class WallRecord:
    vector: Tuple[int, int]
    ray: Tuple[int, int]
    exponent: Fraction
    incoming: bool

    def as_dict(self) -> dict:
        return {
            "a": self.vector[0],
            "b": self.vector[1],
            "ray": list(self.ray),
            "exponent": str(self.exponent),
            "incoming": self.incoming,
        }


def wall_ray(v, delta1: int, delta2: int) -> Tuple[int, int]:
    a, b = v
    return (delta2 * b, -delta1 * a)


def cmd_eval(table: ExponentTable, m: int, n: int) -> List[WallRecord]:
    """Nonzero walls of the diagram for (delta1, delta2) = (m, n), in increasing order."""
    if m < 0 or n < 0:
        raise ValueError("delta1 and delta2 must be nonnegative")
    out = []
    for v in table.vectors():
        c = Fraction(table.entries[v].eval(m, n))
        if c:
            out.append(WallRecord((v.a, v.b), wall_ray(v, m, n), c, (v.a, v.b) in ((1, 0), (0, 1))))
    return out


def in_band(v, delta1: int, delta2: int) -> bool:
    """Strictly between (delta1, 1) and (1, delta2) in the total order."""
    lo, hi = (delta1, 1), (1, delta2)
    if compare(lo, hi) != "less":
        return False
    return compare(lo, v) == "less" and compare(v, hi) == "less" and not _parallel(v, lo) and not _parallel(v, hi)


def _parallel(p, q) -> bool:
    return p[0] * q[1] == p[1] * q[0]


def band_label(v, delta1: int, delta2: int) -> str:
    if delta1 * delta2 >= 5 and in_band(v, delta1, delta2):
        return "badlands"
    return "gfan"


PLOT_FIELDS = ("a", "b", "ray_x", "ray_y", "angle_deg", "exponent", "incoming", "band")


def plot_rows(walls: Sequence[WallRecord], delta1: int, delta2: int) -> List[dict]:
    """One row per drawn ray; incoming walls are full lines, so they get two rows."""
    rows = []
    for w in walls:
        halves = [(w.ray, False)]
        if w.incoming:
            halves = [((-w.ray[0], -w.ray[1]), True), (w.ray, False)]
        for (x, y), inc in halves:
            rows.append(
                {
                    "a": w.vector[0],
                    "b": w.vector[1],
                    "ray_x": x,
                    "ray_y": y,
                    "angle_deg": round(math.degrees(math.atan2(y, x)), 6),
                    "exponent": str(w.exponent),
                    "incoming": inc,
                    "band": band_label(w.vector, delta1, delta2),
                }
            )
    rows.sort(key=lambda r: (-r["angle_deg"], r["a"] + r["b"]))
    return rows


def cmd_plot_data(walls: Sequence[WallRecord], delta1: int, delta2: int, fmt: str = "csv") -> str:
    rows = plot_rows(walls, delta1, delta2)
    if fmt == "json":
        return json.dumps({"delta1": delta1, "delta2": delta2, "rays": rows}, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(PLOT_FIELDS) + "\n")
    for r in rows:
        buf.write(",".join(str(r[k]).lower() if isinstance(r[k], bool) else str(r[k]) for k in PLOT_FIELDS) + "\n")
    return buf.getvalue()
