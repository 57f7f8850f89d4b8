"""Reading and writing exponent tables (JSON, CSV, LaTeX)."""

from __future__ import annotations

import io
import json
import os
import tempfile
from fractions import Fraction
from importlib import resources
from math import gcd
from pathlib import Path

from .errors import CacheCorrupt, CSDError
from .lattice import LatticeVector
from .ordering import ExponentTable, check_support
from .pbc import PBC, ZERO

FORMAT_VERSION = 1


def _entry_order(v: LatticeVector):
    return (v.a + v.b, v.a)


def to_json(table: ExponentTable) -> str:
    """Deterministic text: one entry per line, entries by (a+b, a), triples sorted."""
    lines = []
    for v in sorted(table.entries, key=_entry_order):
        if not table.entries[v]:
            continue
        triples = sorted([i, j, c] for (i, j), c in table.alpha(v).items())
        lines.append(json.dumps({"a": v.a, "b": v.b, "gcd": v.gcd, "alpha": triples}, separators=(", ", ": ")))
    body = ",\n".join("  " + s for s in lines)
    return (
        "{\n"
        f'"format_version": {FORMAT_VERSION},\n'
        f'"max_degree": {table.max_degree},\n'
        '"entries": [\n' + body + ("\n" if lines else "") + "]\n}\n"
    )


def from_json(text: str) -> ExponentTable:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheCorrupt(f"table file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise CacheCorrupt(f"unsupported table format_version {doc.get('format_version') if isinstance(doc, dict) else None!r}")
    L = doc.get("max_degree")
    if not isinstance(L, int) or L < 1:
        raise CacheCorrupt("max_degree must be a positive integer")
    entries = {LatticeVector(a, d - a): ZERO for d in range(1, L + 1) for a in range(d + 1)}
    try:
        for e in doc["entries"]:
            a, b, g = e["a"], e["b"], e["gcd"]
            v = LatticeVector(a, b)
            if g != gcd(a, b) or v.degree > L:
                raise CacheCorrupt(f"bad header for entry ({a},{b})")
            coeffs = {}
            for i, j, c in e["alpha"]:
                if not all(isinstance(x, int) for x in (i, j, c)):
                    raise CacheCorrupt(f"non-integer alpha triple in entry ({a},{b})")
                coeffs[(i, j)] = c
            entries[v] = PBC(coeffs).scale(Fraction(1, g))
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheCorrupt(f"malformed table entry: {exc}") from exc
    table = ExponentTable(L, entries)
    for v, u in entries.items():
        if v.a and v.b:
            try:
                check_support(v, u)
            except CSDError as exc:
                raise CacheCorrupt(str(exc)) from exc
    return table


def to_csv(table: ExponentTable) -> str:
    buf = io.StringIO()
    buf.write("a,b,i,j,alpha,gcd\n")
    for v in sorted(table.entries, key=_entry_order):
        if not table.entries[v]:
            continue
        for (i, j), c in sorted(table.alpha(v).items()):
            buf.write(f"{v.a},{v.b},{i},{j},{c},{v.gcd}\n")
    return buf.getvalue()


def _latex_coeff(c) -> str:
    c = Fraction(c)
    if c == 1:
        return ""
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def latex_exponent(u: PBC) -> str:
    parts = []
    for (k, l), c in u.items():
        mono = ""
        if k:
            mono += rf"\binom{{m}}{{{k}}}"
        if l:
            mono += rf"\binom{{n}}{{{l}}}"
        coeff = _latex_coeff(c)
        parts.append((coeff + mono) or "1")
    return "+".join(parts) or "0"


def to_latex(table: ExponentTable) -> str:
    """One factor per line, left to right as in the ordered product."""
    lines = [rf"\Psi[{v.a},{v.b}]^{{{latex_exponent(table.entries[v])}}}" for v in table.nonzero()]
    return "\n".join(lines) + ("\n" if lines else "")


def render(table: ExponentTable, fmt: str) -> str:
    if fmt == "json":
        return to_json(table)
    if fmt == "csv":
        return to_csv(table)
    if fmt == "latex":
        return to_latex(table)
    raise ValueError(f"unknown format {fmt!r}")


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path) -> ExponentTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CacheCorrupt(f"cannot read table file {path}: {exc}") from exc
    return from_json(text)


def save(table: ExponentTable, path) -> None:
    atomic_write(path, to_json(table))


def load_shipped() -> ExponentTable:
    """The degree-7 table bundled with the package."""
    return from_json(resources.files("rank2csd").joinpath("data/table7.json").read_text(encoding="utf-8"))
