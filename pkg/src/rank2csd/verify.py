"""The verification report and the (1,1)-ray series cross-check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence

from . import exponent_formulas as ef
from .dilog_oracle import cutoff_for_level, eval_factor_list, eval_product, first_difference
from .errors import DegreeInsufficient
from .ordering import ExponentTable
from .pbc import gbinom


@dataclass
class Report:
    results: List[ef.Check] = field(default_factory=list)
    names: List[str] = field(default_factory=list)

    def add(self, name: str, check) -> None:
        if not isinstance(check, ef.Check):
            check = ef.Check(bool(check))
        self.names.append(name)
        self.results.append(check)

    @property
    def ok(self) -> bool:
        return all(self.results)

    def lines(self) -> List[str]:
        out = []
        for name, r in zip(self.names, self.results):
            line = f"{'PASS' if r else 'FAIL'}  {name}"
            if not r and r.detail:
                line += f"  -- {r.detail}"
            out.append(line)
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def oracle_check(table: ExponentTable, grid: int = 4, level=None) -> ef.Check:
    """Ordered product vs Psi[0,1]^n Psi[1,0]^m for 0 <= m, n <= grid, modulo G^{>level}."""
    level = table.max_degree if level is None else level
    if level > table.max_degree:
        raise DegreeInsufficient(f"level {level} exceeds table degree {table.max_degree}")
    L = cutoff_for_level(level)
    fs = table.restrict(level).factors()
    for m in range(grid + 1):
        for n in range(grid + 1):
            lhs = eval_product([((0, 1), n), ((1, 0), m)], L)
            rhs = eval_factor_list(fs, m, n, L)
            diff = first_difference(lhs, rhs)
            if diff is not None:
                gen, mono, x, y = diff
                return ef.Check(False, f"(m,n)=({m},{n}): {gen} image differs at x^{mono}: {x} vs {y}", (m, n))
    return ef.PASS


# --- (1,1)-ray series ---------------------------------------------------------


def _series_mul(f: Sequence[Fraction], g: Sequence[Fraction], K: int) -> List[Fraction]:
    out = [Fraction(0)] * (K + 1)
    for i, a in enumerate(f[: K + 1]):
        if a:
            for j, b in enumerate(g[: K + 1 - i]):
                out[i + j] += a * b
    return out


def _series_pow(f: Sequence[Fraction], e: int, K: int) -> List[Fraction]:
    out = [Fraction(1)] + [Fraction(0)] * K
    for _ in range(e):
        out = _series_mul(out, f, K)
    return out


def diagonal_series(table: ExponentTable, delta: int, K: int) -> List[Fraction]:
    """prod_k (1 + t^k)^((k/delta) u_{(k,k)}(delta,delta)) up to t^K."""
    out = [Fraction(1)] + [Fraction(0)] * K
    for k in range(1, K + 1):
        r = Fraction(k, delta) * table[(k, k)].eval(delta, delta)
        if not r:
            continue
        factor = [Fraction(0)] * (K + 1)
        for i in range(K // k + 1):
            factor[i * k] = Fraction(gbinom(r, i))
        out = _series_mul(out, factor, K)
    return out


def reineke_coefficient(delta: int, j: int) -> Fraction:
    """Coefficient of t^j in the inner series, C(s j, j) / ((s-1) j + 1) with s = (delta-1)^2.

    Written as C(s j, j-1) / j, which agrees for j >= 1 and stays defined at delta = 1.
    """
    if j == 0:
        return Fraction(1)
    s = (delta - 1) ** 2
    return Fraction(comb(s * j, j - 1), j)


def reineke_series(delta: int, K: int) -> List[Fraction]:
    inner = [reineke_coefficient(delta, j) for j in range(K + 1)]
    return _series_pow(inner, delta, K)


@dataclass(frozen=True)
class ReinekeReport:
    delta: int
    kmax: int
    table_side: tuple
    closed_side: tuple

    @property
    def ok(self) -> bool:
        return self.table_side == self.closed_side

    def __str__(self) -> str:
        fmt = lambda cs: ", ".join(str(c) for c in cs)
        return (
            f"delta={self.delta} up to t^{self.kmax}: table [{fmt(self.table_side)}]"
            f" vs series [{fmt(self.closed_side)}] -> {'PASS' if self.ok else 'FAIL'}"
        )


def cmd_reineke_check(table: ExponentTable, delta: int, kmax: int) -> ReinekeReport:
    if delta < 1:
        raise ValueError("delta must be at least 1")
    if 2 * kmax > table.max_degree:
        raise DegreeInsufficient(f"t^{kmax} needs a table of degree {2 * kmax}, have {table.max_degree}")
    return ReinekeReport(
        delta, kmax, tuple(diagonal_series(table, delta, kmax)), tuple(reineke_series(delta, kmax))
    )


# --- full report --------------------------------------------------------------


def cmd_verify(table: ExponentTable, grid: int = 4, level=None) -> Report:
    level = table.max_degree if level is None else level
    rep = Report()
    rep.add(f"oracle consistency, 0<=m,n<={grid}, level {level}", oracle_check(table, grid, level))
    rep.add("reciprocity", ef.check_reciprocity(table))
    rep.add("support and nonnegativity", ef.check_support(table))
    rep.add("positive corner coefficient", ef.check_corner(table))
    rep.add("lower zeros", ef.check_lower_zeros(table))
    rep.add("closed forms b=1, a=1, b=2", ef.check_closed_forms(table))
    rep.add("inverse formula round trip", ef.check_inverse_roundtrip(table))
    for a in range(1, table.max_degree - 1):
        rep.add(f"recurrence in n, a={a}", ef.recurrence_a2_in_n(a, table))
        if a >= 3:
            rep.add(f"recurrence in m, a={a}", ef.recurrence_a2_in_m(a, table))
    rep.add("appendix identity A, u<=50", all(ef.appendix_identity_A(u) for u in range(51)))
    rep.add("appendix identity B, u<=50", all(ef.appendix_identity_B(u) for u in range(51)))
    rep.add(
        "kernel a simplification, a<=30",
        all(ef.simplify_kernel_a(a, k) == ef.kernel_a_sum(a, k) for a in range(1, 31) for k in range((a + 1) // 2, a + 1)),
    )
    rep.add(
        "kernel b simplification, a<=30",
        all(ef.simplify_kernel_b(a, k) == ef.kernel_b_sum(a, k) for a in range(1, 31) for k in range((a + 1) // 2 + 1, a + 1)),
    )
    kmax = table.max_degree // 2
    if kmax >= 1:
        for delta in (1, 2, 3):
            r = cmd_reineke_check(table, delta, kmax)
            rep.add(f"(1,1)-ray series, delta={delta}, up to t^{kmax}", ef.Check(r.ok, str(r)))
    return rep


def oracle_grid_failures(table: ExponentTable, grid: int = 4) -> Dict:
    """Convenience for fault injection: {(m, n): detail} for every failing grid point."""
    L = cutoff_for_level(table.max_degree)
    fs = table.factors()
    bad = {}
    for m in range(grid + 1):
        for n in range(grid + 1):
            d = first_difference(eval_product([((0, 1), n), ((1, 0), m)], L), eval_factor_list(fs, m, n, L))
            if d is not None:
                bad[(m, n)] = d
    return bad
