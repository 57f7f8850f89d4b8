"""Closed forms, recurrences and structural checks for the wall exponents.

Everything here is independent of the ordering engine: the closed forms are
written down directly, and the checks take a finished ExponentTable as input.
Checks return a ``Check`` that is truthy on success and carries the first
counterexample otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Dict, Mapping, Optional, Tuple

from .errors import IdentityFailed, IncompleteSpecials, RangeError
from .lattice import LatticeVector
from .pbc import PBC, ZERO, basis


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


@dataclass(frozen=True)
class Check:
    ok: bool
    detail: str = ""
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Check(True)


@dataclass(frozen=True)
class AlphaMatrix:
    """alpha(i, j) for 1 <= i <= a, 1 <= j <= b, with u = alpha / gcd(a, b)."""

    a: int
    b: int
    alpha: Tuple[Tuple[Fraction, ...], ...]

    @property
    def scale(self) -> Fraction:
        return Fraction(1, gcd(self.a, self.b))

    def __getitem__(self, ij: Tuple[int, int]):
        i, j = ij
        if not (1 <= i <= self.a and 1 <= j <= self.b):
            return 0
        return self.alpha[i - 1][j - 1]

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {
            (i, j): self[i, j]
            for i in range(1, self.a + 1)
            for j in range(1, self.b + 1)
            if self[i, j]
        }

    def is_integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for row in self.alpha for x in row)

    def to_pbc(self) -> PBC:
        return PBC(self.nonzero()).scale(self.scale)

    @classmethod
    def from_pbc(cls, a: int, b: int, u: PBC) -> "AlphaMatrix":
        scaled = u.scale(gcd(a, b))
        rows = tuple(
            tuple(Fraction(scaled.coeff(i, j)) for j in range(1, b + 1)) for i in range(1, a + 1)
        )
        return cls(a, b, rows)


# --- special families --------------------------------------------------------


def closed_form_b1(a: int) -> PBC:
    """u_{(a,1)} = C(m,a) C(n,1)."""
    return basis(a, 1)


def closed_form_a1(b: int) -> PBC:
    """u_{(1,b)} = C(m,1) C(n,b)."""
    return basis(1, b)


def simplify_kernel_a(a: int, k: int) -> int:
    if not (_ceil_half(a) <= k <= a):
        raise RangeError(f"kernel a needs ceil(a/2) <= k <= a, got a={a}, k={k}")
    d = 2 * k - a
    c = _ceil_half(d)
    return c * comb(d, c) * comb(k, d)


def kernel_a_sum(a: int, k: int) -> int:
    return sum((a - 2 * x) * comb(a - x, k - x) * comb(k, a - x) for x in range(a - k, a // 2 + 1))


def _kernel_b_bracket(d: int) -> int:
    # (d/2) C(d-1, ceil((d-1)/2)) - 2^(d-2), for d = 2k - a >= 2
    val = Fraction(d, 2) * comb(d - 1, _ceil_half(d - 1)) - 2 ** (d - 2)
    if val.denominator != 1:
        raise IdentityFailed(f"kernel b bracket is not an integer for 2k-a={d}")
    return int(val)


def simplify_kernel_b(a: int, k: int) -> int:
    if not (_ceil_half(a) + 1 <= k <= a):
        raise RangeError(f"kernel b needs ceil(a/2)+1 <= k <= a, got a={a}, k={k}")
    d = 2 * k - a
    return _kernel_b_bracket(d) * comb(k - 1, d - 1)


def kernel_b_sum(a: int, k: int) -> int:
    return sum(
        (a - 2 * x) * comb(a - x, k - x) * comb(k - 1, a - x) for x in range(a - k + 1, a // 2 + 1)
    )


def closed_form_b2(a: int) -> PBC:
    """u_{(a,2)} in closed form."""
    if a < 1:
        raise RangeError("a must be positive")
    out: Dict[Tuple[int, int], int] = {}
    for k in range(a // 2 + 1, a + 1):  # a/2 < k <= a
        d = 2 * k - a
        c = _ceil_half(d)
        out[(k, 2)] = c * comb(d, c) * comb(k, d)
    for k in range(a // 2 + 2, a + 1):  # a/2 + 1 < k <= a
        d = 2 * k - a
        out[(k, 1)] = _kernel_b_bracket(d) * comb(k, d)
    return PBC(out)


# --- recurrences in the b = 2 family ------------------------------------------


def _first_diff(lhs: PBC, rhs: PBC):
    for key in sorted(set(lhs.as_dict()) | set(rhs.as_dict())):
        if lhs.coeff(*key) != rhs.coeff(*key):
            return key, lhs.coeff(*key), rhs.coeff(*key)
    return None


def _identity(lhs: PBC, rhs: PBC, what: str) -> Check:
    diff = _first_diff(lhs, rhs)
    if diff is None:
        return PASS
    (k, l), x, y = diff
    return Check(False, f"{what}: coefficient of C(m,{k})C(n,{l}) is {x} vs {y}", diff)


def recurrence_a2_in_n(a: int, table) -> Check:
    """u(m,n+1) = u(m,n) + u(m,1) + sum_k K_a(a,k) C(m,k) C(n,1) for u = u_{(a,2)}."""
    u = table[(a, 2)]
    lhs = u.shift_n()
    extra = PBC({(k, 1): kernel_a_sum(a, k) for k in range(_ceil_half(a), a + 1)})
    rhs = u + u.at_n(1) + extra
    return _identity(lhs, rhs, f"recurrence in n, a={a}")


def recurrence_a2_in_m(a: int, table) -> Check:
    """u(m+1,1) = u(m,1) + u_{(a-2,2)}(m,1) + sum_k K'(a,k) C(m,k) for u = u_{(a,2)}, a >= 3."""
    if a < 3:
        raise RangeError("the recurrence in m needs a >= 3")
    u1 = table[(a, 2)].at_n(1)
    prev = table[(a - 2, 2)].at_n(1)
    extra = PBC(
        {
            (k, 0): sum(
                (a - 2 * x) * comb(a - x, k - x + 1) * comb(k, a - x)
                for x in range(a - k, a // 2 + 1)
            )
            for k in range(_ceil_half(a), a)
        }
    )
    return _identity(u1.shift_m(), u1 + prev + extra, f"recurrence in m, a={a}")


class _ClosedFormB2:
    """Table stand-in serving u_{(a,2)} from the closed form."""

    def __getitem__(self, v):
        a, b = v
        if b != 2:
            raise KeyError(v)
        return closed_form_b2(a) if a >= 1 else ZERO


CLOSED_FORM_B2 = _ClosedFormB2()


# --- appendix identities ------------------------------------------------------


def appendix_identity_A(u: int) -> bool:
    lhs = sum((u - 2 * x) * comb(u, x) for x in range(u // 2 + 1))
    c = _ceil_half(u)
    return lhs == c * comb(u, c)


def appendix_identity_B(u: int) -> bool:
    lhs = sum(comb(u, x) for x in range(u // 2 + 1))
    if u == 0:
        return lhs == 1
    rhs = Fraction(2 ** (u - 1)) + (Fraction(comb(u, u // 2), 2) if u % 2 == 0 else 0)
    return lhs == rhs


# --- inverse formula ----------------------------------------------------------


def inverse_formula(a: int, b: int, specials: Mapping[Tuple[int, int], object]) -> AlphaMatrix:
    """alpha from the values u(i, j), 1 <= i <= a, 1 <= j <= b."""
    missing = [(i, j) for i in range(1, a + 1) for j in range(1, b + 1) if (i, j) not in specials]
    if missing:
        raise IncompleteSpecials(f"missing special values at {missing}")
    g = gcd(a, b)
    rows = []
    for k in range(1, a + 1):
        row = []
        for l in range(1, b + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                for j in range(1, l + 1):
                    sign = -1 if (i + j + k + l) % 2 else 1
                    s += sign * comb(k, i) * comb(l, j) * Fraction(specials[(i, j)])
            row.append(s * g)
        rows.append(tuple(row))
    return AlphaMatrix(a, b, tuple(rows))


def special_values(a: int, b: int, u: PBC) -> Dict[Tuple[int, int], object]:
    return {(i, j): u.eval(i, j) for i in range(1, a + 1) for j in range(1, b + 1)}


# --- table-wide predicates ---------------------------------------------------


def _interior(table):
    return [v for v in table.vectors() if v.a >= 1 and v.b >= 1]


def check_reciprocity(table) -> Check:
    for v in table.vectors():
        w = LatticeVector(v.b, v.a)
        if w not in table:
            continue
        if table[v] != table[w].transpose():
            return Check(False, f"u{v}(m,n) != u{w}(n,m)", (v.a, v.b))
    return PASS


def check_support(table) -> Check:
    for v in table.vectors():
        a, b = v
        u = table[v]
        if a == 0 or b == 0:
            want = basis(1, 0) if (a, b) == (1, 0) else basis(0, 1) if (a, b) == (0, 1) else ZERO
            if u != want:
                return Check(False, f"edge entry u{v} = {u}", (a, b))
            continue
        scaled = u.scale(v.gcd)
        for (i, j), c in scaled.items():
            if not (1 <= i <= a and 1 <= j <= b):
                return Check(False, f"u{v} has support at ({i},{j})", (a, b, i, j))
            if not isinstance(c, int) or c < 0:
                return Check(False, f"alpha{v}({i},{j}) = {c} is not a nonnegative integer", (a, b, i, j))
    return PASS


def check_corner(table) -> Check:
    """alpha_{(a,b)}(a, b) > 0 for a, b >= 1."""
    for v in _interior(table):
        if not table[v].coeff(v.a, v.b) > 0:
            return Check(False, f"alpha{v}({v.a},{v.b}) is not positive", (v.a, v.b))
    return PASS


def check_lower_zeros(table) -> Check:
    """For a > b >= 1: alpha_{(a,b)}(i,j) = 0 whenever i < a/b (and the transpose)."""
    for v in _interior(table):
        a, b = v
        u = table[v]
        for (i, j), c in u.items():
            if a > b and i * b < a:
                return Check(False, f"alpha{v}({i},{j}) = {c} should vanish", (a, b, i, j))
            if b > a and j * a < b:
                return Check(False, f"alpha{v}({i},{j}) = {c} should vanish", (a, b, i, j))
    return PASS


def check_inverse_roundtrip(table) -> Check:
    for v in _interior(table):
        u = table[v]
        got = inverse_formula(v.a, v.b, special_values(v.a, v.b, u))
        if got != AlphaMatrix.from_pbc(v.a, v.b, u):
            return Check(False, f"inverse formula disagrees at {v}", (v.a, v.b))
    return PASS


def check_closed_forms(table) -> Check:
    for v in _interior(table):
        a, b = v
        if b == 1 and table[v] != closed_form_b1(a):
            return Check(False, f"u{v} != C(m,{a})C(n,1)", (a, b))
        if a == 1 and table[v] != closed_form_a1(b):
            return Check(False, f"u{v} != C(m,1)C(n,{b})", (a, b))
        if b == 2 and table[v] != closed_form_b2(a):
            return Check(False, f"u{v} differs from the b=2 closed form", (a, b))
        if a == 2 and table[v] != closed_form_b2(b).transpose():
            return Check(False, f"u{v} differs from the transposed b=2 closed form", (a, b))
    return PASS


def check_monotonicity_b2(a: int) -> Check:
    """alpha_{(a,2)}(k,l) <= alpha_{(a,2)}(k',l') for a/2 < k <= k' <= a, l <= l'."""
    u = closed_form_b2(a)
    ks = range(a // 2 + 1, a + 1)
    for k in ks:
        for kk in ks:
            if kk < k:
                continue
            for l in (1, 2):
                for ll in (1, 2):
                    if ll < l:
                        continue
                    if u.coeff(k, l) > u.coeff(kk, ll):
                        return Check(False, f"a={a}: alpha({k},{l}) > alpha({kk},{ll})", (a, k, l, kk, ll))
    return PASS
