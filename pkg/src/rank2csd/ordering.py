"""Symbolic ordering of dilogarithm products.

A factor list is a product of Psi[v]^e read left to right, where e is a PBC in
(m, n).  An ordered product has strictly increasing vectors.  The engine pushes
the greatest out-of-order vector to the right, replacing each anti-ordered pair
Psi[x] Psi[a] with a similarity-transformed copy of the already known table

    Psi[0,1]^n Psi[1,0]^m = Psi[1,0]^m (prod_{p,q>=1} Psi[p,q]^u_{(p,q)}(m,n)) Psi[0,1]^n

and in that way grows the table one degree at a time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvariantViolation, PreconditionViolated, TableIncomplete
from .lattice import IDENTITY, LatticeVector, Matrix2, VectorLike, compare, sort_key, vec
from .pbc import PBC, ONE, ZERO, basis, substitute

log = logging.getLogger(__name__)

E1 = LatticeVector(1, 0)
E2 = LatticeVector(0, 1)


@dataclass(frozen=True)
class Factor:
    vector: LatticeVector
    exponent: PBC

    @classmethod
    def of(cls, v: VectorLike, e) -> "Factor":
        if not isinstance(e, PBC):
            e = PBC.const(Fraction(e))
        return cls(vec(v), e)

    def __repr__(self) -> str:
        return f"Psi{self.vector}^[{self.exponent}]"


FactorList = List[Factor]


@dataclass
class ExponentTable:
    """u_{(a,b)}(m, n) for every (a, b) of degree <= max_degree."""

    max_degree: int
    entries: Dict[LatticeVector, PBC] = field(default_factory=dict)

    def __getitem__(self, v: VectorLike) -> PBC:
        v = vec(v)
        if v.degree > self.max_degree or v not in self.entries:
            raise TableIncomplete(f"u{v} is not known (table degree {self.max_degree})")
        return self.entries[v]

    def get(self, v: VectorLike, default=None):
        return self.entries.get(vec(v), default)

    def __contains__(self, v) -> bool:
        return vec(v) in self.entries

    def vectors(self) -> List[LatticeVector]:
        """Stored vectors in increasing order."""
        return sorted(self.entries, key=sort_key)

    def nonzero(self) -> List[LatticeVector]:
        return [v for v in self.vectors() if self.entries[v]]

    def alpha(self, v: VectorLike) -> Dict[Tuple[int, int], int]:
        """gcd(a,b) * u_{(a,b)} as integer coefficients."""
        v = vec(v)
        scaled = self[v].scale(v.gcd)
        if not scaled.is_integer_valued():
            raise InvariantViolation(f"gcd * u{v} has non-integer coefficients: {scaled}")
        return scaled.as_dict()

    def restrict(self, degree: int) -> "ExponentTable":
        degree = min(degree, self.max_degree)
        return ExponentTable(degree, {v: e for v, e in self.entries.items() if v.degree <= degree})

    def factors(self, m=None, n=None) -> FactorList:
        """The ordered product of Psi[0,1]^n Psi[1,0]^m (symbolic when m, n are None)."""
        out = []
        for v in self.nonzero():
            e = self.entries[v]
            if m is not None:
                e = PBC.const(e.eval(m, n))
                if not e:
                    continue
            out.append(Factor(v, e))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExponentTable):
            return NotImplemented
        return self.max_degree == other.max_degree and self.entries == other.entries


# ---------------------------------------------------------------------------
# list surgery


def split_parts(C: Sequence[Factor]) -> Tuple[FactorList, FactorList]:
    """(non_ordered, ordered) with C == non_ordered + ordered."""
    C = list(C)
    n = len(C)
    if n == 0:
        return [], []
    t = n - 1
    while t > 0 and compare(C[t - 1].vector, C[t].vector) == "less":
        t -= 1
    # prefix maxima of the vectors
    pmax: List[Optional[LatticeVector]] = [None]
    for f in C:
        prev = pmax[-1]
        pmax.append(f.vector if prev is None or f.vector > prev else prev)
    for j0 in range(t, n):
        if pmax[j0] is None or C[j0].vector > pmax[j0]:
            return C[:j0], C[j0:]
    return C, []


def similarity_matrix(a: LatticeVector, x: LatticeVector) -> Matrix2:
    """F with F(1,0) = a and F(0,1) = x."""
    return Matrix2.from_columns(a, x)


def rewrite_pair(x: Factor, a: Factor, table: ExponentTable, l: int) -> FactorList:
    """Rewrite the anti-ordered pair Psi[x] Psi[a] into ordered form mod G^{>l+1}."""
    if compare(x.vector, a.vector) != "greater":
        raise PreconditionViolated(f"rewrite_pair needs x > a, got {x.vector} and {a.vector}")
    F = similarity_matrix(a.vector, x.vector)
    det = F.det
    if det == 0:
        return [a, x]
    if F == IDENTITY and table.max_degree < l + 1:
        raise PreconditionViolated(
            "condition d: Psi[0,1] Psi[1,0] can only be rewritten with a table of degree l+1"
        )
    # p, q >= 1 with deg F(p,q) <= l+1; for F != I this forces deg(p,q) <= l
    targets = []
    for d in range(2, l + 2):
        for p in range(1, d):
            q = d - p
            w = F((p, q))
            if w.degree <= l + 1:
                targets.append(((p, q), w))
    middle: FactorList = []
    if targets:
        fa = a.exponent.scale(det)
        fx = x.exponent.scale(det)
        for (p, q), w in sorted(targets, key=lambda t: sort_key(t[1])):
            u = table[(p, q)]
            if not u:
                continue
            e = substitute(u, fa, fx).scale(Fraction(1, det))
            if e:
                middle.append(Factor(w, e))
    return [a] + middle + [x]


def push_out(C: Sequence[Factor], xy: VectorLike, table: ExponentTable, l: int) -> FactorList:
    """Merge every Psi[xy] in C into one factor at the right end (mod G^{>l+1})."""
    xy = vec(xy)
    D = list(C)
    g = ZERO
    while True:
        j0 = None
        for j in range(len(D) - 1, -1, -1):
            if D[j].vector == xy:
                j0 = j
                break
        if j0 is None:
            break
        if j0 == len(D) - 1:
            g = g + D.pop().exponent
            continue
        D[j0 : j0 + 2] = rewrite_pair(D[j0], D[j0 + 1], table, l)
    if g:
        D.append(Factor(xy, g))
    return D


def check_preconditions(C: Sequence[Factor], l: int, table: Optional[ExponentTable] = None) -> None:
    """Conditions a-d of the ordering lemma on the non-ordered part of C.

    Condition d is waived when the table already reaches degree l+1, because
    then Psi[0,1] Psi[1,0] can be rewritten by direct lookup.
    """
    hat, _ = split_parts(C)
    if not hat:
        return
    top = max((f.vector for f in hat), key=sort_key)
    for f in hat:
        v = f.vector
        if v.degree > l + 1:
            raise PreconditionViolated(f"condition a: {v} has degree > {l + 1}")
        scaled = f.exponent.scale(v.gcd)
        if v.degree <= l and not scaled.is_positive_pbc():
            raise PreconditionViolated(f"condition b: gcd*exponent of {v} is not a nonnegative PBC")
        if v.degree == l + 1 and not scaled.is_integer_valued():
            raise PreconditionViolated(f"condition c: gcd*exponent of {v} is not integer valued")
    if table is not None and table.max_degree >= l + 1:
        return
    if top.a == 0 and any(f.vector.b == 0 for f in hat if f.vector != top):
        raise PreconditionViolated("condition d: greatest vector has x = 0 and another factor has b = 0")


def order_product_mod(C: Sequence[Factor], table: ExponentTable, l: int, check: bool = True) -> FactorList:
    """Ordered product equal to C mod G^{>l+1}."""
    if l > table.max_degree:
        raise TableIncomplete(f"ordering mod G^>{l + 1} needs a degree-{l} table")
    C = [f for f in C if f.exponent]
    while True:
        hat, ordered = split_parts(C)
        if not hat:
            return ordered
        if check:
            check_preconditions(C, l, table)
        top = max((f.vector for f in hat), key=sort_key)
        C = push_out(hat, top, table, l) + ordered


# ---------------------------------------------------------------------------
# building the table


def seed_table() -> ExponentTable:
    """Degree <= 2: u_{(1,0)} = m, u_{(0,1)} = n, u_{(1,1)} = mn, u_{(2,0)} = u_{(0,2)} = 0."""
    return ExponentTable(
        2,
        {
            LatticeVector(1, 0): basis(1, 0),
            LatticeVector(0, 1): basis(0, 1),
            LatticeVector(2, 0): ZERO,
            LatticeVector(1, 1): basis(1, 1),
            LatticeVector(0, 2): ZERO,
        },
    )


def _exponent_at(fs: Iterable[Factor], v: LatticeVector) -> PBC:
    total = ZERO
    for f in fs:
        if f.vector == v:
            total = total + f.exponent
    return total


def check_support(v: LatticeVector, u: PBC) -> None:
    a, b = v
    scaled = u.scale(v.gcd)
    if not scaled.is_positive_pbc():
        raise InvariantViolation(f"gcd*u{v} is not a nonnegative integer PBC: {scaled}")
    for (i, j), _ in scaled.items():
        if not (1 <= i <= a and 1 <= j <= b):
            raise InvariantViolation(f"u{v} has a coefficient at C(m,{i})C(n,{j}) outside [1,{a}]x[1,{b}]")


def advance_degree(table: ExponentTable) -> ExponentTable:
    """Extend a complete degree-l table (l >= 2) to degree l+1."""
    l = table.max_degree
    if l < 2:
        raise TableIncomplete("advance_degree starts from the seeded degree-2 table")
    low = [v for v in table.vectors() if table.entries[v]]
    new = [LatticeVector(a, l + 1 - a) for a in range(1, l + 1)]

    # Psi[0,1] Psi[1,0]^(m+1) = Psi[1,0] Psi[1,1] (ordered form of Psi[0,1] Psi[1,0]^m without Psi[0,1]) Psi[0,1]
    C1 = [Factor(E1, ONE), Factor(LatticeVector(1, 1), ONE)]
    C1 += [Factor(v, table.entries[v].at_n(1)) for v in low if v != E2]
    C1 = order_product_mod(C1, table, l)
    u_m1 = {v: _exponent_at(C1, v).prefix_sum_m() for v in new}

    # Psi[0,1]^(n+1) Psi[1,0]^m = Psi[1,0]^m (...)(m,1) (...)(m,n)
    Cmn = [Factor(v, table.entries[v].at_n(1)) for v in low if v != E1]
    Cmn += [Factor(v, table.entries[v]) for v in low if v != E1]
    Cmn = order_product_mod(Cmn, table, l)

    entries = dict(table.entries)
    entries[LatticeVector(l + 1, 0)] = ZERO
    entries[LatticeVector(0, l + 1)] = ZERO
    for v in new:
        u = u_m1[v] * basis(0, 1) + _exponent_at(Cmn, v).prefix_sum_n()
        check_support(v, u)
        entries[v] = u
    log.debug("degree %d done: %d new walls", l + 1, sum(1 for v in new if entries[v]))
    return ExponentTable(l + 1, entries)


def compute_table(max_degree: int, start: Optional[ExponentTable] = None, progress=None) -> ExponentTable:
    """Table up to max_degree, optionally extending a previously computed one."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    table = start if start is not None and start.max_degree >= 2 else seed_table()
    if table.max_degree >= max_degree:
        return table.restrict(max_degree)
    while table.max_degree < max_degree:
        table = advance_degree(table)
        if progress is not None:
            progress(table.max_degree)
    return table
