"""Lattice points of N+, the skew form and the total order on rays."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple, Union

from .errors import ZeroDeterminant

Pair = Tuple[int, int]


@dataclass(frozen=True, order=False)
class LatticeVector:
    a: int
    b: int

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError("lattice coordinates must be integers")
        if self.a < 0 or self.b < 0 or (self.a == 0 and self.b == 0):
            raise ValueError(f"({self.a},{self.b}) is not in N+")

    @property
    def degree(self) -> int:
        return self.a + self.b

    @property
    def gcd(self) -> int:
        return gcd(self.a, self.b)

    def __iter__(self):
        yield self.a
        yield self.b

    def __lt__(self, other: "LatticeVector") -> bool:
        return compare(self, other) == "less"

    def __le__(self, other: "LatticeVector") -> bool:
        return compare(self, other) != "greater"

    def __gt__(self, other: "LatticeVector") -> bool:
        return compare(self, other) == "greater"

    def __ge__(self, other: "LatticeVector") -> bool:
        return compare(self, other) != "less"

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __repr__(self) -> str:
        return f"({self.a},{self.b})"


VectorLike = Union[LatticeVector, Pair]


def vec(p: VectorLike) -> LatticeVector:
    return p if isinstance(p, LatticeVector) else LatticeVector(*p)


def skew_form(p: VectorLike, q: VectorLike) -> int:
    """{(a,b),(c,d)} = bc - ad.  Works on any pair of integer 2-vectors."""
    a, b = p
    c, d = q
    return b * c - a * d


def sort_key(p: VectorLike) -> Tuple[Fraction, int]:
    """Key that sorts N+ increasingly: by b/(a+b), then by length along a ray."""
    a, b = p
    return (Fraction(b, a + b), a + b)


def compare(p: VectorLike, q: VectorLike) -> str:
    """'less', 'equal' or 'greater'.

    p < q when {p,q} < 0, or when q is a longer multiple of p.
    """
    s = skew_form(p, q)
    if s < 0:
        return "less"
    if s > 0:
        return "greater"
    dp, dq = sum(p), sum(q)
    if dp == dq:
        return "equal"
    return "less" if dp < dq else "greater"


def normalization_factor(p: VectorLike) -> Fraction:
    a, b = p
    return Fraction(1, gcd(a, b))


def vectors_up_to(max_degree: int):
    """All of N+ with degree <= max_degree, in increasing order."""
    out = [LatticeVector(a, d - a) for d in range(1, max_degree + 1) for a in range(d + 1)]
    return sorted(out, key=sort_key)


@dataclass(frozen=True)
class Matrix2:
    """Nonnegative 2x2 integer matrix given by its columns F(1,0)=c1, F(0,1)=c2."""

    c1: Pair
    c2: Pair

    def __post_init__(self):
        if min(*self.c1, *self.c2) < 0:
            raise ValueError("matrix entries must be nonnegative")

    @classmethod
    def from_columns(cls, c1: VectorLike, c2: VectorLike) -> "Matrix2":
        return cls(tuple(c1), tuple(c2))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.c1, self.c2
        return a * d - b * c

    def apply(self, p: VectorLike) -> Pair:
        x, y = p
        return (x * self.c1[0] + y * self.c2[0], x * self.c1[1] + y * self.c2[1])

    def __call__(self, p: VectorLike) -> LatticeVector:
        return LatticeVector(*self.apply(p))


IDENTITY = Matrix2((1, 0), (0, 1))
SWAP = Matrix2((0, 1), (1, 0))


@dataclass(frozen=True)
class DilogSymbol:
    """Psi[vector] raised to exponent_scale."""

    vector: LatticeVector
    exponent_scale: Fraction


def similarity(F: Matrix2, p: VectorLike) -> DilogSymbol:
    """F . Psi[p] = Psi[F p]^(1/|F|).

    A negative determinant (e.g. SWAP) yields a negative scale; only |F| = 0
    is rejected.
    """
    det = F.det
    if det == 0:
        raise ZeroDeterminant(f"similarity transformation with singular matrix {F}")
    return DilogSymbol(F(p), Fraction(1, det))


@dataclass(frozen=True)
class Covector:
    """Linear form m -> c1*m1 + c2*m2 on Z^2."""

    c1: int
    c2: int

    def __call__(self, m: VectorLike) -> int:
        return self.c1 * m[0] + self.c2 * m[1]


def p_star(p: VectorLike) -> Covector:
    """The covector m -> {m, p}."""
    a, b = p
    # {m, p} = m2*a - m1*b
    return Covector(-b, a)
