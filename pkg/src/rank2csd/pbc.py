"""Polynomials in binomial coefficients (PBCs).

A PBC is a bivariate polynomial written in the basis

    C(m, k) * C(n, l)        (k, l >= 0)

and stored as a sparse map ``(k, l) -> coefficient``.  Coefficients are exact
(``int`` when integral, ``Fraction`` otherwise); zero coefficients are never
stored, so two PBCs are equal iff their maps are equal.

Integer coefficients are exactly the polynomials that take integer values on
the nonnegative grid, and nonnegative integer coefficients are closed under
products and under composition.  The engine relies on both facts when it
substitutes wall exponents into each other.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, lcm
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import NotPositivePBC

Rational = Union[int, Fraction]
Index = Tuple[int, int]


def _norm(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def gbinom(x: Rational, k: int) -> Rational:
    """C(x, k) for any rational x, as the falling factorial over k!."""
    if k < 0:
        return 0
    if isinstance(x, int) and x >= 0:
        return comb(x, k)
    num: Rational = 1
    for i in range(k):
        num *= x - i
    return _norm(Fraction(num) / factorial(k))


@lru_cache(maxsize=None)
def _product_1d(s: int, r: int) -> Tuple[Tuple[int, int], ...]:
    # C(m,s) C(m,r) = sum_{max(s,r) <= k <= s+r} C(s, k-r) C(k, s) C(m, k)
    return tuple(
        (k, comb(s, k - r) * comb(k, s)) for k in range(max(s, r), s + r + 1)
    )


class PBC:
    """Immutable exact polynomial in the binomial basis C(m,k)C(n,l)."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[Index, Rational] | Iterable[Tuple[Index, Rational]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: Dict[Index, Rational] = {}
        for key, v in items:
            k, l = key
            if k < 0 or l < 0:
                raise ValueError(f"negative basis index {key}")
            if v:
                c[(int(k), int(l))] = _norm(v if isinstance(v, (int, Fraction)) else Fraction(v))
        self._c = dict(sorted(c.items()))
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[Index, Rational]) -> "PBC":
        # trusted constructor: drops zeros, normalizes, sorts
        obj = cls.__new__(cls)
        obj._c = {k: _norm(v) for k, v in sorted(c.items()) if v}
        obj._hash = None
        return obj

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls) -> "PBC":
        return cls._raw({})

    @classmethod
    def const(cls, value: Rational) -> "PBC":
        return cls._raw({(0, 0): value})

    @classmethod
    def basis(cls, k: int, l: int) -> "PBC":
        if k < 0 or l < 0:
            raise ValueError("basis indices must be nonnegative")
        return cls._raw({(k, l): 1})

    # container protocol ---------------------------------------------------
    def items(self) -> Iterator[Tuple[Index, Rational]]:
        return iter(self._c.items())

    def coeff(self, k: int, l: int) -> Rational:
        return self._c.get((k, l), 0)

    def as_dict(self) -> Dict[Index, Rational]:
        return dict(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PBC):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == PBC.const(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"PBC({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for (k, l), c in self._c.items():
            mono = "*".join(s for s in (f"C(m,{k})" if k else "", f"C(n,{l})" if l else "") if s)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # degrees --------------------------------------------------------------
    @property
    def deg_m(self) -> int:
        return max((k for k, _ in self._c), default=0)

    @property
    def deg_n(self) -> int:
        return max((l for _, l in self._c), default=0)

    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        d = 1
        for c in self._c.values():
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return d

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "PBC | Rational") -> "PBC":
        if not isinstance(other, PBC):
            other = PBC.const(other)
        out = dict(self._c)
        for key, v in other._c.items():
            out[key] = out.get(key, 0) + v
        return PBC._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "PBC":
        return PBC._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "PBC | Rational") -> "PBC":
        if not isinstance(other, PBC):
            other = PBC.const(other)
        return self + (-other)

    def __rsub__(self, other: Rational) -> "PBC":
        return PBC.const(other) - self

    def scale(self, c: Rational) -> "PBC":
        if not c:
            return PBC.zero()
        return PBC._raw({k: v * c for k, v in self._c.items()})

    def __mul__(self, other: "PBC | Rational") -> "PBC":
        if not isinstance(other, PBC):
            return self.scale(other)
        if len(self._c) > len(other._c):
            return other * self
        out: Dict[Index, Rational] = defaultdict(int)
        for (k1, l1), c1 in self._c.items():
            for (k2, l2), c2 in other._c.items():
                c = c1 * c2
                pm = _product_1d(k1, k2)
                pn = _product_1d(l1, l2)
                for k, a in pm:
                    ca = c * a
                    for l, b in pn:
                        out[(k, l)] += ca * b
        return PBC._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Rational) -> "PBC":
        return self.scale(Fraction(1) / Fraction(c))

    # evaluation and structural maps --------------------------------------
    def __call__(self, m: Rational, n: Rational) -> Rational:
        return self.eval(m, n)

    def eval(self, m: Rational, n: Rational) -> Rational:
        total: Rational = 0
        for (k, l), c in self._c.items():
            total += c * gbinom(m, k) * gbinom(n, l)
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def at_n(self, value: int) -> "PBC":
        """Specialize n := value, leaving a PBC in m alone."""
        out: Dict[Index, Rational] = defaultdict(int)
        for (k, l), c in self._c.items():
            out[(k, 0)] += c * gbinom(value, l)
        return PBC._raw(out)

    def transpose(self) -> "PBC":
        """f(m, n) -> f(n, m)."""
        return PBC._raw({(l, k): v for (k, l), v in self._c.items()})

    def shift_n(self) -> "PBC":
        """f(m, n) -> f(m, n + 1) by Pascal's rule."""
        out: Dict[Index, Rational] = defaultdict(int)
        for (k, l), c in self._c.items():
            out[(k, l)] += c
            if l:
                out[(k, l - 1)] += c
        return PBC._raw(out)

    def shift_m(self) -> "PBC":
        """f(m, n) -> f(m + 1, n)."""
        return self.transpose().shift_n().transpose()

    def prefix_sum_n(self) -> "PBC":
        """F(m, n) = sum_{j < n} f(m, j)."""
        return PBC._raw({(k, l + 1): v for (k, l), v in self._c.items()})

    def prefix_sum_m(self) -> "PBC":
        """F(m, n) = sum_{j < m} f(j, n)."""
        return PBC._raw({(k + 1, l): v for (k, l), v in self._c.items()})

    # predicates -----------------------------------------------------------
    def is_integer_valued(self) -> bool:
        return all(isinstance(c, int) for c in self._c.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._c.values())

    def is_positive_pbc(self) -> bool:
        return self.is_integer_valued() and self.is_nonnegative()


ZERO = PBC.zero()
ONE = PBC.const(1)


def basis(k: int, l: int) -> PBC:
    return PBC.basis(k, l)


def add(f: PBC, g: PBC) -> PBC:
    return f + g


def scale(f: PBC, c: Rational) -> PBC:
    return f.scale(c)


def mul(f: PBC, g: PBC) -> PBC:
    return f * g


def evaluate(f: PBC, m: Rational, n: Rational) -> Rational:
    return f.eval(m, n)


def prefix_sum_n(f: PBC) -> PBC:
    return f.prefix_sum_n()


def prefix_sum_m(f: PBC) -> PBC:
    return f.prefix_sum_m()


def is_integer_valued(f: PBC) -> bool:
    return f.is_integer_valued()


def is_nonnegative(f: PBC) -> bool:
    return f.is_nonnegative()


@lru_cache(maxsize=None)
def monomial_binoms(u: int, s: int, t: int, a: int) -> Tuple[PBC, ...]:
    """[C(u C(m,s) C(n,t), j) for j = 0..a].

    Uses (j+1) C(x, j+1) = (x - j) C(x, j) with x = u C(m,s) C(n,t), which keeps
    every intermediate inside the binomial basis.
    """
    x = PBC._raw({(s, t): u})
    out = [ONE]
    for j in range(a):
        prev = out[-1]
        out.append((x * prev - prev.scale(j)).scale(Fraction(1, j + 1)))
    return tuple(out)


@lru_cache(maxsize=4096)
def binoms_upto(f: PBC, a: int) -> Tuple[PBC, ...]:
    """[C(f, j) for j = 0..a] for a positive PBC f.

    f is split into its monomials u_t C(m,s_t) C(n,t_t) and the binomials are
    combined by Vandermonde convolution, C(f + g, j) = sum_i C(f, i) C(g, j-i).
    """
    if not f.is_positive_pbc():
        raise NotPositivePBC(f"C(f, a) needs nonnegative integer coefficients, got {f}")
    acc = [ONE] + [ZERO] * a
    for (s, t), u in f.items():
        term = monomial_binoms(u, s, t, a)
        acc = [
            sum((acc[i] * term[j - i] for i in range(j + 1) if acc[i] and term[j - i]), ZERO)
            for j in range(a + 1)
        ]
    return tuple(acc)


def binom_of(f: PBC, a: int) -> PBC:
    """The PBC equal to C(f(m, n), a)."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    return binoms_upto(f, a)[a]


@lru_cache(maxsize=65536)
def substitute(u: PBC, f: PBC, g: PBC) -> PBC:
    """u(f(m, n), g(m, n)) for nonnegative u and positive PBCs f, g."""
    if not u:
        return ZERO
    if not u.is_nonnegative():
        raise NotPositivePBC(f"outer polynomial has a negative coefficient: {u}")
    bf = binoms_upto(f, u.deg_m)
    bg = binoms_upto(g, u.deg_n)
    out: Dict[Index, Rational] = defaultdict(int)
    for (i, j), c in u.items():
        if bf[i] and bg[j]:
            for key, v in (bf[i] * bg[j]).items():
                out[key] += c * v
    return PBC._raw(out)
