"""Brute-force model of the structure group.

Group elements act on the truncated power series ring Q[[x1, x2]] / (deg > L).
The Lie generator X_p acts as the derivation x^w -> {p, w} x^(p+w), so the
dilogarithm element Psi[n]^c is the automorphism exp(c * sum_j (-1)^(j+1)/j^2 X_{jn}).
Because every X_p raises degree, the exponential is a finite sum after truncation.

A product g h of group elements is the operator "apply h, then g"; factor lists
are therefore evaluated right to left.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .errors import CutoffMismatch
from .lattice import VectorLike, skew_form

Mono = Tuple[int, int]
Terms = Dict[Mono, Fraction]


@dataclass(frozen=True)
class TruncatedSeries:
    cutoff: int
    terms: Tuple[Tuple[Mono, Fraction], ...]

    @classmethod
    def from_dict(cls, cutoff: int, terms: Terms) -> "TruncatedSeries":
        kept = sorted((k, Fraction(v)) for k, v in terms.items() if v and k[0] + k[1] <= cutoff)
        return cls(cutoff, tuple(kept))

    @classmethod
    def monomial(cls, cutoff: int, w: Mono) -> "TruncatedSeries":
        return cls.from_dict(cutoff, {w: Fraction(1)})

    def as_dict(self) -> Terms:
        return dict(self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.as_dict().get((i, j), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{w}" for w, c in self.terms)


@dataclass(frozen=True)
class TruncatedAutomorphism:
    cutoff: int
    image1: TruncatedSeries
    image2: TruncatedSeries

    def __eq__(self, other):
        if not isinstance(other, TruncatedAutomorphism):
            return NotImplemented
        return equal_mod(self, other)

    def __hash__(self):
        return hash((self.cutoff, self.image1.terms, self.image2.terms))


def identity(L: int) -> TruncatedAutomorphism:
    return TruncatedAutomorphism(
        L, TruncatedSeries.monomial(L, (1, 0)), TruncatedSeries.monomial(L, (0, 1))
    )


def _derivation(n: Mono, L: int) -> Tuple[Tuple[Mono, Fraction], ...]:
    """The terms (jn, (-1)^(j+1)/j^2) of the dilog generator that fit under L."""
    a, b = n
    out = []
    j = 1
    while j * (a + b) < L:
        out.append(((j * a, j * b), Fraction((-1) ** (j + 1), j * j)))
        j += 1
    return tuple(out)


def _apply_exp(n: Mono, c: Fraction, L: int, terms: Terms) -> Terms:
    """exp(c * D_n) applied to a truncated series."""
    gen = _derivation(n, L)
    total: Terms = defaultdict(Fraction, terms)
    cur = dict(terms)
    k = 0
    while cur:
        k += 1
        nxt: Terms = defaultdict(Fraction)
        for w, cw in cur.items():
            dw = w[0] + w[1]
            for p, cp in gen:
                if dw + p[0] + p[1] > L:
                    break
                s = skew_form(p, w)
                if s:
                    nxt[(p[0] + w[0], p[1] + w[1])] += cw * cp * s
        cur = {w: v * c / k for w, v in nxt.items() if v}
        for w, v in cur.items():
            total[w] += v
    return {w: v for w, v in total.items() if v}


def apply_factor(n: VectorLike, c, L: int, s: TruncatedSeries) -> TruncatedSeries:
    """Psi[n]^c acting on a single series."""
    if s.cutoff != L:
        raise CutoffMismatch(f"series cutoff {s.cutoff} != {L}")
    c = Fraction(c)
    if c == 0:
        return s
    return TruncatedSeries.from_dict(L, _apply_exp(tuple(n), c, L, s.as_dict()))


@lru_cache(maxsize=4096)
def psi(n: VectorLike, c, L: int) -> TruncatedAutomorphism:
    if L < 1:
        raise ValueError("cutoff must be positive")
    c = Fraction(c)
    e = identity(L)
    if c == 0:
        return e
    return TruncatedAutomorphism(L, apply_factor(n, c, L, e.image1), apply_factor(n, c, L, e.image2))


def _mul(f: Terms, g: Terms, L: int) -> Terms:
    out: Terms = defaultdict(Fraction)
    for (i1, j1), c1 in f.items():
        d1 = i1 + j1
        for (i2, j2), c2 in g.items():
            if d1 + i2 + j2 <= L:
                out[(i1 + i2, j1 + j2)] += c1 * c2
    return out


def substitute_series(s: TruncatedSeries, y1: TruncatedSeries, y2: TruncatedSeries) -> TruncatedSeries:
    """s(y1, y2) truncated at the common cutoff."""
    L = s.cutoff
    if y1.cutoff != L or y2.cutoff != L:
        raise CutoffMismatch("cutoffs differ")
    p1 = [{(0, 0): Fraction(1)}]
    p2 = [{(0, 0): Fraction(1)}]
    for _ in range(L):
        p1.append(_mul(p1[-1], y1.as_dict(), L))
        p2.append(_mul(p2[-1], y2.as_dict(), L))
    out: Terms = defaultdict(Fraction)
    for (i, j), c in s.terms:
        for w, v in _mul(p1[i], p2[j], L).items():
            out[w] += c * v
    return TruncatedSeries.from_dict(L, out)


def compose(g: TruncatedAutomorphism, h: TruncatedAutomorphism) -> TruncatedAutomorphism:
    """The automorphism 'apply h, then g' (the group product g h)."""
    if g.cutoff != h.cutoff:
        raise CutoffMismatch(f"cutoffs {g.cutoff} and {h.cutoff} differ")
    return TruncatedAutomorphism(
        g.cutoff,
        substitute_series(h.image1, g.image1, g.image2),
        substitute_series(h.image2, g.image1, g.image2),
    )


def eval_product(factors: Iterable[Tuple[VectorLike, object]], L: int) -> TruncatedAutomorphism:
    """Product of Psi[v]^c over (v, c) pairs read left to right.

    Applies the factors to the generators from the rightmost one, which avoids
    series substitution entirely.
    """
    facs = list(factors)
    s1 = TruncatedSeries.monomial(L, (1, 0)).as_dict()
    s2 = TruncatedSeries.monomial(L, (0, 1)).as_dict()
    for v, c in reversed(facs):
        c = Fraction(c)
        if c:
            v = tuple(v)
            s1 = _apply_exp(v, c, L, s1)
            s2 = _apply_exp(v, c, L, s2)
    return TruncatedAutomorphism(L, TruncatedSeries.from_dict(L, s1), TruncatedSeries.from_dict(L, s2))


def eval_factor_list(fs: Sequence, m: int, n: int, L: int) -> TruncatedAutomorphism:
    """Evaluate a list of factors whose exponents are PBCs (or numbers) at (m, n)."""
    pairs = []
    for f in fs:
        v, e = (f.vector, f.exponent) if hasattr(f, "vector") else f
        pairs.append((tuple(v), e.eval(m, n) if hasattr(e, "eval") else e))
    return eval_product(pairs, L)


def equal_mod(g: TruncatedAutomorphism, h: TruncatedAutomorphism) -> bool:
    if g.cutoff != h.cutoff:
        raise CutoffMismatch(f"cutoffs {g.cutoff} and {h.cutoff} differ")
    return g.image1.terms == h.image1.terms and g.image2.terms == h.image2.terms


def cutoff_for_level(l: int) -> int:
    """Series cutoff that detects equality in G^{<=l}."""
    return l + 1


def first_difference(g: TruncatedAutomorphism, h: TruncatedAutomorphism):
    """(generator, monomial, g-coeff, h-coeff) of the lowest-degree mismatch, or None."""
    best = None
    for name, s, t in (("x1", g.image1, h.image1), ("x2", g.image2, h.image2)):
        ds, dt = s.as_dict(), t.as_dict()
        for w in set(ds) | set(dt):
            if ds.get(w, 0) != dt.get(w, 0):
                cand = (w[0] + w[1], name, w, ds.get(w, Fraction(0)), dt.get(w, Fraction(0)))
                if best is None or cand[:3] < best[:3]:
                    best = cand
    return None if best is None else best[1:]
