"""Homogeneous polynomials with rational coefficients in x_0, ..., x_n.

Monomials of a fixed degree are ordered graded-lexicographically with x_0 the
largest variable; that order is used for every matrix built in this package.
Coefficients are restricted to the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, prod
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class BadChart(ValueError):
    """The chart coordinate of the point vanishes."""


def dim_R(n: int, k: int) -> int:
    """dim R_k for R = Q[x_0..x_n]."""
    return comb(k + n, n) if k >= 0 else 0


@lru_cache(maxsize=None)
def monomials(num_vars: int, k: int) -> tuple[Exponent, ...]:
    """Exponent vectors of total degree ``k`` in graded-lex order (x_0^k first)."""
    if k < 0 or num_vars <= 0:
        return ()
    if num_vars == 1:
        return ((k,),)
    out = []
    for e in range(k, -1, -1):
        for rest in monomials(num_vars - 1, k - e):
            out.append((e,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, k: int) -> dict[Exponent, int]:
    return {m: i for i, m in enumerate(monomials(num_vars, k))}


@dataclass(frozen=True)
class MonomialBasis:
    num_vars: int
    degree: int

    @property
    def monomials(self) -> tuple[Exponent, ...]:
        return monomials(self.num_vars, self.degree)

    def __len__(self):
        return len(self.monomials)

    def index(self, e: Exponent) -> int:
        return monomial_index(self.num_vars, self.degree)[e]


@dataclass(frozen=True)
class HomPoly:
    """A homogeneous polynomial; ``terms`` is a sorted tuple of (exponent, coefficient)."""

    num_vars: int
    degree: int
    terms: tuple[tuple[Exponent, Fraction], ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        if self.degree < 0:
            raise ValueError("negative degree")
        order = monomial_index(self.num_vars, self.degree)
        clean = {}
        for e, c in self.terms:
            e = tuple(int(x) for x in e)
            if len(e) != self.num_vars or sum(e) != self.degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not have degree {self.degree} in {self.num_vars} variables")
            clean[e] = clean.get(e, 0) + Fraction(c)
        terms = tuple(sorted(((e, c) for e, c in clean.items() if c), key=lambda t: order[t[0]]))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_dict(cls, num_vars: int, degree: int, terms: Mapping[Exponent, object]) -> "HomPoly":
        return cls(num_vars, degree, tuple(terms.items()))

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "HomPoly":
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, 1, ((tuple(e), 1),))

    @cached_property
    def coeffs(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    @property
    def n(self) -> int:
        return self.num_vars - 1

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomPoly") -> "HomPoly":
        _same_space(self, other)
        return HomPoly(self.num_vars, self.degree, self.terms + other.terms)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.num_vars, self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c) -> "HomPoly":
        return HomPoly(self.num_vars, self.degree, tuple((e, c * x) for e, x in self.terms))

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            return multiply(self, other)
        return self.scale(Fraction(other))

    __rmul__ = __mul__

    def vector(self) -> dict[int, Fraction]:
        """Sparse coordinates in the monomial basis of R_degree."""
        idx = monomial_index(self.num_vars, self.degree)
        return {idx[e]: c for e, c in self.terms}

    @classmethod
    def from_vector(cls, num_vars: int, degree: int, v: Mapping[int, object] | Sequence) -> "HomPoly":
        mons = monomials(num_vars, degree)
        items = v.items() if isinstance(v, Mapping) else enumerate(v)
        return cls(num_vars, degree, tuple((mons[i], c) for i, c in items if c))

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def __str__(self):
        return format_poly(self)


def _same_space(g: HomPoly, h: HomPoly) -> None:
    if g.num_vars != h.num_vars or (g.degree != h.degree and g.terms and h.terms):
        raise ValueError("polynomials live in different graded pieces")


def multiply(g: HomPoly, h: HomPoly) -> HomPoly:
    if g.num_vars != h.num_vars:
        raise ValueError("different numbers of variables")
    out: dict[Exponent, Fraction] = {}
    for e1, c1 in g.terms:
        for e2, c2 in h.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return HomPoly.from_dict(g.num_vars, g.degree + h.degree, out)


def partial(g: HomPoly, i: int) -> HomPoly:
    out: dict[Exponent, Fraction] = {}
    for e, c in g.terms:
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
    return HomPoly.from_dict(g.num_vars, max(g.degree - 1, 0), out)


def partials(f: HomPoly) -> list[HomPoly]:
    """The generators df/dx_0, ..., df/dx_n of the Jacobian ideal."""
    return [partial(f, i) for i in range(f.num_vars)]


def derivative_order(g: HomPoly, mu: Sequence[int]) -> HomPoly:
    """Iterated partial derivative d^mu g, ``mu`` indexed by all variables."""
    if len(mu) != g.num_vars:
        raise ValueError("multi-index length must equal the number of variables")
    total = sum(mu)
    out: dict[Exponent, Fraction] = {}
    for e, c in g.terms:
        if all(a >= m for a, m in zip(e, mu)):
            factor = prod(_falling(a, m) for a, m in zip(e, mu))
            out[tuple(a - m for a, m in zip(e, mu))] = c * factor
    return HomPoly.from_dict(g.num_vars, max(g.degree - total, 0), out)


def _falling(a: int, m: int) -> int:
    return prod(range(a - m + 1, a + 1))


def evaluate(g: HomPoly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in g.terms:
        term = c
        for x, a in zip(point, e):
            if a:
                term *= Fraction(x) ** a
                if not term:
                    break
        total += term
    return total


def eval_at(g: HomPoly, point: Sequence, chart: int) -> Fraction:
    """Value of ``g`` dehomogenized by x_chart at the affine image of ``point``."""
    scale = Fraction(point[chart])
    if not scale:
        raise BadChart(f"coordinate {chart} of {tuple(point)} vanishes")
    return evaluate(g, [Fraction(x) / scale for x in point])


def euler_identity_holds(f: HomPoly) -> bool:
    """sum_i x_i df/dx_i == deg(f) f."""
    acc = HomPoly(f.num_vars, f.degree)
    for i, p in enumerate(partials(f)):
        acc = acc + multiply(HomPoly.variable(f.num_vars, i), p)
    return acc == f.scale(f.degree)


VAR_NAMES = ("x", "y", "z", "w")


def format_poly(g: HomPoly) -> str:
    if not g.terms:
        return "0"
    names = VAR_NAMES if g.num_vars <= 4 else tuple(f"x{i}" for i in range(g.num_vars))
    parts = []
    for e, c in g.terms:
        factors = []
        for name, a in zip(names, e):
            if a == 1:
                factors.append(name)
            elif a:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def span_vectors(polys: Iterable[HomPoly]) -> list[dict[int, Fraction]]:
    return [p.vector() for p in polys if p.terms]
