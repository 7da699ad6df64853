"""Nodes of a projective hypersurface: certification, evaluation maps, defects and
slices of the ideals I, I^(i), I^a and J.

Points are supplied by the caller with rational coordinates and are checked
here, never discovered (``search_nodes`` is a convenience heuristic only).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from pathlib import Path
from typing import Iterable, Sequence

from .exactla import (
    RATIONAL_MODE,
    Arithmetic,
    ExactMatrix,
    SubspaceBasis,
    kernel_basis,
    rank,
)
from .koszul import complex_for
from .polyring import HomPoly, derivative_order, dim_R, evaluate, monomial_index, monomials, partials


class CertificationError(Exception):
    """Condition (A) could not be established for the given input."""


class NotSingular(CertificationError):
    def __init__(self, point):
        super().__init__(f"{point} is not a singular point of the hypersurface")
        self.point = point


class Degenerate(CertificationError):
    def __init__(self, point, hessian_rank):
        super().__init__(f"{point} is not an ordinary double point (Hessian rank {hessian_rank})")
        self.point = point
        self.hessian_rank = hessian_rank


class IncompleteList(CertificationError):
    def __init__(self, stable, given):
        super().__init__(f"dim(R/J) stabilizes at {stable} but only {given} nodes were supplied")
        self.stable = stable
        self.given = given


class NotIsolated(CertificationError):
    def __init__(self, dims):
        super().__init__(f"dim(R/J) does not stabilize on the window: {dims}")
        self.dims = dims


class GeneratorWindowExceeded(Exception):
    """R_1 * I_k != I_{k+1} at the edge of the generator window."""


class ContainmentViolated(Exception):
    """The denominator of a Wotzlaw quotient is not inside the numerator."""


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^n scaled so its first nonzero coordinate is 1."""

    coords: tuple[Fraction, ...]
    chart: int

    @classmethod
    def of(cls, coords: Iterable) -> "ProjPoint":
        cs = tuple(Fraction(c) for c in coords)
        nz = [i for i, c in enumerate(cs) if c]
        if not nz:
            raise ValueError("the zero vector is not a projective point")
        c = nz[0]
        s = cs[c]
        return cls(tuple(x / s for x in cs), c)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def parse_points(text: str) -> list[ProjPoint]:
    """One point per line as colon-separated rationals; ``#`` starts a comment."""
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts.append(ProjPoint.of(Fraction(tok.strip()) for tok in line.split(":")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: cannot read point {line!r}: {exc}") from None
    return pts


def read_points(path: str | Path) -> list[ProjPoint]:
    return parse_points(Path(path).read_text())


def format_points(points: Sequence[ProjPoint]) -> str:
    return "".join(":".join(str(c) for c in p.coords) + "\n" for p in points)


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class OdpCertificate:
    points: tuple[ProjPoint, ...]
    tau: int
    hessian_ranks: tuple[int, ...]
    stabilization_window: tuple[int, int]
    rj_dims_on_window: tuple[int, ...]


def stabilization_start(n: int, d: int) -> int:
    return (n + 1) * (d - 2) + 1


def hessian_rank(f: HomPoly, p: ProjPoint, arith: Arithmetic = RATIONAL_MODE) -> int:
    """Rank of the Hessian of f dehomogenized at the point's chart."""
    nv = f.num_vars
    others = [i for i in range(nv) if i != p.chart]
    entries = {}
    for a, i in enumerate(others):
        for b, j in enumerate(others):
            mu = [0] * nv
            mu[i] += 1
            mu[j] += 1
            v = evaluate(derivative_order(f, mu), p.coords)
            if v:
                entries[(a, b)] = v
    return rank(ExactMatrix(len(others), len(others), entries), arith)


def is_singular_at(f: HomPoly, p: ProjPoint) -> bool:
    return not evaluate(f, p.coords) and all(not evaluate(g, p.coords) for g in partials(f))


def certify_condition_A(f: HomPoly, claimed_points: Iterable[ProjPoint],
                        arith: Arithmetic = RATIONAL_MODE) -> OdpCertificate:
    """Check that the nodes of f are exactly ``claimed_points``, all ordinary double points."""
    pts = tuple(claimed_points)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points in the node list")
    n, d = f.n, f.degree
    for p in pts:
        if len(p.coords) != f.num_vars:
            raise ValueError(f"{p} has {len(p.coords)} coordinates, expected {f.num_vars}")
    ranks = []
    for p in pts:
        if not is_singular_at(f, p):
            raise NotSingular(p)
        r = hessian_rank(f, p, arith)
        if r < n:
            raise Degenerate(p, r)
        ranks.append(r)
    T = stabilization_start(n, d)
    K = complex_for(f, arith)
    dims = tuple(K.dim_M(j + n + 1) for j in range(T, T + n + 2))
    if len(set(dims)) != 1:
        raise NotIsolated(dims)
    if dims[0] > len(pts):
        raise IncompleteList(dims[0], len(pts))
    if dims[0] < len(pts):
        raise CertificationError(f"dim(R/J) stabilizes at {dims[0]} below the {len(pts)} nodes supplied")
    return OdpCertificate(pts, len(pts), tuple(ranks), (T, T + n + 1), dims)


def search_nodes(f: HomPoly, values: Sequence = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))) -> list[ProjPoint]:
    """Heuristic: singular points with every coordinate in ``values``.

    Finds nothing outside that grid; the result still has to be certified.
    """
    found = []
    seen = set()
    for coords in product(values, repeat=f.num_vars):
        if not any(coords):
            continue
        p = ProjPoint.of(coords)
        if p in seen:
            continue
        seen.add(p)
        if is_singular_at(f, p):
            found.append(p)
    return found


# ---------------------------------------------------------------------------
# evaluation maps and ideal slices


@lru_cache(maxsize=None)
def _multi_indices(num: int, below: int) -> tuple[tuple[int, ...], ...]:
    """Multi-indices of length ``num`` and total order < ``below``, by order then lex."""
    out = []
    for t in range(below):
        out.extend(sorted((mu for mu in product(range(t + 1), repeat=num) if sum(mu) == t), reverse=True))
    return tuple(out)


def beta_matrix(points: Sequence[ProjPoint], i: int, k: int) -> ExactMatrix:
    """Jets of order < i at each point of the monomials of degree k (chart trivialization)."""
    pts = list(points)
    if not pts:
        raise ValueError("beta_matrix needs at least one point")
    nv = len(pts[0].coords)
    mons = monomials(nv, k)
    entries = {}
    row = 0
    for p in pts:
        others = [j for j in range(nv) if j != p.chart]
        for mu in _multi_indices(len(others), i):
            for col, e in enumerate(mons):
                v = Fraction(1)
                for j, m in zip(others, mu):
                    a = e[j]
                    if a < m:
                        v = 0
                        break
                    v *= prod(range(a - m + 1, a + 1)) * p.coords[j] ** (a - m)
                    if not v:
                        break
                if v:
                    entries[(row, col)] = v
            row += 1
    return ExactMatrix(row, len(mons), entries)


def defect(points: Sequence[ProjPoint], k: int, arith: Arithmetic = RATIONAL_MODE) -> int:
    """tau minus the rank of evaluation at the points in degree k."""
    pts = list(points)
    if not pts:
        return 0
    if k < 0:
        return len(pts)
    return len(pts) - rank(beta_matrix(pts, 1, k), arith)


def symbolic_power_slice(points: Sequence[ProjPoint], i: int, k: int, num_vars: int) -> SubspaceBasis:
    """Forms of degree k vanishing to order >= i at every point."""
    amb = dim_R(num_vars - 1, k)
    if i <= 0 or not points:
        return SubspaceBasis.full(amb)
    if k < 0:
        return SubspaceBasis.zero(0)
    return kernel_basis(beta_matrix(points, i, k))


def _product_vectors(g: HomPoly, vectors: Iterable[dict], h_degree: int) -> list[dict]:
    """Coordinates of g * h for each h of degree ``h_degree`` given by coordinates."""
    src = monomials(g.num_vars, h_degree)
    idx = monomial_index(g.num_vars, h_degree + g.degree)
    out = []
    for v in vectors:
        w: dict[int, Fraction] = {}
        for j, c in v.items():
            m = src[j]
            for e, a in g.terms:
                t = idx[tuple(x + y for x, y in zip(m, e))]
                y = w.get(t, 0) + a * c
                if y:
                    w[t] = y
                else:
                    w.pop(t, None)
        if w:
            out.append(w)
    return out


def jacobian_slice(f: HomPoly, k: int) -> SubspaceBasis:
    """J_k = span of df/dx_i times monomials."""
    return product_with_J(f, SubspaceBasis.full(dim_R(f.n, k - f.degree + 1)), k - f.degree + 1)


def product_with_J(f: HomPoly, A: SubspaceBasis, a_degree: int) -> SubspaceBasis:
    """(A J) in degree a_degree + d - 1 for a subspace A of R_{a_degree}."""
    k = a_degree + f.degree - 1
    amb = dim_R(f.n, k)
    if a_degree < 0 or not A.dim:
        return SubspaceBasis.zero(amb)
    vecs = []
    basis = A.sparse_vectors()
    for g in partials(f):
        if not g.is_zero():
            vecs.extend(_product_vectors(g, basis, a_degree))
    return SubspaceBasis.span(amb, vecs)


class PointIdeal:
    """The radical ideal I of a finite point set, with minimal generators."""

    def __init__(self, points: Sequence[ProjPoint], num_vars: int):
        self.points = tuple(points)
        self.num_vars = num_vars
        self.tau = len(self.points)
        self._slices: dict[int, SubspaceBasis] = {}
        self._powers: dict[tuple[int, int], SubspaceBasis] = {}

    def slice(self, k: int) -> SubspaceBasis:
        if k not in self._slices:
            self._slices[k] = symbolic_power_slice(self.points, 1, k, self.num_vars)
        return self._slices[k]

    def _linear_multiples(self, k: int) -> SubspaceBasis:
        """R_1 * I_{k-1} inside R_k."""
        amb = dim_R(self.num_vars - 1, k)
        if k < 1:
            return SubspaceBasis.zero(amb)
        prev = self.slice(k - 1).sparse_vectors()
        vecs = []
        for i in range(self.num_vars):
            vecs.extend(_product_vectors(HomPoly.variable(self.num_vars, i), prev, k - 1))
        return SubspaceBasis.span(amb, vecs)

    @property
    def generators(self) -> list[tuple[int, HomPoly]]:
        """Minimal generators (degree, polynomial) found in degrees <= tau + 1."""
        if not hasattr(self, "_gens"):
            gens = []
            top = self.tau + 1
            for k in range(top + 1):
                low = self._linear_multiples(k)
                cur = self.slice(k)
                residues = [low.reduce(v) for v in cur.sparse_vectors()]
                new = SubspaceBasis.span(cur.ambient_dim, [r for r in residues if r])
                gens.extend((k, HomPoly.from_vector(self.num_vars, k, v)) for v in new.sparse_vectors())
            if self._linear_multiples(top + 1) != self.slice(top + 1):
                raise GeneratorWindowExceeded(f"R_1 * I_{top} != I_{top + 1}")
            self._gens = gens
        return self._gens

    def power_slice(self, a: int, k: int) -> SubspaceBasis:
        """(I^a)_k, with I^a = R for a <= 0."""
        amb = dim_R(self.num_vars - 1, k)
        if a <= 0:
            return SubspaceBasis.full(amb)
        if k < 0:
            return SubspaceBasis.zero(0)
        key = (a, k)
        if key not in self._powers:
            vecs = []
            for e, g in self.generators:
                if e <= k:
                    vecs.extend(_product_vectors(g, self.power_slice(a - 1, k - e).sparse_vectors(), k - e))
            self._powers[key] = SubspaceBasis.span(amb, vecs)
        return self._powers[key]


@lru_cache(maxsize=32)
def point_ideal(points: tuple[ProjPoint, ...], num_vars: int) -> PointIdeal:
    return PointIdeal(points, num_vars)


def ideal_power_slice(points: Sequence[ProjPoint], a: int, k: int, num_vars: int) -> SubspaceBasis:
    return point_ideal(tuple(points), num_vars).power_slice(a, k)


VARIANTS = ("powers", "symbolic")


def wotzlaw_quotient_dim(f: HomPoly, points: Sequence[ProjPoint], q: int, variant: str) -> int:
    """dim of (I^{a+1} / I^a J) in degree (q+1)d - n - 1, a = q - [n/2]; symbolic powers for ``symbolic``."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    n, d, nv = f.n, f.degree, f.num_vars
    a = q - n // 2
    D = (q + 1) * d - n - 1
    if variant == "powers":
        num = ideal_power_slice(points, a + 1, D, nv)
        low = ideal_power_slice(points, a, D - d + 1, nv)
    else:
        num = symbolic_power_slice(points, a + 1, D, nv)
        low = symbolic_power_slice(points, a, D - d + 1, nv)
    den = product_with_J(f, low, D - d + 1)
    if D < 0:
        return 0
    if any(not num.contains(v) for v in den.sparse_vectors()):
        raise ContainmentViolated(f"(I^{a} J)_{D} is not contained in the numerator (q = {q}, {variant})")
    return num.dim - den.dim


def wotzlaw_proven(n: int, d: int, q: int, variant: str) -> bool:
    """Whether the quotient is known to equal the Hodge piece for this q."""
    m = n // 2
    if variant == "powers":
        return q <= m
    return not (n % 2 == 1 and m < q < m + d // 2)


def middle_condition_holds(n: int, d: int, q: int) -> bool:
    """(n - m)d + m - q - 1 < nd/2, compared as integers."""
    m = n // 2
    return 2 * ((n - m) * d + m - q - 1) < n * d
