"""Graded slices of the Koszul complex (Omega^*, df^) and its pole order pages.

Forms are graded by deg x_i = deg dx_i = 1.  A basis element of Omega^j_k is a
pair (monomial of degree k - j, increasing index set of size j); wedge sets
come first in lex order, monomials second.  Top forms are identified with
R_{k-n-1} through the single wedge set (0, ..., n).

``sN_k`` is the kernel of df^ on Omega^n_k modulo the image of Omega^{n-1}_{k-d};
``M_k`` is Omega^{n+1}_k modulo df^ Omega^n_{k-d}, i.e. (R/J)_{k-n-1}.  The first
differential d1 : sN_k -> M_k is induced by exterior derivative, the second
d2 : sN2_k -> M2_{k-d} by the zig-zag dw = df^eta, w |-> [d eta].
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .exactla import (
    RATIONAL_MODE,
    Arithmetic,
    ExactMatrix,
    SubspaceBasis,
    image_basis,
    kernel_basis,
    pivot_profile,
    rank,
    rank_of_rows,
    solve_particular,
)
from .polyring import HomPoly, dim_R, monomial_index, monomials, partials, multiply


class KoszulError(Exception):
    pass


class LiftFailed(KoszulError):
    """A supposed class of sN2 has dw outside df^Omega^n; indicates a bug."""


class InconsistentSlice(KoszulError):
    """The supplied slice of I does not contain J in that degree."""


@lru_cache(maxsize=None)
def wedge_sets(num_vars: int, j: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(num_vars), j))


@lru_cache(maxsize=None)
def _wedge_index(num_vars: int, j: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(wedge_sets(num_vars, j))}


def wedge_sign(S: tuple[int, ...], i: int) -> int:
    """Sign of dx_i ^ dx_S against dx_{S+i}: (-1)^#{s in S : s < i}."""
    return -1 if sum(1 for s in S if s < i) % 2 else 1


@dataclass(frozen=True)
class FormSliceBasis:
    num_vars: int
    j: int
    k: int

    @property
    def monomial_degree(self) -> int:
        return self.k - self.j

    def __len__(self) -> int:
        if not 0 <= self.j <= self.num_vars:
            return 0
        return comb(self.num_vars, self.j) * dim_R(self.num_vars - 1, self.k - self.j)

    @property
    def basis(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        mons = monomials(self.num_vars, self.k - self.j)
        if not 0 <= self.j <= self.num_vars:
            return []
        return [(m, S) for S in wedge_sets(self.num_vars, self.j) for m in mons]

    def index(self, mono: tuple[int, ...], S: tuple[int, ...]) -> int:
        block = dim_R(self.num_vars - 1, self.k - self.j)
        return _wedge_index(self.num_vars, self.j)[S] * block + monomial_index(self.num_vars, self.k - self.j)[mono]


def _build_df_wedge(f: HomPoly, j: int, k: int) -> ExactMatrix:
    nv, d = f.num_vars, f.degree
    src = FormSliceBasis(nv, j, k)
    tgt = FormSliceBasis(nv, j + 1, k + d)
    if len(src) == 0 or len(tgt) == 0:
        return ExactMatrix.zeros(len(tgt), len(src))
    parts = [p.terms for p in partials(f)]
    widx = _wedge_index(nv, j + 1)
    tblock = dim_R(nv - 1, k + d - j - 1)
    tmon = monomial_index(nv, k + d - j - 1)
    entries: dict[tuple[int, int], Fraction] = {}
    col = 0
    for S in wedge_sets(nv, j):
        for m in monomials(nv, k - j):
            for i in range(nv):
                if i in S:
                    continue
                sign = wedge_sign(S, i)
                base = widx[tuple(sorted(S + (i,)))] * tblock
                for e, c in parts[i]:
                    row = base + tmon[tuple(a + b for a, b in zip(m, e))]
                    entries[(row, col)] = entries.get((row, col), 0) + sign * c
            col += 1
    return ExactMatrix(len(tgt), len(src), entries)


def _build_derham(num_vars: int, j: int, k: int) -> ExactMatrix:
    src = FormSliceBasis(num_vars, j, k)
    tgt = FormSliceBasis(num_vars, j + 1, k)
    if len(src) == 0 or len(tgt) == 0:
        return ExactMatrix.zeros(len(tgt), len(src))
    widx = _wedge_index(num_vars, j + 1)
    tblock = dim_R(num_vars - 1, k - j - 1)
    tmon = monomial_index(num_vars, k - j - 1)
    entries = {}
    col = 0
    for S in wedge_sets(num_vars, j):
        for m in monomials(num_vars, k - j):
            for i in range(num_vars):
                if i in S or not m[i]:
                    continue
                m2 = list(m)
                m2[i] -= 1
                row = widx[tuple(sorted(S + (i,)))] * tblock + tmon[tuple(m2)]
                entries[(row, col)] = wedge_sign(S, i) * m[i]
            col += 1
    return ExactMatrix(len(tgt), len(src), entries)


def koszul_matrix(f: HomPoly, j: int, k: int) -> ExactMatrix:
    """Matrix of df^ : Omega^j_k -> Omega^{j+1}_{k+d} in the slice bases."""
    if not 0 <= j <= f.num_vars:
        raise ValueError(f"form degree {j} outside [0, {f.num_vars}]")
    return complex_for(f).df_wedge(j, k)


def derham_matrix(num_vars: int, j: int, k: int) -> ExactMatrix:
    """Matrix of the exterior derivative Omega^j_k -> Omega^{j+1}_k."""
    return _derham_cached(num_vars, j, k)


@lru_cache(maxsize=256)
def _derham_cached(num_vars: int, j: int, k: int) -> ExactMatrix:
    return _build_derham(num_vars, j, k)


def default_window(n: int, d: int) -> tuple[int, int]:
    """Degrees [0, (n+1)(d-1) + 2d]: covers gamma, the stabilization of sN, and both spectra."""
    return (0, (n + 1) * (d - 1) + 2 * d)


# ---------------------------------------------------------------------------
# per-polynomial cache


def _slice_rank(args) -> int:
    f, arith, j, k = args
    return rank(_build_df_wedge(f, j, k), arith)


@dataclass
class SpectralPage:
    """Dimensions, differentials and representatives of E_r (r = 1 or 2).

    ``d_matrices[k]`` maps sN^(r)_k to M^(r)_{k-(r-1)d}; its columns follow
    ``sN_reps[k]`` and its rows follow ``M_reps[k - (r-1)d]``.  sN
    representatives live in Omega^n_k, M representatives in R_{k-n-1}.
    """

    r: int
    degree: int
    sN_dims: dict[int, int] = field(default_factory=dict)
    M_dims: dict[int, int] = field(default_factory=dict)
    d_matrices: dict[int, ExactMatrix] = field(default_factory=dict)
    sN_reps: dict[int, list[dict[int, Fraction]]] = field(default_factory=dict)
    M_reps: dict[int, list[int]] = field(default_factory=dict)


class KoszulComplex:
    """Lazily computed slices, ranks and pages of the Koszul complex of ``f``."""

    def __init__(self, f: HomPoly, arith: Arithmetic = RATIONAL_MODE):
        if f.degree < 1:
            raise ValueError("need a polynomial of positive degree")
        self.f = f
        self.arith = arith
        self.num_vars = f.num_vars
        self.n = f.num_vars - 1
        self.d = f.degree
        self._ranks: dict[tuple[int, int], int] = {}
        self._jac: dict[int, SubspaceBasis] = {}
        self._reps: dict[int, list[dict[int, Fraction]]] = {}
        self._d1: dict[int, ExactMatrix] = {}
        self._page2: dict[int, tuple] = {}

    # -- matrices ---------------------------------------------------------
    @lru_cache(maxsize=64)
    def df_wedge(self, j: int, k: int) -> ExactMatrix:
        return _build_df_wedge(self.f, j, k)

    def slice_dim(self, j: int, k: int) -> int:
        return len(FormSliceBasis(self.num_vars, j, k))

    def slice_rank(self, j: int, k: int) -> int:
        """rank of df^ : Omega^j_k -> Omega^{j+1}_{k+d}."""
        key = (j, k)
        if key not in self._ranks:
            if self.slice_dim(j, k) == 0 or self.slice_dim(j + 1, k + self.d) == 0:
                self._ranks[key] = 0
            else:
                self._ranks[key] = rank(self.df_wedge(j, k), self.arith)
        return self._ranks[key]

    def precompute(self, ks: Iterable[int], workers: int = 1) -> None:
        """Fill the rank cache for the slices behind dim_sN and dim_M over ``ks``."""
        need = []
        for k in ks:
            for key in ((self.n, k), (self.n - 1, k - self.d), (self.n, k - self.d)):
                if key not in self._ranks and key not in need:
                    need.append(key)
        if workers > 1 and len(need) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_slice_rank, [(self.f, self.arith, j, k) for j, k in need])
                for key, r in zip(need, results):
                    self._ranks[key] = r
        for j, k in need:
            self.slice_rank(j, k)

    # -- dimensions -------------------------------------------------------
    def dim_sN(self, k: int) -> int:
        n, d = self.n, self.d
        return self.slice_dim(n, k) - self.slice_rank(n, k) - self.slice_rank(n - 1, k - d)

    def dim_M(self, k: int) -> int:
        return self.slice_dim(self.n + 1, k) - self.slice_rank(self.n, k - self.d)

    def cohomology_dim(self, j: int, k: int) -> int:
        """dim H^j(K_f)_k for any j."""
        return self.slice_dim(j, k) - self.slice_rank(j, k) - self.slice_rank(j - 1, k - self.d)

    def jacobian_dim(self, e: int) -> int:
        """dim J_e from the Koszul top-degree rank."""
        return self.slice_rank(self.n, e + self.n + 1 - self.d)

    # -- exact representatives -------------------------------------------
    def jacobian_echelon(self, e: int) -> SubspaceBasis:
        """Reduced echelon basis of J_e inside R_e."""
        if e not in self._jac:
            gens = []
            for p in partials(self.f):
                if p.is_zero():
                    continue
                for m in monomials(self.num_vars, e - p.degree):
                    gens.append(_shift_vector(p, m))
            self._jac[e] = SubspaceBasis.span(dim_R(self.n, e), gens)
        return self._jac[e]

    def quotient_monomials(self, k: int) -> list[int]:
        """Indices in R_{k-n-1} of the monomials spanning M_k modulo J."""
        e = k - self.n - 1
        if e < 0:
            return []
        piv = set(self.jacobian_echelon(e).pivots)
        return [i for i in range(dim_R(self.n, e)) if i not in piv]

    def M_coordinates(self, k: int, v: Mapping[int, object]) -> list[Fraction]:
        """Coordinates of the class of a top form v in Omega^{n+1}_k = R_{k-n-1} in M_k."""
        e = k - self.n - 1
        if e < 0:
            return []
        res = self.jacobian_echelon(e).reduce(v)
        return [res.get(i, Fraction(0)) for i in self.quotient_monomials(k)]

    def sN_representatives(self, k: int) -> list[dict[int, Fraction]]:
        """Kernel vectors of df^ on Omega^n_k vanishing on the pivots of the image.

        The image of Omega^{n-1}_{k-d} is put in echelon form; every class in
        sN_k has exactly one representative supported off its pivot columns.
        """
        if k in self._reps:
            return self._reps[k]
        n, d = self.n, self.d
        expected = self.dim_sN(k)
        if expected == 0:
            self._reps[k] = []
            return []
        image_rows = self.df_wedge(n - 1, k - d).col_dicts() if self.slice_dim(n - 1, k - d) else []
        blocked = set(pivot_profile([c for c in image_rows if c], self.arith,
                                    expected_rank=self.slice_rank(n - 1, k - d)))
        A = self.df_wedge(n, k)
        keep = [c for c in range(A.cols) if c not in blocked]
        pos = {c: i for i, c in enumerate(keep)}
        sub = ExactMatrix(A.rows, len(keep),
                          {(i, pos[j]): v for (i, j), v in A.entries.items() if j in pos})
        ker = kernel_basis(sub)
        if ker.dim != expected:
            raise KoszulError(f"sN_{k}: found {ker.dim} representatives, expected {expected}")
        reps = [{keep[j]: x for j, x in row} for row in ker.rows]
        self._reps[k] = reps
        return reps

    def d1_matrix(self, k: int) -> ExactMatrix:
        if k not in self._d1:
            reps = self.sN_representatives(k)
            dmat = derham_matrix(self.num_vars, self.n, k)
            qdim = len(self.quotient_monomials(k))
            cols = []
            for w in reps:
                dw = _apply(dmat, w)
                coords = self.M_coordinates(k, dw)
                cols.append({i: x for i, x in enumerate(coords) if x})
            self._d1[k] = ExactMatrix.from_columns(qdim, cols)
        return self._d1[k]

    # -- second page -------------------------------------------------------
    def _page2_data(self, k: int):
        """(sN2 representatives in Omega^n_k, image of d1 in M_k coords, M2 coordinate positions)."""
        if k not in self._page2:
            D = self.d1_matrix(k)
            reps = self.sN_representatives(k)
            ker = kernel_basis(D) if D.cols else SubspaceBasis.zero(0)
            sn2 = []
            for row in ker.rows:
                w: dict[int, Fraction] = {}
                for i, c in row:
                    for j, x in reps[i].items():
                        y = w.get(j, 0) + c * x
                        if y:
                            w[j] = y
                        else:
                            w.pop(j, None)
                sn2.append(w)
            img = image_basis(D)
            piv = set(img.pivots)
            free = [i for i in range(D.rows) if i not in piv]
            self._page2[k] = (sn2, img, free)
        return self._page2[k]

    def dim_sN2(self, k: int) -> int:
        if self.dim_sN(k) == 0:
            return 0
        return len(self._page2_data(k)[0])

    def dim_M2(self, k: int) -> int:
        if self.dim_sN(k) == 0:
            return self.dim_M(k)
        return len(self._page2_data(k)[2])

    def M2_coordinates(self, k: int, v: Mapping[int, object]) -> list[Fraction]:
        coords = self.M_coordinates(k, v)
        if self.dim_sN(k) == 0:
            return coords
        _, img, free = self._page2_data(k)
        res = img.reduce(coords)
        return [res.get(i, Fraction(0)) for i in free]

    def lift(self, k: int, w: Mapping[int, Fraction], reverse: bool = False) -> list[Fraction]:
        """eta in Omega^n_{k-d} with df^eta = dw, for w in Omega^n_k."""
        dw = _apply(derham_matrix(self.num_vars, self.n, k), w)
        A = self.df_wedge(self.n, k - self.d)
        rhs = [Fraction(0)] * A.rows
        for i, x in dw.items():
            rhs[i] = x
        eta = solve_particular(A, rhs, reverse=reverse)
        if eta is None:
            raise LiftFailed(f"d w is not in df^Omega^{self.n}_{k - self.d} (k = {k})")
        return eta

    def d2_matrix(self, k: int, reverse: bool = False) -> ExactMatrix:
        """Matrix of d2 : sN2_k -> M2_{k-d}."""
        tk = k - self.d
        rows = self.dim_M2(tk)
        if self.dim_sN(k) == 0:
            return ExactMatrix.zeros(rows, 0)
        sn2 = self._page2_data(k)[0]
        if rows == 0 or not sn2:
            return ExactMatrix.zeros(rows, len(sn2))
        dmat = derham_matrix(self.num_vars, self.n, tk)
        cols = []
        for w in sn2:
            eta = self.lift(k, w, reverse=reverse)
            d_eta = _apply(dmat, {i: x for i, x in enumerate(eta) if x})
            coords = self.M2_coordinates(tk, d_eta)
            cols.append({i: x for i, x in enumerate(coords) if x})
        return ExactMatrix.from_columns(rows, cols)

    def page(self, r: int, ks: Iterable[int]) -> SpectralPage:
        if r not in (1, 2):
            raise ValueError("only pages 1 and 2 are computed")
        ks = list(ks)
        pg = SpectralPage(r=r, degree=self.d)
        for k in ks:
            if r == 1:
                pg.sN_dims[k] = self.dim_sN(k)
                pg.M_dims[k] = self.dim_M(k)
                pg.sN_reps[k] = self.sN_representatives(k)
                pg.d_matrices[k] = self.d1_matrix(k)
                pg.M_reps[k] = self.quotient_monomials(k)
            else:
                pg.sN_dims[k] = self.dim_sN2(k)
                pg.M_dims[k] = self.dim_M2(k)
                if self.dim_sN(k):
                    sn2, _, free = self._page2_data(k)
                    q = self.quotient_monomials(k)
                    pg.sN_reps[k] = sn2
                    pg.M_reps[k] = [q[i] for i in free]
                else:
                    pg.sN_reps[k] = []
                    pg.M_reps[k] = self.quotient_monomials(k)
                pg.d_matrices[k] = self.d2_matrix(k)
        return pg

    def mprime_dims(self, k: int, I_slice: SubspaceBasis) -> tuple[int, int]:
        """(dim M'_k, dim M''_k) given the slice I_{k-n-1} of the ideal of the nodes."""
        e = k - self.n - 1
        if e < 0:
            return (0, 0)
        if I_slice.ambient_dim != dim_R(self.n, e):
            raise InconsistentSlice(f"I slice lives in dimension {I_slice.ambient_dim}, need R_{e}")
        for p in partials(self.f):
            if p.is_zero():
                continue
            for m in monomials(self.num_vars, e - p.degree):
                if not I_slice.contains(_shift_vector(p, m)):
                    raise InconsistentSlice(f"J_{e} is not contained in the supplied slice of I")
        m2 = dim_R(self.n, e) - I_slice.dim
        return (self.dim_M(k) - m2, m2)


def _shift_vector(p: HomPoly, m: tuple[int, ...]) -> dict[int, Fraction]:
    idx = monomial_index(p.num_vars, p.degree + sum(m))
    return {idx[tuple(a + b for a, b in zip(e, m))]: c for e, c in p.terms}


def _apply(m: ExactMatrix, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
    cols = m.col_dicts()
    out: dict[int, Fraction] = {}
    for j, x in v.items():
        for i, a in cols[j].items():
            out[i] = out.get(i, 0) + a * x
    return {i: x for i, x in out.items() if x}


@lru_cache(maxsize=16)
def complex_for(f: HomPoly, arith: Arithmetic = RATIONAL_MODE) -> KoszulComplex:
    return KoszulComplex(f, arith)


# ---------------------------------------------------------------------------
# functional surface


def dim_sN(f: HomPoly, k: int, arith: Arithmetic = RATIONAL_MODE) -> int:
    return complex_for(f, arith).dim_sN(k)


def dim_M(f: HomPoly, k: int, arith: Arithmetic = RATIONAL_MODE) -> int:
    return complex_for(f, arith).dim_M(k)


def check_M_is_RmodJ(f: HomPoly, k: int, arith: Arithmetic = RATIONAL_MODE) -> bool:
    """dim M_k == dim (R/J)_{k-n-1}, the right side from products df/dx_i * monomial."""
    n = f.num_vars - 1
    e = k - n - 1
    gens = []
    for p in partials(f):
        for m in monomials(f.num_vars, e - p.degree):
            mono = HomPoly(f.num_vars, sum(m), ((m, 1),))
            g = multiply(p, mono)
            if not g.is_zero():
                gens.append(g.vector())
    rhs = dim_R(n, e) - rank_of_rows(gens, arith)
    return dim_M(f, k, arith) == rhs


def d1_matrix(f: HomPoly, k: int, arith: Arithmetic = RATIONAL_MODE) -> ExactMatrix:
    return complex_for(f, arith).d1_matrix(k)


def d2_matrix(f: HomPoly, k: int, arith: Arithmetic = RATIONAL_MODE) -> ExactMatrix:
    return complex_for(f, arith).d2_matrix(k)


def page(f: HomPoly, r: int, ks: Iterable[int] | None = None,
         arith: Arithmetic = RATIONAL_MODE) -> SpectralPage:
    if ks is None:
        lo, hi = default_window(f.num_vars - 1, f.degree)
        ks = range(lo, hi + 1)
    return complex_for(f, arith).page(r, ks)


def mprime_dims(f: HomPoly, k: int, I_slice: SubspaceBasis,
                arith: Arithmetic = RATIONAL_MODE) -> tuple[int, int]:
    return complex_for(f, arith).mprime_dims(k, I_slice)
