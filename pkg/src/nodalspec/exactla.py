"""Exact linear algebra over the rationals and prime fields.

Matrices are sparse and immutable.  Rational elimination is fraction free:
every row is scaled to a primitive integer vector and combined with integer
multipliers, dividing out the row content after each step.  The modular path
runs the same elimination over F_p for several random primes in (2^30, 2^31)
and only reports a rank once the largest value has been seen on ``primes``
distinct primes.

Small or sparse problems stay in pure Python.  When fraction-free entries
outgrow ``GROWTH_BITS`` the rational elimination is redone densely in FLINT,
and large modular slices run a compiled dense elimination.  Large kernels are
solved exactly on pivots found mod p and then verified, so the choice of engine
never changes a result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import flint
import gmpy2
import numba
import numpy as np

RATIONAL = 0

Row = dict  # column index -> int

# entry size (bits) at which sparse fraction-free elimination gives up
GROWTH_BITS = 512
# rows*cols above which modular elimination runs dense and compiled
DENSE_MODP_CELLS = 4000
# rows*cols above which kernels come from a prime-guided exact solve
GUIDED_CELLS = 40000
GUIDE_PRIMES = 4


class ExactLAError(Exception):
    pass


class ModularUncertified(ExactLAError):
    """Modular ranks did not agree within the prime budget."""


class AmbientMismatch(ExactLAError):
    pass


class _Growth(Exception):
    """Entries outgrew the sparse elimination budget."""


@dataclass(frozen=True)
class Arithmetic:
    """How ranks are computed: ``rational`` (exact) or ``modular`` (certified)."""

    mode: str = "rational"
    primes: int = 3
    max_primes: int | None = None
    seed: int = 20140513

    def __post_init__(self):
        if self.mode not in ("rational", "modular"):
            raise ValueError(f"unknown arithmetic mode {self.mode!r}")
        if self.primes < 1:
            raise ValueError("need at least one prime")

    @property
    def budget(self) -> int:
        return self.max_primes if self.max_primes is not None else 3 * self.primes


RATIONAL_MODE = Arithmetic()


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], object] = field(default_factory=dict)
    field: int = RATIONAL

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        clean = {}
        p = self.field
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = int(v) % p if p else Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", MappingProxyType(clean))

    __hash__ = None

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: int = RATIONAL) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(rows, cols, entries, field)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]],
                     field: int = RATIONAL) -> "ExactMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, len(columns), entries, field)

    @classmethod
    def identity(cls, n: int, field: int = RATIONAL) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: int = RATIONAL) -> "ExactMatrix":
        return cls(rows, cols, {}, field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           {(j, i): v for (i, j), v in self.entries.items()}, self.field)

    def row_dicts(self) -> list[dict]:
        out = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def to_dense(self) -> list[list]:
        zero = 0 if self.field else Fraction(0)
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def matvec(self, x: Sequence) -> list:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        zero = 0 if self.field else Fraction(0)
        out = [zero] * self.rows
        for (i, j), v in self.entries.items():
            if x[j]:
                out[i] += v * x[j]
        if self.field:
            out = [v % self.field for v in out]
        return out

    def __repr__(self):
        tag = f"F_{self.field}" if self.field else "QQ"
        return f"ExactMatrix({self.rows}x{self.cols} over {tag}, nnz={len(self.entries)})"


# ---------------------------------------------------------------------------
# integer row kernels


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def integer_row(values: Mapping[int, object]) -> dict:
    """Scale a sparse rational row to a primitive integer row (same span)."""
    den = 1
    for v in values.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for k, v in values.items():
        if v:
            out[k] = int(v * den)
    return _primitive(out)


def _markowitz_order(rows: list[dict]) -> list[dict]:
    # sparsest rows first, ties broken by original index
    order = sorted(range(len(rows)), key=lambda i: (len(rows[i]), i))
    return [rows[i] for i in order]


def ff_echelon(rows: Iterable[dict], growth_bits: int | None = None) -> dict[int, dict]:
    """Fraction-free row echelon form; returns ``{pivot column: primitive row}``.

    Each stored row is zero left of its pivot column.  With ``growth_bits``
    set, raises ``_Growth`` once a leading entry gets that large.
    """
    pivots: dict[int, dict] = {}
    for v in _markowitz_order([r for r in rows if r]):
        v = dict(v)
        while v:
            c = min(v)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(v)
                break
            a, b = p[c], v[c]
            if growth_bits and (abs(a).bit_length() > growth_bits or abs(b).bit_length() > growth_bits):
                raise _Growth
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                v = {k: a * x for k, x in v.items()}
            for k, x in p.items():
                y = v.get(k, 0) - b * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            v = _primitive(v)
    return pivots


def modp_echelon(rows: Iterable[dict], p: int) -> dict[int, dict]:
    """Row echelon form over F_p with monic pivot rows."""
    pivots: dict[int, dict] = {}
    reduced = []
    for r in rows:
        r = {k: x % p for k, x in r.items() if x % p}
        if r:
            reduced.append(r)
    for v in _markowitz_order(reduced):
        while v:
            c = min(v)
            pr = pivots.get(c)
            if pr is None:
                inv = pow(v[c], -1, p)
                pivots[c] = {k: x * inv % p for k, x in v.items()}
                break
            b = v[c]
            for k, x in pr.items():
                y = (v.get(k, 0) - b * x) % p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return pivots


def reduce_echelon(pivots: dict[int, dict]) -> dict[int, dict[int, Fraction]]:
    """Turn a fraction-free echelon form into the reduced echelon form.

    Leading entries become 1 and every pivot column is cleared in all other
    rows.  The result depends only on the row space.
    """
    done: dict[int, dict] = {}
    for c in sorted(pivots, reverse=True):
        r = pivots[c]
        hits = [k for k in r if k != c and k in done]
        if hits:
            r = dict(r)
            for k in hits:
                b = r.get(k)
                if not b:
                    continue
                q = done[k]
                a = q[k]
                g = gcd(a, b)
                a //= g
                b //= g
                if a != 1:
                    r = {kk: a * x for kk, x in r.items()}
                for kk, x in q.items():
                    y = r.get(kk, 0) - b * x
                    if y:
                        r[kk] = y
                    else:
                        r.pop(kk, None)
            r = _primitive(r)
        done[c] = r
    out = {}
    for c in sorted(done):
        r = done[c]
        lead = r[c]
        out[c] = {k: Fraction(x, lead) for k, x in sorted(r.items())}
    return out


def _ncols(int_rows: list[dict]) -> int:
    return 1 + max(max(r) for r in int_rows)


def _dense(int_rows: list[dict], ncols: int) -> list[list[int]]:
    out = []
    for r in int_rows:
        row = [0] * ncols
        for j, x in r.items():
            row[j] = x
        out.append(row)
    return out


def _flint_rref(int_rows: list[dict]) -> dict[int, dict[int, Fraction]]:
    ncols = _ncols(int_rows)
    b, den, r = flint.fmpz_mat(_dense(int_rows, ncols)).rref()
    den = int(den)
    flat = [int(x) for x in b.entries()]
    out = {}
    for i in range(r):
        row = {j: x for j, x in enumerate(flat[i * ncols:(i + 1) * ncols]) if x}
        out[min(row)] = {j: Fraction(x, den) for j, x in row.items()}
    return out


def exact_rref(int_rows: list[dict]) -> dict[int, dict[int, Fraction]]:
    """Reduced echelon form ``{pivot: row}`` of integer rows over Q."""
    int_rows = [r for r in int_rows if r]
    if not int_rows:
        return {}
    try:
        return reduce_echelon(ff_echelon(int_rows, GROWTH_BITS))
    except _Growth:
        return _flint_rref(int_rows)


def exact_rank(int_rows: list[dict]) -> int:
    int_rows = [r for r in int_rows if r]
    if not int_rows:
        return 0
    try:
        return len(ff_echelon(int_rows, GROWTH_BITS))
    except _Growth:
        return flint.fmpz_mat(_dense(int_rows, _ncols(int_rows))).rank()


def exact_pivots(int_rows: list[dict]) -> list[int]:
    int_rows = [r for r in int_rows if r]
    if not int_rows:
        return []
    try:
        return sorted(ff_echelon(int_rows, GROWTH_BITS))
    except _Growth:
        return sorted(_flint_rref(int_rows))


@numba.njit(cache=True)
def _dense_echelon_mod(M, p, pivcols, pivrows):
    """In-place row echelon form of an int64 matrix over F_p.

    Fills the pivot columns and the original indices of the pivot rows and
    returns the rank.  Entries must already lie in [0, p) with p < 2^31.
    """
    m, n = M.shape
    perm = np.arange(m)
    support = np.empty(n, dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
            t = perm[r]
            perm[r] = perm[piv]
            perm[piv] = t
        inv = 1
        b = M[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        nz = 0
        for j in range(c, n):
            if M[r, j] != 0:
                M[r, j] = M[r, j] * inv % p
                support[nz] = j
                nz += 1
        for i in range(r + 1, m):
            f = M[i, c]
            if f != 0:
                for t in range(nz):
                    j = support[t]
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
        pivcols[r] = c
        pivrows[r] = perm[r]
        r += 1
    return r


class IntRows:
    """Integer rows with lazily built dense copies shared by all primes."""

    def __init__(self, int_rows: list[dict], ncols: int | None = None):
        self.rows = [r for r in int_rows if r]
        self.ncols = ncols if ncols is not None else (_ncols(self.rows) if self.rows else 0)

    @cached_property
    def dense(self) -> list[list[int]]:
        return _dense(self.rows, self.ncols)

    @cached_property
    def fmpz(self):
        return flint.fmpz_mat(self.dense)

    @property
    def cells(self) -> int:
        return len(self.rows) * self.ncols

    def small(self) -> bool:
        return self.cells < DENSE_MODP_CELLS

    def echelon_mod(self, p: int) -> tuple[list[int], list[int]]:
        """(pivot columns, independent original rows) over F_p."""
        M = np.zeros((len(self.rows), self.ncols), dtype=np.int64)
        for i, r in enumerate(self.rows):
            for k, x in r.items():
                M[i, k] = x % p
        size = min(M.shape)
        pivcols = np.zeros(size, dtype=np.int64)
        pivrows = np.zeros(size, dtype=np.int64)
        r = _dense_echelon_mod(M, p, pivcols, pivrows)
        return pivcols[:r].tolist(), pivrows[:r].tolist()


def modp_pivots(rows: list[dict] | IntRows, p: int) -> list[int]:
    """Pivot columns of the span over F_p (the reduced echelon pivots)."""
    m = rows if isinstance(rows, IntRows) else IntRows(rows)
    if not m.rows:
        return []
    if m.small():
        return sorted(modp_echelon(m.rows, p))
    return m.echelon_mod(p)[0]


def modp_rank(rows: list[dict] | IntRows, p: int) -> int:
    m = rows if isinstance(rows, IntRows) else IntRows(rows)
    if not m.rows:
        return 0
    if m.small():
        return len(modp_echelon(m.rows, p))
    return len(m.echelon_mod(p)[0])


# ---------------------------------------------------------------------------
# multi-modular rank


_PRIME_LO = 2**30
_PRIME_HI = 2**31


def random_primes(count: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = int(gmpy2.next_prime(rng.randrange(_PRIME_LO, _PRIME_HI)))
        if p < _PRIME_HI and p not in out:
            out.append(p)
    return out


def _modular_rank(int_rows: list[dict], arith: Arithmetic, want_profile: bool = False) -> tuple[int, list[int]]:
    """Certified rank of an integer row set; returns (rank, pivot profile)."""
    seen: dict[int, int] = {}
    best = -1
    profile: list[int] = []
    m = IntRows(int_rows)
    for p in random_primes(arith.budget, arith.seed):
        if want_profile:
            piv = modp_pivots(m, p)
            r = len(piv)
        else:
            piv, r = [], modp_rank(m, p)
        seen[r] = seen.get(r, 0) + 1
        if r > best:
            best, profile = r, piv
        if seen.get(best, 0) >= arith.primes:
            return best, profile
    raise ModularUncertified(
        f"ranks {sorted(seen.items())} did not reach {arith.primes} agreeing primes "
        f"within {arith.budget}; increase the prime budget or use rational mode"
    )


def rank_of_rows(rows: Iterable[Mapping[int, object]], arith: Arithmetic = RATIONAL_MODE) -> int:
    """Rank of the span of sparse rational rows."""
    int_rows = [integer_row(r) for r in rows]
    int_rows = [r for r in int_rows if r]
    if not int_rows:
        return 0
    if arith.mode == "modular":
        return _modular_rank(int_rows, arith)[0]
    return exact_rank(int_rows)


def pivot_profile(rows: Iterable[Mapping[int, object]], arith: Arithmetic = RATIONAL_MODE,
                  expected_rank: int | None = None) -> list[int]:
    """Pivot columns of a row echelon form of the span, in increasing order.

    The span restricted to these coordinates has full rank.  When the exact
    rank is known, large inputs take the pivots found modulo a prime: a
    maximal minor that is nonzero mod p is nonzero over Q, so a prime giving
    ``expected_rank`` pivots yields a valid profile.
    """
    int_rows = [r for r in (integer_row(r) for r in rows) if r]
    if not int_rows:
        return []
    m = IntRows(int_rows)
    if expected_rank is not None and m.cells >= GUIDED_CELLS:
        for p in random_primes(GUIDE_PRIMES, arith.seed):
            piv = modp_pivots(m, p)
            if len(piv) == expected_rank:
                return piv
    if arith.mode == "modular":
        return _modular_rank(int_rows, arith, want_profile=True)[1]
    return exact_pivots(int_rows)


def _matrix_int_rows(m: ExactMatrix) -> list[dict]:
    return [integer_row(r) for r in m.row_dicts() if r]


def rank(m: ExactMatrix, arith: Arithmetic = RATIONAL_MODE) -> int:
    """Rank of ``m`` over its field (certified multi-modular when requested)."""
    if m.field:
        return modp_rank([r for r in m.row_dicts() if r], m.field)
    int_rows = _matrix_int_rows(m)
    if not int_rows:
        return 0
    if arith.mode == "modular":
        # fewer rows than columns keeps elimination short
        if m.cols < m.rows:
            int_rows = _matrix_int_rows(m.transpose())
        return _modular_rank(int_rows, arith)[0]
    return exact_rank(int_rows)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim stored as its reduced echelon basis.

    Rows are sparse ``(column, value)`` tuples with leading entry 1, so two
    values describe the same subspace exactly when they compare equal.
    """

    ambient_dim: int
    rows: tuple[tuple[tuple[int, Fraction], ...], ...] = ()

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable) -> "SubspaceBasis":
        sparse = []
        for v in vectors:
            if isinstance(v, Mapping):
                items = v
            else:
                if len(v) != ambient_dim:
                    raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
                items = {j: x for j, x in enumerate(v) if x}
            for j in items:
                if not 0 <= j < ambient_dim:
                    raise IndexError(f"coordinate {j} outside ambient {ambient_dim}")
            r = integer_row(items)
            if r:
                sparse.append(r)
        return cls._from_int_rows(ambient_dim, sparse)

    @classmethod
    def _from_int_rows(cls, ambient_dim: int, int_rows: list[dict]) -> "SubspaceBasis":
        red = exact_rref(int_rows)
        return cls(ambient_dim, tuple(tuple(red[c].items()) for c in sorted(red)))

    @classmethod
    def full(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, tuple(((i, Fraction(1)),) for i in range(ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return [r[0][0] for r in self.rows]

    @property
    def vectors(self) -> list[list[Fraction]]:
        out = []
        for r in self.rows:
            v = [Fraction(0)] * self.ambient_dim
            for j, x in r:
                v[j] = x
            out.append(v)
        return out

    def sparse_vectors(self) -> list[dict[int, Fraction]]:
        return [dict(r) for r in self.rows]

    @cached_property
    def _by_pivot(self) -> dict[int, tuple[tuple[int, Fraction], ...]]:
        return {r[0][0]: r for r in self.rows}

    def reduce(self, v: Mapping[int, object] | Sequence) -> dict[int, Fraction]:
        """Residual of ``v`` after clearing every pivot column of this basis.

        The residual is supported on non-pivot columns only.
        """
        if not isinstance(v, Mapping):
            v = {j: x for j, x in enumerate(v) if x}
        w = {j: Fraction(x) for j, x in v.items() if x}
        by_pivot = self._by_pivot
        # reduced rows vanish on the other pivots, so one pass suffices
        for c in [c for c in w if c in by_pivot]:
            b = w.get(c)
            if b:
                for j, x in by_pivot[c]:
                    y = w.get(j, 0) - b * x
                    if y:
                        w[j] = y
                    else:
                        w.pop(j, None)
        return w

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        _check_ambient(self, other)
        return SubspaceBasis.span(self.ambient_dim, self.sparse_vectors() + other.sparse_vectors())


def _check_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def kernel_basis(m: ExactMatrix, arith: Arithmetic = RATIONAL_MODE) -> SubspaceBasis:
    """Reduced echelon basis of the null space of ``m``.

    In modular mode the rank is probed modularly first and the kernel is then
    computed rationally; the two must agree.
    """
    if m.field:
        raise ExactLAError("kernel_basis works over the rationals")
    probe = rank(m, arith) if arith.mode == "modular" else None
    ints = IntRows(_matrix_int_rows(m), m.cols)
    if ints.cells >= GUIDED_CELLS:
        vecs = _guided_kernel(ints, arith.seed)
        if vecs is not None:
            if probe is not None and probe != m.cols - len(vecs):
                raise ModularUncertified(f"modular rank {probe} differs from rational rank {m.cols - len(vecs)}")
            return SubspaceBasis.span(m.cols, vecs)
    red = exact_rref(ints.rows)
    if probe is not None and probe != len(red):
        raise ModularUncertified(f"modular rank {probe} differs from rational rank {len(red)}")
    pivot_set = set(red)
    vecs = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        v = {j: Fraction(1)}
        for c, r in red.items():
            x = r.get(j)
            if x:
                v[c] = -x
        vecs.append(v)
    return SubspaceBasis.span(m.cols, vecs)


def _guided_kernel(m: IntRows, seed: int) -> list[dict[int, Fraction]] | None:
    """Null space from pivots found mod p, solved and verified over Q.

    Take the column pivots P and an independent row set S mod p; the square
    block M[S, P] is then invertible over Q.  Solving it for every free column
    gives candidate kernel vectors, one per free column, which are accepted
    only if M times them is exactly zero.  Returns None if no prime works.
    """
    ncols = m.ncols
    if not m.rows:
        return [{j: Fraction(1)} for j in range(ncols)]
    dense = m.dense
    for p in random_primes(GUIDE_PRIMES, seed):
        piv, rsel = m.echelon_mod(p)
        pset = set(piv)
        free = [j for j in range(ncols) if j not in pset]
        if not free:
            return []
        A = flint.fmpq_mat(flint.fmpz_mat([[dense[i][c] for c in piv] for i in rsel]))
        B = flint.fmpq_mat(flint.fmpz_mat([[-dense[i][c] for c in free] for i in rsel]))
        X = A.solve(B, algorithm="dixon")
        den = 1
        for i in range(len(piv)):
            for t in range(len(free)):
                den = lcm(den, int(X[i, t].q))
        K = flint.fmpz_mat(ncols, len(free))
        for t, j in enumerate(free):
            K[j, t] = den
            for i, c in enumerate(piv):
                x = X[i, t]
                if x != 0:
                    K[c, t] = int(x.p) * (den // int(x.q))
        if (m.fmpz * K).is_zero():
            vecs = []
            for t, j in enumerate(free):
                v = {j: Fraction(1)}
                for i, c in enumerate(piv):
                    x = X[i, t]
                    if x != 0:
                        v[c] = Fraction(int(x.p), int(x.q))
                vecs.append(v)
            return vecs
    return None


def image_basis(m: ExactMatrix) -> SubspaceBasis:
    """Reduced echelon basis of the column space of ``m``."""
    return SubspaceBasis.span(m.rows, [c for c in m.col_dicts() if c])


def intersection_dim(a: SubspaceBasis, b: SubspaceBasis, arith: Arithmetic = RATIONAL_MODE) -> int:
    """dim(a ∩ b) = dim a + dim b - dim(a + b)."""
    _check_ambient(a, b)
    return a.dim + b.dim - rank_of_rows(a.sparse_vectors() + b.sparse_vectors(), arith)


def solve_particular(m: ExactMatrix, rhs: Sequence, reverse: bool = False) -> list[Fraction] | None:
    """Some ``x`` with ``m x = rhs``, or ``None`` when ``rhs`` is not in the image.

    Free variables are set to zero.  ``reverse`` eliminates with the column
    order reversed, which selects a different particular solution.
    """
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    n = m.cols
    perm = (lambda j: n - 1 - j) if reverse else (lambda j: j)
    rows = m.row_dicts()
    aug = []
    for i in range(m.rows):
        r = {perm(j): x for j, x in rows[i].items()}
        if rhs[i]:
            r[n] = Fraction(rhs[i])
        if r:
            aug.append(integer_row(r))
    red = exact_rref(aug)
    if n in red:
        return None
    x = [Fraction(0)] * n
    for c, r in red.items():
        x[perm(c)] = r.get(n, Fraction(0))
    return x
