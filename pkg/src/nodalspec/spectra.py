"""Steenbrink and pole order spectra of a nodal hypersurface and the checks that tie
them to the Koszul cohomology.

A spectrum is kept in integer units: ``mult[k]`` is the coefficient of
t^(k/d).  Every comparison below is therefore exact integer arithmetic, and the
interval tests "k/d <= n/2" and friends are written as comparisons of 2k with nd.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .exactla import SubspaceBasis, image_basis, intersection_dim
from .koszul import KoszulComplex


class ConditionAViolated(Exception):
    """A closed formula was requested without a node certificate."""


class DegenerationFailed(Exception):
    """Some second differential is nonzero."""


# ---------------------------------------------------------------------------
# Spectrum values


@dataclass(frozen=True)
class Spectrum:
    """Finitely supported integer multiplicities of t^(k/denom)."""

    denom: int
    mult: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.denom < 1:
            raise ValueError("denominator must be positive")
        clean: dict[int, int] = {}
        for k, m in self.mult:
            clean[int(k)] = clean.get(int(k), 0) + int(m)
        object.__setattr__(self, "mult", tuple(sorted((k, m) for k, m in clean.items() if m)))

    @classmethod
    def from_dict(cls, denom: int, mult: Mapping[int, int]) -> "Spectrum":
        return cls(denom, tuple(mult.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mult)

    def __getitem__(self, k: int) -> int:
        return self.as_dict().get(k, 0)

    def support(self) -> list[int]:
        return [k for k, _ in self.mult]

    def _check(self, other: "Spectrum") -> None:
        if self.denom != other.denom:
            raise ValueError(f"spectra with denominators {self.denom} and {other.denom}")

    def __add__(self, other: "Spectrum") -> "Spectrum":
        self._check(other)
        return Spectrum(self.denom, self.mult + other.mult)

    def __neg__(self) -> "Spectrum":
        return Spectrum(self.denom, tuple((k, -m) for k, m in self.mult))

    def __sub__(self, other: "Spectrum") -> "Spectrum":
        return self + (-other)

    def total(self) -> int:
        return sum(m for _, m in self.mult)

    def exponents(self) -> dict[Fraction, int]:
        return {Fraction(k, self.denom): m for k, m in self.mult}

    def lines(self) -> str:
        """Canonical ``k/d: multiplicity`` lines sorted by k."""
        return "".join(f"{k}/{self.denom}: {m}\n" for k, m in self.mult)

    @classmethod
    def parse_lines(cls, text: str) -> "Spectrum":
        denom = None
        mult = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            frac, m = line.split(":")
            k, dd = frac.split("/")
            if denom is None:
                denom = int(dd)
            elif denom != int(dd):
                raise ValueError("mixed denominators")
            mult.append((int(k), int(m)))
        return cls(denom or 1, tuple(mult))


# ---------------------------------------------------------------------------
# formulas


def gamma_coeffs(n: int, d: int) -> dict[int, int]:
    """Coefficients of (t + ... + t^(d-1))^(n+1)."""
    poly = {0: 1}
    for _ in range(n + 1):
        nxt: dict[int, int] = {}
        for a, c in poly.items():
            for b in range(1, d):
                nxt[a + b] = nxt.get(a + b, 0) + c
        poly = nxt
    return {k: c for k, c in sorted(poly.items()) if c}


def _sv(sn: Mapping[int, int], k: int) -> int:
    return 0 if k < 0 else sn[k]


def _window_top(sn: Mapping[int, int]) -> int:
    return max(sn)


def _require(cert) -> None:
    if cert is None:
        raise ConditionAViolated("closed formulas need a certificate of condition (A)")


def pole_spectrum_closed_form(n: int, d: int, sn: Mapping[int, int], cert) -> Spectrum:
    """Pole order spectrum from gamma and the dimensions of sN.

    gamma_k below the middle, gamma_k - sN_k on (n/2, n/2+1], and
    gamma_k - (sN_k - sN_{k-d}) beyond.
    """
    _require(cert)
    gam = gamma_coeffs(n, d)
    top = _window_top(sn)
    out = {}
    for k in range(1, top + 1):
        g = gam.get(k, 0)
        if 2 * k <= n * d:
            out[k] = g
        elif 2 * k <= n * d + 2 * d:
            out[k] = g - _sv(sn, k)
        else:
            out[k] = g - (_sv(sn, k) - _sv(sn, k - d))
    if gam.get(top, 0) or (2 * top > n * d + 2 * d and _sv(sn, top) != _sv(sn, top - d)):
        raise ValueError(f"degree window ending at {top} does not reach the stable range")
    return Spectrum.from_dict(d, out)


def pole_spectrum_from_page(page2, d: int) -> Spectrum:
    """dim M2_k - dim sN2_{k-d} read off a second page; its d2 must vanish."""
    if page2.r != 2:
        raise ValueError("need the second page")
    bad = [k for k, m in page2.d_matrices.items() if not m.is_zero()]
    if bad:
        raise DegenerationFailed(f"d2 is nonzero in degrees {bad}")
    out = {}
    for k in sorted(page2.M_dims):
        if k < 1:
            continue
        prev = k - d
        if prev >= 0 and prev not in page2.sN_dims:
            raise ValueError(f"page is missing degree {prev}")
        out[k] = page2.M_dims[k] - (page2.sN_dims[prev] if prev >= 0 else 0)
    return Spectrum.from_dict(d, out)


def steenbrink_spectrum_closed_form(n: int, d: int, tau: int, cert, top: int | None = None) -> Spectrum:
    """gamma_k, lowered by tau on the window n/2 < k/d <= n/2 + 1."""
    _require(cert)
    gam = gamma_coeffs(n, d)
    top = top if top is not None else (n + 1) * d
    out = {}
    for k in range(1, top + 1):
        g = gam.get(k, 0)
        out[k] = g - tau if n * d < 2 * k <= n * d + 2 * d else g
    return Spectrum.from_dict(d, out)


@dataclass(frozen=True)
class RefinedSpectra:
    sp0: Spectrum
    sp1: Spectrum
    sp_pole0: Spectrum
    sp_pole1: Spectrum


def refined_spectra(n: int, d: int, sn: Mapping[int, int], sp: Spectrum, sp_pole: Spectrum, cert) -> RefinedSpectra:
    """Sp^1 = Sp_P^1 = dim sN_{nd/2} t^(n/2+1) when nd is even, else 0."""
    _require(cert)
    if n * d % 2 == 0:
        mid = n * d // 2
        one = Spectrum.from_dict(d, {mid + d: _sv(sn, mid)})
    else:
        one = Spectrum(d)
    return RefinedSpectra(sp + one, one, sp_pole + one, one)


# ---------------------------------------------------------------------------
# the full set of numbers for one hypersurface


@dataclass
class SpectralData:
    """Everything the report and the checks read, over degrees [0, kmax]."""

    n: int
    d: int
    tau: int
    kmax: int
    gamma: dict[int, int]
    mu: dict[int, int]
    sn: dict[int, int]
    mu2: dict[int, int]
    sn2: dict[int, int]
    sp_pole: Spectrum
    sp_pole_page: Spectrum
    sp: Spectrum
    refined: RefinedSpectra
    d2_zero: dict[int, bool] = field(default_factory=dict)


def collect(K: KoszulComplex, cert, kmax: int, workers: int = 1) -> SpectralData:
    n, d = K.n, K.d
    ks = range(0, kmax + 1)
    K.precompute(ks, workers)
    mu = {k: K.dim_M(k) for k in ks}
    sn = {k: K.dim_sN(k) for k in ks}
    pg = K.page(2, ks)
    sp_pole = pole_spectrum_closed_form(n, d, sn, cert)
    sp_page = pole_spectrum_from_page(pg, d)
    sp = steenbrink_spectrum_closed_form(n, d, cert.tau, cert, top=kmax)
    return SpectralData(
        n=n, d=d, tau=cert.tau, kmax=kmax,
        gamma={k: gamma_coeffs(n, d).get(k, 0) for k in ks},
        mu=mu, sn=sn,
        mu2=dict(pg.M_dims), sn2=dict(pg.sN_dims),
        sp_pole=sp_pole, sp_pole_page=sp_page, sp=sp,
        refined=refined_spectra(n, d, sn, sp, sp_pole, cert),
        d2_zero={k: m.is_zero() for k, m in pg.d_matrices.items()},
    )


# ---------------------------------------------------------------------------
# identity checks


PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witnesses: tuple[int, ...] = ()
    detail: str = ""


@dataclass
class IdentityReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass
class CheckContext:
    K: KoszulComplex
    cert: object
    data: SpectralData
    points: tuple
    wotzlaw: list | None = None
    lower_degrees: Sequence[int] | None = None
    _slices: dict[int, SubspaceBasis] = field(default_factory=dict, repr=False)

    def I_slice(self, e: int) -> SubspaceBasis:
        from .singular import symbolic_power_slice

        if e not in self._slices:
            self._slices[e] = symbolic_power_slice(self.points, 1, e, self.K.num_vars)
        return self._slices[e]

    def double_prime(self, k: int) -> tuple[int, int]:
        """(dim M'_k, dim M''_k)."""
        e = k - self.K.n - 1
        if e < 0:
            return (0, 0)
        return self.K.mprime_dims(k, self.I_slice(e))


def _result(name: str, bad: list[int], detail: str = "", applicable: bool = True) -> CheckResult:
    if not applicable:
        return CheckResult(name, NA, (), detail)
    return CheckResult(name, FAIL if bad else PASS, tuple(bad), detail)


def _sn(D: SpectralData, k: int) -> int:
    return 0 if k < 0 else D.sn[k]


def check_euler_characteristic(c: CheckContext) -> CheckResult:
    D = c.data
    bad = [k for k in range(D.kmax + 1) if D.mu[k] - _sn(D, k - D.d) != D.gamma[k]]
    return _result("euler_characteristic", bad, "mu_k - sN_{k-d} = gamma_k")


def check_defect_duality(c: CheckContext) -> CheckResult:
    from .singular import defect

    D = c.data
    top = D.n * D.d - D.n - 1
    bad = [k for k in range(0, top + 1) if _sn(D, top - k) != defect(c.points, k)]
    return _result("defect_duality", bad, "sN_{nd-n-1-k} = def_k")


def check_complement_duality(c: CheckContext) -> CheckResult:
    D = c.data
    nd = D.n * D.d
    bad = [k for k in range(D.kmax + 1) if c.double_prime(k)[1] + _sn(D, nd - k) != D.tau]
    return _result("complement_duality", bad, "dim M''_k + sN_{nd-k} = tau")


def check_vanishing_below_middle(c: CheckContext) -> CheckResult:
    D = c.data
    bad = [k for k in range(D.kmax + 1) if 2 * k < D.n * D.d and D.sn[k]]
    return _result("vanishing_below_middle", bad, "sN_k = 0 for 2k < nd")


def check_sn_monotone(c: CheckContext) -> CheckResult:
    D = c.data
    bad = [k for k in range(D.kmax + 1) if not (0 <= D.sn[k] <= D.tau) or (k and D.sn[k] < D.sn[k - 1])]
    return _result("sn_monotone", bad, "sN_k weakly increasing inside [0, tau]")


def check_lower_cohomology(c: CheckContext) -> CheckResult:
    D = c.data
    degrees = c.lower_degrees if c.lower_degrees is not None else range(0, D.n * D.d // 2 + 1)
    bad = sorted({k for k in degrees for j in range(D.n) if c.K.cohomology_dim(j, k)})
    return _result("lower_cohomology_vanishes", bad, "H^j(K_f)_k = 0 for j < n")


def check_e2_degeneration(c: CheckContext) -> CheckResult:
    bad = [k for k, z in sorted(c.data.d2_zero.items()) if not z]
    return _result("e2_degeneration", bad, "d2 = 0")


def check_middle_differential(c: CheckContext) -> CheckResult:
    D = c.data
    nd = D.n * D.d
    if nd % 2 or nd // 2 > D.kmax:
        return _result("middle_differential_vanishes", [], "nd odd", applicable=False)
    k = nd // 2
    bad = [] if c.K.d1_matrix(k).is_zero() and D.sn2[k] == D.sn[k] else [k]
    return _result("middle_differential_vanishes", bad, "d1 = 0 at nd/2")


def check_page_two_off_middle(c: CheckContext) -> CheckResult:
    D = c.data
    bad = [k for k in range(D.kmax + 1)
           if 2 * k != D.n * D.d and (D.mu2[k] != D.mu[k] - D.sn[k] or D.sn2[k])]
    return _result("page_two_off_middle", bad, "M2_k = M_k - sN_k, sN2_k = 0 for k != nd/2")


def check_middle_page(c: CheckContext) -> CheckResult:
    D = c.data
    nd = D.n * D.d
    if nd % 2:
        return _result("middle_page_dimension", [], "nd odd", applicable=False)
    k = nd // 2
    bad = [] if D.mu2[k] == D.gamma[k] and _sn2(D, k - D.d) == 0 else [k]
    return _result("middle_page_dimension", bad, "M2_{nd/2} = gamma_{nd/2}, sN2_{nd/2-d} = 0")


def _sn2(D: SpectralData, k: int) -> int:
    return 0 if k < 0 else D.sn2[k]


def check_image_meets_torsion(c: CheckContext) -> CheckResult:
    K, D = c.K, c.data
    bad = []
    for k in range(1, D.kmax + 1):
        if not D.sn[k] or not D.mu[k]:
            continue
        dm = K.d1_matrix(k)
        img = image_basis(dm)
        e = k - K.n - 1
        tors = [K.M_coordinates(k, v) for v in c.I_slice(e).sparse_vectors()]
        mprime = SubspaceBasis.span(D.mu[k], tors)
        if intersection_dim(img, mprime) != 0:
            bad.append(k)
    return _result("image_meets_torsion_trivially", bad, "Im d1 meets M' in zero")


def check_pole_formula(c: CheckContext) -> CheckResult:
    D = c.data
    diff = D.sp_pole - D.sp_pole_page
    return _result("pole_formula_matches_page", diff.support(), "closed form = E2 page")


def difference_from_torsion_growth(D: SpectralData) -> Spectrum:
    """Sum over k/d > n/2+1 of (sN_k - sN_{k-d}) (t^(k/d) - t^(k/d - p(k)))."""
    n, d = D.n, D.d
    out: dict[int, int] = {}
    for k in range(D.kmax + 1):
        if 2 * k <= n * d + 2 * d:
            continue
        inc = _sn(D, k) - _sn(D, k - d)
        if not inc:
            continue
        j = k
        while 2 * j > n * d + 2 * d:
            j -= d
        out[k] = out.get(k, 0) + inc
        out[j] = out.get(j, 0) - inc
    return Spectrum.from_dict(d, out)


def check_torsion_growth_difference(c: CheckContext) -> CheckResult:
    D = c.data
    diff = (D.sp - D.sp_pole) - difference_from_torsion_growth(D)
    return _result("torsion_growth_difference", diff.support(), "Sp - Sp_P from sN increments")


def check_steenbrink_symmetry(c: CheckContext) -> CheckResult:
    D = c.data
    n, d = D.n, D.d
    top = (n + 1) * d
    bad = [k for k in range(1, top) if 2 * k != n * d and 2 * k != n * d + 2 * d and D.sp[k] != D.sp[top - k]]
    return _result("steenbrink_symmetry", bad, "n_a = n_{n+1-a} away from n/2, n/2+1")


def check_middle_shift(c: CheckContext) -> CheckResult:
    D = c.data
    nd = D.n * D.d
    if nd % 2:
        return _result("middle_shift", [], "nd odd", applicable=False)
    k = nd // 2
    bad = [] if D.sp[k + D.d] == D.sp[k] - D.tau else [k + D.d]
    return _result("middle_shift", bad, "n_{n/2+1} = n_{n/2} - tau")


def check_total_mass(c: CheckContext) -> CheckResult:
    D = c.data
    bad = [] if D.sp.total() == sum(D.gamma.values()) - D.tau * D.d else [D.kmax]
    return _result("total_mass", bad, "sum Sp = sum gamma - tau d")


def check_torsion_bound(c: CheckContext) -> CheckResult:
    D = c.data
    n0 = D.refined.sp0
    bad = []
    for k in range(1, D.kmax + 1):
        mp = c.double_prime(k)[0]
        inside = D.n * D.d < 2 * k <= D.n * D.d + 2 * D.d
        if mp > n0[k] or (inside and mp != n0[k]):
            bad.append(k)
    return _result("torsion_bound", bad, "dim M'_k <= n0_k, equal on (n/2, n/2+1]")


def check_prefix_monotone(c: CheckContext) -> CheckResult:
    D = c.data
    a, b = D.refined.sp0, D.refined.sp_pole0
    bad = []
    for k in range(1, D.kmax + 1):
        if all(a[k - j * D.d] == b[k - j * D.d] for j in range(1, k // D.d + 1)) and a[k] > b[k]:
            bad.append(k)
    return _result("prefix_monotone", bad, "n0_a <= n0_{P,a} when all lower shifts agree")


def check_surjectivity_bridge(c: CheckContext) -> CheckResult:
    from .singular import defect, middle_condition_holds

    D = c.data
    n, d = D.n, D.d
    m = n // 2
    bad = []
    for q in range(0, n + 1):
        p = n - q
        k = (n - m) * d + m - q - 1
        zero_def = defect(c.points, m * (d - 1) - p) == 0
        zero_sn = _sn(D, k) == 0 if k <= D.kmax else None
        if zero_sn is None:
            continue
        if zero_def != zero_sn or (middle_condition_holds(n, d, q) and not zero_sn):
            bad.append(q)
    return _result("surjectivity_bridge", bad, "def_{m(d-1)-p} = 0 iff sN_{(n-m)d+m-q-1} = 0 (witnesses are q)")


def check_wotzlaw(c: CheckContext) -> CheckResult:
    if not c.wotzlaw:
        return _result("wotzlaw_agreement", [], "not computed", applicable=False)
    bad = sorted({row.q for row in c.wotzlaw if row.proven and row.quotient != row.hodge})
    return _result("wotzlaw_agreement", bad, "quotient = n0_{q+1} where proven (witnesses are q)")


CHECKS: dict[str, Callable[[CheckContext], CheckResult]] = {
    "euler_characteristic": check_euler_characteristic,
    "defect_duality": check_defect_duality,
    "complement_duality": check_complement_duality,
    "vanishing_below_middle": check_vanishing_below_middle,
    "sn_monotone": check_sn_monotone,
    "lower_cohomology_vanishes": check_lower_cohomology,
    "e2_degeneration": check_e2_degeneration,
    "middle_differential_vanishes": check_middle_differential,
    "page_two_off_middle": check_page_two_off_middle,
    "middle_page_dimension": check_middle_page,
    "image_meets_torsion_trivially": check_image_meets_torsion,
    "pole_formula_matches_page": check_pole_formula,
    "torsion_growth_difference": check_torsion_growth_difference,
    "steenbrink_symmetry": check_steenbrink_symmetry,
    "middle_shift": check_middle_shift,
    "total_mass": check_total_mass,
    "torsion_bound": check_torsion_bound,
    "prefix_monotone": check_prefix_monotone,
    "surjectivity_bridge": check_surjectivity_bridge,
    "wotzlaw_agreement": check_wotzlaw,
}


def identity_suite(ctx: CheckContext, names: Iterable[str] | None = None) -> IdentityReport:
    chosen = list(CHECKS) if names is None else list(names)
    unknown = [x for x in chosen if x not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return IdentityReport([CHECKS[x](ctx) for x in chosen])
