import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodalspec.koszul import KoszulComplex, default_window
from nodalspec.singular import certify_condition_A
from nodalspec.spectra import (
    CHECKS,
    FAIL,
    CheckContext,
    ConditionAViolated,
    DegenerationFailed,
    Spectrum,
    collect,
    difference_from_torsion_growth,
    gamma_coeffs,
    identity_suite,
    pole_spectrum_closed_form,
    pole_spectrum_from_page,
    refined_spectra,
    steenbrink_spectrum_closed_form,
)


def spectral_data(f, pts):
    cert = certify_condition_A(f, pts)
    K = KoszulComplex(f)
    top = max(default_window(f.n, f.degree)[1], (f.n + 1) * f.degree)
    return K, cert, collect(K, cert, top)


@pytest.fixture(scope="module")
def data_i(quartic_i, points_i):
    return spectral_data(quartic_i, points_i)


@pytest.fixture(scope="module")
def data_ii(quartic_ii, points_ii):
    return spectral_data(quartic_ii, points_ii)


@pytest.fixture(scope="module")
def data_fermat(fermat):
    return spectral_data(fermat, [])


def window(s, lo=3, hi=9):
    return [s[k] for k in range(lo, hi + 1)]


class TestSpectrumValue:
    def test_lines(self):
        s = Spectrum.from_dict(4, {9: 1, 5: -1, 7: 0})
        assert s.lines() == "5/4: -1\n9/4: 1\n"
        assert Spectrum.parse_lines(s.lines()) == s

    def test_mixed_denominators(self):
        with pytest.raises(ValueError):
            Spectrum(4) + Spectrum(3)

    @given(st.integers(1, 9), st.dictionaries(st.integers(-30, 30), st.integers(-50, 50)))
    def test_round_trip(self, d, mult):
        s = Spectrum.from_dict(d, mult)
        assert Spectrum.parse_lines(s.lines()) == s or not s.mult
        assert (s - s).mult == ()
        assert s.total() == sum(mult.values())


class TestGamma:
    def test_quartic_curves(self):
        assert gamma_coeffs(2, 4) == {3: 1, 4: 3, 5: 6, 6: 7, 7: 6, 8: 3, 9: 1}

    def test_single_factor(self):
        assert gamma_coeffs(0, 2) == {1: 1}

    @given(st.integers(0, 4), st.integers(2, 6))
    def test_total_and_symmetry(self, n, d):
        g = gamma_coeffs(n, d)
        assert sum(g.values()) == (d - 1) ** (n + 1)
        assert all(g.get(k, 0) == g.get((n + 1) * d - k, 0) for k in g)


class TestFormulas:
    def test_pole_three_nodes(self, data_i):
        assert window(data_i[2].sp_pole) == [1, 3, 4, 4, 3, 0, 0]

    def test_pole_four_lines(self, data_ii):
        assert window(data_ii[2].sp_pole) == [1, 3, 1, 1, 0, -3, 0]

    def test_steenbrink(self, data_i, data_ii):
        assert window(data_i[2].sp) == [1, 3, 3, 4, 3, 0, 1]
        assert window(data_ii[2].sp) == [1, 3, 0, 1, 0, -3, 1]

    def test_fermat_is_gamma(self, data_fermat):
        D = data_fermat[2]
        gamma = Spectrum.from_dict(4, gamma_coeffs(2, 4))
        assert D.sp == D.sp_pole == D.sp_pole_page == gamma

    @pytest.mark.parametrize("which", ["data_i", "data_ii", "data_fermat"])
    def test_page_matches_closed_form(self, which, request):
        D = request.getfixturevalue(which)[2]
        assert D.sp_pole == D.sp_pole_page

    def test_refined(self, data_i, data_ii, data_fermat):
        assert data_ii[2].refined.sp1 == Spectrum.from_dict(4, {8: 3})
        assert data_i[2].refined.sp1.mult == ()
        assert data_fermat[2].refined.sp1.mult == ()
        D = data_ii[2]
        assert D.refined.sp0 == D.sp + D.refined.sp1
        assert D.refined.sp_pole0 == D.sp_pole + D.refined.sp_pole1

    def test_needs_certificate(self):
        with pytest.raises(ConditionAViolated):
            pole_spectrum_closed_form(2, 4, {0: 0}, None)
        with pytest.raises(ConditionAViolated):
            steenbrink_spectrum_closed_form(2, 4, 0, None)
        with pytest.raises(ConditionAViolated):
            refined_spectra(2, 4, {}, Spectrum(4), Spectrum(4), None)

    def test_short_window_rejected(self, data_i):
        sn = {k: v for k, v in data_i[2].sn.items() if k <= 8}
        with pytest.raises(ValueError):
            pole_spectrum_closed_form(2, 4, sn, data_i[1])

    def test_nonzero_d2_rejected(self, data_i):
        K = data_i[0]
        pg = K.page(2, range(0, 18))
        bad = dataclasses.replace(pg, d_matrices={**pg.d_matrices, 5: _one()})
        with pytest.raises(DegenerationFailed):
            pole_spectrum_from_page(bad, 4)


def _one():
    from nodalspec.exactla import ExactMatrix
    return ExactMatrix.identity(1)


class TestIdentitySuite:
    @pytest.mark.parametrize("which", ["data_i", "data_ii", "data_fermat"])
    def test_all_pass(self, which, request):
        K, cert, D = request.getfixturevalue(which)
        report = identity_suite(CheckContext(K, cert, D, cert.points))
        assert report.ok, [(r.name, r.witnesses) for r in report.failures()]
        assert [r.name for r in report.results] == list(CHECKS)

    def test_torsion_growth_difference_three_nodes(self, data_i):
        D = data_i[2]
        assert (D.sp - D.sp_pole) == Spectrum.from_dict(4, {9: 1, 5: -1})
        assert difference_from_torsion_growth(D) == D.sp - D.sp_pole

    def test_torsion_growth_difference_four_lines(self, data_ii):
        D = data_ii[2]
        # the only increment past the middle window is sN_9 - sN_5 = 1, moved back to k = 5
        assert (D.sp - D.sp_pole) == Spectrum.from_dict(4, {9: 1, 5: -1})
        assert difference_from_torsion_growth(D) == D.sp - D.sp_pole

    def test_total_mass(self, data_i, data_ii):
        for _, cert, D in (data_i, data_ii):
            assert D.sp.total() == sum(gamma_coeffs(2, 4).values()) - cert.tau * 4

    def test_tampered_data_is_caught(self, data_i):
        K, cert, D = data_i
        sn = dict(D.sn)
        sn[3] = 1
        bad = dataclasses.replace(D, sn=sn)
        report = identity_suite(CheckContext(K, cert, bad, cert.points),
                                ["euler_characteristic", "vanishing_below_middle", "defect_duality"])
        assert [r.status for r in report.results] == [FAIL, FAIL, FAIL]
        assert 3 in report["vanishing_below_middle"].witnesses

    def test_unknown_check(self, data_i):
        K, cert, D = data_i
        with pytest.raises(ValueError):
            identity_suite(CheckContext(K, cert, D, cert.points), ["nope"])
