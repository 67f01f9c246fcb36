import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from casimir_polariton.checks import plus_branch_slope_at_lightcone
from casimir_polariton.errors import DomainError, PoleProximityWarning
from casimir_polariton.polariton import (
    Branch,
    Curve,
    k_lightcone,
    omega_branch,
    omega_coupled,
    omega_single,
    pair_creation_threshold,
    sample_curve,
)
from casimir_polariton.reflection import r_t0
from casimir_polariton.specfun import FIGURE_PARAMS, ModelParams, psi

DEFAULT = ModelParams()
EPS = np.finfo(float).eps


def check_point_invariants(pt, params):
    assert pt.omega <= pt.k
    # near threshold Omega rounds onto Omega_pc (to a few ulps); the gap stays exact
    assert pt.omega <= pair_creation_threshold(pt.k, params) * (1 + 4 * EPS)
    if pt.mu > 0:
        if pt.rapidity < 700:  # exp(-u) underflows past ~745
            assert pt.threshold_gap > 0
        assert pt.k ** 2 - pt.omega ** 2 == pytest.approx(pt.mu ** 2, rel=1e-12)
    else:
        assert pt.omega == pytest.approx(pt.k, rel=1e-15)


class TestSingle:
    def test_origin(self):
        pt = omega_single(0.0)
        assert pt.omega == 0.0 and pt.k == 0.0

    def test_approaches_threshold(self):
        pt = omega_single(1e3, FIGURE_PARAMS)
        assert pt.omega / pair_creation_threshold(pt.k, FIGURE_PARAMS) == pytest.approx(1.0, abs=1e-6)

    def test_closed_form_point(self):
        mu = FIGURE_PARAMS.alpha * psi(0.5)
        pt = omega_single(mu, FIGURE_PARAMS)
        assert pt.p == pytest.approx(0.5, abs=1e-12)
        assert pt.omega == pytest.approx(math.sqrt((0.25 * mu * mu + 0.25) / 0.75), rel=1e-12)
        assert pt.branch is Branch.SINGLE

    def test_domain(self):
        with pytest.raises(DomainError):
            omega_single(-1.0)

    @given(st.floats(1e-8, 1e3))
    def test_invariants(self, mu):
        check_point_invariants(omega_single(mu), DEFAULT)
        check_point_invariants(omega_single(mu, FIGURE_PARAMS), FIGURE_PARAMS)


class TestCoupled:
    @pytest.mark.parametrize("sign", [1, -1])
    def test_large_separation(self, sign):
        a = omega_coupled(1.0, 1e3, sign, FIGURE_PARAMS).omega
        assert a == pytest.approx(omega_single(1.0, FIGURE_PARAMS).omega, rel=1e-10)

    def test_minus_at_origin(self):
        assert omega_coupled(0.0, 1.0, -1).omega == 0.0

    def test_plus_at_origin_is_lightcone_endpoint(self):
        pt = omega_coupled(0.0, 1.0, 1, FIGURE_PARAMS)
        assert pt.k == pytest.approx(k_lightcone(1.0, FIGURE_PARAMS), rel=1e-14)
        assert pt.omega == pytest.approx(pt.k, rel=1e-15)

    def test_ordering_example(self):
        m = omega_coupled(1.0, 1.0, -1, FIGURE_PARAMS).omega
        s = omega_single(1.0, FIGURE_PARAMS).omega
        p = omega_coupled(1.0, 1.0, 1, FIGURE_PARAMS).omega
        assert m < s < p

    def test_ordering_physical_coupling(self):
        # at alpha = 1/137 and mu = 1 all three frequencies round to the same
        # double; Omega grows with the rapidity, which still resolves them
        m = omega_coupled(1.0, 1.0, -1)
        s = omega_single(1.0)
        p = omega_coupled(1.0, 1.0, 1)
        assert m.omega <= s.omega <= p.omega
        assert m.rapidity < s.rapidity < p.rapidity
        assert m.threshold_gap > s.threshold_gap > p.threshold_gap > 0

    def test_threshold_gap_matches_p(self):
        pt = omega_single(0.5, FIGURE_PARAMS)
        assert pt.threshold_gap == pytest.approx(1 - pt.p ** 2, rel=1e-12)
        g = pair_creation_threshold(pt.k, FIGURE_PARAMS) ** 2 - pt.omega ** 2
        assert pt.threshold_gap == pytest.approx(g, rel=1e-12)

    @given(st.floats(1e-3, 5.0), st.floats(0.05, 20.0), st.sampled_from([DEFAULT, FIGURE_PARAMS]))
    def test_degeneracy_removal(self, mu, lam, params):
        # the splitting is ~exp(-mu lam); beyond mu lam ~ 20 it falls below double resolution
        assume(mu * lam <= 20)
        m = omega_coupled(mu, lam, -1, params)
        s = omega_single(mu, params)
        p = omega_coupled(mu, lam, 1, params)
        assert m.rapidity < s.rapidity < p.rapidity
        assert m.omega <= s.omega <= p.omega
        if params is FIGURE_PARAMS:
            assert m.omega < s.omega < p.omega

    @given(st.floats(1e-6, 1e3), st.floats(1e-3, 1e3), st.sampled_from([1, -1]))
    def test_invariants(self, mu, lam, sign):
        check_point_invariants(omega_coupled(mu, lam, sign), DEFAULT)

    def test_domain(self):
        with pytest.raises(DomainError):
            omega_coupled(1.0, 0.0, 1)
        with pytest.raises(DomainError):
            omega_coupled(-1.0, 1.0, -1)
        with pytest.raises(ValueError):
            omega_coupled(1.0, 1.0, 0)

    def test_branch_dispatch(self):
        assert omega_branch(Branch.MINUS, 0.5, 2.0) == omega_coupled(0.5, 2.0, -1)
        with pytest.raises(ValueError):
            omega_branch(Branch.LIGHTCONE, 0.5, 2.0)

    @settings(max_examples=200)
    @given(
        st.floats(0.01, 10.0),
        st.floats(math.log(0.1), math.log(100.0)),
        st.sampled_from([1, -1]),
        st.sampled_from([DEFAULT, FIGURE_PARAMS]),
    )
    def test_resonance_condition(self, mu, log_lam, sign, params):
        lam = math.exp(log_lam)
        pt = omega_coupled(mu, lam, sign, params)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PoleProximityWarning)
            inv = -1.0 / r_t0(pt.evanescent(), params, "TE")
        assert abs(inv - sign * math.exp(-mu * lam)) < 1e-8

    def test_single_layer_resonance(self):
        pt = omega_single(0.4)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PoleProximityWarning)
            assert abs(1.0 / r_t0(pt.evanescent(), DEFAULT, "TE")) < 1e-12

    def test_exponential_envelope(self):
        lam = 20.0
        fit = np.linspace(0.2, 0.8, 13)
        single = lambda m: omega_single(float(m), FIGURE_PARAMS).omega  # noqa: E731
        for sign in (1, -1):
            A = max(abs(omega_coupled(float(m), lam, sign, FIGURE_PARAMS).omega - single(m)) * math.exp(m * lam)
                    for m in fit)
            for m in np.linspace(0.01, 3.0, 60):
                d = abs(omega_coupled(float(m), lam, sign, FIGURE_PARAMS).omega - single(m))
                assert d <= 1.05 * A * math.exp(-m * lam)


class TestLightcone:
    def test_large_separation(self):
        assert k_lightcone(1e8, FIGURE_PARAMS) < 1e-3
        assert k_lightcone(1e3) < k_lightcone(1.0)

    def test_small_separation(self):
        assert k_lightcone(1e-6) == pytest.approx(1 / math.sqrt(1 - DEFAULT.v ** 2), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            k_lightcone(0.0)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 5.0])
    def test_tangency(self, lam):
        assert plus_branch_slope_at_lightcone(lam, FIGURE_PARAMS) == pytest.approx(1.0, abs=1e-3)

    def test_tangency_richardson_converges(self):
        errs = [abs(plus_branch_slope_at_lightcone(1.0, FIGURE_PARAMS, h) - 1) for h in (1e-2, 1e-3, 1e-4)]
        assert errs[0] > errs[1] > errs[2]


class TestThreshold:
    def test_values(self):
        assert pair_creation_threshold(0.0) == 1.0
        assert pair_creation_threshold(3.0, ModelParams(v=0.0)) == 1.0
        assert pair_creation_threshold(2.0, ModelParams(v=0.5)) == pytest.approx(math.sqrt(2), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            pair_creation_threshold(-1.0)


class TestSampling:
    def test_single_below_light_cone_and_threshold(self):
        c = sample_curve(Branch.SINGLE, None, 5.0, 100, FIGURE_PARAMS)
        assert isinstance(c, Curve)
        assert c.k.max() == pytest.approx(5.0, rel=1e-12)
        assert np.all(c.omega <= c.k)
        assert all(s.omega < pair_creation_threshold(s.k, FIGURE_PARAMS) for s in c.samples)

    @pytest.mark.parametrize("branch", [Branch.SINGLE, Branch.MINUS, Branch.PLUS])
    @pytest.mark.parametrize("grid", ["linear", "log"])
    def test_curve_invariants(self, branch, grid):
        lam = None if branch is Branch.SINGLE else 1.0
        for params in (DEFAULT, FIGURE_PARAMS):
            c = sample_curve(branch, lam, 5.0, 80, params, grid)
            assert np.all(np.diff(c.k) > 0)
            for s in c.samples:
                check_point_invariants(s, params)

    def test_plus_starts_at_lightcone(self):
        c = sample_curve(Branch.PLUS, 1.0, 5.0, 100, FIGURE_PARAMS)
        first = c.physical().samples[0]
        assert first.k == pytest.approx(k_lightcone(1.0, FIGURE_PARAMS), rel=1e-12)
        assert c.metadata["k_lightcone"] == pytest.approx(first.k)

    def test_lightcone_continuation_tagged(self):
        c = sample_curve(Branch.PLUS, 1.0, 5.0, 100, FIGURE_PARAMS)
        cont = [s for s in c.samples if s.branch is Branch.LIGHTCONE]
        assert cont and cont[0].k == 0.0
        assert all(s.omega == s.k and s.mu == 0.0 for s in cont)
        assert max(s.k for s in cont) < k_lightcone(1.0, FIGURE_PARAMS)
        assert all(s.branch is Branch.PLUS for s in c.physical().samples)

    def test_plus_entirely_continuation(self):
        # for K_lc beyond k_max only the continuation is present
        c = sample_curve(Branch.PLUS, 1.0, 0.5, 20, FIGURE_PARAMS)
        assert not c.physical().samples

    def test_ordering_on_common_grid(self):
        kwargs = dict(k_max=5.0, n=300, params=FIGURE_PARAMS)
        single = sample_curve(Branch.SINGLE, None, **kwargs)
        minus = sample_curve(Branch.MINUS, 1.0, **kwargs)
        plus = sample_curve(Branch.PLUS, 1.0, **kwargs).physical()
        k = np.linspace(plus.k[0] + 1e-3, 4.9, 100)
        w0 = np.interp(k, single.k, single.omega)
        wm = np.interp(k, minus.k, minus.omega)
        wp = np.interp(k, plus.k, plus.omega)
        assert np.all(wm < w0)
        assert np.all(w0 < wp)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            sample_curve(Branch.SINGLE, None, 5.0, 1)
        with pytest.raises(ValueError):
            sample_curve(Branch.SINGLE, None, 0.0, 10)
        with pytest.raises(ValueError):
            sample_curve(Branch.MINUS, None, 5.0, 10)
        with pytest.raises(ValueError):
            sample_curve(Branch.LIGHTCONE, 1.0, 5.0, 10)
        with pytest.raises(ValueError):
            sample_curve(Branch.SINGLE, None, 5.0, 10, grid="cubic")
