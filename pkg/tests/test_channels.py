import numpy as np
import pytest

from qmin import (
    analytic_evolved_xstate,
    apply_product_channel,
    concurrence,
    concurrence_zero_crossing,
    depol_sudden_death_threshold,
    gad_sudden_death_threshold,
    gamma_from_time,
    kraus,
    min_exact_2xn,
    partial_trace,
    pure_alpha,
    xstate_measures,
)
from qmin.channels import XStateElements, evolved_concurrence

from conftest import bell_state, random_bipartite

CHANNEL_GRID = [
    ("ad", None),
    ("depol", None),
    ("gad", 0.3),
    ("gad", 0.8),
    ("identity", None),
]


class TestKraus:
    def test_ad_zero_is_identity(self):
        ch = kraus("ad", 0.0)
        np.testing.assert_allclose(ch.ops[0], np.eye(2), atol=1e-15)
        np.testing.assert_allclose(ch.ops[1], 0.0, atol=1e-15)

    def test_ad_full_decay(self):
        ch = kraus("ad", 1.0)
        excited = np.diag([0.0, 1.0]).astype(complex)
        out = sum(e @ excited @ e.conj().T for e in ch.ops)
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-15)

    @pytest.mark.parametrize("kind,p", CHANNEL_GRID)
    @pytest.mark.parametrize("gamma", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_completeness(self, kind, p, gamma):
        ch = kraus(kind, gamma, p)
        total = sum(e.conj().T @ e for e in ch.ops)
        np.testing.assert_allclose(total, np.eye(2), atol=1e-12)

    def test_operator_counts(self):
        assert len(kraus("ad", 0.3).ops) == 2
        assert len(kraus("depol", 0.3).ops) == 4
        assert len(kraus("gad", 0.3, 0.5).ops) == 4

    def test_parameter_errors(self):
        with pytest.raises(ValueError, match="gamma"):
            kraus("ad", 1.5)
        with pytest.raises(ValueError, match="requires p"):
            kraus("gad", 0.5)
        with pytest.raises(ValueError, match="only meaningful"):
            kraus("ad", 0.5, 0.5)
        with pytest.raises(ValueError, match="unknown channel"):
            kraus("phase", 0.5)


class TestGammaFromTime:
    def test_zero_time(self):
        assert gamma_from_time(1.0, 0.0) == 0.0

    def test_long_time_limit(self):
        assert gamma_from_time(2.0, 500.0) == pytest.approx(1.0, abs=1e-12)

    def test_half_life(self):
        assert gamma_from_time(1.0, np.log(2.0)) == pytest.approx(0.5, abs=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gamma_from_time(-1.0, 1.0)
        with pytest.raises(ValueError):
            gamma_from_time(1.0, -1.0)


class TestApplyProductChannel:
    def test_identity_channel(self):
        s = bell_state()
        out = apply_product_channel(s, kraus("identity", 0.7))
        np.testing.assert_allclose(out.mat, s.mat, atol=1e-15)

    def test_full_amplitude_damping_sends_to_ground(self):
        out = apply_product_channel(bell_state(), kraus("ad", 1.0))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(out.mat, expected, atol=1e-14)

    def test_full_depolarizing_gives_maximally_mixed(self, rng):
        s = random_bipartite(2, 2, rng)
        out = apply_product_channel(s, kraus("depol", 1.0))
        np.testing.assert_allclose(out.mat, np.eye(4) / 4, atol=1e-12)

    @pytest.mark.parametrize("kind,p", CHANNEL_GRID)
    def test_trace_preserved(self, kind, p, rng):
        s = random_bipartite(2, 2, rng)
        for gamma in (0.1, 0.6, 1.0):
            out = apply_product_channel(s, kraus(kind, gamma, p))
            assert np.trace(out.mat).real == pytest.approx(1.0, abs=1e-12)

    def test_requires_two_qubits(self):
        from conftest import maximally_mixed

        with pytest.raises(ValueError, match="two-qubit"):
            apply_product_channel(maximally_mixed(2, 3), kraus("ad", 0.5))


class TestAnalyticEvolvedXState:
    @pytest.mark.parametrize("kind,p", CHANNEL_GRID)
    def test_no_evolution_at_gamma_zero(self, kind, p):
        e = analytic_evolved_xstate(kind, 0.3, 0.0, p)
        q = np.sqrt(0.3 * 0.7)
        assert (e.r11, e.r22, e.r44) == pytest.approx((0.3, 0.0, 0.7), abs=1e-12)
        assert e.r14 == pytest.approx(q, abs=1e-12)

    def test_ad_midpoint(self):
        e = analytic_evolved_xstate("ad", 0.5, 0.5)
        assert e.r14 == pytest.approx(0.25, abs=1e-12)
        assert e.r22 == pytest.approx(0.125, abs=1e-12)

    def test_depol_keeps_marginals_maximally_mixed(self):
        for gamma in (0.0, 0.3, 0.7, 1.0):
            st = apply_product_channel(pure_alpha(0.5), kraus("depol", gamma))
            np.testing.assert_allclose(
                partial_trace(st, "a").mat, np.eye(2) / 2, atol=1e-12
            )
            e = analytic_evolved_xstate("depol", 0.5, gamma)
            assert e.r11 + e.r22 == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("kind,p", CHANNEL_GRID)
    def test_certified_against_kraus_composition(self, kind, p):
        # the closed forms are only trusted because of this comparison
        worst = 0.0
        for alpha in (0.0, 0.2, 0.5, 0.8, 1.0):
            for gamma in (0.0, 0.3, 0.6, 0.9, 1.0):
                e = analytic_evolved_xstate(kind, alpha, gamma, p)
                full = apply_product_channel(pure_alpha(alpha), kraus(kind, gamma, p)).mat
                worst = max(
                    worst,
                    abs(e.r11 - full[0, 0].real),
                    abs(e.r22 - full[1, 1].real),
                    abs(e.r22 - full[2, 2].real),
                    abs(e.r44 - full[3, 3].real),
                    abs(e.r14 - full[0, 3].real),
                    float(np.max(np.abs(full[0, 1]))),  # no stray coherences
                    float(np.max(np.abs(full[1, 2]))),
                )
        assert worst < 1e-12

    def test_invariants_enforced(self):
        with pytest.raises(ValueError, match="sum"):
            XStateElements(r11=0.5, r22=0.1, r44=0.5, r14=0.0)
        with pytest.raises(ValueError, match="positivity"):
            XStateElements(r11=0.1, r22=0.2, r44=0.5, r14=0.5)


class TestXStateMeasures:
    def test_bell_values(self):
        c, hs, f = xstate_measures(analytic_evolved_xstate("ad", 0.5, 0.0))
        assert (c, hs, f) == pytest.approx((1.0, 0.5, 0.5), abs=1e-12)

    def test_zero_coherence_kills_everything(self):
        c, hs, f = xstate_measures(XStateElements(r11=0.4, r22=0.1, r44=0.4, r14=0.0))
        assert (c, hs, f) == (0.0, 0.0, 0.0)

    def test_ad_endpoint(self):
        c, hs, f = xstate_measures(analytic_evolved_xstate("ad", 0.5, 1.0))
        assert (c, hs, f) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)


class TestEq19Certification:
    @pytest.mark.parametrize(
        "kind,pgrid",
        [("ad", (None,)), ("depol", (None,)), ("gad", (0.3, 0.8))],
    )
    def test_closed_measures_match_machinery(self, kind, pgrid):
        alphas = (0.2, 0.35, 0.5, 0.65, 0.8)
        gammas = (0.15, 0.4, 0.65, 0.9) if len(pgrid) == 1 else (0.3, 0.7)
        points = [(a, g, p) for a in alphas for g in gammas for p in pgrid]
        assert len(points) == 20
        worst = 0.0
        for a, g, p in points:
            closed = xstate_measures(analytic_evolved_xstate(kind, a, g, p))
            st = apply_product_channel(pure_alpha(a), kraus(kind, g, p))
            hs, f, _ = min_exact_2xn(st)
            machinery = (concurrence(st), hs, f)
            worst = max(worst, max(abs(x - y) for x, y in zip(closed, machinery)))
        assert worst < 1e-8


class TestDepolSuddenDeathThreshold:
    def test_maximally_entangled_value(self):
        assert depol_sudden_death_threshold(0.5) == pytest.approx(
            2.0 - np.sqrt(2.0), abs=1e-12
        )

    def test_product_state_endpoints(self):
        assert depol_sudden_death_threshold(0.0) == pytest.approx(0.0, abs=1e-12)
        assert depol_sudden_death_threshold(1.0) == pytest.approx(0.0, abs=1e-12)

    def test_bisected_crossing_brackets_sign_change(self):
        # the evolved-state concurrence together with its actual zero crossing
        g0 = concurrence_zero_crossing("depol", 0.3)
        assert g0 is not None and 0.0 < g0 < 1.0
        assert evolved_concurrence("depol", 0.3, g0 - 0.01) > 0.0
        assert evolved_concurrence("depol", 0.3, g0 + 0.01) == 0.0

    def test_two_sided_crossing_value(self):
        # coherence decays as (1-g)^2 per the product channel, putting the
        # crossing at 1 - (1 + 4 sqrt(a(1-a)))^(-1/2), below the closed form
        g0 = concurrence_zero_crossing("depol", 0.5)
        assert g0 == pytest.approx(1.0 - 1.0 / np.sqrt(3.0), abs=1e-7)
        assert g0 < depol_sudden_death_threshold(0.5)


class TestGadSuddenDeathThreshold:
    def test_reference_point(self):
        assert gad_sudden_death_threshold(0.5, 2.0 / 3.0) == pytest.approx(
            0.6, abs=1e-6
        )

    def test_pure_damping_dies_asymptotically(self):
        assert gad_sudden_death_threshold(0.5, 1.0) == pytest.approx(1.0, abs=1e-6)

    def test_identity_channel_never_dies(self):
        assert concurrence_zero_crossing("identity", 0.5) is None

    def test_unentangled_start(self):
        assert gad_sudden_death_threshold(0.0, 0.5) == 0.0


class TestQualitativeDynamics:
    def test_product_initial_states_stay_uncorrelated(self):
        for alpha in (0.0, 1.0):
            for kind, p in (("ad", None), ("depol", None), ("gad", 0.4)):
                for gamma in np.linspace(0.0, 1.0, 7):
                    st = apply_product_channel(pure_alpha(alpha), kraus(kind, float(gamma), p))
                    hs, f, _ = min_exact_2xn(st)
                    assert concurrence(st) == pytest.approx(0.0, abs=1e-10)
                    assert hs == pytest.approx(0.0, abs=1e-12)
                    assert f == pytest.approx(0.0, abs=1e-12)

    def test_ad_everything_vanishes_at_endpoint(self):
        st = apply_product_channel(pure_alpha(0.5), kraus("ad", 1.0))
        hs, f, _ = min_exact_2xn(st)
        assert concurrence(st) == pytest.approx(0.0, abs=1e-12)
        assert (hs, f) == pytest.approx((0.0, 0.0), abs=1e-12)

    def test_depol_correlation_survives_entanglement(self):
        # past sudden death but before gamma=1 the fidelity measure stays alive
        gammas = np.linspace(0.45, 0.8, 8)
        for gamma in gammas:
            st = apply_product_channel(pure_alpha(0.5), kraus("depol", float(gamma)))
            assert concurrence(st) == 0.0
            _, f, _ = min_exact_2xn(st)
            assert f > 1e-3

    def test_ad_fmin_monotone_decay(self):
        gammas = np.linspace(0.0, 1.0, 100)
        values = []
        for gamma in gammas:
            st = apply_product_channel(pure_alpha(0.5), kraus("ad", float(gamma)))
            values.append(min_exact_2xn(st)[1])
        assert np.all(np.diff(values) <= 1e-12)
