import pytest

from ptchain import scattering
from ptchain.scattering import ScatteringMatrix
from ptchain.verify import CHECKS, draw_samples, run_verification


class TestSuitePasses:
    def test_all_invariants_hold_on_seeded_samples(self):
        report = run_verification(samples=150, seed=42)
        assert report.passed
        for result in report.results:
            assert result.max_residual <= result.tol, result.name

    def test_every_declared_check_is_reported(self):
        report = run_verification(samples=30, seed=1)
        assert [r.name for r in report.results] == [name for name, _ in CHECKS]

    def test_deterministic_for_fixed_seed(self):
        a = run_verification(samples=60, seed=9)
        b = run_verification(samples=60, seed=9)
        assert a.lines() == b.lines()
        assert a.as_dict() == b.as_dict()

    def test_seed_variation_keeps_verdict(self):
        assert run_verification(samples=60, seed=1).passed
        assert run_verification(samples=60, seed=2).passed


class TestSampleDraw:
    def test_requested_count_and_ranges(self):
        samples = draw_samples(50, seed=3)
        assert len(samples) == 50
        for u, gam, om in samples:
            assert -1.9 <= u <= 1.9
            assert 0.0 <= gam <= 3.0
            assert -1.99 <= om <= 1.99

    def test_deterministic(self):
        assert draw_samples(25, seed=4) == draw_samples(25, seed=4)


class TestFaultInjection:
    def test_negated_reflection_is_caught_and_named(self, monkeypatch):
        true_s_matrix = scattering.s_matrix

        def broken_s_matrix(params, wp, eps_pole=scattering.POLE_EPS):
            sm = true_s_matrix(params, wp, eps_pole)
            return ScatteringMatrix(s11=sm.s11, s12=-sm.s12, s21=sm.s21, s22=sm.s22)

        monkeypatch.setattr(scattering, "s_matrix", broken_s_matrix)
        report = run_verification(samples=40, seed=42)
        assert not report.passed
        failing = {r.name for r in report.results if not r.passed}
        assert "pseudo_unitarity_s_conj_inverse" in failing
        assert "oracle_matches_closed_form_s" in failing
        # the worst offending sample is reported with the failure
        worst = next(r for r in report.results if r.name == "pseudo_unitarity_s_conj_inverse")
        assert worst.worst_sample is not None

    def test_skewed_transmission_formula_is_caught(self, monkeypatch):
        true_formula = scattering.transmission_closed_form

        def broken_formula(params, omega, eps_pole=scattering.POLE_EPS):
            return true_formula(params, omega, eps_pole) * (1.0 + 1e-6)

        monkeypatch.setattr(scattering, "transmission_closed_form", broken_formula)
        report = run_verification(samples=40, seed=42)
        failing = {r.name for r in report.results if not r.passed}
        assert "closed_form_transmission_equals_t_squared" in failing
