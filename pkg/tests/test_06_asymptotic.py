import math

import numpy as np
import pytest
from scipy import integrate

from core.exceptions import (
    InputError, NonPositiveSurvival, OutOfRange, RhoOutOfRange
)
from extremes.asymptotic import (
    eta13, eta_biv, eta_fit, from_positive_scale, gaussian_joint_survival,
    joint_survival_biv, kappa_rho, lambda1, lambda_rho, margin_exponent,
    survival13, to_positive_scale
)
from extremes.special import Phi2, Phi_bar, log_Phi

RHOS = [0.3, 0.5, 0.7]
U_GRID = np.linspace(2.0, 4.5, 8)


class Test06Margins:

    def test_00_lambda1(self):
        assert lambda1(0.0) == pytest.approx(math.sqrt(2 / math.pi))
        assert lambda1(40.0) < 1e-300
        u = np.linspace(-3.0, 6.0, 19)
        h = 1e-5
        derivative = (
            margin_exponent(u - h) - margin_exponent(u + h)
        ) / (2 * h)
        np.testing.assert_allclose(
            derivative, lambda1(u), atol=1e-6,
            err_msg='Проверьте, что −dΛ(u)/du совпадает с λ1(u).',
        )

    def test_01_positive_scale(self):
        y = np.array([0.2, 1.0, 7.5])
        np.testing.assert_allclose(
            to_positive_scale(from_positive_scale(y)), y, rtol=1e-10
        )
        with pytest.raises(InputError):
            from_positive_scale([0.0])


class Test06Kappa:

    @pytest.mark.parametrize('rho', RHOS)
    def test_00_unit_interval(self, rho):
        x1, x2 = np.meshgrid(np.linspace(-2, 5, 15), np.linspace(-2, 5, 15))
        kappa = kappa_rho(rho, x1, x2)
        assert np.all(kappa >= -1e-12) and np.all(kappa <= 1.0), (
            f'Проверьте, что κ лежит в [0, 1] при ρ = {rho}.'
        )
        upper = np.maximum(x1, x2) >= 0
        assert np.all(kappa[upper] >= 1 - math.sqrt(1 - rho ** 2) - 1e-12), (
            'Проверьте нижнюю оценку κ ≥ 1 − √(1 − ρ²) при max(x1, x2) ≥ 0.'
        )

    @pytest.mark.parametrize('rho', RHOS)
    def test_01_improves_with_threshold(self, rho):
        grid = np.linspace(2.0, 12.0, 21)
        x1, x2 = np.meshgrid(grid, grid)
        kappa = kappa_rho(rho, x1, x2)
        infima = [
            kappa[(x1 >= u) & (x2 >= u)].min() for u in (2.0, 4.0, 8.0)
        ]
        assert infima[0] <= infima[1] <= infima[2]
        assert kappa_rho(rho, 8.0, 8.0) > kappa_rho(rho, 2.0, 2.0)

    def test_02_rho_range(self):
        with pytest.raises(RhoOutOfRange):
            kappa_rho(0.0, 1.0, 1.0)
        with pytest.raises(RhoOutOfRange):
            lambda_rho(1.0, 1.0, 1.0)


class Test06Density:

    @pytest.mark.parametrize('rho', RHOS)
    def test_00_nonnegative(self, rho):
        x1, x2 = np.meshgrid(np.linspace(-4, 6, 11), np.linspace(-4, 6, 11))
        assert np.all(lambda_rho(rho, x1, x2) >= -1e-12)

    @pytest.mark.parametrize('rho', RHOS)
    def test_01_mixed_difference(self, rho):
        h = 1e-3
        for x1 in (-1.0, 0.0, 1.0):
            for x2 in (-1.0, 0.0, 1.0):
                logs = [
                    math.log(Phi2(rho, x1 + s1 * h, x2 + s2 * h))
                    for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1))
                ]
                mixed = (logs[0] - logs[1] - logs[2] + logs[3]) / (4 * h * h)
                assert mixed == pytest.approx(
                    lambda_rho(rho, x1, x2), abs=1e-5
                ), (
                    'Проверьте, что λ^(ρ) совпадает со смешанной производной '
                    f'log Φρ в точке ({x1}, {x2}).'
                )

    def test_02_box_mass(self):
        rho = 0.5
        (a1, b1), (a2, b2) = (0.0, 2.0), (-1.0, 1.0)
        mass, _ = integrate.dblquad(
            lambda x2, x1: lambda_rho(rho, x1, x2), a1, b1, a2, b2,
            epsabs=1e-10, epsrel=1e-8,
        )
        expected = (
            math.log(Phi2(rho, b1, b2)) - math.log(Phi2(rho, a1, b2))
            - math.log(Phi2(rho, b1, a2)) + math.log(Phi2(rho, a1, a2))
        )
        assert mass == pytest.approx(expected, abs=1e-7), (
            'Проверьте массу прямоугольника по включениям–исключениям.'
        )


class Test06Survival:

    @pytest.mark.parametrize('rho', RHOS)
    def test_00_matches_closed_form(self, rho):
        u = 1.0
        expected = -2 * log_Phi(u) + math.log(Phi2(rho, u, u))
        assert joint_survival_biv(rho, u) == pytest.approx(
            expected, rel=1e-5
        ), 'Проверьте Λ^(ρ)((u, ∞)²) = −2 log Φ(u) + log Φρ(u, u).'

    @pytest.mark.parametrize('rho', RHOS)
    def test_01_ratio_to_gaussian_tail(self, rho):
        ratio = joint_survival_biv(rho, 5.0) / gaussian_joint_survival(rho, 5.0)
        assert 0.9 <= ratio <= 1.1, (
            'Проверьте асимптотическую эквивалентность хвоста меры и '
            f'гауссовской вероятности при ρ = {rho}: {ratio}.'
        )

    def test_02_survival13_properties(self):
        values = [survival13(0.5, 0.5, u) for u in (0.5, 1.0, 2.0)]
        assert values[0] > values[1] > values[2] > 0, (
            'Проверьте, что Λ13((u, ∞)²) убывает по u.'
        )
        assert survival13(0.3, 0.6, 1.0) == pytest.approx(
            survival13(0.6, 0.3, 1.0), rel=1e-9
        )
        assert values[1] <= margin_exponent(1.0)
        with pytest.raises(OutOfRange):
            survival13(0.5, 0.5, -1.0)

    def test_03_survival13_weaker_than_pairs(self):
        u = 2.0
        assert survival13(0.5, 0.5, u) < joint_survival_biv(0.5, u), (
            'Проверьте, что связь 1–3 через 2 слабее прямой связи 1–2.'
        )


class Test06Eta:

    def test_00_closed_forms(self):
        assert eta_biv(0.5) == 0.75
        assert eta13(0.5, 0.5) == 0.625
        assert eta13(0.3, 0.8) == pytest.approx(eta_biv(0.24))
        with pytest.raises(OutOfRange):
            eta_biv(1.0)
        with pytest.raises(OutOfRange):
            eta13(0.5, 0.0)

    def test_01_independence_fit(self):
        assert eta_fit(lambda u: Phi_bar(u) ** 2, U_GRID) == pytest.approx(
            0.5, abs=1e-9
        )

    def test_02_fit_validation(self):
        with pytest.raises(InputError):
            eta_fit(lambda u: Phi_bar(u), [2.0, 3.0, 4.0])
        with pytest.raises(InputError):
            eta_fit(lambda u: Phi_bar(u), [2.0, 4.0, 3.0, 5.0])
        with pytest.raises(NonPositiveSurvival):
            eta_fit(lambda u: 0.0, U_GRID)

    @pytest.mark.slow
    @pytest.mark.parametrize('rho', RHOS)
    def test_03_gaussian_fit(self, rho):
        fitted = eta_fit(lambda u: joint_survival_biv(rho, u), U_GRID)
        assert fitted == pytest.approx(eta_biv(rho), abs=0.05), (
            f'Проверьте оценку η при ρ = {rho}: {fitted}.'
        )
        assert fitted >= 0.5 - 0.02

    @pytest.mark.slow
    def test_04_chain_fit(self):
        fitted = eta_fit(
            lambda u: survival13(0.5, 0.5, u), np.linspace(2.0, 4.0, 8)
        )
        assert fitted == pytest.approx(eta13(0.5, 0.5), abs=0.06), (
            f'Проверьте оценку η13 для цепи: {fitted}.'
        )
