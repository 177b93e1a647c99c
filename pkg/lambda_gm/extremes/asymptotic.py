"""Гауссовские меры экспоненты без однородности и коэффициенты η.

Вычисления ведутся в гауссовской шкале x ∈ (−∞, ∞), где −∞ играет
роль поглощающего нуля; маргинальная мера Λ(x_i > u) = −log Φ(u).
"""
import logging
import math

import numpy as np
from scipy import integrate, special

from core.exceptions import (
    InputError, NonPositiveSurvival, OutOfRange, QuadratureBudgetExceeded
)
from core.utils import parallel_map, tuning
from extremes.special import (
    TRUNCATION, BivNormalEvaluator, _finite, _out, check_rho, log_phi,
    unit_rule
)

logger = logging.getLogger(__name__)

GRID_ERROR = "Сетка u должна возрастать и содержать не менее четырёх точек."
SURVIVAL_ERROR = (
    "Функция выживания должна быть положительной, u = {u}: {value}."
)
MAX_DOUBLINGS = 12


def _check_unit(value, name):
    value = float(value)
    if not 0.0 < value < 1.0:
        raise OutOfRange(f"Параметр {name} = {value} вне интервала (0, 1).")
    return value


def margin_exponent(u):
    """Вернуть Λ(x_i > u) = −log Φ(u)."""
    return _out(-special.log_ndtr(_finite(u)))


def lambda1(u):
    """Вернуть одномерную плотность φ(u)/Φ(u)."""
    u = _finite(u)
    return _out(np.exp(log_phi(u) - special.log_ndtr(u)))


def to_positive_scale(x):
    """Перевести x в шкалу y ∈ (0, ∞) со стандартными маргиналями 1/y."""
    return _out(1.0 / margin_exponent(x))


def from_positive_scale(y):
    y = _finite(y)
    if np.any(y <= 0):
        raise InputError("Координаты y должны быть положительными.")
    return _out(special.ndtri(np.exp(-1.0 / y)))


def kappa_rho(rho, x1, x2):
    """Вернуть множитель κ^(ρ) ∈ [0, 1] в λ^(ρ) = φρ/Φρ·κ^(ρ)."""
    evaluator = BivNormalEvaluator(check_rho(rho, low=0.0))
    x1, x2 = np.broadcast_arrays(_finite(x1), _finite(x2))
    s = evaluator.s
    z1 = (x1 - rho * x2) / s
    z2 = (x2 - rho * x1) / s
    log_ratio = (
        log_phi(x2) + special.log_ndtr(z1) + special.log_ndtr(z2)
        + math.log(s) - log_phi(z2) - np.log(evaluator.cdf(x1, x2))
    )
    return _out(1.0 - np.exp(log_ratio))


def lambda_rho(rho, x1, x2):
    """Вернуть плотность ∂₁∂₂ log Φρ(x1, x2) меры Λ^(ρ)."""
    evaluator = BivNormalEvaluator(check_rho(rho, low=0.0))
    ratio = np.asarray(evaluator.pdf(x1, x2)) / evaluator.cdf(x1, x2)
    return _out(ratio * kappa_rho(rho, x1, x2))


def _tail_numerator(evaluator, u, x2):
    """Вернуть (ρ/s)∫_{−∞}^{x2} Φ(t)φ((u−ρt)/s) dt."""
    rho, s = evaluator.rho, evaluator.s
    x2 = np.asarray(x2, dtype=float)[..., None]
    start = np.minimum(
        np.minimum(x2 - 12.0, (u - 12.0 * s) / rho), -TRUNCATION
    )
    t, w = unit_rule()
    length = x2 - start
    nodes = start + length * t
    values = np.exp(special.log_ndtr(nodes) + log_phi((u - rho * nodes) / s))
    return rho / s * np.sum(values * w, axis=-1) * length[..., 0]


def _conditional_tail(evaluator, u, x2):
    """Вернуть ∫_u^∞ λ^(ρ)(x1, x2) dx1 без вычитания близких величин."""
    with np.errstate(under="ignore"):
        numerator = _tail_numerator(evaluator, u, x2)
    return lambda1(x2) * numerator / evaluator.cdf(u, x2)


def _integrate_to_infinity(integrand, low):
    """Проинтегрировать по [low, U], удваивая U до стабилизации значения."""
    rtol = tuning("SURVIVAL_RTOL")
    budget = tuning("QUADRATURE_MAX_POINTS")
    rule_size = len(unit_rule()[0])
    upper = max(low, 0.0) + 4.0
    spent, previous = 0, None
    for _ in range(MAX_DOUBLINGS):
        result = integrate.quad(
            integrand, low, upper, epsabs=0.0, epsrel=1e-8, limit=200,
            full_output=1,
        )
        value = result[0]
        spent += result[2]["neval"] * rule_size
        if spent > budget:
            raise QuadratureBudgetExceeded(
                f"Квадратура потребовала {spent} узлов (предел {budget})."
            )
        if previous is not None and abs(value - previous) <= rtol * abs(value):
            logger.debug("truncation U = %s, %s nodes", upper, spent)
            return value
        previous = value
        upper *= 2.0
    raise QuadratureBudgetExceeded("Усечение U не стабилизировалось.")


def joint_survival_biv(rho, u):
    """Вычислить Λ^(ρ)((u, ∞)²) = −2 log Φ(u) + log Φρ(u, u)."""
    evaluator = BivNormalEvaluator(check_rho(rho, low=0.0))
    u = float(_finite(u))
    return _integrate_to_infinity(
        lambda x2: float(_conditional_tail(evaluator, u, x2)), u
    )


def gaussian_joint_survival(rho, u):
    """Вернуть S_ρ(u, u) = P(X1 > u, X2 > u)."""
    return BivNormalEvaluator(check_rho(rho)).survival(u, u)


def survival13(a, b, u):
    """Вычислить Λ₁₃((u, ∞)²) для цепи λ^(a)(x1,x2)λ^(b)(x2,x3)/λ1(x2).

    Внутренние интегралы по x1 и x3 берутся в замкнутом виде,
    внешний по x2 ∈ [−9, U] считается адаптивной квадратурой.
    """
    first = BivNormalEvaluator(check_rho(a, low=0.0))
    second = BivNormalEvaluator(check_rho(b, low=0.0))
    u = float(_finite(u))
    if u < 0:
        raise OutOfRange(f"Порог u = {u} должен быть неотрицательным.")

    def integrand(x2):
        tails = (_conditional_tail(first, u, x2)
                 * _conditional_tail(second, u, x2))
        return float(tails / lambda1(x2))

    return _integrate_to_infinity(integrand, -TRUNCATION)


def eta_biv(rho):
    return (1.0 + _check_unit(rho, "rho")) / 2.0


def eta13(a, b):
    return (1.0 + _check_unit(a, "a") * _check_unit(b, "b")) / 2.0


def eta_fit(survival, u_grid):
    """Оценить η как 1/наклон log survival(u) по log Φ̄(u) методом МНК."""
    u_grid = np.asarray(u_grid, dtype=float)
    if u_grid.ndim != 1 or len(u_grid) < 4 or np.any(np.diff(u_grid) <= 0):
        raise InputError(GRID_ERROR)
    values = np.array(parallel_map(survival, u_grid), dtype=float)
    for u, value in zip(u_grid, values):
        if not value > 0 or not np.isfinite(value):
            raise NonPositiveSurvival(SURVIVAL_ERROR.format(u=u, value=value))
    slope, _ = np.polyfit(special.log_ndtr(-u_grid), np.log(values), 1)
    logger.debug("eta fit slope %.6f on %s points", slope, len(u_grid))
    return float(1.0 / slope)
