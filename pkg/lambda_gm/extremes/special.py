"""Гауссовские специальные функции: φ, Φ, Φ̄ и двумерная Φρ."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

from core.exceptions import NonFinite, RhoOutOfRange

TRUNCATION = 9.0
LOG_SQRT_2PI = 0.5 * np.log(2 * np.pi)


def _finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFinite("Аргумент должен быть конечным.")
    return x


def _out(value):
    return float(value) if np.ndim(value) == 0 else value


def phi(x):
    x = _finite(x)
    return _out(np.exp(-0.5 * x * x - LOG_SQRT_2PI))


def log_phi(x):
    x = _finite(x)
    return _out(-0.5 * x * x - LOG_SQRT_2PI)


def Phi(x):
    return _out(special.ndtr(_finite(x)))


def Phi_bar(x):
    return _out(special.ndtr(-_finite(x)))


def log_Phi(x):
    return _out(special.log_ndtr(_finite(x)))


@lru_cache(maxsize=None)
def unit_rule(panels=64, order=10):
    """Вернуть узлы и веса составной формулы Гаусса–Лежандра на [0, 1]."""
    nodes, weights = leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = np.diff(edges) / 2
    centers = (edges[:-1] + edges[1:]) / 2
    t = (centers[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def check_rho(rho, low=-1.0):
    rho = float(rho)
    if not low < rho < 1.0:
        raise RhoOutOfRange(
            f"Корреляция rho = {rho} вне интервала ({low}, 1)."
        )
    return rho


@dataclass(frozen=True)
class BivNormalEvaluator:
    """Функция распределения Φρ.

    Считается квадратурой тождества ∂₁Φρ = φ(x₁)Φ((x₂−ρx₁)/s).

    Интегрирование ведётся по меньшему аргументу от min(−9, x − 10),
    остаток хвоста меньше Φ̄(9).
    """

    rho: float
    panels: int = 64
    order: int = 10

    def __post_init__(self):
        object.__setattr__(self, "rho", check_rho(self.rho))

    @property
    def s(self):
        return float(np.sqrt(1.0 - self.rho ** 2))

    def cdf(self, x1, x2):
        x1, x2 = np.broadcast_arrays(_finite(x1), _finite(x2))
        low = np.minimum(x1, x2)[..., None]
        high = np.maximum(x1, x2)[..., None]
        start = np.minimum(-TRUNCATION, low - 10.0)
        t, w = unit_rule(self.panels, self.order)
        length = low - start
        nodes = start + length * t
        integrand = np.exp(log_phi(nodes) + special.log_ndtr(
            (high - self.rho * nodes) / self.s
        ))
        return _out(np.sum(integrand * w, axis=-1) * length[..., 0])

    def pdf(self, x1, x2):
        x1, x2 = _finite(x1), _finite(x2)
        z = (x2 - self.rho * x1) / self.s
        return _out(np.exp(log_phi(x1) + log_phi(z)) / self.s)

    def survival(self, x1, x2):
        """Вернуть S_ρ(x1, x2) = P(X1 > x1, X2 > x2)."""
        return self.cdf(-_finite(x1), -_finite(x2))


def Phi2(rho, x1, x2):
    return BivNormalEvaluator(rho).cdf(x1, x2)


def sandwich_bounds(rho, x1, x2):
    """Вернуть нижнюю и верхнюю границы для Φρ(x1, x2) при ρ ∈ (0, 1)."""
    rho = check_rho(rho, low=0.0)
    s = np.sqrt(1.0 - rho ** 2)
    first = Phi(x1) * Phi((x2 - rho * x1) / s)
    second = Phi(x2) * Phi((x1 - rho * x2) / s)
    lower = np.maximum(first, second)
    upper = np.minimum(first + Phi(x2), second + Phi(x1))
    return _out(lower), _out(upper)


def mills_bounds(x):
    """Вернуть границы отношения Миллса Φ̄(x)/φ(x) при x > 0."""
    x = _finite(x)
    return (
        _out(2.0 / (x + np.sqrt(x * x + 4.0))),
        _out(2.0 / (x + np.sqrt(x * x + 8.0 / np.pi))),
    )
