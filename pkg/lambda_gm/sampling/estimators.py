"""Эмпирические оценки χ, проверка функции распределения и CI-тест.

Перестановочный тест условной независимости служит эвристической
сверкой с точными оракулами, а не оракулом.
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import InputError, OutOfRange, TooFewSamples
from core.utils import (
    as_index_set, check_disjoint, check_known, check_nonempty, tuning
)
from measures.rays import exponent_function
from sampling.rng import check_seed, stream

logger = logging.getLogger(__name__)

SAMPLES_ERROR = "Нужно не менее {need} наблюдений, получено {got}."


@dataclass(frozen=True)
class ChiEstimate:
    value: float
    stderr: float
    exceedances: int


@dataclass(frozen=True)
class CdfCheck:
    """Эмпирическая и точная max-id функция распределения в точке x."""

    x: tuple
    empirical: float
    expected: float
    stderr: float

    @property
    def z_score(self):
        if self.stderr == 0:
            return 0.0 if self.empirical == self.expected else np.inf
        return abs(self.empirical - self.expected) / self.stderr


def _check_samples(samples):
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2:
        raise InputError("Выборка должна быть матрицей n×d.")
    need = tuning("MIN_SAMPLES")
    if len(samples) < need:
        raise TooFewSamples(SAMPLES_ERROR.format(need=need, got=len(samples)))
    return samples


def empirical_chi(samples, i, j, q=0.995):
    """Оценить χ_ij долей совместных превышений эмпирических q-квантилей."""
    samples = _check_samples(samples)
    check_known(range(samples.shape[1]), {i, j})
    if not 0.9 < q < 1.0:
        raise OutOfRange(f"Уровень q = {q} вне интервала (0.9, 1).")
    first = samples[:, i] > np.quantile(samples[:, i], q)
    second = samples[:, j] > np.quantile(samples[:, j], q)
    exceedances = int(first.sum())
    if exceedances == 0:
        raise TooFewSamples("Нет превышений порога по первой координате.")
    value = float((first & second).sum() / exceedances)
    stderr = float(np.sqrt(value * (1.0 - value) / exceedances))
    return ChiEstimate(value, stderr, exceedances)


def empirical_cdf_check(samples, m, x):
    """Сравнить долю {X ≤ x} с exp{−Λ(E₊ ∖ [0, x])}."""
    samples = np.asarray(samples, dtype=float)
    x = np.asarray(x, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != m.d or x.shape != (m.d,):
        raise InputError("Размерности выборки, меры и точки не совпадают.")
    empirical = float(np.mean(np.all(samples <= x, axis=1)))
    expected = float(np.exp(-exponent_function(m, x)))
    stderr = float(np.sqrt(expected * (1.0 - expected) / len(samples)))
    return CdfCheck(tuple(x.tolist()), empirical, expected, stderr)


def _quantile_codes(column, bins):
    """Нули получают код 0, остальные делятся по рангам на bins."""
    codes = np.zeros(len(column), dtype=np.int64)
    positive = np.flatnonzero(column != 0)
    if len(positive):
        ranks = np.argsort(np.argsort(column[positive], kind="stable"),
                           kind="stable")
        codes[positive] = 1 + ranks * bins // len(positive)
    return codes


def _labels(codes, columns):
    if not columns:
        return np.zeros(len(codes), dtype=np.int64)
    _, inverse = np.unique(codes[:, columns], axis=0, return_inverse=True)
    return np.asarray(inverse, dtype=np.int64).ravel()


def _cmi(la, lb, lc, sizes):
    """Вычислить условную взаимную информацию по таблице сопряжённости."""
    ka, kb, kc = sizes
    joint = np.bincount(
        (lc * ka + la) * kb + lb, minlength=ka * kb * kc
    ).reshape(kc, ka, kb).astype(float)
    by_c = joint.sum(axis=(1, 2))[:, None, None]
    by_ac = joint.sum(axis=2)[:, :, None]
    by_bc = joint.sum(axis=1)[:, None, :]
    mask = joint > 0
    ratio = joint[mask] * np.broadcast_to(by_c, joint.shape)[mask] / (
        np.broadcast_to(by_ac, joint.shape)[mask]
        * np.broadcast_to(by_bc, joint.shape)[mask]
    )
    return float(np.sum(joint[mask] * np.log(ratio)) / len(la))


def empirical_ci_test(samples, a, b, c=frozenset(), bins=4,
                      permutations=None, seed=0):
    """Вернуть перестановочное p-значение для гипотезы a ⊥ b | c.

    Метки b переставляются внутри страт по кодам c. Статистикой служит
    условная взаимная информация дискретизированных координат.
    """
    samples = _check_samples(samples)
    a, b, c = as_index_set(a), as_index_set(b), as_index_set(c)
    check_nonempty(a, "a")
    check_nonempty(b, "b")
    check_known(range(samples.shape[1]), a, b, c)
    check_disjoint(a=a, b=b, c=c)
    if int(bins) < 1:
        raise InputError("Число корзин должно быть положительным.")
    permutations = int(permutations or tuning("PERMUTATIONS"))
    generator = stream(check_seed(seed), 0)
    codes = np.column_stack(
        [
            _quantile_codes(samples[:, v], int(bins))
            for v in range(samples.shape[1])
        ]
    )
    la, lb, lc = (_labels(codes, sorted(s)) for s in (a, b, c))
    sizes = (la.max() + 1, lb.max() + 1, lc.max() + 1)
    observed = _cmi(la, lb, lc, sizes)
    order = np.argsort(lc, kind="stable")
    strata = np.split(order, np.flatnonzero(np.diff(lc[order])) + 1)
    exceed = 0
    for _ in range(permutations):
        shuffled = lb.copy()
        for stratum in strata:
            shuffled[stratum] = generator.permutation(lb[stratum])
        if _cmi(la, shuffled, lc, sizes) >= observed - 1e-12:
            exceed += 1
    p_value = (1 + exceed) / (1 + permutations)
    logger.debug("ci test %s|%s|%s: cmi %.4e, p %.4f", sorted(a), sorted(b),
                 sorted(c), observed, p_value)
    return p_value
