import numpy as np

from core.exceptions import DimensionMismatch, InputError, NonFinite


WEIGHT_ERROR = "Веса должны быть положительными и конечными."
ORIGIN_ERROR = "Атом в начале координат недопустим."
SHAPE_ERROR = "Ожидалась размерность {expected}, получено {actual}."
ALPHA_ERROR = "Показатель однородности alpha должен быть положительным."


def validate_points(points, d):
    """Проверить массив точек формы (k, d)."""
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return np.zeros((0, d))
    if points.ndim != 2 or points.shape[1] != d:
        raise DimensionMismatch(
            SHAPE_ERROR.format(expected=d, actual=points.shape[-1])
        )
    if not np.all(np.isfinite(points)):
        raise NonFinite("Координаты атомов должны быть конечными.")
    return points


def validate_weights(weights):
    weights = np.asarray(weights, dtype=float)
    if np.any(~np.isfinite(weights)) or np.any(weights <= 0):
        raise InputError(WEIGHT_ERROR)
    return weights


def validate_alpha(alpha):
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= 0:
        raise InputError(ALPHA_ERROR)
    return alpha


def validate_dimension(d):
    d = int(d)
    if d < 1:
        raise InputError("Размерность должна быть не меньше 1.")
    return d
