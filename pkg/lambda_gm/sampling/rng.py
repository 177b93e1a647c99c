"""Счётчиковые потоки Philox, по одному на блок строк выборки."""
import numpy as np

from core.exceptions import InputError
from core.utils import tuning

SEED_ERROR = "seed должен быть целым числом из [0, 2^64)."
SIZE_ERROR = "Размер выборки должен быть положительным целым числом."


def check_seed(seed):
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2 ** 64:
        raise InputError(SEED_ERROR)
    return int(seed)


def check_size(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InputError(SIZE_ERROR)
    return int(n)


def stream(seed, stream_id):
    """Вернуть генератор с ключом (seed, stream_id)."""
    key = check_seed(seed) << 64 | int(stream_id)
    return np.random.Generator(np.random.Philox(key=key))


def blocks(n):
    """Разбить n строк на блоки фиксированного размера из настроек."""
    size = tuning("SAMPLING_BLOCK")
    return [
        (block_id, start, min(start + size, n))
        for block_id, start in enumerate(range(0, n, size))
    ]
