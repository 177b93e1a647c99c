import logging
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings

from core.exceptions import (
    EmptyIndexSet, OverlappingSets, ToleranceNotPositive, UnknownVertex
)

logger = logging.getLogger(__name__)

OVERLAP_ERROR = "Множества {first} и {second} пересекаются."
UNKNOWN_ERROR = "Индексы {indices} отсутствуют среди {known}."
TOLERANCE_ERROR = "Допуск должен быть положительным, получено {tol}."


def tuning(name):
    """Вернуть параметр из настроек LAMBDA_GM."""
    return settings.LAMBDA_GM[name]


def thread_count():
    return max(1, int(tuning("THREADS")))


def parallel_map(func, items):
    """Применить func к элементам в пуле потоков, сохранив порядок."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def as_index_set(values):
    return frozenset(int(v) for v in values)


def check_known(known, *groups):
    known = frozenset(known)
    for group in groups:
        unknown = frozenset(group) - known
        if unknown:
            raise UnknownVertex(
                UNKNOWN_ERROR.format(
                    indices=sorted(unknown), known=sorted(known)
                )
            )


def check_disjoint(**groups):
    """Проверить попарную непересекаемость именованных множеств."""
    names = list(groups)
    for i, first in enumerate(names):
        for second in names[i + 1:]:
            if frozenset(groups[first]) & frozenset(groups[second]):
                raise OverlappingSets(
                    OVERLAP_ERROR.format(first=first, second=second)
                )


def check_nonempty(dset, name="dset"):
    if not dset:
        raise EmptyIndexSet(f"Множество индексов {name} пусто.")


def check_tolerance(tol):
    if not tol > 0:
        raise ToleranceNotPositive(TOLERANCE_ERROR.format(tol=tol))
    return float(tol)
