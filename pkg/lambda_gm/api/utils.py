import csv
import json
import logging
import math

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from api.serializers import plain
from core.exceptions import InputError, LambdaGMError

logger = logging.getLogger(__name__)

READ_ERROR = "Не удалось прочитать JSON из {path}: {error}"
INDICES_ERROR = "Список индексов '{text}' должен состоять из целых чисел ≥ 1."


def finite_or_none(value):
    value = plain(value)
    if isinstance(value, list):
        return [finite_or_none(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render(data):
    """Сериализовать отчёт детерминированно: ключи по алфавиту."""
    return json.dumps(plain(data), sort_keys=True, ensure_ascii=False)


def read_json(path):
    """Прочитать JSON-файл входных данных."""
    try:
        with open(path, encoding="utf-8") as source:
            return json.load(source)
    except (OSError, ValueError) as error:
        raise InputError(READ_ERROR.format(path=path, error=error))


def build(serializer_class, data):
    """Проверить данные сериализатором и построить объект."""
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise InputError(render(serializer.errors))
    return serializer.save()


def load(serializer_class, path):
    return build(serializer_class, read_json(path))


def load_with_names(serializer_class, path):
    """Вернуть объект и список имён вершин из того же файла."""
    serializer = serializer_class(data=read_json(path))
    if not serializer.is_valid():
        raise InputError(render(serializer.errors))
    data = serializer.validated_data
    names = data["dag"]["vertices"] if "dag" in data else data["vertices"]
    return serializer.save(), list(names)


def parse_indices(text):
    """Разобрать '1,3' в множество индексов {0, 2}."""
    items = [item.strip() for item in str(text or "").split(",")]
    try:
        indices = [int(item) for item in items if item]
    except ValueError:
        raise InputError(INDICES_ERROR.format(text=text))
    if any(index < 1 for index in indices):
        raise InputError(INDICES_ERROR.format(text=text))
    return frozenset(index - 1 for index in indices)


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as target:
        writer = csv.writer(target)
        writer.writerow(header)
        writer.writerows([repr(float(v)) for v in row] for row in rows)


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as target:
        target.write(render(data))
        target.write("\n")


class LambdaGMCommand(BaseCommand):
    """Команда с JSON-отчётом в stdout и кодами завершения 1/2 для ошибок."""

    requires_system_checks = []

    def compute(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            report = self.compute(**options)
        except serializers.ValidationError as error:
            raise CommandError(render(error.detail), returncode=1)
        except LambdaGMError as error:
            logger.debug("%s: %s", type(error).__name__, error)
            raise CommandError(
                f"{type(error).__name__}: {error}",
                returncode=error.returncode,
            )
        except OSError as error:
            raise CommandError(str(error), returncode=1)
        self.stdout.write(render(report))
