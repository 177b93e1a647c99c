"""Точка входа командной строки: python -m api.cli <команда> [опции]."""
import os
import sys

import django
from django.core.management import call_command
from django.core.management.base import CommandError

COMMANDS = {
    "ci-atomic": "ci_atomic",
    "audit-semigraphoid": "audit_semigraphoid",
    "faces": "faces",
    "rays": "rays",
    "maxlinear": "maxlinear",
    "grid": "grid",
    "hr": "hr",
    "eta": "eta",
    "graph": "graph",
}
USAGE = "Использование: lambda_gm <{}> [опции]\n".format("|".join(COMMANDS))


def run(argv=None, stdout=None, stderr=None):
    """Выполнить команду и вернуть код завершения.

    0 означает построенный отчёт, 1 ошибку ввода, 2 ограничение ресурсов.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in COMMANDS:
        stderr.write(USAGE)
        return 1
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "lambda_gm.settings")
    django.setup()
    try:
        call_command(
            COMMANDS[argv[0]], *argv[1:], stdout=stdout, stderr=stderr
        )
    except CommandError as error:
        stderr.write(f"{error}\n")
        return error.returncode
    except SystemExit as error:
        return 0 if error.code in (None, 0) else 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
