"""Встроенные плотности κ и маргинали m, доступные по имени из JSON."""
from core.exceptions import InputError
from extremes.husler_reiss import hr_density
from measures.grid import pareto_margin

KAPPAS = {"hr": hr_density}
MARGINS = {"pareto_margin": pareto_margin}

UNKNOWN_ERROR = "Неизвестное имя {name}; доступны: {known}."


def _parse(name):
    """Разобрать запись вида 'семейство:параметр=значение,...'."""
    family, _, params = str(name).partition(":")
    values = {}
    for item in filter(None, params.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(
                f"Параметр '{item}' должен иметь вид ключ=значение."
            )
        try:
            values[key.strip()] = float(value)
        except ValueError:
            raise InputError(f"Значение параметра '{item}' не число.")
    return family.strip(), values


def resolve_kappa(name):
    family, params = _parse(name)
    if family not in KAPPAS:
        raise InputError(
            UNKNOWN_ERROR.format(name=name, known=sorted(KAPPAS))
        )
    try:
        return KAPPAS[family](**params)
    except TypeError:
        raise InputError(f"Неверные параметры для {family}: {sorted(params)}.")


def resolve_margin(name):
    if name not in MARGINS:
        raise InputError(
            UNKNOWN_ERROR.format(name=name, known=sorted(MARGINS))
        )
    return MARGINS[name]
