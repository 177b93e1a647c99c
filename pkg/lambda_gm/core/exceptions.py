class LambdaGMError(Exception):
    """Базовая ошибка вычислений lambda_gm."""

    returncode = 1


class InputError(LambdaGMError):
    """Некорректные входные данные."""


class ResourceGuardError(LambdaGMError):
    """Сработало ограничение на объём перебора или квадратуры."""

    returncode = 2


class OverlappingSets(InputError):
    pass


class UnknownVertex(InputError):
    pass


class EmptyIndexSet(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotDecomposable(InputError):
    pass


class NotForest(InputError):
    pass


class CyclicGraph(InputError):
    pass


class InconsistentMargins(InputError):
    pass


class MarginMismatch(InputError):
    pass


class EpsBelowGrid(InputError):
    pass


class ToleranceNotPositive(InputError):
    pass


class UnsupportedInnovation(InputError):
    pass


class UnchargedCoordinate(InputError):
    pass


class UnchargedDirection(InputError):
    pass


class NotStandardized(InputError):
    pass


class NonFinite(InputError):
    pass


class RhoOutOfRange(InputError):
    pass


class OutOfRange(InputError):
    pass


class DomainError(InputError):
    pass


class NonPositiveSurvival(InputError):
    pass


class TooFewSamples(InputError):
    pass


class TooLarge(ResourceGuardError):
    pass


class TooManyCells(ResourceGuardError):
    pass


class QuadratureBudgetExceeded(ResourceGuardError):
    pass
