"""Схемы JSON-отчётов команд.

Каждая схема отклоняет лишние ключи. Команда, у которой отчёт бывает
нескольких видов (например, с --output и без), перечисляет все виды.
"""
from rest_framework import serializers

EXTRA_KEY_ERROR = "Неожиданное поле отчёта."


def index_list(**kwargs):
    return serializers.ListField(
        child=serializers.IntegerField(min_value=1), **kwargs
    )


def float_matrix(**kwargs):
    return serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(**kwargs))
    )


class StrictSchema(serializers.Serializer):
    """Сериализатор-схема: ключи отчёта должны совпадать с полями."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            extra = sorted(set(data) - set(self.fields))
            if extra:
                raise serializers.ValidationError(
                    {key: [EXTRA_KEY_ERROR] for key in extra}
                )
        return super().to_internal_value(data)


class CIReportSchema(StrictSchema):
    a = index_list(allow_empty=False)
    b = index_list(allow_empty=False)
    c = index_list()
    verdict = serializers.BooleanField()
    witness = serializers.DictField(allow_null=True)


class AuditEntrySchema(StrictSchema):
    prop = serializers.CharField()
    sets = serializers.DictField(child=serializers.ListField())
    holds = serializers.BooleanField()
    witness = serializers.DictField(allow_null=True)


class MarkovAuditSchema(StrictSchema):
    holds = serializers.BooleanField()
    checked = serializers.DictField(
        child=serializers.IntegerField(min_value=0)
    )
    violations = AuditEntrySchema(many=True)

    def validate(self, data):
        if data["holds"] == bool(data["violations"]):
            raise serializers.ValidationError(
                "Поле holds противоречит списку нарушений."
            )
        return data


class FacesSchema(StrictSchema):
    faces = serializers.ListField(child=index_list(allow_empty=False))
    face_bound = MarkovAuditSchema(required=False)


class GridFaceSchema(StrictSchema):
    face = index_list(allow_empty=False)
    density = serializers.ListField(child=serializers.FloatField(min_value=0))


class GridSchema(StrictSchema):
    axes = serializers.ListField(
        child=serializers.ListField(
            child=serializers.FloatField(), allow_empty=False
        ),
        allow_empty=False,
    )
    faces = GridFaceSchema(many=True)


class GridFileSchema(StrictSchema):
    output = serializers.CharField()
    faces = serializers.IntegerField(min_value=0)


class ChiValueSchema(StrictSchema):
    chi = serializers.FloatField(min_value=0)


class ChiMatrixSchema(StrictSchema):
    chi = float_matrix(min_value=0)


class HRChiSchema(StrictSchema):
    vertices = serializers.ListField(child=serializers.CharField())
    chi = float_matrix(min_value=0)
    gamma = float_matrix(min_value=0, allow_null=True)


class SamplesSchema(StrictSchema):
    columns = serializers.ListField(child=serializers.CharField())
    samples = float_matrix(min_value=0)


class SamplesFileSchema(StrictSchema):
    output = serializers.CharField()
    sidecar = serializers.CharField()
    n = serializers.IntegerField(min_value=1)


class EtaSchema(StrictSchema):
    eta_closed = serializers.FloatField()
    eta_fit = serializers.FloatField()
    u = serializers.ListField(child=serializers.FloatField())


class CountSchema(StrictSchema):
    count = serializers.IntegerField(min_value=0)


class CliqueOrderingSchema(StrictSchema):
    cliques = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), allow_empty=False
        )
    )
    separators = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField())
    )


REPORT_SCHEMAS = {
    "ci-atomic": (CIReportSchema,),
    "audit-semigraphoid": (MarkovAuditSchema,),
    "faces": (FacesSchema,),
    "rays ci": (CIReportSchema,),
    "rays chi": (ChiValueSchema, ChiMatrixSchema),
    "maxlinear verify-markov": (MarkovAuditSchema,),
    "maxlinear simulate": (SamplesSchema, SamplesFileSchema),
    "grid ci-check": (CIReportSchema,),
    "grid hc-check": (MarkovAuditSchema,),
    "grid plain-check": (MarkovAuditSchema,),
    "hr chi": (HRChiSchema,),
    "hr build": (GridSchema, GridFileSchema),
    "eta": (EtaSchema,),
    "graph count-subgraphs": (CountSchema,),
    "graph clique-ordering": (CliqueOrderingSchema,),
}


def validate_report(name, report):
    """Проверить отчёт команды name хотя бы одной из её схем.

    Возвращает проверенные данные; иначе ValidationError с ошибками
    всех схем.
    """
    errors = {}
    for schema in REPORT_SCHEMAS[name]:
        serializer = schema(data=report)
        if serializer.is_valid():
            return serializer.validated_data
        errors[schema.__name__] = serializer.errors
    raise serializers.ValidationError(errors)
