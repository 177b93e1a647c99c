import numpy as np
from rest_framework import serializers

from api.registry import resolve_kappa, resolve_margin
from extremes.husler_reiss import HRForestSpec, build_grid, caveat_chain
from graphs.structures import Dag, UndirectedGraph
from measures.atomic import AtomicMeasure
from measures.grid import AxisGrid, GridMeasure, generic_trivariate
from measures.rays import Innovation, MaxLinearSpec, RayMeasure


NAME_ERROR = "Неизвестная вершина {name}."
DUPLICATE_ERROR = "Имена вершин должны быть уникальны."
LENGTH_ERROR = "Длина вектора {got} не совпадает с размерностью {d}."
COORDINATE_ERROR = "Координата {index} вне диапазона 1..{d}."


def plain(value):
    """Привести numpy-значения и множества к типам JSON."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [plain(v) for v in sorted(value)]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _index(names, name):
    try:
        return names.index(str(name))
    except ValueError:
        raise serializers.ValidationError(NAME_ERROR.format(name=name))


class NamedVerticesMixin:
    def validate_vertices(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError(DUPLICATE_ERROR)
        return value


class GraphSerializer(NamedVerticesMixin, serializers.Serializer):
    vertices = serializers.ListField(
        child=serializers.CharField(), allow_empty=False
    )
    edges = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), min_length=2, max_length=2
        ),
        default=list,
    )

    def validate(self, data):
        names = data["vertices"]
        data["pairs"] = [
            (_index(names, u), _index(names, v)) for u, v in data["edges"]
        ]
        return data

    def create(self, validated_data):
        return UndirectedGraph.build(
            range(len(validated_data["vertices"])), validated_data["pairs"]
        )


class DagSerializer(NamedVerticesMixin, serializers.Serializer):
    vertices = serializers.ListField(
        child=serializers.CharField(), allow_empty=False
    )
    arcs = serializers.ListField(
        child=serializers.ListField(
            child=serializers.CharField(), min_length=2, max_length=2
        ),
        default=list,
    )

    def validate(self, data):
        names = data["vertices"]
        data["pairs"] = [
            (_index(names, u), _index(names, v)) for u, v in data["arcs"]
        ]
        return data

    def create(self, validated_data):
        return Dag.build(
            range(len(validated_data["vertices"])), validated_data["pairs"]
        )


class AtomSerializer(serializers.Serializer):
    y = serializers.ListField(
        child=serializers.FloatField(), allow_empty=False
    )
    w = serializers.FloatField()


class AtomicMeasureSerializer(serializers.Serializer):
    d = serializers.IntegerField(min_value=1)
    atoms = AtomSerializer(many=True)

    def validate(self, data):
        for atom in data["atoms"]:
            if len(atom["y"]) != data["d"]:
                raise serializers.ValidationError(
                    LENGTH_ERROR.format(got=len(atom["y"]), d=data["d"])
                )
        return data

    def create(self, validated_data):
        return AtomicMeasure.build(
            validated_data["d"],
            [(atom["y"], atom["w"]) for atom in validated_data["atoms"]],
        )


class RaySerializer(serializers.Serializer):
    dir = serializers.ListField(
        child=serializers.FloatField(), allow_empty=False
    )
    c = serializers.FloatField()


class RayMeasureSerializer(serializers.Serializer):
    d = serializers.IntegerField(min_value=1)
    alpha = serializers.FloatField(default=1.0)
    rays = RaySerializer(many=True)

    def validate(self, data):
        for ray in data["rays"]:
            if len(ray["dir"]) != data["d"]:
                raise serializers.ValidationError(
                    LENGTH_ERROR.format(got=len(ray["dir"]), d=data["d"])
                )
        return data

    def create(self, validated_data):
        return RayMeasure.build(
            validated_data["d"],
            validated_data["alpha"],
            [(ray["dir"], ray["c"]) for ray in validated_data["rays"]],
        )


class BetaSerializer(serializers.Serializer):
    arc = serializers.ListField(
        child=serializers.CharField(), min_length=2, max_length=2
    )
    v = serializers.FloatField()


class InnovationSerializer(serializers.Serializer):
    kind = serializers.CharField(default="frechet")
    alpha = serializers.FloatField(default=1.0)
    scale = serializers.FloatField(default=1.0)


class MaxLinearSerializer(serializers.Serializer):
    dag = DagSerializer()
    beta = BetaSerializer(many=True, default=list)
    diag = serializers.DictField(child=serializers.FloatField(), default=dict)
    alpha = serializers.FloatField(default=1.0)
    innovations = InnovationSerializer(many=True, required=False)

    def validate(self, data):
        names = data["dag"]["vertices"]
        data["beta_map"] = {
            (_index(names, item["arc"][0]), _index(names, item["arc"][1])):
                item["v"]
            for item in data["beta"]
        }
        data["diag_map"] = {
            _index(names, name): value for name, value in data["diag"].items()
        }
        innovations = data.get("innovations")
        if innovations is not None and len(innovations) != len(names):
            raise serializers.ValidationError(
                "Инновации должны быть заданы для каждой вершины."
            )
        return data

    def create(self, validated_data):
        dag = DagSerializer().create(validated_data["dag"])
        innovations = validated_data.get("innovations")
        if innovations is not None:
            innovations = [Innovation(**item) for item in innovations]
        return MaxLinearSpec.build(
            dag,
            validated_data["beta_map"],
            validated_data["diag_map"],
            innovations,
            validated_data["alpha"],
        )


class ForestEdgeSerializer(serializers.Serializer):
    e = serializers.ListField(
        child=serializers.CharField(), min_length=2, max_length=2
    )
    gamma = serializers.FloatField()
    p = serializers.FloatField(default=1.0)


class ForestSerializer(serializers.Serializer):
    vertices = serializers.ListField(
        child=serializers.CharField(), required=False
    )
    edges = ForestEdgeSerializer(many=True)

    def validate(self, data):
        names = list(data.get("vertices") or [])
        for edge in data["edges"]:
            for name in edge["e"]:
                if name not in names:
                    names.append(name)
        data["vertices"] = names
        data["pairs"] = [
            (names.index(u), names.index(v)) for u, v in
            (edge["e"] for edge in data["edges"])
        ]
        return data

    def create(self, validated_data):
        pairs = validated_data["pairs"]
        forest = UndirectedGraph.build(
            range(len(validated_data["vertices"])), pairs
        )
        edges = validated_data["edges"]
        return HRForestSpec.build(
            forest,
            {pair: edge["gamma"] for pair, edge in zip(pairs, edges)},
            {pair: edge["p"] for pair, edge in zip(pairs, edges)},
        )


class AxisField(serializers.Field):
    """Ось сетки: список узлов или {"geometric": [low, high, count]}."""

    def to_internal_value(self, data):
        try:
            if isinstance(data, dict):
                low, high, count = data["geometric"]
                return AxisGrid.geometric(float(low), float(high), int(count))
            return AxisGrid([float(v) for v in data])
        except (KeyError, TypeError, ValueError):
            raise serializers.ValidationError("Некорректное описание оси.")

    def to_representation(self, value):
        return [float(v) for v in value.nodes]


class IndexSetField(serializers.Field):
    """Множество индексов: 1-based в JSON либо имена вершин из контекста."""

    def to_internal_value(self, data):
        try:
            return frozenset(int(v) - 1 for v in data)
        except (TypeError, ValueError):
            raise serializers.ValidationError(
                "Ожидался список номеров координат."
            )

    def to_representation(self, value):
        names = self.context.get("names")
        if names is not None:
            return [names[v] for v in sorted(value)]
        return [int(v) + 1 for v in sorted(value)]


class FaceSerializer(serializers.Serializer):
    face = IndexSetField()
    density = serializers.ListField(child=serializers.FloatField())


class GridConstructionSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(
        choices=("trivariate", "hr_forest", "caveat_chain")
    )
    grid = AxisField()
    p12 = serializers.FloatField(default=1.0)
    p23 = serializers.FloatField(default=1.0)
    kappa12 = serializers.CharField(default="hr:gamma=1")
    kappa23 = serializers.CharField(default="hr:gamma=1")
    margin = serializers.CharField(default="pareto_margin")
    forest = ForestSerializer(required=False)
    gamma34 = serializers.FloatField(default=1.0)
    gamma45 = serializers.FloatField(default=1.0)

    def validate(self, data):
        if data["kind"] == "hr_forest" and "forest" not in data:
            raise serializers.ValidationError("Для hr_forest нужен лес.")
        return data

    def create(self, validated_data):
        kind, grid = validated_data["kind"], validated_data["grid"]
        if kind == "hr_forest":
            spec = ForestSerializer().create(validated_data["forest"])
            return build_grid(spec, grid)
        if kind == "caveat_chain":
            return caveat_chain(
                grid,
                gamma34=validated_data["gamma34"],
                gamma45=validated_data["gamma45"],
            )
        return generic_trivariate(
            validated_data["p12"],
            validated_data["p23"],
            resolve_kappa(validated_data["kappa12"]),
            resolve_kappa(validated_data["kappa23"]),
            resolve_margin(validated_data["margin"]),
            grid,
        )


class GridMeasureSerializer(serializers.Serializer):
    axes = serializers.ListField(child=AxisField(), required=False)
    faces = FaceSerializer(many=True, required=False)
    construction = GridConstructionSerializer(required=False)

    def validate(self, data):
        if "construction" in data:
            return data
        if "axes" not in data:
            raise serializers.ValidationError(
                "Нужны поля axes и faces либо construction."
            )
        d = len(data["axes"])
        for item in data.get("faces", []):
            for index in item["face"]:
                if not 0 <= index < d:
                    raise serializers.ValidationError(
                        COORDINATE_ERROR.format(index=index + 1, d=d)
                    )
        return data

    def create(self, validated_data):
        if "construction" in validated_data:
            return GridConstructionSerializer().create(
                validated_data["construction"]
            )
        faces = {}
        for item in validated_data.get("faces", []):
            faces[item["face"]] = item["density"]
        return GridMeasure.from_faces(validated_data["axes"], faces)

    def to_representation(self, instance):
        return {
            "axes": [AxisField().to_representation(a) for a in instance.axes],
            "faces": [
                {
                    "face": [v + 1 for v in sorted(face)],
                    "density": [float(v) for v in instance.face(face).ravel()],
                }
                for face in sorted(instance.charged_faces(),
                                   key=lambda f: (len(f), sorted(f)))
            ],
        }


class WitnessField(serializers.Field):
    """Свидетель нарушения; индексы осей выводятся с единицы."""

    def to_representation(self, value):
        value = plain(value)
        if isinstance(value, dict) and "axes" in value:
            value["axes"] = [v + 1 for v in value["axes"]]
        return value


class CIReportSerializer(serializers.Serializer):
    a = IndexSetField()
    b = IndexSetField()
    c = IndexSetField()
    verdict = serializers.BooleanField()
    witness = WitnessField()


class AuditEntrySerializer(serializers.Serializer):
    prop = serializers.CharField()
    sets = serializers.DictField(child=IndexSetField())
    holds = serializers.BooleanField()
    witness = WitnessField()


class MarkovAuditSerializer(serializers.Serializer):
    holds = serializers.BooleanField()
    checked = serializers.SerializerMethodField()
    violations = AuditEntrySerializer(many=True)

    def get_checked(self, audit):
        counts = {}
        for entry in audit.entries:
            counts[entry.prop] = counts.get(entry.prop, 0) + 1
        return counts
