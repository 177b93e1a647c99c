from api.serializers import (
    AtomicMeasureSerializer, GraphSerializer, GridMeasureSerializer,
    MarkovAuditSerializer, RayMeasureSerializer
)
from api.utils import LambdaGMCommand, build, load, read_json
from measures.atomic import charged_faces, face_bound_check


def measure_serializer(data):
    """Выбрать сериализатор по ключам JSON меры."""
    if isinstance(data, dict) and "atoms" in data:
        return AtomicMeasureSerializer
    if isinstance(data, dict) and "rays" in data:
        return RayMeasureSerializer
    return GridMeasureSerializer


class Command(LambdaGMCommand):
    help = "Выводит заряженные грани меры и проверяет их связность в графе."

    def add_arguments(self, parser):
        parser.add_argument("--measure", required=True)
        parser.add_argument("--graph")

    def compute(self, **options):
        data = read_json(options["measure"])
        measure = build(measure_serializer(data), data)
        if hasattr(measure, "charged_faces"):
            faces = measure.charged_faces()
        else:
            faces = charged_faces(measure)
        report = {
            "faces": [
                [v + 1 for v in sorted(face)]
                for face in sorted(faces, key=lambda f: (len(f), sorted(f)))
            ],
        }
        if options["graph"]:
            graph = load(GraphSerializer, options["graph"])
            audit = face_bound_check(measure, graph)
            report["face_bound"] = MarkovAuditSerializer(audit).data
        return report
