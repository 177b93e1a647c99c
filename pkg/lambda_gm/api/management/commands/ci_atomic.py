from api.serializers import AtomicMeasureSerializer, CIReportSerializer
from api.utils import LambdaGMCommand, load, parse_indices
from measures.atomic import ci_oracle


class Command(LambdaGMCommand):
    help = "Проверяет a ⊥ b | c для конечной атомарной меры."

    def add_arguments(self, parser):
        parser.add_argument("--measure", required=True)
        parser.add_argument("--a", required=True)
        parser.add_argument("--b", required=True)
        parser.add_argument("--c", default="")

    def compute(self, **options):
        measure = load(AtomicMeasureSerializer, options["measure"])
        report = ci_oracle(
            measure,
            parse_indices(options["a"]),
            parse_indices(options["b"]),
            parse_indices(options["c"]),
        )
        return CIReportSerializer(report).data
