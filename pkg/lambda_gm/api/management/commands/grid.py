from api.serializers import (
    CIReportSerializer, GraphSerializer, GridMeasureSerializer,
    MarkovAuditSerializer
)
from api.utils import LambdaGMCommand, load, parse_indices
from measures.grid import ci_check, hc_check, plain_factorization_check

GRAPH_CHECKS = {
    "hc-check": hc_check,
    "plain-check": plain_factorization_check,
}


class Command(LambdaGMCommand):
    help = "Проверки факторизации модифицированных плотностей на сетке."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        ci = actions.add_parser("ci-check")
        ci.add_argument("--measure", required=True)
        ci.add_argument("--a", required=True)
        ci.add_argument("--b", required=True)
        ci.add_argument("--c", default="")
        ci.add_argument("--tol", type=float)
        for name in GRAPH_CHECKS:
            check = actions.add_parser(name)
            check.add_argument("--measure", required=True)
            check.add_argument("--graph", required=True)
            check.add_argument("--tol", type=float)

    def compute(self, **options):
        measure = load(GridMeasureSerializer, options["measure"])
        if options["action"] == "ci-check":
            report = ci_check(
                measure,
                parse_indices(options["a"]),
                parse_indices(options["b"]),
                parse_indices(options["c"]),
                options["tol"],
            )
            return CIReportSerializer(report).data
        graph = load(GraphSerializer, options["graph"])
        audit = GRAPH_CHECKS[options["action"]](measure, graph, options["tol"])
        return MarkovAuditSerializer(audit).data
