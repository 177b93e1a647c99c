from api.serializers import CIReportSerializer, RayMeasureSerializer
from api.utils import LambdaGMCommand, load, parse_indices
from measures.rays import chi_rays, ci_oracle_rays, standardize_margins


class Command(LambdaGMCommand):
    help = "Точный CI-оракул и χ для однородных мер на лучах."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        ci = actions.add_parser("ci")
        ci.add_argument("--measure", required=True)
        ci.add_argument("--a", required=True)
        ci.add_argument("--b", required=True)
        ci.add_argument("--c", default="")
        chi = actions.add_parser("chi")
        chi.add_argument("--measure", required=True)
        chi.add_argument("--i", type=int)
        chi.add_argument("--j", type=int)
        chi.add_argument("--standardize", action="store_true")

    def compute(self, **options):
        measure = load(RayMeasureSerializer, options["measure"])
        if options["action"] == "ci":
            report = ci_oracle_rays(
                measure,
                parse_indices(options["a"]),
                parse_indices(options["b"]),
                parse_indices(options["c"]),
            )
            return CIReportSerializer(report).data
        if options["standardize"]:
            measure = standardize_margins(measure)
        if options["i"] is not None and options["j"] is not None:
            (i,), (j,) = (parse_indices(options[k]) for k in ("i", "j"))
            return {"chi": chi_rays(measure, i, j)}
        return {
            "chi": [
                [chi_rays(measure, i, j) for j in range(measure.d)]
                for i in range(measure.d)
            ]
        }
