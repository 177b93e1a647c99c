import itertools

from api.serializers import ForestSerializer, GridMeasureSerializer
from api.utils import (
    LambdaGMCommand, finite_or_none, load_with_names, write_json
)
from core.exceptions import InputError
from core.utils import parallel_map
from extremes.husler_reiss import (
    build_grid, chi_forest, chi_quadrature, tree_complete_gamma
)
from measures.grid import AxisGrid

NODES_FORMAT = "Ожидался формат --nodes low,high,count."


def parse_nodes(text):
    try:
        low, high, count = text.split(",")
        return AxisGrid.geometric(float(low), float(high), int(count))
    except ValueError:
        raise InputError(NODES_FORMAT)


def chi_numeric(spec):
    """Вычислить матрицу χ квадратурой по всем парам вершин."""
    d = len(spec.forest)
    chi = [[1.0] * d for _ in range(d)]
    pairs = list(itertools.combinations(range(d), 2))
    values = parallel_map(lambda pair: chi_quadrature(spec, *pair), pairs)
    for (i, j), value in zip(pairs, values):
        chi[i][j] = chi[j][i] = value
    return chi


class Command(LambdaGMCommand):
    help = "χ и плотности на сетке для лесов Хюслера–Райсса."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        chi = actions.add_parser("chi")
        chi.add_argument("--spec", required=True)
        chi.add_argument("--numeric", action="store_true")
        build = actions.add_parser("build")
        build.add_argument("--spec", required=True)
        build.add_argument("--nodes", default="0.05,50,40")
        build.add_argument("--output")

    def compute(self, **options):
        spec, names = load_with_names(ForestSerializer, options["spec"])
        if options["action"] == "chi":
            if options["numeric"]:
                chi = chi_numeric(spec)
            else:
                chi = chi_forest(spec).tolist()
            return {
                "vertices": names,
                "chi": chi,
                "gamma": finite_or_none(tree_complete_gamma(spec)),
            }
        measure = build_grid(spec, parse_nodes(options["nodes"]))
        data = GridMeasureSerializer(measure).data
        if not options["output"]:
            return data
        write_json(options["output"], data)
        return {"output": options["output"], "faces": len(data["faces"])}
