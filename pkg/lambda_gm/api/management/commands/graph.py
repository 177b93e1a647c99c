from api.serializers import GraphSerializer
from api.utils import LambdaGMCommand, load_with_names
from graphs.algorithms import clique_ordering, count_connected_subgraphs


class Command(LambdaGMCommand):
    help = "Комбинаторика графов: связные подграфы и порядок клик."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        for name in ("count-subgraphs", "clique-ordering"):
            actions.add_parser(name).add_argument("--graph", required=True)

    def compute(self, **options):
        graph, names = load_with_names(GraphSerializer, options["graph"])
        if options["action"] == "count-subgraphs":
            return {"count": count_connected_subgraphs(graph)}
        ordering = clique_ordering(graph)
        return {
            "cliques": [
                [names[v] for v in sorted(c)] for c in ordering.cliques
            ],
            "separators": [
                [names[v] for v in sorted(s)] for s in ordering.separators
            ],
        }
