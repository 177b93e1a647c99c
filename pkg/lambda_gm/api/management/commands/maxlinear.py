import os

from api.serializers import MarkovAuditSerializer, MaxLinearSerializer
from api.utils import (
    LambdaGMCommand, load_with_names, write_csv, write_json
)
from measures.rays import MODES, verify_directed_markov
from sampling.samplers import sample_maxlinear


class Command(LambdaGMCommand):
    help = "Проверяет свойства Маркова max-linear модели и генерирует выборки."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        verify = actions.add_parser("verify-markov")
        verify.add_argument("--spec", required=True)
        verify.add_argument(
            "--global", dest="global_level", action="store_true"
        )
        verify.add_argument("--mode", choices=MODES, default="max")
        simulate = actions.add_parser("simulate")
        simulate.add_argument("--spec", required=True)
        simulate.add_argument("-n", type=int, required=True)
        simulate.add_argument("--seed", type=int, default=0)
        simulate.add_argument("--output")

    def compute(self, **options):
        spec, names = load_with_names(MaxLinearSerializer, options["spec"])
        if options["action"] == "verify-markov":
            level = "global" if options["global_level"] else "local"
            audit = verify_directed_markov(spec, level, options["mode"])
            return MarkovAuditSerializer(audit, context={"names": names}).data
        samples = sample_maxlinear(spec, options["n"], options["seed"])
        header = [f"y{k + 1}" for k in range(spec.d)]
        if not options["output"]:
            return {"columns": header, "samples": samples.tolist()}
        output = options["output"]
        sidecar = f"{output}.json"
        write_csv(output, header, samples)
        write_json(sidecar, {
            "spec": os.path.abspath(options["spec"]),
            "n": options["n"],
            "seed": options["seed"],
            "vertices": names,
            "columns": header,
        })
        return {"output": output, "sidecar": sidecar, "n": options["n"]}
