from api.serializers import AtomicMeasureSerializer, MarkovAuditSerializer
from api.utils import LambdaGMCommand, load
from measures.atomic import semigraphoid_audit


class Command(LambdaGMCommand):
    help = "Проверяет аксиомы полуграфоида L1–L4 для атомарной меры."

    def add_arguments(self, parser):
        parser.add_argument("--measure", required=True)

    def compute(self, **options):
        measure = load(AtomicMeasureSerializer, options["measure"])
        return MarkovAuditSerializer(semigraphoid_audit(measure)).data
