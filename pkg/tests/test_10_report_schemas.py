import json
from io import StringIO

import pytest
from django.core.management import call_command
from rest_framework import serializers

from api.cli import COMMANDS
from api.schemas import REPORT_SCHEMAS, validate_report
from extremes.husler_reiss import HRForestSpec, chi_forest
from graphs.structures import Dag, UndirectedGraph
from measures.rays import MaxLinearSpec
from sampling.samplers import sample_maxlinear

INPUTS = {
    'atomic': {
        'd': 3,
        'atoms': [{'y': [0, 0, 1], 'w': 1.0}, {'y': [1, 1, 1], 'w': 1.0}],
    },
    'rays': {
        'd': 2,
        'rays': [{'dir': [1, 1], 'c': 1.0}, {'dir': [0, 1], 'c': 1.0}],
    },
    'chain': {
        'vertices': ['1', '2', '3'], 'edges': [['1', '2'], ['2', '3']],
    },
    'dag': {
        'dag': {
            'vertices': ['1', '2', '3'], 'arcs': [['1', '2'], ['2', '3']],
        },
        'beta': [
            {'arc': ['1', '2'], 'v': 2.0}, {'arc': ['2', '3'], 'v': 0.5},
        ],
    },
    'grid': {'construction': {
        'kind': 'trivariate',
        'grid': {'geometric': [0.05, 50, 14]},
        'p12': 0.4,
        'p23': 0.7,
        'kappa12': 'hr:gamma=1',
        'kappa23': 'hr:gamma=2',
    }},
    'hr': {
        'vertices': ['a', 'b', 'c'],
        'edges': [{'e': ['a', 'b'], 'gamma': 1.0}],
    },
}

CASES = [
    ('ci-atomic', ['--measure', '{atomic}', '--a', '1', '--b', '2,3']),
    ('ci-atomic', ['--measure', '{atomic}', '--a', '1', '--b', '2']),
    ('audit-semigraphoid', ['--measure', '{atomic}']),
    ('faces', ['--measure', '{atomic}', '--graph', '{chain}']),
    ('faces', ['--measure', '{grid}']),
    ('rays ci', ['--measure', '{rays}', '--a', '1', '--b', '2']),
    ('rays chi', ['--measure', '{rays}', '--standardize']),
    ('rays chi', ['--measure', '{rays}', '--standardize', '--i', '1',
                  '--j', '2']),
    ('maxlinear verify-markov', ['--spec', '{dag}']),
    ('maxlinear verify-markov', ['--spec', '{dag}', '--global',
                                 '--mode', 'sum']),
    ('maxlinear simulate', ['--spec', '{dag}', '-n', '20', '--seed', '1']),
    ('maxlinear simulate', ['--spec', '{dag}', '-n', '20',
                            '--output', '{out}']),
    ('grid ci-check', ['--measure', '{grid}', '--a', '1', '--b', '3',
                       '--c', '2']),
    ('grid hc-check', ['--measure', '{grid}', '--graph', '{chain}']),
    ('grid plain-check', ['--measure', '{grid}', '--graph', '{chain}']),
    ('hr chi', ['--spec', '{hr}']),
    ('hr build', ['--spec', '{hr}', '--nodes', '0.1,10,6']),
    ('hr build', ['--spec', '{hr}', '--nodes', '0.1,10,6',
                  '--output', '{out}']),
    ('eta', ['--a', '0.5', '--umin', '2', '--umax', '3', '--points', '4']),
    ('graph count-subgraphs', ['--graph', '{chain}']),
    ('graph clique-ordering', ['--graph', '{chain}']),
]


@pytest.fixture
def paths(tmp_path):
    written = {'out': str(tmp_path / 'output')}
    for key, data in INPUTS.items():
        path = tmp_path / f'{key}.json'
        path.write_text(json.dumps(data), encoding='utf-8')
        written[key] = str(path)
    return written


def execute(name, argv, paths):
    command, *action = name.split()
    stdout = StringIO()
    call_command(
        COMMANDS[command], *action, *(arg.format(**paths) for arg in argv),
        stdout=stdout,
    )
    return json.loads(stdout.getvalue())


class Test10ReportSchemas:

    def test_00_every_action_has_schema(self):
        covered = {name for name, _ in CASES}
        assert covered == set(REPORT_SCHEMAS), (
            'Проверьте, что для каждой команды и действия есть схема отчёта '
            'и пример запуска.'
        )
        assert {name.split()[0] for name in REPORT_SCHEMAS} == set(COMMANDS)

    @pytest.mark.parametrize(
        'name,argv', CASES, ids=[name for name, _ in CASES]
    )
    def test_01_report_matches_schema(self, paths, name, argv):
        report = execute(name, argv, paths)
        try:
            validate_report(name, report)
        except serializers.ValidationError as error:
            pytest.fail(
                f'Проверьте формат отчёта `{name}`: {error.detail}'
            )

    def test_02_extra_key_rejected(self, paths):
        report = execute('ci-atomic', CASES[0][1], paths)
        report['comment'] = 'лишнее'
        with pytest.raises(serializers.ValidationError):
            validate_report('ci-atomic', report)

    def test_03_missing_key_rejected(self, paths):
        report = execute('graph clique-ordering', CASES[-1][1], paths)
        del report['separators']
        with pytest.raises(serializers.ValidationError):
            validate_report('graph clique-ordering', report)

    def test_04_inconsistent_audit_rejected(self, paths):
        report = execute('audit-semigraphoid', CASES[2][1], paths)
        assert report['violations'], (
            'Проверьте, что мера из двух атомов нарушает L4.'
        )
        report['holds'] = True
        with pytest.raises(serializers.ValidationError):
            validate_report('audit-semigraphoid', report)


class Test10FloatOutput:

    def test_00_chi_round_trips(self, paths):
        report = execute('hr chi', ['--spec', '{hr}'], paths)
        forest = UndirectedGraph.build(range(3), [(0, 1)])
        chi = chi_forest(HRForestSpec.build(forest, {(0, 1): 1.0}))
        assert report['chi'][0][1] == chi[0, 1], (
            'Проверьте, что χ в отчёте совпадает с вычисленным значением '
            'до последнего бита.'
        )

    def test_01_samples_round_trip(self, paths):
        report = execute(
            'maxlinear simulate', ['--spec', '{dag}', '-n', '20',
                                   '--seed', '1'], paths
        )
        spec = MaxLinearSpec.build(
            Dag.build(range(3), [(0, 1), (1, 2)]),
            {(0, 1): 2.0, (1, 2): 0.5},
        )
        assert report['samples'] == sample_maxlinear(spec, 20, 1).tolist(), (
            'Проверьте, что выборка в отчёте воспроизводит значения '
            'без потери точности.'
        )
