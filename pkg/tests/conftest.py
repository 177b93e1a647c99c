import os

import pytest

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
PROJECT_DIR_NAME = 'lambda_gm'
MANAGE_PATH = os.path.join(BASE_DIR, PROJECT_DIR_NAME)

root_dir_content = os.listdir(BASE_DIR)
assert os.path.isdir(MANAGE_PATH), (
    f'В директории `{BASE_DIR}` не найдена папка `{PROJECT_DIR_NAME}` '
    'с manage.py и пакетом настроек.'
)
project_dir_content = os.listdir(MANAGE_PATH)
for required in ('manage.py', PROJECT_DIR_NAME):
    assert required in project_dir_content, (
        f'В директории `{MANAGE_PATH}` не найден `{required}`.'
    )

pytest_plugins = [
    'tests.fixtures.fixture_graphs',
    'tests.fixtures.fixture_measures',
]


@pytest.fixture
def tuning(settings):
    """Переопределить ключи settings.LAMBDA_GM до конца теста."""
    def override(**values):
        settings.LAMBDA_GM = {**settings.LAMBDA_GM, **values}
    return override
