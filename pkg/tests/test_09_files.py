import os

from tests.conftest import (
    BASE_DIR, MANAGE_PATH, project_dir_content, root_dir_content
)

APPS = ('core', 'graphs', 'measures', 'extremes', 'sampling', 'api')

api_path = os.path.join(MANAGE_PATH, 'api')
if 'api' in project_dir_content and os.path.isdir(api_path):
    api_dir_content = os.listdir(api_path)
    assert 'models.py' not in api_dir_content, (
        f'В директории `{api_path}` не должно быть файла с моделями. '
        'Все объекты строятся из JSON и не хранятся в базе.'
    )
else:
    assert False, f'Не найдено приложение `api` в папке {MANAGE_PATH}'

for app in APPS:
    assert 'apps.py' in os.listdir(os.path.join(MANAGE_PATH, app)), (
        f'В приложении `{app}` не найден файл `apps.py`.'
    )


# test .md
default_md = '# lambda_gm\nlambda_gm\n'
filename = 'README.md'
assert filename in root_dir_content, (
    f'В корне проекта не найден файл `{filename}`'
)

with open(os.path.join(BASE_DIR, filename), 'r', errors='ignore') as f:
    file = f.read()
    assert file != default_md, (
        f'Не забудьте оформить `{filename}`'
    )
