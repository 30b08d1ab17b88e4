"""
The manifest written next to every CSV of a harness run: the configuration, the seeds, the
versions of dxpp and its numerical libraries, and a description of the host.
"""
import csv
import datetime
import json
import os
import platform

import numpy as np
import psutil
import scipy

CSV_SCHEMA = 'dxpp-csv v1'


def get_version():
    from dxpp import loc

    with open(loc() + 'constants.json', 'r') as f:
        return json.load(f)['version']


def host_description():
    memory = psutil.virtual_memory()
    return {
        'platform': platform.platform(),
        'machine': platform.machine(),
        'processor': platform.processor(),
        'python_version': platform.python_version(),
        'physical_cores': psutil.cpu_count(logical=False),
        'logical_cores': psutil.cpu_count(logical=True),
        'memory_bytes': int(memory.total),
    }


def build_manifest(command, parameters, seeds, **extra):
    """
    :param command: harness subcommand
    :param parameters: the run parameters after config and flag overrides
    :param seeds: the instance seeds of the run
    :param extra: further entries, e.g. summaries
    :return: JSON-serializable dict
    """
    from dxpp import config

    return dict(
        {
            'command': command,
            'schema': CSV_SCHEMA,
            'created': datetime.datetime.now(datetime.timezone.utc).isoformat(),
            'parameters': _plain(parameters),
            'config': _plain(config.as_dict()),
            'seeds': [int(seed) for seed in seeds],
            'versions': {
                'dxpp': get_version(),
                'numpy': np.__version__,
                'scipy': scipy.__version__,
            },
            'host': host_description(),
        },
        **_plain(extra)
    )


def _plain(value):
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def write_manifest(path, manifest):
    with open(path, 'w') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write('\n')


def write_csv(path, rows, fieldnames):
    """
    Write rows under the schema comment line. Keys missing in a row are left empty,
    so error rows can share the file with result rows.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='') as f:
        f.write('# {}\n'.format(CSV_SCHEMA))
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator='\n',
                                extrasaction='ignore')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _format(value) for key, value in row.items()})


def _format(value):
    if isinstance(value, (float, np.floating)):
        return '{:.17g}'.format(float(value))
    return value


def read_csv(path):
    """:return: the rows of a CSV written by write_csv, values as strings"""
    with open(path, 'r', newline='') as f:
        lines = [line for line in f if not line.startswith('#')]
    return list(csv.DictReader(lines))
