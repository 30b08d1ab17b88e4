from dxpp.core.benchgen import generate
from dxpp.core.problem_file import write_metadata, write_problem


def run_gen(family, seed, path, **size):
    """
    Generate an instance and write it with its metadata sidecar.
    :return: (BenchInstance, path of the sidecar)
    """
    instance = generate(family, seed, **size)
    write_problem(instance.problem, path)
    metadata = instance.metadata()
    sidecar = write_metadata(
        path,
        metadata.pop('family'),
        metadata.pop('size'),
        metadata.pop('seed'),
        metadata.pop('notes'),
        **metadata
    )
    return instance, sidecar
