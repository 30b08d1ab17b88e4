"""Contains the command line harness of dxpp.
For a list of all commands, open a terminal and type:

>>> dxpp --help

Exit codes: 0 on success, 1 on a numerical or acceptance failure, 2 on a usage or
parse error.
"""
import os

import click

from dxpp import config
from dxpp.core.benchgen import Family
from dxpp.core.config.parser import split_sizes
from dxpp.core.exceptions import DxppError, ProblemFileError
from dxpp.core.manifest import build_manifest, write_csv, write_manifest

BENCH_DEFAULT_SIZES = {
    Family.SIMPLEX.value: [20, 100, 1000],
    Family.CHAIN.value: [1, 2, 5],
    Family.PORTFOLIO.value: [1, 2, 4, 8],
}


def apply_overrides(**values):
    """Command line flags take precedence over the config file; None means not given."""
    for key, value in values.items():
        if value is not None:
            setattr(config, key, value)


def parse_size_list(text, pairs):
    """
    :param pairs: whether every entry must be NxM
    :raises click.BadParameter: on a malformed list
    """
    try:
        sizes = split_sizes(text)
    except ValueError as e:
        raise click.BadParameter(str(e))
    if not sizes or any(isinstance(size, tuple) != pairs for size in sizes):
        raise click.BadParameter('expected {} sizes, got {!r}'.format(
            'NxM' if pairs else 'integer', text))
    return sizes


def emit(ctx, command, report, parameters, seeds):
    """Write the CSV and the manifest of a run, print the summary and exit."""
    out = ctx.obj['out']
    os.makedirs(out, exist_ok=True)
    csv_path = os.path.join(out, command + '.csv')
    write_csv(csv_path, report.all_rows(), report.fieldnames)
    manifest = build_manifest(
        command, parameters, seeds,
        summary=report.summary, failures=len(report.failures), **report.extra
    )
    write_manifest(os.path.join(out, command + '.manifest.json'), manifest)

    for entry in report.summary:
        click.echo(', '.join('{}={}'.format(key, _short(value)) for key, value in entry.items()))
    for key, value in report.extra.items():
        click.echo('{}={}'.format(key, _short(value)))
    for row in report.failures.rows():
        click.echo('failed: {}'.format(row), err=True)
    click.echo('wrote {}'.format(csv_path))
    ctx.exit(report.exit_code())


def _short(value):
    if isinstance(value, float):
        return '{:.4g}'.format(value)
    return value


@click.group()
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False),
              help='INI config file, see config.cfg.')
@click.option('--out', type=click.Path(file_okay=False), default=None,
              help='Directory receiving CSV files and manifests.')
@click.option('--verbose', is_flag=True, default=False, help='Print log messages to stderr.')
@click.pass_context
def dxpp(ctx, config_file, out, verbose):
    config.reset()
    config.init_from(file=config_file, log_verbose=verbose)
    config.apply_environment()
    if verbose:
        config.enable_logging = True
    ctx.ensure_object(dict)
    ctx.obj['out'] = out or config.output


def solver_options(fun):
    for option in reversed([
        click.option('--solver', default=None, help='Registered forward solver.'),
        click.option('--eps-abs', type=float, default=None, help='Forward solve tolerance.'),
        click.option('--eps-active', type=float, default=None, help='Activity threshold.'),
        click.option('--delta', type=float, default=None, help='Softplus smoothing strength.'),
        click.option('--zeta', type=float, default=None, help='Penalty scale.'),
        click.option('--prune/--no-prune', 'prune_inactive', default=None,
                     help='Drop the curvature of inactive constraints.'),
    ]):
        fun = option(fun)
    return fun


@dxpp.command()
@click.option('--sizes', default=None, help='Size list such as 10x5,50x10.')
@click.option('--seeds', type=click.IntRange(min=1), default=None, help='Seeds per size.')
@click.option('--blocks', type=click.Choice(['q', 'all']), default=None,
              help='Data blocks to compare.')
@click.option('--inject-infeasible', type=int, default=None, metavar='SEED',
              help='Make the instances of this seed infeasible.')
@click.option('--threads', type=click.IntRange(min=1), default=None,
              help='Instances processed concurrently.')
@click.option('--tolerance', type=float, default=None,
              help='Fail when a size has a larger mean eps_rel.')
@solver_options
@click.pass_context
def gradcheck(ctx, sizes, seeds, blocks, inject_infeasible, threads, tolerance, solver,
              eps_abs, eps_active, delta, zeta, prune_inactive):
    """Penalty Jacobians against the reduced KKT oracle on random QPs."""
    from dxpp.controllers.gradcheck import run_gradcheck

    apply_overrides(solver=solver, eps_abs=eps_abs, eps_active=eps_active, delta=delta,
                    zeta=zeta, prune_inactive=prune_inactive, seeds=seeds, blocks=blocks,
                    threads=threads)
    size_list = parse_size_list(sizes, pairs=True) if sizes else config.sizes
    report = run_gradcheck(size_list, config.seeds, config.blocks, inject_infeasible,
                           config.threads, tolerance)
    parameters = dict(sizes=size_list, seeds=config.seeds, blocks=config.blocks,
                      inject_infeasible=inject_infeasible, tolerance=tolerance)
    emit(ctx, 'gradcheck', report, parameters, range(config.seeds))


@dxpp.command()
@click.option('--family', type=click.Choice(sorted(BENCH_DEFAULT_SIZES)), default=None)
@click.option('--sizes', default=None,
              help='n for simplex, dimensions for chain, horizons for portfolio.')
@click.option('--repetitions', type=click.IntRange(min=1), default=None)
@click.option('--timeout', type=float, default=None, help='Seconds per size.')
@click.option('--seed', type=int, default=0)
@click.option('--points', type=click.IntRange(min=2), default=100, help='Points of a chain.')
@click.option('--assets', type=click.IntRange(min=2), default=7, help='Assets of a portfolio.')
@click.option('--kkt/--no-kkt', default=True, help='Also time the reduced KKT backward.')
@solver_options
@click.pass_context
def bench(ctx, family, sizes, repetitions, timeout, seed, points, assets, kkt, solver,
          eps_abs, eps_active, delta, zeta, prune_inactive):
    """Wall-clock scaling of the forward and backward passes."""
    from dxpp.controllers.bench import run_bench

    apply_overrides(solver=solver, eps_abs=eps_abs, eps_active=eps_active, delta=delta,
                    zeta=zeta, prune_inactive=prune_inactive, repetitions=repetitions,
                    timeout=timeout)
    family = family or config.family
    if family not in BENCH_DEFAULT_SIZES:
        raise click.BadParameter('bench runs simplex, chain or portfolio, not {!r}'
                                 .format(family), param_hint='--family')
    size_list = parse_size_list(sizes, pairs=False) if sizes else BENCH_DEFAULT_SIZES[family]
    report = run_bench(family, size_list, config.repetitions, config.timeout, seed, kkt,
                       points, assets)
    parameters = dict(family=family, sizes=size_list, repetitions=config.repetitions,
                      timeout=config.timeout, points=points, assets=assets, kkt=kkt)
    emit(ctx, 'bench', report, parameters, [seed])


@dxpp.command('delta-sweep')
@click.option('--size', default='20x5', help='Instance size NxM.')
@click.option('--seed', type=int, default=0)
@click.option('--deltas', default=None, help='Comma separated smoothing strengths.')
@click.option('--blocks', type=click.Choice(['q', 'all']), default=None)
@solver_options
@click.pass_context
def delta_sweep(ctx, size, seed, deltas, blocks, solver, eps_abs, eps_active, delta, zeta,
                prune_inactive):
    """Penalty-vs-KKT discrepancy as the smoothing strength decreases."""
    from dxpp.controllers.delta_sweep import DELTAS, run_delta_sweep

    apply_overrides(solver=solver, eps_abs=eps_abs, eps_active=eps_active, zeta=zeta,
                    blocks=blocks)
    n, m = parse_size_list(size, pairs=True)[0]
    try:
        delta_list = [float(x) for x in deltas.split(',')] if deltas else list(DELTAS)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--deltas')
    report = run_delta_sweep(n, m, seed, delta_list, config.blocks)
    parameters = dict(n=n, m=m, seed=seed, deltas=delta_list, blocks=config.blocks)
    emit(ctx, 'delta-sweep', report, parameters, [seed])


@dxpp.command()
@click.argument('problem_file', type=click.Path(dir_okay=False))
@click.option('--r', 'r_file', type=click.Path(dir_okay=False), default=None,
              help='JSON vector r, the loss gradient with respect to z*.')
@click.option('--jacobian-max-n', type=int, default=None)
@solver_options
@click.pass_context
def single(ctx, problem_file, r_file, jacobian_max_n, solver, eps_abs, eps_active, delta,
           zeta, prune_inactive):
    """Solve one problem file and report its solution and sensitivities."""
    from dxpp.controllers.single import run_single

    apply_overrides(solver=solver, eps_abs=eps_abs, eps_active=eps_active, delta=delta,
                    zeta=zeta, prune_inactive=prune_inactive, jacobian_max_n=jacobian_max_n)
    try:
        lines, code = run_single(problem_file, r_file)
    except ProblemFileError as e:
        click.echo('error: {}'.format(e), err=True)
        ctx.exit(2)
    except DxppError as e:
        click.echo('error: {}'.format(e), err=True)
        ctx.exit(1)
    for line in lines:
        click.echo(line)
    ctx.exit(code)


@dxpp.command()
@click.argument('family', type=click.Choice([family.value for family in Family]))
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--size', required=True,
              help='NxM (random_qp), N (simplex, degenerate), POINTSxDIM (chain), '
                   'HORIZONxASSETS (portfolio).')
@click.option('--seed', type=int, default=0)
@click.option('--kind', type=click.Choice(['duplicated', 'weakly_active']),
              default='duplicated', help='Degeneracy of a degenerate instance.')
@click.option('--risk-aversion', type=float, default=1.0)
@click.option('--turnover', type=float, default=0.5)
@click.pass_context
def gen(ctx, family, path, size, seed, kind, risk_aversion, turnover):
    """Write a generated instance and its metadata sidecar."""
    from dxpp.controllers.gen import run_gen

    pairs = family in (Family.RANDOM_QP.value, Family.CHAIN.value, Family.PORTFOLIO.value)
    first = parse_size_list(size, pairs=pairs)[0]
    if family == Family.RANDOM_QP.value:
        arguments = dict(n=first[0], m=first[1])
    elif family == Family.CHAIN.value:
        arguments = dict(points=first[0], dim=first[1])
    elif family == Family.PORTFOLIO.value:
        arguments = dict(horizon=first[0], assets=first[1], risk_aversion=risk_aversion,
                         turnover=turnover)
    elif family == Family.DEGENERATE.value:
        arguments = dict(kind=kind, n=first)
    else:
        arguments = dict(n=first)
    try:
        instance, sidecar = run_gen(family, seed, path, **arguments)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint='--size')
    click.echo('wrote {} (n={}, p={}, m={}) and {}'.format(
        path, instance.problem.n, instance.problem.p, instance.problem.m, sidecar))
