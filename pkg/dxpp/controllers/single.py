import numpy as np

from dxpp import config
from dxpp.core.active_set import classify_active_set, set_penalty_weights
from dxpp.core.benchgen import Family
from dxpp.core.penalty import assemble_hessian, assemble_rhs, solve_jacobian, vjp
from dxpp.core.penalty.hessian import stack_active_rows
from dxpp.core.problem_file import read_metadata, read_problem, read_vector
from dxpp.core.solvers import solve

# largest n for which linear dependence of the active rows is checked
RANK_CHECK_MAX_N = 2000

# families whose input point x enters as q = -2x
PROJECTION_FAMILIES = (Family.SIMPLEX.value, Family.CHAIN.value)


def fmt(array):
    return np.array2string(np.asarray(array), precision=8, suppress_small=True,
                           max_line_width=100)


def degeneracy_warnings(problem, solution, active_set, margin_warning):
    """:return: list of human readable warnings about the active set"""
    warnings = []
    weak = [int(i) for i in active_set.active_rows
            if solution.mu_star[i] <= active_set.threshold]
    if weak:
        warnings.append('weakly active inequalities (zero multiplier): {}'.format(weak))
    if problem.n <= RANK_CHECK_MAX_N and (problem.p or active_set.size):
        B = stack_active_rows(problem, active_set)
        B = B.toarray() if hasattr(B, 'toarray') else B
        rank = np.linalg.matrix_rank(B)
        if rank < B.shape[0]:
            warnings.append('active constraint rows are linearly dependent (rank {} of {})'
                            .format(rank, B.shape[0]))
    if margin_warning:
        warnings.append('margin {:.3e} is small for delta = {:g}'
                        .format(active_set.margin, config.delta))
    return warnings


def run_single(problem_path, r_path=None, jacobian_max_n=None, solver_choice=None):
    """
    Solve the problem file and report the solution, its active set and its sensitivities:
    the full Jacobian with respect to q for small n, or the VJP of the vector in r_path.

    :return: (list of report lines, exit code)
    :raises ProblemFileError: if a file cannot be parsed
    """
    jacobian_max_n = config.jacobian_max_n if jacobian_max_n is None else jacobian_max_n
    problem = read_problem(problem_path)
    metadata = read_metadata(problem_path) or {}
    r = read_vector(r_path, problem.n) if r_path else None

    solution = solve(problem, solver_choice=solver_choice)
    lines = [
        'solver: {} ({} iterations)'.format(solution.solver, solution.iterations),
        'status: {}'.format(solution.status.value),
    ]
    if not solution.is_optimal:
        return lines, 1

    active_set = classify_active_set(problem, solution)
    penalty = set_penalty_weights(solution, config=config.penalty_config())
    hessian = assemble_hessian(problem, solution, active_set, penalty)
    lines += [
        'z* = {}'.format(fmt(solution.z_star)),
        'nu* = {}'.format(fmt(solution.nu_star)),
        'mu* = {}'.format(fmt(solution.mu_star)),
        'active set: {}'.format([int(i) for i in active_set.active_rows]),
        'margin: {:.6g}'.format(active_set.margin),
        'rho = {:.6g}, alpha = {:.6g}, delta = {:g}'.format(penalty.rho, penalty.alpha,
                                                           penalty.delta),
    ]
    lines += ['warning: ' + warning for warning in
              degeneracy_warnings(problem, solution, active_set, hessian.margin_warning)]

    projection = metadata.get('family') in PROJECTION_FAMILIES
    if r is not None:
        gradient = vjp(hessian, problem, solution, active_set, penalty, r,
                       blocks=('q', 'b', 'd')).vjp_gradient
        lines += [
            'vjp dq = {}'.format(fmt(gradient.dq)),
            'vjp db = {}'.format(fmt(gradient.db)),
            'vjp dd = {}'.format(fmt(gradient.dd)),
        ]
        if projection:
            lines.append('vjp dx = {}'.format(fmt(-2.0 * gradient.dq)))
    elif problem.n <= jacobian_max_n:
        rhs = assemble_rhs(problem, solution, active_set, penalty, 'q')
        jacobian = solve_jacobian(hessian, rhs).jacobian_blocks['q']
        lines += ['dz*/dq =', fmt(jacobian)]
        if projection:
            lines += ['dz*/dx =', fmt(-2.0 * jacobian)]
    else:
        lines.append('n = {} exceeds {}, pass a vector r for a VJP'
                     .format(problem.n, jacobian_max_n))
    return lines, 0
