import configparser

from dxpp.core.config.parser import (
    get_environment_var,
    parse_bool,
    parse_literal,
    parse_sizes,
    parse_string,
)
from dxpp.core.logger import log

THREADS_ENVVAR = 'DXPP_THREADS'


class Config(object):
    """
        The settings can be changed by setting up a config file. For an example of a config file,
        see config.cfg in the main-directory.
    """

    def __init__(self):
        """Sets the default values for the project."""
        # solver
        self.solver = 'builtin-ipm'
        self.eps_abs = 1e-6
        self.max_iterations = 200
        self.regularization_floor = 1e-10
        self.eps_active = 1e-5

        # penalty
        self.delta = 1e-6
        self.zeta = 10.0
        self.prune_inactive = True
        self.rho_floor = 1.0
        self.alpha_floor = 1.0

        # linalg
        self.strategy = 'auto'
        self.dense_max_n = 512
        self.dense_min_density = 0.25
        self.memory_budget = 2 * 1024 ** 3
        self.cg_tolerance = 1e-10
        self.cg_max_iter_factor = 10
        self.damping = 1e-10

        # harness
        self.enable_logging = False
        self.sizes = [(10, 5), (50, 10), (100, 20)]
        self.seeds = 50
        self.repetitions = 5
        self.timeout = 300.0
        self.output = 'results'
        self.blocks = 'q'
        self.family = 'simplex'
        self.threads = 1
        self.fd_step = 1e-6
        self.fd_eps_abs = 1e-10
        self.jacobian_max_n = 20

        self.apply_environment()

    def reset(self):
        """Restore the defaults, e.g. before a command line invocation."""
        self.__init__()

    def apply_environment(self):
        """The worker thread count is the only setting read from the environment."""
        threads = get_environment_var(THREADS_ENVVAR)
        if threads:
            self.threads = int(threads)

    def init_from(self, file=None, envvar=None, log_verbose=False):
        """
            The config_file may contain the following variables in section 'solver':
            - SOLVER: name of the registered forward solver, default "builtin-ipm".
            - EPS_ABS: absolute residual tolerance of the forward solve.
            - MAX_ITERATIONS: iteration cap of the forward solve.
            - REGULARIZATION_FLOOR: diagonal regularization of the solver's linear systems.
            - EPS_ACTIVE: slack threshold for classifying an inequality as active.

            The config_file may contain the following variables in section 'penalty':
            - DELTA: softplus smoothing strength.
            - ZETA: penalty scale, the weights become ZETA times the largest multiplier.
            - PRUNE_INACTIVE: Boolean, drop the curvature of inactive constraints. Default True
            - RHO_FLOOR, ALPHA_FLOOR: lower bounds of the equality/inequality weights.

            The config_file may contain the following variables in section 'linalg':
            - STRATEGY: one of auto, dense, sparse, cg.
            - DENSE_MAX_N, DENSE_MIN_DENSITY: thresholds of the dense/sparse selection.
            - MEMORY_BUDGET: bytes a factorization may use before falling back to CG.
            - CG_TOLERANCE, CG_MAX_ITER_FACTOR: stopping rule of the conjugate gradient.
            - DAMPING: damping of the least-squares fallback for singular KKT systems.

            The config_file may contain the following variables in section 'harness':
            - ENABLE_LOGGING: Boolean if you want additional logs to be printed to stderr.
            - SIZES: size list such as 10x5,50x10 (random QP) or 20,100,1000 (projections).
            - SEEDS: number of seeds per size.
            - REPETITIONS: timing repetitions per size.
            - TIMEOUT: seconds allowed per size before the remaining repetitions are skipped.
            - OUTPUT: directory receiving CSV files and manifests.
            - BLOCKS: 'q' or 'all', the data blocks compared by gradcheck.
            - FAMILY: problem family of the bench command.
            - THREADS: worker threads of gradcheck, overridden by the DXPP_THREADS variable.
            - FD_STEP, FD_EPS_ABS: step and solver tolerance of the finite-difference oracle.
            - JACOBIAN_MAX_N: largest n for which `single` prints a full Jacobian.

            :param file: a string pointing to the location of the config-file.
            :param envvar: a string specifying which environment variable holds the config file
                location.
            :param log_verbose: flag to print the location of the config file.
        """
        if envvar:
            file = get_environment_var(envvar)
            if log_verbose:
                log("Running with config from: " + (str(file)))

        if not file:
            log("No configuration file specified, using the defaults.")
            return

        parser = configparser.RawConfigParser()
        # keep the upper-case option names of the config file
        parser.optionxform = str
        parser.read(file)

        # solver
        self.solver = parse_string(parser, 'solver', 'SOLVER', self.solver)
        self.eps_abs = parse_literal(parser, 'solver', 'EPS_ABS', self.eps_abs)
        self.max_iterations = parse_literal(parser, 'solver', 'MAX_ITERATIONS', self.max_iterations)
        self.regularization_floor = parse_literal(
            parser, 'solver', 'REGULARIZATION_FLOOR', self.regularization_floor
        )
        self.eps_active = parse_literal(parser, 'solver', 'EPS_ACTIVE', self.eps_active)

        # penalty
        self.delta = parse_literal(parser, 'penalty', 'DELTA', self.delta)
        self.zeta = parse_literal(parser, 'penalty', 'ZETA', self.zeta)
        self.prune_inactive = parse_bool(parser, 'penalty', 'PRUNE_INACTIVE', self.prune_inactive)
        self.rho_floor = parse_literal(parser, 'penalty', 'RHO_FLOOR', self.rho_floor)
        self.alpha_floor = parse_literal(parser, 'penalty', 'ALPHA_FLOOR', self.alpha_floor)

        # linalg
        self.strategy = parse_string(parser, 'linalg', 'STRATEGY', self.strategy)
        self.dense_max_n = parse_literal(parser, 'linalg', 'DENSE_MAX_N', self.dense_max_n)
        self.dense_min_density = parse_literal(
            parser, 'linalg', 'DENSE_MIN_DENSITY', self.dense_min_density
        )
        self.memory_budget = parse_literal(parser, 'linalg', 'MEMORY_BUDGET', self.memory_budget)
        self.cg_tolerance = parse_literal(parser, 'linalg', 'CG_TOLERANCE', self.cg_tolerance)
        self.cg_max_iter_factor = parse_literal(
            parser, 'linalg', 'CG_MAX_ITER_FACTOR', self.cg_max_iter_factor
        )
        self.damping = parse_literal(parser, 'linalg', 'DAMPING', self.damping)

        # harness
        self.enable_logging = parse_bool(parser, 'harness', 'ENABLE_LOGGING', self.enable_logging)
        self.sizes = parse_sizes(parser, 'harness', 'SIZES', self.sizes)
        self.seeds = parse_literal(parser, 'harness', 'SEEDS', self.seeds)
        self.repetitions = parse_literal(parser, 'harness', 'REPETITIONS', self.repetitions)
        self.timeout = parse_literal(parser, 'harness', 'TIMEOUT', self.timeout)
        self.output = parse_string(parser, 'harness', 'OUTPUT', self.output)
        self.blocks = parse_string(parser, 'harness', 'BLOCKS', self.blocks)
        self.family = parse_string(parser, 'harness', 'FAMILY', self.family)
        self.fd_step = parse_literal(parser, 'harness', 'FD_STEP', self.fd_step)
        self.fd_eps_abs = parse_literal(parser, 'harness', 'FD_EPS_ABS', self.fd_eps_abs)
        self.jacobian_max_n = parse_literal(parser, 'harness', 'JACOBIAN_MAX_N', self.jacobian_max_n)
        if not get_environment_var(THREADS_ENVVAR):
            self.threads = parse_literal(parser, 'harness', 'THREADS', self.threads)

        if log_verbose:
            log("solver: " + self.solver)
            log("delta: {}, zeta: {}".format(self.delta, self.zeta))

    def solver_settings(self, **overrides):
        """:return: SolverSettings built from this configuration"""
        from dxpp.core.solvers.base import SolverSettings

        values = dict(
            eps_abs=self.eps_abs,
            max_iterations=self.max_iterations,
            regularization_floor=self.regularization_floor,
        )
        values.update(overrides)
        return SolverSettings(**values)

    def penalty_config(self, **overrides):
        """:return: PenaltyConfig (without weights) built from this configuration"""
        from dxpp.core.active_set import PenaltyConfig

        values = dict(
            delta=self.delta,
            zeta=self.zeta,
            prune_inactive=self.prune_inactive,
            rho_floor=self.rho_floor,
            alpha_floor=self.alpha_floor,
        )
        values.update(overrides)
        return PenaltyConfig(**values)

    def factor_options(self, **overrides):
        """:return: FactorOptions built from this configuration"""
        from dxpp.core.linalg.factor import FactorOptions

        values = dict(
            strategy=self.strategy,
            dense_max_n=self.dense_max_n,
            dense_min_density=self.dense_min_density,
            memory_budget=self.memory_budget,
            cg_tolerance=self.cg_tolerance,
            cg_max_iter_factor=self.cg_max_iter_factor,
        )
        values.update(overrides)
        return FactorOptions(**values)

    def as_dict(self):
        """:return: the configuration values, as recorded in run manifests"""
        return {key: value for key, value in sorted(vars(self).items())}
