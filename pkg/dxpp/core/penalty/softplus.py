"""
The softplus p(t) = delta log(1 + exp(t / delta)), a smooth hinge max(t, 0), and its
symmetric version psi(t) = p(t) + p(-t), a smooth |t|, with their derivatives.
All functions take scalars or arrays.
"""
import dataclasses

import numpy as np
from scipy.special import expit

# beyond |t / delta| = 30 the value switches to its asymptotic expansion
BRANCH = 30.0


@dataclasses.dataclass(frozen=True)
class SoftplusEval:
    value: object
    first: object
    second: object
    sym_first: object
    sym_second: object


def softplus(t, delta):
    u = np.asarray(t, dtype=float) / delta
    t = np.asarray(t, dtype=float)
    middle = delta * np.log1p(np.exp(np.clip(u, -BRANCH, BRANCH)))
    upper = t + delta * np.exp(-np.maximum(u, BRANCH))
    lower = delta * np.exp(np.minimum(u, -BRANCH))
    value = np.where(u > BRANCH, upper, np.where(u < -BRANCH, lower, middle))
    return value[()] if value.ndim == 0 else value


def symmetric_softplus(t, delta):
    return softplus(t, delta) + softplus(-np.asarray(t, dtype=float), delta)


def softplus_first(t, delta):
    return expit(np.asarray(t, dtype=float) / delta)


def softplus_second(t, delta):
    u = np.asarray(t, dtype=float) / delta
    return expit(u) * expit(-u) / delta


def symmetric_softplus_first(t, delta):
    return np.tanh(np.asarray(t, dtype=float) / (2.0 * delta))


def symmetric_softplus_second(t, delta):
    u = np.asarray(t, dtype=float) / delta
    return 2.0 * expit(u) * expit(-u) / delta


def softplus_eval(t, delta):
    """
    :param t: scalar or array
    :param delta: smoothing strength, positive
    :return: SoftplusEval with p, p', p'', psi', psi'' at t
    """
    if not delta > 0:
        raise ValueError('delta must be positive, got {}'.format(delta))
    return SoftplusEval(
        value=softplus(t, delta),
        first=softplus_first(t, delta),
        second=softplus_second(t, delta),
        sym_first=symmetric_softplus_first(t, delta),
        sym_second=symmetric_softplus_second(t, delta),
    )
