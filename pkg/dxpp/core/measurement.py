"""
Wall-clock timing of the harness phases (forward, backward, ...) on the monotonic clock,
and the summary statistics computed from the raw timings.
"""
import time
from contextlib import contextmanager

import numpy as np
from scipy import stats


class PhaseTimer:
    """Accumulates the duration of named phases in milliseconds."""

    def __init__(self):
        self.phases = {}

    @contextmanager
    def phase(self, name):
        start_time = time.perf_counter()
        try:
            yield
        finally:
            duration = (time.perf_counter() - start_time) * 1000.0
            self.phases[name] = self.phases.get(name, 0.0) + duration

    def measure(self, name, fun, *args, **kwargs):
        """
        Run fun(*args, **kwargs) as phase `name`.
        :return: the return value of fun
        """
        with self.phase(name):
            return fun(*args, **kwargs)

    def get(self, name):
        return self.phases.get(name, 0.0)

    @property
    def total(self):
        return sum(self.phases.values())


class Deadline:
    """
    Cooperative time limit: long loops poll expired() between units of work.
    A limit of None or <= 0 never expires.
    """

    def __init__(self, seconds):
        self.seconds = seconds
        self.start_time = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start_time

    def expired(self):
        return bool(self.seconds) and self.seconds > 0 and self.elapsed > self.seconds


def summarize(values):
    """
    :param values: measurements of one quantity
    :return: dict with count, median, mean and std; nan for an empty list
    """
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        return {'count': 0, 'median': np.nan, 'mean': np.nan, 'std': np.nan}
    return {
        'count': int(values.size),
        'median': float(np.median(values)),
        'mean': float(np.mean(values)),
        'std': float(np.std(values)),
    }


def scaling_exponent(sizes, times):
    """
    Slope of the least-squares line through (log n, log t).

    :param sizes: problem sizes n
    :param times: a positive time per size
    :return: the fitted exponent, nan with fewer than two distinct sizes
    """
    sizes = np.asarray(sizes, dtype=float)
    times = np.asarray(times, dtype=float)
    keep = (sizes > 0) & (times > 0) & np.isfinite(times)
    if np.unique(sizes[keep]).size < 2:
        return np.nan
    return float(stats.linregress(np.log(sizes[keep]), np.log(times[keep])).slope)
