import math

import pytest

from dxpp.core.measurement import Deadline, PhaseTimer, scaling_exponent, summarize


def test_phase_timer():
    timer = PhaseTimer()
    with timer.phase('forward'):
        pass
    assert timer.measure('backward', sum, [1, 2, 3]) == 6
    timer.measure('backward', sum, [])
    assert set(timer.phases) == {'forward', 'backward'}
    assert timer.get('forward') >= 0
    assert timer.get('missing') == 0.0
    assert timer.total == pytest.approx(timer.get('forward') + timer.get('backward'))


def test_phase_timer_records_failing_phase():
    timer = PhaseTimer()
    with pytest.raises(RuntimeError):
        with timer.phase('forward'):
            raise RuntimeError
    assert 'forward' in timer.phases


@pytest.mark.parametrize('seconds', [None, 0, -1])
def test_deadline_without_limit(seconds):
    deadline = Deadline(seconds)
    deadline.start_time -= 1e6
    assert not deadline.expired()


def test_deadline_expires():
    deadline = Deadline(5.0)
    assert not deadline.expired()
    deadline.start_time -= 10.0
    assert deadline.expired()
    assert deadline.elapsed >= 10.0


def test_summarize():
    summary = summarize([1.0, 2.0, 6.0])
    assert summary['count'] == 3
    assert summary['median'] == 2.0
    assert summary['mean'] == 3.0
    assert summary['std'] == pytest.approx(math.sqrt(14 / 3))


def test_summarize_empty():
    summary = summarize([])
    assert summary['count'] == 0
    assert all(math.isnan(summary[key]) for key in ('median', 'mean', 'std'))


def test_scaling_exponent():
    sizes = [10, 100, 1000]
    assert scaling_exponent(sizes, [3e-4 * n ** 2 for n in sizes]) == pytest.approx(2.0)
    assert scaling_exponent(sizes, [0.5 * n for n in sizes]) == pytest.approx(1.0)


@pytest.mark.parametrize('sizes, times', [
    ([10], [1.0]),
    ([10, 10], [1.0, 2.0]),
    ([10, 100], [1.0, float('nan')]),
])
def test_scaling_exponent_undetermined(sizes, times):
    assert math.isnan(scaling_exponent(sizes, times))
