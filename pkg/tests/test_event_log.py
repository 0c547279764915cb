import pytest

from conftest import log_of
from data_utils.event_log import (EventLog, Trace, check_activity, cyclic_case_ids, directly_follows, follows,
                                  is_acyclic_log, trace_classes)
from data_utils.synthetic import random_acyclic_log


def test_check_activity_strips_whitespace():
    assert check_activity('  bmgc lecture_1 ') == 'bmgc lecture_1'


@pytest.mark.parametrize('name', ['', '   ', 'a\nb', None])
def test_check_activity_rejects(name):
    with pytest.raises(ValueError):
        check_activity(name)


def test_trace_needs_events():
    with pytest.raises(ValueError):
        Trace('1', ())


def test_trace_ignores_timestamps_in_comparison():
    assert Trace('1', ('A',), timestamps=('2023-09-04',)) == Trace('1', ('A',))


def test_is_acyclic_log(example_log):
    assert is_acyclic_log(example_log)
    assert not is_acyclic_log(log_of('ABA'))
    assert is_acyclic_log(log_of('A', 'A'))


def test_cyclic_case_ids():
    log = EventLog.from_sequences(['AB', 'ABA', 'CC'], case_ids=['x', 'y', 'z'])
    assert cyclic_case_ids(log) == ['y', 'z']


def test_directly_follows():
    assert set(directly_follows(log_of('ABC'))) == {('A', 'B'), ('B', 'C')}
    assert len(directly_follows(log_of('A'))) == 0


def test_directly_follows_example(example_log):
    relation = directly_follows(example_log)
    assert ('bmgc lecture_2', 'bmgc seminar_1') in relation
    assert ('bmgc seminar_1', 'bmgc lecture_2') in relation


def test_follows():
    assert set(follows(log_of('ABC'))) == {('A', 'B'), ('A', 'C'), ('B', 'C')}
    relation = follows(log_of('AB', 'BA'))
    assert ('A', 'B') in relation and ('B', 'A') in relation


def test_follows_example(example_log):
    relation = follows(example_log)
    assert ('calc class_1', 'bmgc lecture_1') in relation
    assert ('bmgc lecture_1', 'calc class_1') in relation


@pytest.mark.parametrize('seed', range(20))
def test_directly_follows_within_follows(seed):
    log = random_acyclic_log(seed)
    assert directly_follows(log).pairs <= follows(log).pairs


@pytest.mark.parametrize('seed', range(10))
def test_follows_is_union_over_traces(seed):
    log = random_acyclic_log(seed)
    union = set()
    for trace in log:
        union |= follows(EventLog([trace])).pairs
    assert follows(log).pairs == union


def test_trace_classes_keep_first_occurrence_order(example_log):
    classes = trace_classes(example_log)
    assert [c.case_ids for c in classes] == [('4', '5'), ('1', '3'), ('2',)]
    assert [c.multiplicity for c in classes] == [2, 2, 1]


def test_select_and_add():
    log = EventLog.from_sequences(['AB', 'BC', 'CD'], case_ids=['1', '2', '3'])
    sub = log.select(['3', '1'])
    assert sub.case_ids() == ['1', '3']
    assert (sub + log.select(['2'])).as_multiset() == log.as_multiset()
    assert log.event_count == 6
    assert log.activities == ['A', 'B', 'C', 'D']
