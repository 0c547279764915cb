import os
import sys

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, ROOT)

from data_utils.event_log import EventLog  # noqa: E402
from model_utils.dfg import Dfg, discover_dfg  # noqa: E402

EXAMPLE_LOG = os.path.join(ROOT, 'dataset', 'example.csv')
EXAMPLE_GROUPING = os.path.join(ROOT, 'dataset', 'grouping.csv')

# 课程日志中的5个学生
EXAMPLE_TRACES = {
    '1': ('bmgc lecture_1', 'bmgc lecture_2', 'bmgc seminar_1', 'calc class_1'),
    '2': ('bmgc lecture_1', 'bmgc seminar_1', 'bmgc lecture_2', 'calc class_1'),
    '3': ('bmgc lecture_1', 'bmgc lecture_2', 'bmgc seminar_1', 'calc class_1'),
    '4': ('calc class_1', 'bmgc lecture_1', 'bmgc seminar_1', 'calc class_2'),
    '5': ('calc class_1', 'bmgc lecture_1', 'bmgc seminar_1', 'calc class_2'),
}


def log_of(*sequences):
    return EventLog.from_sequences([tuple(s) for s in sequences])


def with_base_labels(model):
    """顶点ID形如K.1时，标签取点号之前的部分"""
    labels = {v: v.split('.')[0] for v in model.labelled_vertices}
    return Dfg(model.labelled_vertices, model.arcs, labels, model.v_start, model.v_end, model.frequencies)


@pytest.fixture
def example_log():
    order = ['4', '5', '1', '3', '2']
    return EventLog.from_sequences([EXAMPLE_TRACES[c] for c in order], case_ids=order)


@pytest.fixture
def cycle_log():
    return log_of('ABCDEF', 'ABDCEF')


@pytest.fixture
def pair_logs():
    """两个有三个公共子图的模型的日志"""
    return log_of('ABCDJKFGH'), log_of('ABCFGHE', 'ABCFJK')


@pytest.fixture
def pair(pair_logs):
    return discover_dfg(pair_logs[0]), discover_dfg(pair_logs[1])


@pytest.fixture
def duplicate_pair():
    """第一个模型中K、L、N、P各出现两次，第二个模型中各出现一次"""
    m1 = with_base_labels(discover_dfg(EventLog.from_sequences([
        ('A', 'B', 'C', 'K.1', 'L.1', 'N.1', 'P.1', 'D', 'E', 'F'),
        ('A', 'B', 'K.2', 'C', 'D', 'L.2', 'E', 'N.2', 'P.2', 'F')])))
    m2 = discover_dfg(log_of('ABCDEF', 'AKLNPF'))
    return m1, m2
