"""事件日志以及日志上的顺序关系"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Tuple

DIRECTLY_FOLLOWS = 'directly-follows'
FOLLOWS = 'follows'


def check_activity(name):
    """检查活动名称，返回去掉首尾空白后的名称

    :param name: 活动名称
    :type name: str
    :return: 去掉首尾空白后的名称
    :rtype: str
    :raises ValueError: 名称为空或者包含换行符
    """
    if not isinstance(name, str):
        raise ValueError("活动名称必须是字符串: %r" % (name,))
    name = name.strip()
    if name == '':
        raise ValueError("活动名称不能为空")
    if '\n' in name or '\r' in name:
        raise ValueError("活动名称不能包含换行符: %r" % name)
    return name


@dataclass(frozen=True)
class Trace:
    """一个案例的活动序列

    时间戳和其他属性只用于写回CSV，不参与比较和任何算法。
    """
    case_id: str
    events: Tuple[str, ...]
    timestamps: tuple = field(default=None, compare=False, repr=False)
    attributes: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'case_id', str(self.case_id))
        object.__setattr__(self, 'events', tuple(check_activity(e) for e in self.events))
        if len(self.events) == 0:
            raise ValueError("轨迹 %s 没有任何事件" % self.case_id)

    def __len__(self):
        return len(self.events)

    def is_acyclic(self):
        return len(set(self.events)) == len(self.events)

    def replace_events(self, events):
        """返回事件被替换后的新轨迹，保留案例ID和属性"""
        return Trace(self.case_id, tuple(events), timestamps=self.timestamps, attributes=self.attributes)


@dataclass(frozen=True)
class TraceClass:
    """事件序列相同的一组轨迹"""
    events: Tuple[str, ...]
    case_ids: Tuple[str, ...]

    @property
    def multiplicity(self):
        return len(self.case_ids)


class EventLog(object):
    """轨迹的多重集，相同的事件序列通过案例ID区分

    :param traces: 轨迹列表
    :type traces: list of Trace
    """

    def __init__(self, traces=()):
        self._traces = tuple(traces)

    @property
    def traces(self):
        return self._traces

    def __len__(self):
        return len(self._traces)

    def __iter__(self):
        return iter(self._traces)

    def __add__(self, other):
        return EventLog(self._traces + tuple(other.traces))

    def __eq__(self, other):
        if not isinstance(other, EventLog):
            return NotImplemented
        return self._traces == other.traces

    def __hash__(self):
        return hash(self._traces)

    def __repr__(self):
        return "EventLog(%d traces)" % len(self._traces)

    @classmethod
    def from_sequences(cls, sequences, case_ids=None):
        """从活动序列构建日志，案例ID默认使用从1开始的序号"""
        sequences = list(sequences)
        if case_ids is None:
            case_ids = [str(i + 1) for i in range(len(sequences))]
        return cls(Trace(case_id, tuple(seq)) for case_id, seq in zip(case_ids, sequences))

    def as_multiset(self):
        """事件序列的多重集，忽略案例ID"""
        return Counter(trace.events for trace in self._traces)

    @property
    def activities(self):
        """按第一次出现的顺序返回全部活动"""
        seen = {}
        for trace in self._traces:
            for event in trace.events:
                seen.setdefault(event, None)
        return list(seen)

    @property
    def event_count(self):
        return sum(len(trace) for trace in self._traces)

    def case_ids(self):
        return [trace.case_id for trace in self._traces]

    def select(self, case_ids):
        """按案例ID选择子日志，保持原日志中的顺序"""
        case_ids = set(case_ids)
        return EventLog(t for t in self._traces if t.case_id in case_ids)


def is_acyclic_log(log):
    """日志中任何轨迹都不重复同一个活动"""
    return all(trace.is_acyclic() for trace in log)


def cyclic_case_ids(log):
    """返回包含重复活动的轨迹ID"""
    return [trace.case_id for trace in log if not trace.is_acyclic()]


@dataclass(frozen=True)
class OrderRelation:
    """活动之间的顺序关系，kind为directly-follows或follows"""
    pairs: frozenset
    kind: str

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


def directly_follows(log):
    """(a, b)属于关系当且仅当某条轨迹中b紧跟在a之后"""
    pairs = set()
    for trace in log:
        pairs.update(zip(trace.events, trace.events[1:]))
    return OrderRelation(frozenset(pairs), DIRECTLY_FOLLOWS)


def trace_follows(events):
    """单条轨迹上的follows关系"""
    pairs = set()
    for i, a in enumerate(events):
        for b in events[i + 1:]:
            pairs.add((a, b))
    return pairs


def follows(log):
    """(a, b)属于关系当且仅当某条轨迹中a出现在b之前"""
    pairs = set()
    # 相同的序列只需要计算一次
    for events in log.as_multiset():
        pairs |= trace_follows(events)
    return OrderRelation(frozenset(pairs), FOLLOWS)


def trace_classes(log):
    """按第一次出现的顺序把相同事件序列的轨迹归为一类

    :param log: 事件日志
    :type log: EventLog
    :return: 轨迹类列表
    :rtype: list of TraceClass
    """
    groups = {}
    for trace in log:
        groups.setdefault(trace.events, []).append(trace.case_id)
    return [TraceClass(events, tuple(case_ids)) for events, case_ids in groups.items()]
