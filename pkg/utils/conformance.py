"""模型的拟合度、精确度和统计信息"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from data_utils.event_log import EventLog
from model_utils.dfg import ModelStats, model_stats

END_OF_TRACE = None


def rename_log(log, mapping):
    """把日志中的活动名称替换为合并模型中的显示名称

    :param log: 事件日志，是某个合并输入模型的(子)日志
    :type log: EventLog
    :param mapping: 活动名称到显示名称的映射
    :type mapping: dict
    :rtype: EventLog
    :raises ValueError: 活动名称不在映射中
    """
    traces = []
    for trace in log:
        events = []
        for event in trace.events:
            if event not in mapping:
                raise ValueError("活动 %s 不在重命名映射中，案例: %s" % (event, trace.case_id))
            events.append(mapping[event])
        traces.append(trace.replace_events(events))
    return EventLog(traces)


def rename_sublogs(sublogs, display_maps):
    """每个子日志使用它对应模型的映射重命名，然后合并为一个日志

    :param sublogs: 子日志列表，第i个子日志对应合并时的第i个模型
    :type sublogs: list of EventLog
    :param display_maps: {模型序号: {活动名称: 显示名称}}
    :type display_maps: dict
    :rtype: EventLog
    """
    total = EventLog()
    for i, sublog in enumerate(sublogs):
        total = total + rename_log(sublog, display_maps[i])
    return total


def _replay(model, events):
    """按标签重放事件序列，无法消耗的事件跳过

    :return: (消耗的事件数, 是否到达结束顶点)
    """
    graph = model.graph()
    frontier = {model.v_start}
    consumed = 0
    for event in events:
        following = {w for v in frontier for w in graph.successors(v)
                     if w != model.v_end and model.label(w) == event}
        if following:
            frontier = following
            consumed += 1
    return consumed, any(graph.has_edge(v, model.v_end) for v in frontier)


def fitness(model, log):
    """基于重放的拟合度: (消耗的事件数 + 到达结束的轨迹数) / (事件总数 + 轨迹数)

    :param model: DFG模型
    :type model: Dfg
    :param log: 事件日志
    :type log: EventLog
    :rtype: Fraction
    """
    consumed, reached, total = 0, 0, 0
    for events, n in log.as_multiset().items():
        c, end = _replay(model, events)
        consumed += n * c
        reached += n * int(end)
        total += n * (len(events) + 1)
    if total == 0:
        return Fraction(1)
    return Fraction(consumed + reached, total)


def _enabled(model, frontier):
    graph = model.graph()
    enabled = set()
    for v in frontier:
        for w in graph.successors(v):
            enabled.add(END_OF_TRACE if w == model.v_end else model.label(w))
    return enabled


def precision(model, log):
    """逃逸边精确度

    每个日志前缀是一个状态，权重为经过这个前缀的轨迹数。模型在该状态允许的后续活动(包括结束)中，
    日志没有出现的为逃逸边，精确度 = 1 - 加权逃逸边数 / 加权允许的后续活动数。
    只统计模型能够重放的前缀。标签重复时，模型状态是前缀可能到达的全部顶点，后续活动按标签比较，
    同一个活动的多个副本只算一个后续活动。

    :rtype: Fraction
    """
    weights = Counter()
    observed = {}
    for events, n in log.as_multiset().items():
        for i in range(len(events) + 1):
            prefix = events[:i]
            weights[prefix] += n
            observed.setdefault(prefix, set()).add(events[i] if i < len(events) else END_OF_TRACE)
    graph = model.graph()
    escaping, enabled_total = 0, 0
    # 前缀按长度处理，模型状态从父前缀推出
    states = {(): {model.v_start}}
    for prefix in sorted(weights, key=len):
        if prefix not in states:
            parent = states.get(prefix[:-1])
            if not parent:
                continue
            states[prefix] = {w for v in parent for w in graph.successors(v)
                              if w != model.v_end and model.label(w) == prefix[-1]}
        frontier = states[prefix]
        if not frontier:
            continue
        enabled = _enabled(model, frontier)
        escaping += weights[prefix] * len(enabled - observed[prefix])
        enabled_total += weights[prefix] * len(enabled)
    if enabled_total == 0:
        return Fraction(1)
    return 1 - Fraction(escaping, enabled_total)


@dataclass(frozen=True)
class MetricsReport:
    """模型的评估结果，时间为毫秒，没有测量时为None"""
    fitness: Fraction
    precision: Fraction
    stats: ModelStats
    time_ms_mean: Optional[float] = None
    time_ms_std: Optional[float] = None

    def to_json(self):
        data = {'fitness': float(self.fitness), 'precision': float(self.precision)}
        data.update(self.stats.to_json())
        data['time_ms_mean'] = self.time_ms_mean
        data['time_ms_std'] = self.time_ms_std
        return data


def evaluate(model, log, rename_map=None, origin=None, cap=2000000, timing=None):
    """评估模型

    给出rename_map时，先把日志按origin拆分到各个输入模型并重命名，再用显示名称作为标签计算拟合度，
    每条轨迹只能在它来源模型的副本上重放。精确度总是按活动名称在原日志上计算。

    :param model: DFG模型
    :type model: Dfg
    :param log: 事件日志
    :type log: EventLog
    :param rename_map: {模型序号: {活动名称: 显示名称}}，只有一个模型时也可以直接给出映射
    :type rename_map: dict|None
    :param origin: 每个模型对应的案例ID，只有一个模型时可以省略
    :type origin: list|None
    :param cap: 简单环计数的上限
    :type cap: int
    :param timing: 发现过程的计时结果
    :type timing: utils.timer.Timing|None
    :rtype: MetricsReport
    """
    evaluated, replayed = model, log
    if rename_map:
        if not all(isinstance(mapping, dict) for mapping in rename_map.values()):
            rename_map = {0: rename_map}
        if origin is None:
            if len(rename_map) != 1:
                raise ValueError("多个模型的重命名映射需要给出每个模型对应的案例ID")
            origin = [log.case_ids()]
        sublogs = [log.select(case_ids) for case_ids in origin]
        log = EventLog([trace for sublog in sublogs for trace in sublog])
        replayed = rename_sublogs(sublogs, rename_map)
        evaluated = model.with_display_labels()
    return MetricsReport(fitness=fitness(evaluated, replayed),
                         precision=precision(model, log),
                         stats=model_stats(model, cap),
                         time_ms_mean=timing.mean_ms if timing is not None else None,
                         time_ms_std=timing.std_ms if timing is not None else None)
