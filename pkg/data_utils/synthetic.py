"""生成随机的事件日志和图，所有函数都使用给定的随机种子"""

import random

import networkx as nx

from data_utils.event_log import EventLog, Trace
from model_utils.dfg import END, START, Dfg


def seeded(seed):
    """把种子转换为random.Random，已经是Random时直接返回"""
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def activity_names(n, prefix='a'):
    return ['%s%02d' % (prefix, i) for i in range(n)]


def random_acyclic_log(seed, max_traces=30, max_activities=15):
    """每条轨迹是随机选出的活动的一个随机排列，轨迹中没有重复活动"""
    rng = seeded(seed)
    activities = activity_names(rng.randint(1, max_activities))
    traces = []
    for i in range(rng.randint(1, max_traces)):
        events = rng.sample(activities, rng.randint(1, len(activities)))
        traces.append(Trace(str(i + 1), tuple(events)))
    return EventLog(traces)


def _conflicting_order(rng, base, conflicts):
    order = list(base)
    for _ in range(conflicts):
        if len(order) < 2:
            break
        i = rng.randrange(len(order) - 1)
        order[i], order[i + 1] = order[i + 1], order[i]
    return order


def random_group_log(seed, groups=2, activities=10, traces_per_group=8, conflicts=1, keep=0.8):
    """按组生成日志，每组的活动顺序由同一个基础顺序交换相邻活动得到

    组内每条轨迹都是该组顺序的子序列，所以每组的DFG无环，不同组之间存在顺序冲突。

    :param keep: 每个活动保留在轨迹中的概率
    :type keep: float
    :return: (日志, 案例ID到组名的映射)
    :rtype: tuple
    """
    rng = seeded(seed)
    base = activity_names(activities)
    traces, grouping = [], {}
    case = 0
    for g in range(groups):
        order = base if g == 0 else _conflicting_order(rng, base, conflicts)
        for _ in range(traces_per_group):
            events = [a for a in order if rng.random() < keep] or [rng.choice(order)]
            case += 1
            traces.append(Trace(str(case), tuple(events)))
            grouping[str(case)] = 'group_%d' % (g + 1)
    return EventLog(traces), grouping


def moved_segments_log(seed, activities=36, segments=3, traces_per_group=4):
    """两组日志，第二组中每一段活动的一部分被移动到段首之后

    第一组的每一段顺序为(a, b, c, d, e)；第二组交替出现(c, d, e)和(c, a, b)两种轨迹，
    两组之间只有c与a、b的顺序冲突，用于比较naive和accurate合并。

    :return: (日志, 案例ID到组名的映射)
    :rtype: tuple
    """
    rng = seeded(seed)
    base = activity_names(activities)
    starts = sorted(rng.sample(range(1, activities - 5, 6), segments))
    traces, grouping = [], {}
    for i in range(traces_per_group):
        traces.append(Trace(str(i + 1), tuple(base)))
        grouping[str(i + 1)] = 'group_1'
    for i in range(traces_per_group):
        events = []
        position = 0
        for start in starts:
            a, b, c, d, e = base[start:start + 5]
            events.extend(base[position:start])
            events.extend((c, d, e) if i % 2 == 0 else (c, a, b))
            position = start + 5
        events.extend(base[position:])
        case_id = str(traces_per_group + i + 1)
        traces.append(Trace(case_id, tuple(events)))
        grouping[case_id] = 'group_2'
    return EventLog(traces), grouping


def random_digraph(seed, n, density, self_loops=False):
    """随机有向图，顶点为0..n-1，每条弧以density的概率出现"""
    rng = seeded(seed)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for u in range(n):
        for v in range(n):
            if (u != v or self_loops) and rng.random() < density:
                graph.add_edge(u, v)
    return graph


def random_acyclic_dfg(seed, n, density=0.3, labels=None):
    """随机无环DFG，顶点按随机顺序排列，只从前面的顶点连到后面的顶点

    没有前驱的顶点连接开始顶点，没有后继的顶点连接结束顶点。
    """
    rng = seeded(seed)
    labels = list(labels) if labels is not None else activity_names(n)
    order = rng.sample(labels, len(labels))
    arcs = set()
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            if rng.random() < density:
                arcs.add((u, v))
    has_pred = set(v for _, v in arcs)
    has_succ = set(u for u, _ in arcs)
    for v in order:
        if v not in has_pred:
            arcs.add((START, v))
        if v not in has_succ:
            arcs.add((v, END))
    return Dfg(order, arcs, {v: v for v in order})
