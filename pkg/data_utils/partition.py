"""把无环事件日志划分为DFG无环的子日志"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx

from data_utils.event_log import EventLog, cyclic_case_ids, trace_classes
from model_utils.dfg import discover_dfg, is_acyclic
from utils.exceptions import CyclicLogError

logger = logging.getLogger(__name__)


def _events_of(trace):
    return trace.events if hasattr(trace, 'events') else tuple(trace)


def compatible(t1, t2):
    """两条轨迹中不存在顺序相反的事件对

    两条轨迹都没有重复事件时，等价于共同事件在两条轨迹中的子序列相同。

    :param t1: 第一条轨迹
    :type t1: Trace|tuple
    :param t2: 第二条轨迹
    :type t2: Trace|tuple
    :rtype: bool
    :raises ValueError: 轨迹中存在重复事件
    """
    e1, e2 = _events_of(t1), _events_of(t2)
    for events in (e1, e2):
        if len(set(events)) != len(events):
            raise ValueError("轨迹中存在重复事件，只能比较无环轨迹: %s" % (events,))
    shared = set(e1) & set(e2)
    return [e for e in e1 if e in shared] == [e for e in e2 if e in shared]


@dataclass
class CompatibilityGraph:
    """节点为轨迹类，边连接相容的轨迹类

    graph的节点是classes中的序号。
    """
    classes: list
    graph: nx.Graph

    @property
    def edges(self):
        return set(frozenset(edge) for edge in self.graph.edges)


def build_compatibility_graph(log):
    """构建轨迹相容图，节点按轨迹类第一次出现的顺序排列

    :param log: 无环事件日志
    :type log: EventLog
    :rtype: CompatibilityGraph
    :raises CyclicLogError: 日志中存在包含重复活动的轨迹
    """
    bad = cyclic_case_ids(log)
    if bad:
        raise CyclicLogError(bad)
    classes = trace_classes(log)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(classes)))
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            if compatible(classes[i].events, classes[j].events):
                graph.add_edge(i, j)
    return CompatibilityGraph(classes, graph)


def clique_cover(graph):
    """贪心的团覆盖

    按度数降序处理节点(度数相同时按节点顺序)，放入第一个与其全部成员相邻的团，否则新建一个团。

    :param graph: 相容图或者networkx无向图
    :type graph: CompatibilityGraph|nx.Graph
    :return: 团的列表，每个团是节点列表
    :rtype: list of list
    """
    if isinstance(graph, CompatibilityGraph):
        graph = graph.graph
    position = {node: i for i, node in enumerate(graph.nodes)}
    order = sorted(graph.nodes, key=lambda n: (-graph.degree(n), position[n]))
    cliques = []
    for node in order:
        neighbours = set(graph.neighbors(node))
        for clique in cliques:
            if all(member in neighbours for member in clique):
                clique.append(node)
                break
        else:
            cliques.append([node])
    return cliques


@dataclass
class Partition:
    """子日志的列表，origin[i]是第i个子日志包含的案例ID"""
    sublogs: List[EventLog]
    origin: List[Tuple[str, ...]]

    def __len__(self):
        return len(self.sublogs)

    def case_sources(self):
        """案例ID到子日志序号的映射"""
        return {case_id: i for i, case_ids in enumerate(self.origin) for case_id in case_ids}

    def total(self):
        """全部子日志的多重集之和"""
        total = EventLog()
        for sublog in self.sublogs:
            total = total + sublog
        return total


def _is_dfg_acyclic(sequences):
    return is_acyclic(discover_dfg(EventLog.from_sequences(sequences)))


def _split_group(classes):
    """保证一组轨迹类的DFG无环，否则逐个加入并在产生环时放入新的子日志"""
    if _is_dfg_acyclic([c.events for c in classes]):
        return [list(classes)]
    groups = []
    for trace_class in classes:
        for group in groups:
            if _is_dfg_acyclic([c.events for c in group] + [trace_class.events]):
                group.append(trace_class)
                break
        else:
            groups.append([trace_class])
    return groups


def _build_partition(log, class_groups):
    sublogs, origin = [], []
    for group in class_groups:
        case_ids = set(case_id for c in group for case_id in c.case_ids)
        sublog = log.select(case_ids)
        sublogs.append(sublog)
        origin.append(tuple(sublog.case_ids()))
    return Partition(sublogs, origin)


def partition_log(log):
    """把无环日志划分为DFG无环的子日志

    先在相容图上求团覆盖，然后检查每个子日志的DFG是否无环，不满足时重新拆分。

    :param log: 无环事件日志
    :type log: EventLog
    :rtype: Partition
    :raises CyclicLogError: 日志不是无环日志
    """
    compatibility = build_compatibility_graph(log)
    cliques = clique_cover(compatibility)
    class_groups = []
    for clique in cliques:
        # 团内的轨迹类按第一次出现的顺序排列
        members = [compatibility.classes[i] for i in sorted(clique)]
        groups = _split_group(members)
        if len(groups) > 1:
            logger.warning("两两相容的%d类轨迹的DFG存在环，重新拆分为%d个子日志" % (len(members), len(groups)))
        class_groups.extend(groups)
    partition = _build_partition(log, class_groups)
    logger.info("日志共%d条轨迹，%d个轨迹类，划分为%d个子日志"
                % (len(log), len(compatibility.classes), len(partition)))
    return partition


def partition_by_grouping(log, grouping):
    """按照给定的案例分组划分日志，跳过团覆盖

    分组按第一次出现的顺序排列，没有分组的案例放在最后一组。每组同样会检查DFG是否无环。

    :param log: 无环事件日志
    :type log: EventLog
    :param grouping: 案例ID到组名的映射
    :type grouping: dict
    :rtype: Partition
    """
    bad = cyclic_case_ids(log)
    if bad:
        raise CyclicLogError(bad)
    groups = {}
    ungrouped = []
    for trace in log:
        if trace.case_id in grouping:
            groups.setdefault(grouping[trace.case_id], []).append(trace)
        else:
            ungrouped.append(trace)
    if ungrouped:
        logger.warning("%d个案例不在分组文件中，单独作为一组" % len(ungrouped))
    class_groups = []
    for name, traces in list(groups.items()) + ([(None, ungrouped)] if ungrouped else []):
        split = _split_group(trace_classes(EventLog(traces)))
        if len(split) > 1:
            logger.warning("分组%s的DFG存在环，重新拆分为%d个子日志" % (name, len(split)))
        class_groups.extend(split)
    return _build_partition(log, class_groups)
