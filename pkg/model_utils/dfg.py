"""直接跟随图(DFG)模型"""

import re
from collections import Counter
from dataclasses import dataclass
from itertools import islice

import networkx as nx

from utils.exceptions import EmptyLogError, ModelFormatError

START = '__start__'
END = '__end__'

_INDEX_SUFFIX = re.compile(r'^(.*)\.(\d+)$')


def natural_key(vertex_id):
    """带序号后缀的ID按数值排序，例如F.2排在F.10之前"""
    vertex_id = str(vertex_id)
    match = _INDEX_SUFFIX.match(vertex_id)
    if match:
        return match.group(1), int(match.group(2)), vertex_id
    return vertex_id, 0, vertex_id


def _free_id(base, taken):
    while base in taken:
        base = base + '_'
    return base


def indexed_names(label, count, taken):
    """重复标签的名称label.1 ... label.k，跳过taken中已有的名称，生成的名称会加入taken

    :param label: 活动名称
    :type label: str
    :param count: 需要的名称数量
    :type count: int
    :param taken: 已经使用的名称
    :type taken: set
    :rtype: list
    """
    names = []
    index = 0
    while len(names) < count:
        index += 1
        name = '%s.%d' % (label, index)
        if name not in taken:
            taken.add(name)
            names.append(name)
    return names


class Dfg(object):
    """带标签的有向图，有唯一的开始顶点和结束顶点，标签可以在多个顶点上重复

    :param vertices: 除开始和结束顶点以外的顶点ID
    :type vertices: iterable
    :param arcs: 有向弧(源顶点, 目标顶点)
    :type arcs: iterable of tuple
    :param labels: 顶点到活动名称的映射，对全部普通顶点有定义
    :type labels: dict
    :param v_start: 开始顶点ID
    :type v_start: str
    :param v_end: 结束顶点ID
    :type v_end: str
    :param frequencies: 弧的出现次数，只用于显示
    :type frequencies: dict|None
    :raises ModelFormatError: 不满足DFG的定义
    """

    def __init__(self, vertices, arcs, labels, v_start=START, v_end=END, frequencies=None):
        self._vertices = tuple(sorted(set(vertices), key=natural_key))
        self._arcs = frozenset((u, v) for u, v in arcs)
        self._labels = {v: labels[v] for v in self._vertices if v in labels}
        self.v_start = v_start
        self.v_end = v_end
        self._frequencies = dict(frequencies) if frequencies else {}
        self._graph = None
        self._validate()

    def _validate(self):
        if self.v_start == self.v_end:
            raise ModelFormatError("开始顶点和结束顶点不能相同")
        if self.v_start in self._vertices or self.v_end in self._vertices:
            raise ModelFormatError("开始顶点和结束顶点不能作为普通顶点")
        missing = [v for v in self._vertices if v not in self._labels]
        if missing:
            raise ModelFormatError("顶点没有标签: %s" % ', '.join(map(str, missing)))
        all_vertices = set(self._vertices) | {self.v_start, self.v_end}
        indegree, outdegree = Counter(), Counter()
        for u, v in self._arcs:
            if u not in all_vertices or v not in all_vertices:
                raise ModelFormatError("弧(%s, %s)的端点不在模型中" % (u, v))
            if v == self.v_start or u == self.v_end:
                raise ModelFormatError("弧(%s, %s)不能指向开始顶点或从结束顶点出发" % (u, v))
            outdegree[u] += 1
            indegree[v] += 1
        for v in self._vertices:
            if indegree[v] == 0:
                raise ModelFormatError("顶点%s没有入弧，只有开始顶点可以没有入弧" % v)
            if outdegree[v] == 0:
                raise ModelFormatError("顶点%s没有出弧，只有结束顶点可以没有出弧" % v)
        if outdegree[self.v_start] == 0 or indegree[self.v_end] == 0:
            raise ModelFormatError("开始顶点必须有出弧，结束顶点必须有入弧")

    @property
    def vertices(self):
        """全部顶点，包括开始和结束顶点"""
        return (self.v_start,) + self._vertices + (self.v_end,)

    @property
    def labelled_vertices(self):
        return self._vertices

    @property
    def arcs(self):
        return self._arcs

    @property
    def labels(self):
        return dict(self._labels)

    @property
    def frequencies(self):
        return dict(self._frequencies)

    def label(self, vertex):
        return self._labels[vertex]

    def graph(self):
        """networkx形式的有向图，只读"""
        if self._graph is None:
            graph = nx.DiGraph()
            graph.add_nodes_from(self.vertices)
            graph.add_edges_from(sorted(self._arcs, key=lambda a: (natural_key(a[0]), natural_key(a[1]))))
            self._graph = nx.freeze(graph)
        return self._graph

    def successors(self, vertex):
        return self.graph().successors(vertex)

    def predecessors(self, vertex):
        return self.graph().predecessors(vertex)

    def label_families(self):
        """标签到顶点列表的映射，顶点按自然顺序排列"""
        families = {}
        for v in self._vertices:
            families.setdefault(self._labels[v], []).append(v)
        return families

    def duplicated_labels(self):
        return sorted(label for label, family in self.label_families().items() if len(family) > 1)

    def has_unique_labels(self):
        return len(self.duplicated_labels()) == 0

    def display_labels(self):
        """顶点的显示名称

        只在一个顶点上出现的标签显示为标签本身，出现k次的标签显示为label.1 ... label.k，
        和其他标签相同的名称跳过。合并模型的顶点ID使用同样的编号，所以显示名称就是顶点ID。
        """
        families = self.label_families()
        display = {family[0]: label for label, family in families.items() if len(family) == 1}
        taken = set(display.values())
        for label in sorted(families, key=natural_key):
            family = families[label]
            if len(family) > 1:
                display.update(zip(family, indexed_names(label, len(family), taken)))
        return display

    def with_display_labels(self):
        """把显示名称作为标签的同一个模型，用于和重命名后的日志比较"""
        return Dfg(self._vertices, self._arcs, self.display_labels(), self.v_start, self.v_end, self._frequencies)

    def __eq__(self, other):
        if not isinstance(other, Dfg):
            return NotImplemented
        return (self._vertices == other.labelled_vertices and self._arcs == other.arcs
                and self._labels == other._labels and self.v_start == other.v_start
                and self.v_end == other.v_end)

    def __hash__(self):
        return hash((self._vertices, self._arcs))

    def __repr__(self):
        return "Dfg(%d nodes, %d arcs)" % (len(self._vertices), len(self._arcs))


@dataclass(frozen=True)
class CycleCount:
    """简单环的数量，saturated为True时表示数量不少于value"""
    value: int
    saturated: bool = False

    def __eq__(self, other):
        if isinstance(other, int):
            return not self.saturated and self.value == other
        if isinstance(other, CycleCount):
            return self.value == other.value and self.saturated == other.saturated
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.saturated))

    def __str__(self):
        return '> %d' % self.value if self.saturated else str(self.value)


@dataclass(frozen=True)
class ModelStats:
    """模型的统计信息，节点数不包括开始和结束顶点"""
    node_count: int
    arc_count: int
    simple_cycle_count: CycleCount
    duplicate_label_count: int

    def to_json(self):
        return {'nodes': self.node_count,
                'arcs': self.arc_count,
                'simple_cycles': self.simple_cycle_count.value,
                'simple_cycles_saturated': self.simple_cycle_count.saturated,
                'duplicate_labels': self.duplicate_label_count}


def discover_dfg(log):
    """标准的DFG挖掘算法

    每个不同的活动对应一个顶点，顶点ID就是活动名称。

    :param log: 事件日志
    :type log: EventLog
    :return: 完全拟合日志的DFG
    :rtype: Dfg
    :raises EmptyLogError: 日志为空
    """
    if len(log) == 0:
        raise EmptyLogError("不能从空日志中挖掘模型")
    activities = log.activities
    v_start = _free_id(START, set(activities))
    v_end = _free_id(END, set(activities) | {v_start})
    frequencies = Counter()
    for trace in log:
        path = (v_start,) + trace.events + (v_end,)
        frequencies.update(zip(path, path[1:]))
    return Dfg(activities, frequencies.keys(), {a: a for a in activities}, v_start, v_end, frequencies)


def is_run(model, sequence):
    """判断活动序列是否为模型中的一次运行

    标签可以重复，所以需要搜索标签一致的路径，这里逐步维护可能到达的顶点集合。
    """
    graph = model.graph()
    frontier = {model.v_start}
    for activity in sequence:
        frontier = {w for v in frontier for w in graph.successors(v)
                    if w != model.v_end and model.label(w) == activity}
        if not frontier:
            return False
    return any(graph.has_edge(v, model.v_end) for v in frontier)


def perfectly_fits(model, log):
    """日志中的每条轨迹都是模型的一次运行"""
    checked = {}
    for trace in log:
        if trace.events not in checked:
            checked[trace.events] = is_run(model, trace.events)
        if not checked[trace.events]:
            return False
    return True


def is_acyclic(model):
    return nx.is_directed_acyclic_graph(model.graph())


def count_simple_cycles(model, cap=2000000):
    """统计简单环的数量，达到cap时停止并返回饱和标记

    :param model: DFG模型，也可以直接传入networkx有向图
    :type model: Dfg|nx.DiGraph
    :param cap: 计数上限
    :type cap: int
    :rtype: CycleCount
    """
    if cap < 1:
        raise ValueError("cap必须大于等于1")
    graph = model.graph() if isinstance(model, Dfg) else model
    count = sum(1 for _ in islice(nx.simple_cycles(graph), cap))
    if count >= cap:
        return CycleCount(cap, saturated=True)
    return CycleCount(count)


def model_stats(model, cap=2000000):
    return ModelStats(node_count=len(model.labelled_vertices),
                      arc_count=len(model.arcs),
                      simple_cycle_count=count_simple_cycles(model, cap),
                      duplicate_label_count=len(model.duplicated_labels()))
