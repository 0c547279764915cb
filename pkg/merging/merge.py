"""合并两个无环DFG，合并后的模型仍然无环

两个模型中对应的顶点(相同的活动)在公共子图上融合为一个顶点，融合可能产生环，
所以先在连通图上求最小反馈顶点集，被删除的单元不融合，在结果中保留两个带序号的副本。
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Tuple

import networkx as nx

from merging.fvs import min_fvs
from model_utils.dfg import END, START, Dfg, _free_id, indexed_names, is_acyclic, natural_key
from utils.exceptions import DuplicateLabelError, MergeAssertionError

logger = logging.getLogger(__name__)

NAIVE = 'naive'
ACCURATE = 'accurate'
STRATEGIES = (NAIVE, ACCURATE)


def check_strategy(mode):
    if mode not in STRATEGIES:
        raise ValueError("合并策略只能是%s，当前为: %s" % ('/'.join(STRATEGIES), mode))
    return mode


@dataclass(frozen=True)
class CommonSubgraph:
    """两个模型的公共子图

    vertex_pairs为(模型1顶点, 模型2顶点)，arcs为两个模型都有的弧，用模型1的顶点表示。
    """
    vertex_pairs: Tuple[Tuple[str, str], ...]
    arcs: frozenset
    labels: Tuple[str, ...]

    @property
    def vertices(self):
        """模型1中的顶点"""
        return frozenset(v1 for v1, _ in self.vertex_pairs)

    def __len__(self):
        return len(self.vertex_pairs)


@dataclass
class ConnectivityGraph:
    """公共子图之间的连通图

    naive模式下节点是公共子图的序号，accurate模式下节点是公共子图中模型1的顶点，
    units记录每个节点所属的公共子图序号。
    """
    mode: str
    graph: nx.DiGraph
    units: Dict[object, int] = field(default_factory=dict)


class RenameMap(object):
    """每个输入模型的顶点到合并模型顶点的映射

    键是输入模型的序号(从0开始)，值是 {原顶点ID: 合并模型中的顶点ID}。
    由标准算法挖掘的模型顶点ID就是活动名称。
    """

    def __init__(self, maps=None):
        self._maps = {int(source): dict(mapping) for source, mapping in (maps or {}).items()}

    @classmethod
    def identity(cls, model, source=0):
        return cls({source: {v: v for v in model.labelled_vertices}})

    @property
    def sources(self):
        return sorted(self._maps)

    def __getitem__(self, source):
        return self._maps[source]

    def __contains__(self, source):
        return source in self._maps

    def __eq__(self, other):
        if not isinstance(other, RenameMap):
            return NotImplemented
        return self._maps == other._maps

    def __repr__(self):
        return "RenameMap(%d sources)" % len(self._maps)

    def then(self, step, accumulated_source=0, new_source=1, new_index=None):
        """与下一次合并的映射组合

        :param step: 下一次合并的映射，accumulated_source是当前累积模型，new_source是新加入的模型
        :type step: RenameMap
        :param new_index: 新加入模型在整个序列中的序号
        :rtype: RenameMap
        """
        composed = {source: {v: step[accumulated_source][mid] for v, mid in mapping.items()}
                    for source, mapping in self._maps.items()}
        composed[new_source if new_index is None else new_index] = dict(step[new_source])
        return RenameMap(composed)

    def display_maps(self, model):
        """把合并模型的顶点ID换成显示名称，得到 {输入序号: {原顶点ID: 显示名称}}"""
        display = model.display_labels()
        return {source: {v: display[mid] for v, mid in mapping.items()}
                for source, mapping in self._maps.items()}

    def to_json(self, model):
        return {str(source): {v: name for v, name in sorted(mapping.items(), key=lambda kv: natural_key(kv[0]))}
                for source, mapping in sorted(self.display_maps(model).items())}


@dataclass
class MergedModel:
    """合并结果

    merged_labels是合并模型中由融合得到的顶点，fused_count是整个合并过程中融合的顶点总数，
    满足 合并模型的顶点数 = 各输入模型顶点数之和 - fused_count。
    """
    model: Dfg
    rename_map: RenameMap
    merged_labels: frozenset
    fused_count: int = 0
    removed: frozenset = frozenset()

    def display_maps(self):
        return self.rename_map.display_maps(self.model)


def _check_unique(model):
    duplicated = model.duplicated_labels()
    if duplicated:
        raise DuplicateLabelError(duplicated)


def label_correspondence(m1, m2):
    """标签唯一的两个模型中，相同标签的顶点一一对应

    :return: 模型1顶点到模型2顶点的映射
    :rtype: dict
    """
    _check_unique(m1)
    _check_unique(m2)
    by_label = {m2.label(w): w for w in m2.labelled_vertices}
    return {v: by_label[m1.label(v)] for v in m1.labelled_vertices if m1.label(v) in by_label}


def _common_subgraphs(m1, m2, corr):
    display = m1.display_labels()
    arcs2 = m2.arcs
    common = set()
    terminal = set()
    for a, b in m1.arcs:
        if a == m1.v_start and b in corr and (m2.v_start, corr[b]) in arcs2:
            terminal.add(b)
        elif b == m1.v_end and a in corr and (corr[a], m2.v_end) in arcs2:
            terminal.add(a)
        elif a in corr and b in corr and (corr[a], corr[b]) in arcs2:
            common.add((a, b))
    graph = nx.Graph()
    graph.add_nodes_from(terminal)
    graph.add_edges_from(common)
    subgraphs = []
    for component in nx.connected_components(graph):
        # 只有一个顶点的子图不考虑，除非它和开始或结束顶点有公共弧
        if len(component) < 2 and not (component & terminal):
            continue
        vertices = sorted(component, key=lambda v: natural_key(display[v]))
        subgraphs.append(CommonSubgraph(
            vertex_pairs=tuple((v, corr[v]) for v in vertices),
            arcs=frozenset(arc for arc in common if arc[0] in component),
            labels=tuple(display[v] for v in vertices)))
    subgraphs.sort(key=lambda s: natural_key(s.labels[0]))
    return subgraphs


def common_subgraphs(m1, m2):
    """两个模型的公共子图，即两个模型都有的弧组成的弱连通分量

    :param m1: 无环DFG，标签唯一
    :type m1: Dfg
    :param m2: 无环DFG，标签唯一
    :type m2: Dfg
    :return: 按最小标签排序的公共子图
    :rtype: list of CommonSubgraph
    :raises DuplicateLabelError: 模型中有重复的标签
    """
    return _common_subgraphs(m1, m2, label_correspondence(m1, m2))


class _Reachability(object):
    """两个模型中的可达关系，用模型1的顶点表示"""

    def __init__(self, m1, m2, subgraphs):
        self.corr = {v1: v2 for s in subgraphs for v1, v2 in s.vertex_pairs}
        graph1, graph2 = m1.graph(), m2.graph()
        self._desc1 = {v: nx.descendants(graph1, v) for v in self.corr}
        self._desc2 = {self.corr[v]: nx.descendants(graph2, self.corr[v]) for v in self.corr}

    def reaches(self, u, w):
        return w in self._desc1[u] or self.corr[w] in self._desc2[self.corr[u]]

    def full_graph(self, vertices):
        """顶点之间的全部可达关系，包括同一个公共子图内部"""
        graph = nx.DiGraph()
        graph.add_nodes_from(vertices)
        for u in vertices:
            for w in vertices:
                if u != w and self.reaches(u, w):
                    graph.add_edge(u, w)
        return graph


def _build_connectivity_graph(subgraphs, reach, mode):
    check_strategy(mode)
    graph = nx.DiGraph()
    units = {}
    if mode == NAIVE:
        for i, subgraph in enumerate(subgraphs):
            graph.add_node(i)
            units[i] = i
            # 子图内部的顶点顺序在两个模型中矛盾时，这个子图不能融合
            if not nx.is_directed_acyclic_graph(reach.full_graph(sorted(subgraph.vertices))):
                graph.add_edge(i, i)
        for i, s in enumerate(subgraphs):
            for j, t in enumerate(subgraphs):
                if i != j and any(reach.reaches(u, w) for u in s.vertices for w in t.vertices):
                    graph.add_edge(i, j)
    else:
        for i, subgraph in enumerate(subgraphs):
            for v in sorted(subgraph.vertices):
                graph.add_node(v)
                units[v] = i
        for u in units:
            for w in units:
                if units[u] != units[w] and reach.reaches(u, w):
                    graph.add_edge(u, w)
    return ConnectivityGraph(mode, graph, units)


def build_connectivity_graph(m1, m2, subgraphs, mode=ACCURATE):
    """构建公共子图的连通图

    naive: 子图S中的某个顶点在任一模型中能到达子图T中的某个顶点时，有弧S->T；
    accurate: 不同子图中的顶点u能在任一模型中到达v时，有弧u->v，子图内部没有弧。

    :param subgraphs: common_subgraphs的结果
    :type subgraphs: list of CommonSubgraph
    :param mode: naive或者accurate
    :type mode: str
    :rtype: ConnectivityGraph
    """
    return _build_connectivity_graph(subgraphs, _Reachability(m1, m2, subgraphs), mode)


def _fused_vertices(subgraphs, reach, mode, fvs_budget):
    """求FVS，返回可以融合的模型1顶点和被删除的单元"""
    connectivity = _build_connectivity_graph(subgraphs, reach, mode)
    result = min_fvs(connectivity.graph, fvs_budget)
    removed = result.removed
    if mode == NAIVE:
        fused = set(v for i, s in enumerate(subgraphs) if i not in removed for v in s.vertices)
    else:
        fused = set(connectivity.units) - set(removed)
        full = reach.full_graph(sorted(connectivity.units))
        if not nx.is_directed_acyclic_graph(full.subgraph(fused)):
            # 同一个子图内部的顶点也可能和其他子图一起形成环
            result = min_fvs(full, fvs_budget)
            removed = result.removed
            fused = set(connectivity.units) - set(removed)
            logger.warning("公共子图内部的弧导致环，使用完整可达图的FVS，删除%d个顶点" % len(removed))
    return fused, frozenset(removed)


def _assign_ids(m1, m2, fused):
    """给合并模型的顶点分配ID

    标签只出现一次时ID就是标签，出现k次时为label.1 ... label.k，模型1的顶点排在前面，
    编号和Dfg.display_labels一致。
    """
    families = {}
    for v in m1.labelled_vertices:
        families.setdefault(m1.label(v), []).append(('1', v))
    fused2 = set(fused.values())
    for w in m2.labelled_vertices:
        if w not in fused2:
            families.setdefault(m2.label(w), []).append(('2', w))
    new_ids = {}
    taken = set(label for label, family in families.items() if len(family) == 1)
    for label in sorted(families, key=natural_key):
        family = families[label]
        if len(family) == 1:
            new_ids[family[0]] = label
            continue
        new_ids.update(zip(family, indexed_names(label, len(family), taken)))
    map1 = {v: new_ids[('1', v)] for v in m1.labelled_vertices}
    inverse = {w: v for v, w in fused.items()}
    map2 = {w: map1[inverse[w]] if w in inverse else new_ids[('2', w)] for w in m2.labelled_vertices}
    labels = {new_ids[key]: label for label, family in families.items() for key in family}
    return map1, map2, labels


def _fuse(m1, m2, fused_pairs):
    map1, map2, labels = _assign_ids(m1, m2, fused_pairs)
    v_start = _free_id(START, set(labels))
    v_end = _free_id(END, set(labels) | {v_start})
    map1.update({m1.v_start: v_start, m1.v_end: v_end})
    map2.update({m2.v_start: v_start, m2.v_end: v_end})
    arcs = set()
    frequencies = Counter()
    for model, mapping in ((m1, map1), (m2, map2)):
        model_frequencies = model.frequencies
        for u, v in model.arcs:
            arc = (mapping[u], mapping[v])
            arcs.add(arc)
            if (u, v) in model_frequencies:
                frequencies[arc] += model_frequencies[(u, v)]
    model = Dfg(labels.keys(), arcs, labels, v_start, v_end, frequencies)
    del map1[m1.v_start], map1[m1.v_end], map2[m2.v_start], map2[m2.v_end]
    return model, map1, map2


def merge_by_correspondence(m1, m2, corr, mode=ACCURATE, fvs_budget=1000000):
    """按给定的顶点对应关系合并两个无环模型

    :param corr: 模型1顶点到模型2顶点的一一映射，对应的顶点标签相同
    :type corr: dict
    :rtype: MergedModel
    :raises MergeAssertionError: 合并后的模型存在环
    """
    check_strategy(mode)
    subgraphs = _common_subgraphs(m1, m2, corr)
    reach = _Reachability(m1, m2, subgraphs)
    fused, removed = _fused_vertices(subgraphs, reach, mode, fvs_budget) if subgraphs else (set(), frozenset())
    fused_pairs = {v: corr[v] for v in fused}
    model, map1, map2 = _fuse(m1, m2, fused_pairs)
    if not is_acyclic(model):
        raise MergeAssertionError("合并后的模型存在环，融合的顶点: %s" % ', '.join(sorted(fused)))
    logger.info("%s合并: %d个公共子图，FVS删除%d个单元，融合%d个顶点，结果%d个顶点"
                % (mode, len(subgraphs), len(removed), len(fused), len(model.labelled_vertices)))
    return MergedModel(model=model,
                       rename_map=RenameMap({0: map1, 1: map2}),
                       merged_labels=frozenset(map1[v] for v in fused),
                       fused_count=len(fused),
                       removed=removed)


def merge_pair(m1, m2, mode=ACCURATE, fvs_budget=1000000):
    """合并两个标签唯一的无环DFG

    1. 求公共子图；2. 按模式构建连通图；3. 删除最小FVS中的单元；4. 融合剩余的公共顶点，
    没有融合的标签保留两个副本，分别带序号后缀.1(模型1)和.2(模型2)。

    :param m1: 无环DFG
    :type m1: Dfg
    :param m2: 无环DFG
    :type m2: Dfg
    :param mode: naive或者accurate
    :type mode: str
    :param fvs_budget: FVS搜索的节点数上限
    :type fvs_budget: int
    :rtype: MergedModel
    :raises DuplicateLabelError: 模型中有重复的标签
    """
    return merge_by_correspondence(m1, m2, label_correspondence(m1, m2), mode, fvs_budget)
