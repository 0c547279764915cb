"""有向图的最小反馈顶点集(FVS)，有界搜索树加归约规则"""

import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FvsResult:
    """removed删除后图无环；optimal为True时不存在更小的解"""
    removed: frozenset
    optimal: bool
    explored_nodes: int


class _BudgetExhausted(Exception):
    pass


class _Counter(object):
    def __init__(self, budget):
        self.budget = budget
        self.explored = 0

    def tick(self):
        self.explored += 1
        if self.explored > self.budget:
            raise _BudgetExhausted()


class _Graph(object):
    """搜索过程中使用的可修改图，保存前驱和后继集合"""

    def __init__(self, succ, pred):
        self.succ = succ
        self.pred = pred

    @classmethod
    def from_networkx(cls, graph, nodes):
        nodes = set(nodes)
        succ = {v: set(w for w in graph.successors(v) if w in nodes) for v in nodes}
        pred = {v: set(u for u in graph.predecessors(v) if u in nodes) for v in nodes}
        return cls(succ, pred)

    def copy(self):
        return _Graph({v: set(s) for v, s in self.succ.items()},
                      {v: set(p) for v, p in self.pred.items()})

    def __len__(self):
        return len(self.succ)

    def __contains__(self, v):
        return v in self.succ

    def remove(self, v):
        for w in self.succ.pop(v):
            if w != v:
                self.pred[w].discard(v)
        for u in self.pred.pop(v):
            if u != v:
                self.succ[u].discard(v)

    def bypass(self, v):
        """删除v，并把每个前驱连接到每个后继"""
        preds, succs = self.pred[v] - {v}, self.succ[v] - {v}
        self.remove(v)
        for u in preds:
            for w in succs:
                self.succ[u].add(w)
                self.pred[w].add(u)

    def reduce(self):
        """反复应用归约规则，返回必须加入FVS的顶点

        R1 有自环的顶点必须加入FVS；R2 删除入度或出度为0的顶点；
        R3 入度或出度为1的顶点通过连接前驱和后继绕过。顶点按ID降序处理。
        """
        forced = []
        changed = True
        while changed:
            changed = False
            for v in sorted(self.succ, reverse=True):
                if v not in self.succ:
                    continue
                if v in self.succ[v]:
                    forced.append(v)
                    self.remove(v)
                elif len(self.pred[v]) == 0 or len(self.succ[v]) == 0:
                    self.remove(v)
                elif len(self.pred[v]) == 1 or len(self.succ[v]) == 1:
                    self.bypass(v)
                else:
                    continue
                changed = True
        return forced

    def shortest_cycle(self):
        """从每个顶点出发做BFS，返回最短的环，长度相同时取起点最小的"""
        best = None
        for source in sorted(self.succ):
            parent = {source: None}
            queue = deque([source])
            found = None
            while queue and found is None:
                v = queue.popleft()
                for w in sorted(self.succ[v]):
                    if w == source:
                        found = v
                        break
                    if w not in parent:
                        parent[w] = v
                        queue.append(w)
            if found is None:
                continue
            cycle = []
            v = found
            while v is not None:
                cycle.append(v)
                v = parent[v]
            if best is None or len(cycle) < len(best):
                best = cycle
                if len(best) <= 2:
                    break
        return best


def _search(graph, k, counter):
    counter.tick()
    graph = graph.copy()
    forced = graph.reduce()
    if len(forced) > k:
        return None
    k -= len(forced)
    if len(graph) == 0:
        return forced
    if k == 0:
        return None
    for v in sorted(graph.shortest_cycle()):
        branch = graph.copy()
        branch.remove(v)
        result = _search(branch, k - 1, counter)
        if result is not None:
            return forced + [v] + result
    return None


def _is_acyclic_without(graph, nodes, removed):
    return nx.is_directed_acyclic_graph(graph.subgraph(set(nodes) - set(removed)))


def greedy_fvs(graph, nodes=None):
    """贪心求解可行的FVS，用于搜索预算耗尽时

    每轮归约后删除入度乘出度最大的顶点，最后去掉多余的顶点。

    :param graph: 有向图
    :type graph: nx.DiGraph
    :param nodes: 只考虑这些顶点，默认为全部顶点
    :rtype: set
    """
    nodes = list(graph.nodes) if nodes is None else list(nodes)
    work = _Graph.from_networkx(graph, nodes)
    selected = []
    while True:
        selected.extend(work.reduce())
        if len(work) == 0:
            break
        v = min(work.succ, key=lambda n: (-len(work.pred[n]) * len(work.succ[n]), n))
        selected.append(v)
        work.remove(v)
    # 去掉删除后仍然无环的多余顶点
    result = set(selected)
    for v in sorted(selected, reverse=True):
        if _is_acyclic_without(graph, nodes, result - {v}):
            result.discard(v)
    return result


def min_fvs(graph, budget=1000000):
    """求有向图的最小反馈顶点集

    按强连通分量分别求解，每个分量上对解的大小k=0,1,2...迭代加深，每一步先归约，再对最短环上的
    顶点按ID升序分支。搜索的顶点数超过budget时改用贪心算法补全，结果仍然有效但不保证最小。

    :param graph: 有向图，允许自环
    :type graph: nx.DiGraph
    :param budget: 最多搜索的节点数
    :type budget: int
    :rtype: FvsResult
    """
    if budget < 1:
        raise ValueError("budget必须大于等于1")
    counter = _Counter(budget)
    removed = set()
    optimal = True
    components = [sorted(c) for c in nx.strongly_connected_components(graph)
                  if len(c) > 1 or any(graph.has_edge(v, v) for v in c)]
    for component in sorted(components):
        work = _Graph.from_networkx(graph, component)
        try:
            for k in range(len(component) + 1):
                result = _search(work, k, counter)
                if result is not None:
                    removed.update(result)
                    break
        except _BudgetExhausted:
            optimal = False
            result = greedy_fvs(graph, component)
            logger.warning("FVS搜索超过预算%d，%d个顶点的强连通分量使用贪心算法，得到%d个顶点"
                           % (budget, len(component), len(result)))
            removed.update(result)
            # 后面的分量只用贪心算法
            counter.budget = counter.explored - 1
    return FvsResult(frozenset(removed), optimal, min(counter.explored, budget))
