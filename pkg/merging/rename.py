"""合并带重复标签的模型

重复标签的顶点先通过重命名树选择对应的顶点，再按对应关系合并。重命名树每一层是一个待重命名的顶点，
每个选项的得分是这个选项新产生的公共弧数量。
"""

import logging
from dataclasses import dataclass
from math import prod

import networkx as nx
from tqdm import tqdm

from merging.merge import ACCURATE, MergedModel, RenameMap, check_strategy, merge_by_correspondence, merge_pair
from model_utils.dfg import natural_key

logger = logging.getLogger(__name__)

LOOK_AHEAD_CAP = 50000


@dataclass(frozen=True)
class RenameOption:
    """node为待重命名模型中的顶点，target为另一个模型中同标签的顶点，None表示保持不变"""
    node: str
    target: object
    index: int
    target_label: str


def _incoming_side(m1, m2):
    """重复标签族较少的模型作为被重命名的一方，相同时为第二个模型"""
    if len(m1.duplicated_labels()) < len(m2.duplicated_labels()):
        return 0
    return 1


def _fixed_correspondence(m1, m2):
    """两个模型中都只出现一次的标签直接对应"""
    families1, families2 = m1.label_families(), m2.label_families()
    return {family[0]: families2[label][0] for label, family in families1.items()
            if len(family) == 1 and len(families2.get(label, ())) == 1}


def _topological_order(model):
    graph = model.graph()
    display = model.display_labels()

    def key(v):
        if v in (model.v_start, model.v_end):
            return natural_key('')
        return natural_key(display[v])
    return [v for v in nx.lexicographical_topological_sort(graph, key=key)
            if v not in (model.v_start, model.v_end)]


def _renameable(incoming, other):
    duplicated = set(incoming.duplicated_labels()) | set(other.duplicated_labels())
    families = other.label_families()
    return [v for v in _topological_order(incoming)
            if incoming.label(v) in duplicated and incoming.label(v) in families]


def renameable_nodes(m1, m2):
    """需要通过重命名树决定对应关系的顶点

    标签在任一模型中重复、且另一个模型也有这个标签的顶点，取自被重命名的模型，按该模型的拓扑顺序排列，
    顺序相同时按标签排列。

    :rtype: list
    """
    if _incoming_side(m1, m2) == 0:
        return _renameable(m1, m2)
    return _renameable(m2, m1)


def option_count(nodes, families):
    """重命名树中完整路径的数量，每个顶点的选项数为同标签族的大小加一

    :param nodes: 待重命名的顶点标签
    :type nodes: list
    :param families: 标签到另一个模型中同标签顶点列表的映射
    :type families: dict
    :rtype: int
    """
    return prod(len(families[label]) + 1 for label in nodes)


class _RenameTree(object):
    """按层搜索的重命名树

    assignment是被重命名模型的顶点到另一个模型顶点的对应关系，开始和结束顶点以及唯一标签的顶点已经确定。
    """

    def __init__(self, incoming, other, frontier_cap=LOOK_AHEAD_CAP):
        self.incoming = incoming
        self.other = other
        self.levels = _renameable(incoming, other)
        self.families = other.label_families()
        self.frontier_cap = frontier_cap
        self._other_display = other.display_labels()
        self._gain_cache = {}

    def base_assignment(self):
        fixed = _fixed_correspondence(self.incoming, self.other)
        fixed[self.incoming.v_start] = self.other.v_start
        fixed[self.incoming.v_end] = self.other.v_end
        return fixed

    def options(self, level, assignment):
        """当前层的选项，已经被路径上其他顶点使用的目标顶点不可选"""
        node = self.levels[level]
        used = set(assignment.values())
        family = self.families[self.incoming.label(node)]
        options = [RenameOption(node, target, i, self._other_display[target])
                   for i, target in enumerate(family) if target not in used]
        options.append(RenameOption(node, None, len(family), self.incoming.label(node)))
        return options

    def gain(self, option, assignment):
        """选项新产生的公共弧数量，只考虑已经确定对应关系的相邻顶点"""
        if option.target is None:
            return 0
        arcs = self.other.arcs
        score = 0
        for p in self.incoming.predecessors(option.node):
            if p in assignment and (assignment[p], option.target) in arcs:
                score += 1
        for s in self.incoming.successors(option.node):
            if s in assignment and (option.target, assignment[s]) in arcs:
                score += 1
        return score

    def _cached_gain(self, option, assignment, prefix):
        key = (prefix, option.index)
        if key not in self._gain_cache:
            self._gain_cache[key] = self.gain(option, assignment)
        return self._gain_cache[key]

    @staticmethod
    def _preference(option, parent):
        """得分相同时的顺序：与父节点的序号相同，序号小，保持不变的选项最后"""
        unchanged = option.target is None
        same_as_parent = parent is not None and parent.target is not None and not unchanged \
            and option.index == parent.index
        return not same_as_parent, unchanged, option.index

    def _best(self, scored, parent):
        return min(scored, key=lambda item: (-item[1], self._preference(item[0], parent)))

    def _ordered(self, options, parent):
        return sorted(options, key=lambda o: self._preference(o, parent))

    def _look_ahead(self, level, assignment, chosen):
        """当前层全部选项得分为0时，按广度优先检查下一层，选择子节点得分最高的路径

        :return: 选中的选项列表，从当前层开始
        """
        parent = chosen[-1] if chosen else None
        frontier = [[option] for option in self._ordered(self.options(level, assignment), parent)]
        depth = 1
        while level + depth < len(self.levels):
            best = None
            next_frontier = []
            for path in frontier:
                extended = dict(assignment)
                for option in path:
                    if option.target is not None:
                        extended[option.node] = option.target
                prefix = tuple(chosen_option.index for chosen_option in chosen) + tuple(o.index for o in path)
                scored = [(o, self._cached_gain(o, extended, prefix))
                          for o in self.options(level + depth, extended)]
                candidate = self._best(scored, path[-1])
                if candidate[1] > 0 and (best is None or candidate[1] > best[1][1]):
                    best = (path, candidate)
                next_frontier.extend(path + [o] for o in self._ordered([o for o, _ in scored], path[-1]))
            if best is not None:
                return best[0] + [best[1][0]]
            if len(next_frontier) > self.frontier_cap:
                logger.warning("向前搜索的范围超过%d条路径，在第%d层停止向前搜索" % (self.frontier_cap, level))
                break
            frontier = next_frontier
            depth += 1
        return [frontier[0][0]]

    def search(self):
        """逐层选择得分最高的选项

        :return: 每个待重命名顶点选中的选项
        :rtype: list of RenameOption
        """
        assignment = self.base_assignment()
        chosen = []
        level = 0
        while level < len(self.levels):
            parent = chosen[-1] if chosen else None
            prefix = tuple(option.index for option in chosen)
            scored = [(o, self._cached_gain(o, assignment, prefix)) for o in self.options(level, assignment)]
            best = self._best(scored, parent)
            path = [best[0]] if best[1] > 0 else self._look_ahead(level, assignment, chosen)
            for option in path:
                if option.target is not None:
                    assignment[option.node] = option.target
                chosen.append(option)
            level += len(path)
        return chosen

    def total_gain(self, chosen):
        assignment = self.base_assignment()
        total = 0
        for option in chosen:
            total += self.gain(option, assignment)
            if option.target is not None:
                assignment[option.node] = option.target
        return total


def _greedy_options(m1, m2):
    side = _incoming_side(m1, m2)
    incoming, other = (m1, m2) if side == 0 else (m2, m1)
    return side, _RenameTree(incoming, other).search()


def greedy_gain(m1, m2):
    """贪心路径上新产生的公共弧总数"""
    side = _incoming_side(m1, m2)
    tree = _RenameTree(m1, m2) if side == 0 else _RenameTree(m2, m1)
    return tree.total_gain(tree.search())


def greedy_rename(m1, m2):
    """贪心地为重复标签选择对应的顶点

    :return: 被重命名模型的顶点到选中标签的映射，保持不变时为顶点自己的标签
    :rtype: dict
    """
    _, chosen = _greedy_options(m1, m2)
    return {option.node: option.target_label for option in chosen}


def duplicate_correspondence(m1, m2):
    """模型1顶点到模型2顶点的对应关系：两边唯一的标签，加上重命名树选中的顶点"""
    corr = _fixed_correspondence(m1, m2)
    side, chosen = _greedy_options(m1, m2)
    for option in chosen:
        if option.target is None:
            continue
        if side == 0:
            corr[option.node] = option.target
        else:
            corr[option.target] = option.node
    return corr


def merge_with_duplicates(m1, m2, mode=ACCURATE, fvs_budget=1000000):
    """合并可能带重复标签的两个无环模型

    两个模型标签都唯一时与merge_pair相同；否则先用greedy_rename确定重复标签的对应关系，再融合。

    :param m1: 无环DFG
    :type m1: Dfg
    :param m2: 无环DFG
    :type m2: Dfg
    :rtype: MergedModel
    """
    check_strategy(mode)
    if m1.has_unique_labels() and m2.has_unique_labels():
        return merge_pair(m1, m2, mode, fvs_budget)
    return merge_by_correspondence(m1, m2, duplicate_correspondence(m1, m2), mode, fvs_budget)


def merge_many(models, mode=ACCURATE, fvs_budget=1000000, order=None, progress=False):
    """按顺序依次合并多个模型

    :param models: 无环DFG列表
    :type models: list of Dfg
    :param order: 合并顺序，是模型序号的一个排列，默认为输入顺序
    :type order: list|None
    :param progress: 是否显示进度条
    :type progress: bool
    :return: 合并结果，rename_map的键是模型在models中的序号
    :rtype: MergedModel
    :raises ValueError: 模型列表为空或者顺序不是排列
    """
    check_strategy(mode)
    models = list(models)
    if len(models) == 0:
        raise ValueError("没有需要合并的模型")
    order = list(range(len(models))) if order is None else list(order)
    if sorted(order) != list(range(len(models))):
        raise ValueError("合并顺序必须是0到%d的排列: %s" % (len(models) - 1, order))
    first = order[0]
    accumulated = models[first]
    rename_map = RenameMap.identity(accumulated, source=first)
    merged_labels = frozenset()
    fused_count = 0
    for index in tqdm(order[1:], desc='merge', disable=not progress):
        result = merge_with_duplicates(accumulated, models[index], mode, fvs_budget)
        rename_map = rename_map.then(result.rename_map, new_index=index)
        merged_labels = frozenset(result.rename_map[0][v] for v in merged_labels) | result.merged_labels
        fused_count += result.fused_count
        accumulated = result.model
    logger.info("合并%d个模型，得到%d个顶点，共融合%d个顶点"
                % (len(models), len(accumulated.labelled_vertices), fused_count))
    return MergedModel(model=accumulated, rename_map=rename_map,
                       merged_labels=merged_labels, fused_count=fused_count)
