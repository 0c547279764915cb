"""从日志到合并模型的完整流程：划分日志，挖掘每个子日志的模型，合并模型，评估"""

import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from itertools import combinations
from typing import List, Optional

from tqdm import tqdm

from data_utils.event_log import EventLog
from data_utils.partition import Partition, partition_by_grouping, partition_log
from data_utils.reader import LogFormat, parse_log, read_grouping, write_partition
from merging.merge import ACCURATE, NAIVE, check_strategy
from merging.rename import merge_many
from model_utils.dfg import discover_dfg, model_stats
from model_utils.serializer import load_model, save_model, to_dot
from utils.conformance import evaluate
from utils.timer import run_timed
from utils.utility import atomic_write, read_json, write_json

logging.basicConfig(format='[%(levelname)s %(asctime)s %(filename)s:%(lineno)d] %(message)s')

COMMANDS = ('discover', 'partition', 'merge', 'merge-all', 'conformance', 'stats', 'export')


@dataclass
class RunConfig:
    """一次运行的配置，由命令行参数构建"""
    command: str = 'discover'
    input_paths: List[str] = field(default_factory=list)
    output_dir: str = 'output/'
    strategy: str = ACCURATE
    fvs_budget: int = 1000000
    cycle_cap: int = 2000000
    grouping_file: Optional[str] = None
    order: Optional[List[int]] = None
    repetitions: int = 100
    runs: int = 7
    standard: bool = False
    format_conf: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError("未知的命令: %s" % self.command)
        check_strategy(self.strategy)
        for name in ('fvs_budget', 'cycle_cap', 'repetitions', 'runs'):
            if getattr(self, name) < 1:
                raise ValueError("%s必须大于等于1" % name)

    @classmethod
    def from_args(cls, command, args, input_paths):
        """从argparse的参数构建配置，没有的参数使用默认值"""
        kwargs = {}
        for name in cls.__dataclass_fields__:
            if name not in ('command', 'input_paths') and hasattr(args, name):
                kwargs[name] = getattr(args, name)
        return cls(command=command, input_paths=list(input_paths), **kwargs)


@dataclass
class DiscoveryResult:
    """发现的模型；标准模式下merged和partition为None"""
    model: object
    log: EventLog
    partition: Optional[Partition] = None
    merged: Optional[object] = None
    sublog_models: list = field(default_factory=list)

    def display_maps(self):
        return self.merged.display_maps() if self.merged is not None else None

    def origin(self):
        return [list(case_ids) for case_ids in self.partition.origin] if self.partition is not None else None


def rename_map_to_json(merged, origin=None):
    """重命名映射文件：{"maps": {模型序号: {活动: 显示名称}}, "origin": {模型序号: [案例ID]}}"""
    data = {'maps': merged.rename_map.to_json(merged.model)}
    if origin is not None:
        data['origin'] = {str(i): list(case_ids) for i, case_ids in enumerate(origin)}
    return data


def rename_map_from_json(data):
    """读取重命名映射文件，返回(映射, 案例ID列表或None)"""
    try:
        maps = {int(source): dict(mapping) for source, mapping in data['maps'].items()}
        origin = None
        if 'origin' in data:
            origin = [list(data['origin'][str(i)]) for i in sorted(maps)]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError("重命名映射文件格式错误: %s" % str(e))
    return maps, origin


def discover_merged(partition, mode=ACCURATE, fvs_budget=1000000, order=None, progress=False):
    """挖掘每个子日志的标准模型，然后依次合并

    :return: (子日志模型列表, 合并结果)
    :rtype: tuple
    """
    models = [discover_dfg(sublog) for sublog in tqdm(partition.sublogs, desc='discover', disable=not progress)]
    return models, merge_many(models, mode, fvs_budget, order=order, progress=progress)


def compare_models(log, partition, cap=2000000, fvs_budget=1000000, pairs=False):
    """统计标准模型、naive合并模型和accurate合并模型

    :param log: 事件日志
    :type log: EventLog
    :param partition: 日志的划分
    :type partition: Partition
    :param pairs: 是否同时统计每两个子日志组成的日志
    :type pairs: bool
    :return: 每个日志一行统计结果
    :rtype: list of dict
    """
    cases = [('all', log, partition)]
    if pairs:
        for i, j in combinations(range(len(partition)), 2):
            sub = Partition([partition.sublogs[i], partition.sublogs[j]], [partition.origin[i], partition.origin[j]])
            cases.append(('%d+%d' % (i, j), sub.total(), sub))
    rows = []
    for name, case_log, case_partition in cases:
        row = {'name': name, 'event_records': case_log.event_count,
               'standard': model_stats(discover_dfg(case_log), cap).to_json()}
        for mode in (NAIVE, ACCURATE):
            _, merged = discover_merged(case_partition, mode, fvs_budget)
            row[mode] = model_stats(merged.model, cap).to_json()
        rows.append(row)
    return rows


class Discoverer(object):
    """按配置执行完整的发现流程

    :param config: 运行配置
    :type config: RunConfig
    """

    def __init__(self, config):
        self.config = config
        self.log_format = LogFormat.from_file(config.format_conf)
        self.logger = logging.getLogger("")
        self.logger.setLevel(level=logging.INFO)

    def load_log(self, path=None):
        path = path or self.config.input_paths[0]
        log = parse_log(path, self.log_format)
        print('[%s] 读取日志：%s，共%d条轨迹，%d个事件' % (datetime.now(), path, len(log), log.event_count))
        return log

    def split(self, log):
        """按分组文件或者团覆盖划分日志"""
        if self.config.grouping_file:
            return partition_by_grouping(log, read_grouping(self.config.grouping_file))
        return partition_log(log)

    def discover(self, log, progress=False):
        if self.config.standard:
            return DiscoveryResult(model=discover_dfg(log), log=log)
        partition = self.split(log)
        models, merged = discover_merged(partition, self.config.strategy, self.config.fvs_budget,
                                         self.config.order, progress=progress)
        return DiscoveryResult(model=merged.model, log=log, partition=partition, merged=merged,
                               sublog_models=models)

    def timings(self, log, result):
        """完整发现过程和只有合并过程的耗时"""
        timings = {}
        # 计时过程中不输出INFO日志
        logging.disable(logging.INFO)
        try:
            timings['full_discovery'], _ = run_timed(lambda: self.discover(log), self.config.repetitions,
                                                     self.config.runs)
            if result.merged is not None:
                timings['only_merging'], _ = run_timed(
                    lambda: merge_many(result.sublog_models, self.config.strategy, self.config.fvs_budget,
                                       order=self.config.order),
                    self.config.repetitions, self.config.runs)
        finally:
            logging.disable(logging.NOTSET)
        for name, timing in timings.items():
            print('[%s] %s: %s' % (datetime.now(), name, timing))
        return timings

    def report(self, result, timings=None):
        full = timings.get('full_discovery') if timings else None
        metrics = evaluate(result.model, result.log, rename_map=result.display_maps(), origin=result.origin(),
                           cap=self.config.cycle_cap, timing=full)
        data = metrics.to_json()
        if timings:
            data['timing'] = {name: timing.to_json() for name, timing in timings.items()}
        return data

    def save(self, result, metrics):
        """保存模型JSON、DOT、重命名映射和评估结果

        :return: 保存的文件路径
        :rtype: dict
        """
        output_dir = self.config.output_dir
        os.makedirs(output_dir, exist_ok=True)
        paths = {'model': os.path.join(output_dir, 'model.json'),
                 'dot': os.path.join(output_dir, 'model.dot'),
                 'metrics': os.path.join(output_dir, 'metrics.json')}
        write_json(paths['metrics'], metrics)
        if result.merged is not None:
            paths.update(save_merged(result.merged, output_dir, result.origin()))
            paths['manifest'] = write_partition(result.partition, os.path.join(output_dir, 'sublogs'),
                                                self.log_format)
        else:
            save_model(result.model, paths['model'])
            atomic_write(paths['dot'], to_dot(result.model))
        return paths

    def run(self, timed=True):
        log = self.load_log()
        result = self.discover(log, progress=True)
        timings = self.timings(log, result) if timed else None
        metrics = self.report(result, timings)
        paths = self.save(result, metrics)
        print('[%s] 模型有%d个顶点，%d条弧，%s个简单环，保存在：%s'
              % (datetime.now(), metrics['nodes'], metrics['arcs'], metrics['simple_cycles'], self.config.output_dir))
        return paths


def run_discover(config, timed=True):
    """执行discover命令，返回保存的文件路径"""
    return Discoverer(config).run(timed=timed)


def load_rename_map(path):
    return rename_map_from_json(read_json(path))


def load_input(path, log_format=None):
    """读取合并的输入：模型JSON文件，或者CSV日志(挖掘标准模型)

    :return: (模型, 日志或None)
    :rtype: tuple
    """
    if path.lower().endswith('.csv'):
        log = parse_log(path, log_format)
        return discover_dfg(log), log
    return load_model(path), None


def load_manifest(path, log_format=None):
    """读取划分的manifest.json和同一目录下的子日志

    :return: 子日志列表，顺序与manifest中的序号一致
    :rtype: list of EventLog
    """
    manifest = read_json(path)
    directory = os.path.dirname(os.path.abspath(path))
    return [parse_log(os.path.join(directory, 'sublog_%s.csv' % key), log_format)
            for key in sorted(manifest, key=int)]


def save_merged(merged, output_dir, origin=None, dot=True):
    """保存合并模型、重命名映射和DOT文件

    :return: 保存的文件路径
    :rtype: dict
    """
    os.makedirs(output_dir, exist_ok=True)
    paths = {'model': os.path.join(output_dir, 'model.json'),
             'rename_map': os.path.join(output_dir, 'rename_map.json')}
    save_model(merged.model, paths['model'])
    write_json(paths['rename_map'], rename_map_to_json(merged, origin))
    if dot:
        paths['dot'] = os.path.join(output_dir, 'model.dot')
        atomic_write(paths['dot'], to_dot(merged.model))
    return paths
