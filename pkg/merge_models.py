"""合并两个无环DFG模型，输入可以是模型JSON文件或者子日志CSV文件"""
import argparse
import functools
from datetime import datetime

from data_utils.reader import LogFormat
from merging.rename import merge_with_duplicates
from utils.pipeline import load_input, save_merged
from utils.utility import add_arguments, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('model1',           str,    'output/sublogs/sublog_0.csv',     "第一个模型或者子日志的路径")
add_arg('model2',           str,    'output/sublogs/sublog_1.csv',     "第二个模型或者子日志的路径")
add_arg('format_conf',      str,    'conf/log_format.json',            "日志格式的配置文件，为json格式")
add_arg('strategy',         str,    'accurate',     "合并策略", choices=['naive', 'accurate'])
add_arg('fvs_budget',       int,    1000000,        "最小反馈顶点集搜索的节点数上限")
add_arg('output_dir',       str,    'output/merged/',  "保存合并模型和重命名映射的文件夹")
add_arg('dot',              bool,   True,           "是否同时保存DOT文件")


def main():
    args = parser.parse_args()
    print_arguments(args)
    log_format = LogFormat.from_file(args.format_conf)
    m1, log1 = load_input(args.model1, log_format)
    m2, log2 = load_input(args.model2, log_format)
    merged = merge_with_duplicates(m1, m2, args.strategy, args.fvs_budget)
    origin = [log1.case_ids(), log2.case_ids()] if log1 is not None and log2 is not None else None
    paths = save_merged(merged, args.output_dir, origin, dot=args.dot)
    print('[%s] 合并模型有%d个顶点，融合%d个顶点，保存在：%s'
          % (datetime.now(), len(merged.model.labelled_vertices), merged.fused_count, paths['model']))


if __name__ == '__main__':
    run_main(main)
