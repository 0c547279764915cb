"""统计标准模型和两种合并模型的顶点数、弧数、简单环数量"""
import argparse
import functools

from data_utils.partition import partition_by_grouping, partition_log
from data_utils.reader import LogFormat, parse_log, read_grouping
from utils.pipeline import compare_models
from utils.utility import add_arguments, print_arguments, run_main, write_json

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('log_path',         str,    'dataset/example.csv',     "事件日志CSV文件路径")
add_arg('format_conf',      str,    'conf/log_format.json',    "日志格式的配置文件，为json格式")
add_arg('grouping_file',    str,    None,   "案例分组文件，指定时按分组划分")
add_arg('pairs',            bool,   False,  "是否同时统计每两个子日志组成的日志")
add_arg('fvs_budget',       int,    1000000,    "最小反馈顶点集搜索的节点数上限")
add_arg('cycle_cap',        int,    2000000,    "简单环计数的上限")
add_arg('save_path',        str,    None,   "保存统计结果的json文件路径")


def _cycles(stats):
    if stats['simple_cycles_saturated']:
        return '> %d' % stats['simple_cycles']
    return str(stats['simple_cycles'])


def main():
    args = parser.parse_args()
    print_arguments(args)
    log = parse_log(args.log_path, LogFormat.from_file(args.format_conf))
    if args.grouping_file:
        partition = partition_by_grouping(log, read_grouping(args.grouping_file))
    else:
        partition = partition_log(log)
    rows = compare_models(log, partition, cap=args.cycle_cap, fvs_budget=args.fvs_budget, pairs=args.pairs)
    print('%-8s %-14s %-10s %8s %8s %14s %10s' % ('log', 'event records', 'model', 'nodes', 'arcs', 'simple cycles',
                                                  'duplicates'))
    for row in rows:
        for model in ('standard', 'naive', 'accurate'):
            stats = row[model]
            print('%-8s %-14d %-10s %8d %8d %14s %10d' % (row['name'], row['event_records'], model, stats['nodes'],
                                                          stats['arcs'], _cycles(stats), stats['duplicate_labels']))
    if args.save_path:
        write_json(args.save_path, rows)


if __name__ == '__main__':
    run_main(main)
