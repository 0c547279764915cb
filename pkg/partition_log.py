"""把无环事件日志划分为DFG无环的子日志，每个子日志保存为一个CSV文件"""
import argparse
import functools
from datetime import datetime

from data_utils.partition import partition_by_grouping, partition_log
from data_utils.reader import LogFormat, parse_log, read_grouping, write_partition
from model_utils.dfg import discover_dfg, model_stats
from utils.utility import add_arguments, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('log_path',         str,    'dataset/example.csv',     "事件日志CSV文件路径")
add_arg('format_conf',      str,    'conf/log_format.json',    "日志格式的配置文件，为json格式")
add_arg('grouping_file',    str,    None,                      "案例分组文件，指定时按分组划分")
add_arg('output_dir',       str,    'output/sublogs/',         "保存子日志和manifest.json的文件夹")


def main():
    args = parser.parse_args()
    print_arguments(args)
    log_format = LogFormat.from_file(args.format_conf)
    log = parse_log(args.log_path, log_format)
    if args.grouping_file:
        partition = partition_by_grouping(log, read_grouping(args.grouping_file))
    else:
        partition = partition_log(log)
    for i, sublog in enumerate(partition.sublogs):
        stats = model_stats(discover_dfg(sublog))
        print('[%s] 子日志%d：%d条轨迹，模型%d个顶点，%d条弧'
              % (datetime.now(), i, len(sublog), stats.node_count, stats.arc_count))
    manifest_path = write_partition(partition, args.output_dir, log_format)
    print('[%s] 日志划分为%d个子日志，manifest保存在：%s' % (datetime.now(), len(partition), manifest_path))


if __name__ == '__main__':
    run_main(main)
