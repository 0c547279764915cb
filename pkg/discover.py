"""从无环事件日志发现无环的DFG模型：划分日志，挖掘子日志模型，合并"""
import argparse
import functools

from utils.pipeline import RunConfig, run_discover
from utils.utility import add_arguments, parse_list, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('log_path',         str,    'dataset/example.csv',     "事件日志CSV文件路径")
add_arg('format_conf',      str,    'conf/log_format.json',    "日志格式的配置文件，为json格式")
add_arg('output_dir',       str,    'output/',                 "保存模型、重命名映射和评估结果的文件夹")
add_arg('strategy',         str,    'accurate',                "合并策略", choices=['naive', 'accurate'])
add_arg('standard',         bool,   False,  "是否只使用标准DFG算法，可以用于有环日志")
add_arg('grouping_file',    str,    None,   "案例分组文件，指定时不使用团覆盖划分日志")
add_arg('order',            str,    None,   "子日志模型的合并顺序，逗号分隔的序号，默认为划分的顺序")
add_arg('fvs_budget',       int,    1000000,    "最小反馈顶点集搜索的节点数上限")
add_arg('cycle_cap',        int,    2000000,    "简单环计数的上限")
add_arg('timing',           bool,   True,   "是否测量发现过程的耗时")
add_arg('repetitions',      int,    100,    "计时时每轮的循环次数，为1时只测量一次")
add_arg('runs',             int,    7,      "计时的轮数")


def main():
    args = parser.parse_args()
    print_arguments(args)
    args.order = parse_list(args.order, int)
    config = RunConfig.from_args('discover', args, [args.log_path])
    run_discover(config, timed=args.timing)


if __name__ == '__main__':
    run_main(main)
