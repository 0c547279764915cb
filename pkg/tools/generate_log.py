"""生成随机的无环事件日志和案例分组文件，用于测试和比较合并策略"""
import os
import sys

sys.path.append(os.getcwd())

import argparse
import functools

import pandas as pd

from data_utils.reader import LogFormat, write_log
from data_utils.synthetic import moved_segments_log, random_acyclic_log, random_group_log
from utils.utility import add_arguments, atomic_write, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('kind',             str,    'group',    "日志的类型", choices=['random', 'group', 'moved'])
add_arg('seed',             int,    0,          "随机种子")
add_arg('groups',           int,    2,          "group类型日志的组数")
add_arg('activities',       int,    10,         "活动数量，moved类型必须大于段数的6倍")
add_arg('traces_per_group', int,    8,          "每组的轨迹数量")
add_arg('conflicts',        int,    1,          "group类型日志每组交换相邻活动的次数")
add_arg('segments',         int,    3,          "moved类型日志移动的段数")
add_arg('format_conf',      str,    'conf/log_format.json',    "日志格式的配置文件，为json格式")
add_arg('save_path',        str,    'dataset/generated.csv',   "生成的日志保存路径")
add_arg('grouping_path',    str,    'dataset/generated_grouping.csv',  "案例分组文件的保存路径")


def main():
    args = parser.parse_args()
    print_arguments(args)
    grouping = None
    if args.kind == 'random':
        log = random_acyclic_log(args.seed)
    elif args.kind == 'group':
        log, grouping = random_group_log(args.seed, groups=args.groups, activities=args.activities,
                                         traces_per_group=args.traces_per_group, conflicts=args.conflicts)
    else:
        if args.activities <= 6 * args.segments:
            raise ValueError("moved类型日志的活动数量必须大于段数的6倍")
        log, grouping = moved_segments_log(args.seed, activities=args.activities, segments=args.segments,
                                           traces_per_group=args.traces_per_group)
    write_log(log, args.save_path, LogFormat.from_file(args.format_conf))
    print('生成日志：%s，共%d条轨迹，%d个事件' % (args.save_path, len(log), log.event_count))
    if grouping is not None:
        df = pd.DataFrame({'case_id': list(grouping), 'group': list(grouping.values())})
        atomic_write(args.grouping_path, df.to_csv(index=False, lineterminator='\n'))
        print('案例分组保存在：%s' % args.grouping_path)


if __name__ == '__main__':
    run_main(main)
