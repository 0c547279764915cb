"""评估模型在事件日志上的拟合度、精确度和复杂度"""
import argparse
import functools
from datetime import datetime

from data_utils.reader import LogFormat, parse_log
from model_utils.serializer import load_model
from utils.conformance import evaluate
from utils.pipeline import load_rename_map
from utils.utility import add_arguments, dump_json, print_arguments, run_main, write_json

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('model_path',       str,    'output/model.json',       "需要评估的模型文件路径")
add_arg('log_path',         str,    'dataset/example.csv',     "事件日志CSV文件路径")
add_arg('rename_map',       str,    None,   "合并模型的重命名映射文件，评估合并模型时需要")
add_arg('format_conf',      str,    'conf/log_format.json',    "日志格式的配置文件，为json格式")
add_arg('cycle_cap',        int,    2000000,    "简单环计数的上限")
add_arg('save_path',        str,    None,   "保存评估结果的json文件路径，为None时只打印")


# 评估模型
def main():
    args = parser.parse_args()
    print_arguments(args)
    model = load_model(args.model_path)
    log = parse_log(args.log_path, LogFormat.from_file(args.format_conf))
    rename_map, origin = load_rename_map(args.rename_map) if args.rename_map else (None, None)
    report = evaluate(model, log, rename_map=rename_map, origin=origin, cap=args.cycle_cap)
    print('[%s] 拟合度：%f，精确度：%f' % (datetime.now(), report.fitness, report.precision))
    print(dump_json(report.to_json()), end='')
    if args.save_path:
        write_json(args.save_path, report.to_json())


if __name__ == '__main__':
    run_main(main)
