"""按顺序合并多个模型，输入为逗号分隔的模型/子日志文件，或者划分得到的manifest.json"""
import argparse
import functools
from datetime import datetime

from data_utils.reader import LogFormat
from merging.rename import merge_many
from model_utils.dfg import discover_dfg
from utils.pipeline import load_input, load_manifest, save_merged
from utils.utility import add_arguments, parse_list, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('inputs',           str,    None,   "逗号分隔的模型JSON或者子日志CSV文件路径")
add_arg('manifest',         str,    'output/sublogs/manifest.json',    "划分日志得到的manifest.json，指定inputs时忽略")
add_arg('format_conf',      str,    'conf/log_format.json',            "日志格式的配置文件，为json格式")
add_arg('order',            str,    None,           "合并顺序，逗号分隔的序号，默认为输入顺序")
add_arg('strategy',         str,    'accurate',     "合并策略", choices=['naive', 'accurate'])
add_arg('fvs_budget',       int,    1000000,        "最小反馈顶点集搜索的节点数上限")
add_arg('output_dir',       str,    'output/merged/',  "保存合并模型和重命名映射的文件夹")
add_arg('dot',              bool,   True,           "是否同时保存DOT文件")


def main():
    args = parser.parse_args()
    print_arguments(args)
    log_format = LogFormat.from_file(args.format_conf)
    inputs = parse_list(args.inputs)
    if inputs:
        loaded = [load_input(path, log_format) for path in inputs]
        models = [model for model, _ in loaded]
        logs = [log for _, log in loaded]
    else:
        logs = load_manifest(args.manifest, log_format)
        models = [discover_dfg(log) for log in logs]
    origin = [log.case_ids() for log in logs] if all(log is not None for log in logs) else None
    merged = merge_many(models, args.strategy, args.fvs_budget, order=parse_list(args.order, int), progress=True)
    paths = save_merged(merged, args.output_dir, origin, dot=args.dot)
    print('[%s] 合并%d个模型，得到%d个顶点，保存在：%s'
          % (datetime.now(), len(models), len(merged.model.labelled_vertices), paths['model']))


if __name__ == '__main__':
    run_main(main)
