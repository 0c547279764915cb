"""把模型导出为DOT或者JSON格式"""
import argparse
import functools

from model_utils.serializer import load_model, model_to_text, to_dot
from utils.utility import add_arguments, atomic_write, print_arguments, run_main

parser = argparse.ArgumentParser(description=__doc__)
add_arg = functools.partial(add_arguments, argparser=parser)
add_arg('model_path',       str,    'output/model.json',   "模型文件路径")
add_arg('format',           str,    'dot',                 "导出的格式", choices=['dot', 'json'])
add_arg('save_path',        str,    'output/model.dot',    "导出文件的保存路径")


def main():
    args = parser.parse_args()
    print_arguments(args)
    model = load_model(args.model_path)
    text = to_dot(model) if args.format == 'dot' else model_to_text(model)
    atomic_write(args.save_path, text)
    print('成功导出模型，模型保存在：%s' % args.save_path)


if __name__ == '__main__':
    run_main(main)
