"""Contains common utility functions."""

import json
import os
import sys
import tempfile

from utils.exceptions import CyclicLogError, MergeAssertionError


def strtobool(value):
    """把命令行的字符串转换为布尔值"""
    value = value.lower()
    if value in ('y', 'yes', 't', 'true', 'on', '1'):
        return True
    if value in ('n', 'no', 'f', 'false', 'off', '0'):
        return False
    raise ValueError("invalid truth value %r" % (value,))


def print_arguments(args):
    """Print argparse's arguments.

    Usage:

    .. code-block:: python

        parser = argparse.ArgumentParser()
        parser.add_argument("name", default="Jonh", type=str, help="User name.")
        args = parser.parse_args()
        print_arguments(args)

    :param args: Input argparse.Namespace for printing.
    :type args: argparse.Namespace
    """
    print("-----------  Configuration Arguments -----------")
    for arg, value in sorted(vars(args).items()):
        print("%s: %s" % (arg, value))
    print("------------------------------------------------")


def add_arguments(argname, type, default, help, argparser, **kwargs):
    """Add argparse's argument.

    Usage:

    .. code-block:: python

        parser = argparse.ArgumentParser()
        add_argument("name", str, "Jonh", "User name.", parser)
        args = parser.parse_args()
    """
    type = strtobool if type == bool else type
    argparser.add_argument(
        "--" + argname,
        default=default,
        type=type,
        help=help + ' Default: %(default)s.',
        **kwargs)


def parse_list(value, item_type=str):
    """解析逗号分隔的命令行参数，None或空字符串返回None"""
    if value is None or value == '':
        return None
    return [item_type(v.strip()) for v in value.split(',') if v.strip() != '']


def atomic_write(path, text, encoding='utf-8'):
    """先写入临时文件再重命名，保证输出文件要么完整要么不存在

    :param path: 输出文件路径
    :type path: str
    :param text: 文件内容
    :type text: str
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp_', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', encoding=encoding, newline='') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def dump_json(data):
    """固定格式的JSON文本，相同的输入得到相同的字节"""
    return json.dumps(data, ensure_ascii=False, indent=2) + '\n'


def write_json(path, data):
    atomic_write(path, dump_json(data))


def read_json(path):
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def run_main(main):
    """执行脚本的main函数，并把异常转换为退出码

    0 成功，1 输入输出或格式错误，2 日志不是无环日志，3 内部断言失败

    :param main: 脚本的主函数
    :type main: callable
    """
    try:
        main()
    except CyclicLogError as e:
        print("错误：%s" % e, file=sys.stderr)
        sys.exit(2)
    except MergeAssertionError as e:
        print("内部错误：%s" % e, file=sys.stderr)
        sys.exit(3)
    except (ValueError, OSError) as e:
        print("错误：%s" % e, file=sys.stderr)
        sys.exit(1)
    except SystemExit as e:
        # argparse的参数错误也属于输入错误
        sys.exit(1 if e.code == 2 else e.code)
    sys.exit(0)
