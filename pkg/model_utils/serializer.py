"""DFG模型的JSON和DOT格式"""

from model_utils.dfg import Dfg, natural_key
from utils.exceptions import ModelFormatError
from utils.utility import dump_json, read_json, write_json


def _arc_key(display):
    def key(arc):
        return natural_key(display.get(arc[0], arc[0])), natural_key(display.get(arc[1], arc[1]))
    return key


def model_to_json(model):
    """模型转换为json对象，节点按显示名称排序，弧按字典序排序

    .. code-block::

        {
          "nodes": [{"id": "F.1", "label": "F", "display_label": "F.1"}, ...],
          "arcs": [["A", "B"], ...],
          "start": "__start__",
          "end": "__end__",
          "frequencies": [["A", "B", 2], ...]
        }
    """
    display = model.display_labels()
    nodes = sorted(model.labelled_vertices, key=lambda v: natural_key(display[v]))
    arcs = sorted(model.arcs, key=_arc_key(display))
    data = {'nodes': [{'id': v, 'label': model.label(v), 'display_label': display[v]} for v in nodes],
            'arcs': [[u, v] for u, v in arcs],
            'start': model.v_start,
            'end': model.v_end}
    frequencies = model.frequencies
    if frequencies:
        data['frequencies'] = [[u, v, frequencies[(u, v)]] for u, v in arcs if (u, v) in frequencies]
    return data


def model_from_json(data):
    """从json对象恢复模型

    :raises ModelFormatError: 缺少字段或者不满足DFG的定义
    """
    try:
        nodes = data['nodes']
        vertices = [node['id'] for node in nodes]
        labels = {node['id']: node['label'] for node in nodes}
        arcs = [tuple(arc) for arc in data['arcs']]
        frequencies = {(u, v): int(n) for u, v, n in data.get('frequencies', [])}
        return Dfg(vertices, arcs, labels, data['start'], data['end'], frequencies)
    except (KeyError, TypeError) as e:
        raise ModelFormatError("模型文件格式错误: %s" % str(e))


def save_model(model, path):
    write_json(path, model_to_json(model))


def load_model(path):
    return model_from_json(read_json(path))


def model_to_text(model):
    return dump_json(model_to_json(model))


def _quote(s):
    return '"{}"'.format(str(s).replace('\\', '\\\\').replace('"', r'\"'))


def to_dot(model, name='dfg'):
    """生成确定性的DOT文本

    重复的标签使用带序号的显示名称，开始和结束顶点使用不同的形状。
    """
    display = model.display_labels()
    lines = ['digraph %s {' % _quote(name), '  rankdir=LR;']
    lines.append('  %s [label="", shape=circle, style=filled, fillcolor=green];' % _quote(model.v_start))
    for v in sorted(model.labelled_vertices, key=lambda v: natural_key(display[v])):
        lines.append('  %s [label=%s, shape=box];' % (_quote(v), _quote(display[v])))
    lines.append('  %s [label="", shape=doublecircle, style=filled, fillcolor=orange];' % _quote(model.v_end))
    frequencies = model.frequencies
    for u, v in sorted(model.arcs, key=_arc_key(display)):
        if (u, v) in frequencies:
            lines.append('  %s -> %s [label="%d"];' % (_quote(u), _quote(v), frequencies[(u, v)]))
        else:
            lines.append('  %s -> %s;' % (_quote(u), _quote(v)))
    lines.append('}')
    return '\n'.join(lines) + '\n'
