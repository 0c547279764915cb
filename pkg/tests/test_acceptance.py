import os
import subprocess
import sys
import time

import networkx as nx
import pytest

from conftest import EXAMPLE_LOG, ROOT
from data_utils.partition import build_compatibility_graph, partition_by_grouping, partition_log
from data_utils.reader import parse_log, write_log
from data_utils.synthetic import moved_segments_log, random_acyclic_log
from merging.merge import ACCURATE, NAIVE, merge_pair
from model_utils.dfg import discover_dfg, is_acyclic, model_stats
from utils.conformance import evaluate
from utils.pipeline import discover_merged


def _language(model):
    """无环模型的全部运行"""
    graph = model.graph()
    return {tuple(model.label(v) for v in path[1:-1])
            for path in nx.all_simple_paths(graph, model.v_start, model.v_end)}


def test_course_log():
    log = parse_log(EXAMPLE_LOG)
    assert len(build_compatibility_graph(log).edges) == 0
    partition = partition_log(log)
    assert partition.origin == [('4', '5'), ('1', '3'), ('2',)]

    standard = evaluate(discover_dfg(log), log)
    assert standard.stats.simple_cycle_count == 5
    for mode in (NAIVE, ACCURATE):
        _, merged = discover_merged(partition, mode)
        report = evaluate(merged.model, log, rename_map=merged.display_maps(), origin=partition.origin)
        assert report.fitness == 1
        assert report.stats.simple_cycle_count == 0
        assert report.precision >= standard.precision


def test_two_trace_language(cycle_log):
    _, merged = discover_merged(partition_log(cycle_log), ACCURATE)
    assert _language(merged.model) == {tuple('ABCDEF'), tuple('ABDCEF')}
    assert tuple('ABDEF') in _language(discover_dfg(cycle_log))


@pytest.mark.parametrize('seed', range(100))
def test_merged_model_fits_and_is_acyclic(seed):
    log = random_acyclic_log(seed)
    partition = partition_log(log)
    for mode in (NAIVE, ACCURATE):
        models, merged = discover_merged(partition, mode)
        report = evaluate(merged.model, log, rename_map=merged.display_maps(), origin=partition.origin)
        assert report.fitness == 1
        assert report.stats.simple_cycle_count == 0
        total = sum(len(m.labelled_vertices) for m in models)
        assert len(merged.model.labelled_vertices) == total - merged.fused_count


@pytest.mark.parametrize('seed', range(10))
def test_accurate_keeps_moved_segments_smaller(seed):
    log, grouping = moved_segments_log(seed)
    partition = partition_by_grouping(log, grouping)
    assert len(partition) == 2
    nodes = {}
    for mode in (NAIVE, ACCURATE):
        _, merged = discover_merged(partition, mode)
        assert is_acyclic(merged.model)
        report = evaluate(merged.model, log, rename_map=merged.display_maps(), origin=partition.origin)
        assert report.fitness == 1
        nodes[mode] = model_stats(merged.model).node_count
    assert nodes[ACCURATE] < nodes[NAIVE]


def test_merge_speed():
    log, grouping = moved_segments_log(0, activities=120, segments=5)
    partition = partition_by_grouping(log, grouping)
    m1, m2 = (discover_dfg(sublog) for sublog in partition.sublogs)
    assert len(m1.labelled_vertices) == 120
    start = time.perf_counter()
    merged = merge_pair(m1, m2, ACCURATE)
    assert time.perf_counter() - start < 1
    assert is_acyclic(merged.model)


def _run_script(*args):
    return subprocess.run([sys.executable] + list(args), cwd=ROOT, capture_output=True, text=True)


def test_cli_exit_codes(tmp_path):
    output = str(tmp_path / 'output')
    ok = _run_script('discover.py', '--log_path=' + EXAMPLE_LOG, '--output_dir=' + output, '--timing=False')
    assert ok.returncode == 0, ok.stderr
    assert os.path.exists(os.path.join(output, 'model.json'))

    assert _run_script('discover.py', '--strategy=fast', '--timing=False').returncode == 1
    assert _run_script('discover.py', '--log_path=' + str(tmp_path / 'missing.csv'),
                       '--timing=False').returncode == 1

    cyclic = str(tmp_path / 'cyclic.csv')
    write_log(parse_log(EXAMPLE_LOG), cyclic)
    with open(cyclic, 'a', encoding='utf-8') as f:
        f.write('9,2023-09-20,calc class_1\n9,2023-09-21,calc class_2\n9,2023-09-22,calc class_1\n')
    result = _run_script('discover.py', '--log_path=' + cyclic, '--output_dir=' + output, '--timing=False')
    assert result.returncode == 2


def test_cli_standard_accepts_cyclic_log(tmp_path):
    cyclic = str(tmp_path / 'cyclic.csv')
    with open(cyclic, 'w', encoding='utf-8') as f:
        f.write('case_id,timestamp,activity\n1,2023-01-01,A\n1,2023-01-02,B\n1,2023-01-03,A\n')
    result = _run_script('discover.py', '--log_path=' + cyclic, '--output_dir=' + str(tmp_path / 'out'),
                         '--standard=True', '--timing=False')
    assert result.returncode == 0, result.stderr
