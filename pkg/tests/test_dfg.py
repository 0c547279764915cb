import itertools

import networkx as nx
import pytest

from conftest import log_of, with_base_labels
from data_utils.event_log import EventLog
from data_utils.synthetic import random_acyclic_dfg, random_acyclic_log
from model_utils.dfg import (END, START, CycleCount, Dfg, count_simple_cycles, discover_dfg, is_acyclic, is_run,
                             model_stats, natural_key, perfectly_fits)
from utils.exceptions import EmptyLogError, ModelFormatError


def test_natural_key():
    ids = ['F.10', 'F.2', 'F', 'E', 'F.1']
    assert sorted(ids, key=natural_key) == ['E', 'F', 'F.1', 'F.2', 'F.10']


def test_chain():
    model = discover_dfg(log_of('AB'))
    assert set(model.arcs) == {(START, 'A'), ('A', 'B'), ('B', END)}
    stats = model_stats(model)
    assert (stats.node_count, stats.arc_count, stats.duplicate_label_count) == (2, 3, 0)
    assert stats.simple_cycle_count == 0


def test_discover_example(example_log):
    model = discover_dfg(example_log)
    assert not is_acyclic(model)
    assert ('bmgc lecture_2', 'bmgc seminar_1') in model.arcs
    assert ('bmgc seminar_1', 'bmgc lecture_2') in model.arcs
    assert count_simple_cycles(model).value >= 3
    assert perfectly_fits(model, example_log)


def test_discover_cycle(cycle_log):
    model = discover_dfg(cycle_log)
    assert ('C', 'D') in model.arcs and ('D', 'C') in model.arcs
    assert is_run(model, 'ABDEF')
    assert perfectly_fits(model, cycle_log)


def test_discover_empty():
    with pytest.raises(EmptyLogError):
        discover_dfg(EventLog())


def test_frequencies():
    model = discover_dfg(log_of('AB', 'AB', 'AC'))
    assert model.frequencies[(START, 'A')] == 3
    assert model.frequencies[('A', 'B')] == 2


def test_start_end_ids_avoid_activities():
    model = discover_dfg(log_of([START, 'A']))
    assert model.v_start != START
    assert START in model.labelled_vertices


def test_is_run():
    model = discover_dfg(log_of('AB'))
    assert is_run(model, 'AB')
    assert not is_run(model, 'BA')
    assert not is_run(model, 'A')
    assert not perfectly_fits(model, log_of('AB', 'BA'))


def test_is_run_with_duplicate_labels():
    labels = {'A': 'A', 'X.1': 'X', 'X.2': 'X', 'B': 'B', 'C': 'C'}
    arcs = [(START, 'A'), ('A', 'X.1'), ('A', 'X.2'), ('X.1', 'B'), ('X.2', 'C'), ('B', END), ('C', END)]
    model = Dfg(labels, arcs, labels)
    assert is_run(model, 'AXB')
    assert is_run(model, 'AXC')
    assert not is_run(model, 'AX')
    assert model.duplicated_labels() == ['X']
    assert model.display_labels()['X.2'] == 'X.2'


def _brute_force_is_run(model, sequence):
    graph = model.graph()
    n = len(sequence)
    candidates = [v for v in model.labelled_vertices]
    for path in itertools.product(candidates, repeat=n):
        full = (model.v_start,) + path + (model.v_end,)
        if all(graph.has_edge(u, v) for u, v in zip(full, full[1:])) \
                and all(model.label(v) == a for v, a in zip(path, sequence)):
            return True
    return False


@pytest.mark.parametrize('seed', range(10))
def test_is_run_matches_brute_force(seed):
    model = with_base_labels(random_acyclic_dfg(seed, 6, labels=['A.1', 'A.2', 'B.1', 'B.2', 'C.1', 'C.2']))
    alphabet = ['A', 'B', 'C']
    for n in range(1, 4):
        for sequence in itertools.product(alphabet, repeat=n):
            assert is_run(model, sequence) == _brute_force_is_run(model, sequence)


def test_is_acyclic_trivial():
    assert is_acyclic(discover_dfg(log_of('ABC')))


@pytest.mark.parametrize('seed', range(20))
def test_discovered_model_fits(seed):
    log = random_acyclic_log(seed)
    model = discover_dfg(log)
    assert perfectly_fits(model, log)
    assert is_acyclic(model) == (count_simple_cycles(model) == 0)


@pytest.mark.parametrize('trace', ['A', 'ABC', 'ABCDEFG'])
def test_single_trace_is_chain(trace):
    stats = model_stats(discover_dfg(log_of(trace)))
    assert stats.node_count == len(trace)
    assert stats.arc_count == len(trace) + 1
    assert stats.simple_cycle_count == 0


def test_count_simple_cycles():
    graph = nx.DiGraph([(0, 1), (1, 0)])
    assert count_simple_cycles(graph) == 1
    complete = nx.complete_graph(3, create_using=nx.DiGraph)
    assert count_simple_cycles(complete) == 5


def test_count_simple_cycles_saturates():
    complete = nx.complete_graph(6, create_using=nx.DiGraph)
    count = count_simple_cycles(complete, cap=10)
    assert count == CycleCount(10, saturated=True)
    assert str(count) == '> 10'
    with pytest.raises(ValueError):
        count_simple_cycles(complete, cap=0)


@pytest.mark.parametrize('arcs', [
    [(START, 'A')],
    [('A', END)],
    [(START, 'A'), ('A', END), ('A', START)],
    [(START, 'A'), ('A', END), (END, 'A')],
    [(START, 'A'), ('A', END), ('A', 'Z')],
])
def test_invalid_models(arcs):
    with pytest.raises(ModelFormatError):
        Dfg(['A'], arcs, {'A': 'A'})


def test_missing_label():
    with pytest.raises(ModelFormatError):
        Dfg(['A'], [(START, 'A'), ('A', END)], {})


def test_with_display_labels():
    labels = {'F.1': 'F', 'F.2': 'F'}
    model = Dfg(labels, [(START, 'F.1'), ('F.1', 'F.2'), ('F.2', END)], labels)
    relabelled = model.with_display_labels()
    assert relabelled.labels == {'F.1': 'F.1', 'F.2': 'F.2'}
    assert relabelled.arcs == model.arcs


def test_display_labels_skip_existing_names():
    labels = {'F.1': 'F.1', 'x': 'F', 'y': 'F', 'F.2.1': 'F.2', 'z': 'F.2'}
    arcs = [(START, 'x'), ('x', 'y'), ('y', 'F.1'), ('F.1', 'F.2.1'), ('F.2.1', 'z'), ('z', END)]
    display = Dfg(labels, arcs, labels).display_labels()
    assert display == {'F.1': 'F.1', 'x': 'F.2', 'y': 'F.3', 'F.2.1': 'F.2.1', 'z': 'F.2.2'}
    assert len(set(display.values())) == len(display)
