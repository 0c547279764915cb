import itertools

import pytest

from conftest import log_of, with_base_labels
from data_utils.event_log import EventLog
from data_utils.synthetic import random_acyclic_dfg, seeded
from merging.merge import ACCURATE, NAIVE, RenameMap, merge_by_correspondence, merge_pair
from merging.rename import (duplicate_correspondence, greedy_gain, greedy_rename, merge_many, merge_with_duplicates,
                            option_count, renameable_nodes)
from model_utils.dfg import discover_dfg, is_acyclic, perfectly_fits
from utils.conformance import rename_sublogs


def _model(*traces):
    return with_base_labels(discover_dfg(EventLog.from_sequences(traces)))


def test_renameable_nodes(duplicate_pair):
    assert renameable_nodes(*duplicate_pair) == ['K', 'L', 'N', 'P']
    assert renameable_nodes(duplicate_pair[1], duplicate_pair[0]) == ['K', 'L', 'N', 'P']


def test_renameable_nodes_without_duplicates(pair):
    assert renameable_nodes(*pair) == []


def test_renameable_nodes_single():
    m1 = _model(('A', 'X.1', 'B'), ('A', 'X.2', 'C'))
    m2 = discover_dfg(log_of('AXB'))
    assert renameable_nodes(m1, m2) == ['X']


def test_option_count(duplicate_pair):
    m1, m2 = duplicate_pair
    labels = [m2.label(v) for v in renameable_nodes(m1, m2)]
    assert option_count(labels, m1.label_families()) == 81
    assert option_count([], {}) == 1
    assert option_count(['X'], {'X': ['X.1', 'X.2']}) == 3


def test_greedy_rename(duplicate_pair):
    assert greedy_rename(*duplicate_pair) == {'K': 'K.1', 'L': 'L.1', 'N': 'N.1', 'P': 'P.1'}
    assert greedy_gain(*duplicate_pair) == 3


def test_look_ahead_when_all_options_score_zero():
    m1 = _model(('B', 'K.1', 'C'), ('D', 'K.2', 'L.2', 'E'), ('G', 'L.1', 'H'))
    m2 = discover_dfg(log_of('AKLF'))
    # K的三个选项都没有新的公共弧，K.2之后的L.2有一条
    assert greedy_rename(m1, m2) == {'K': 'K.2', 'L': 'L.2'}


def test_tie_prefers_parent_index():
    m1 = _model(('X', 'A.2', 'B.2', 'Y'), ('Z', 'A.1', 'B.1', 'Y'), ('Z', 'A.2', 'B.1', 'Y'))
    m2 = discover_dfg(log_of('XABY'))
    assert greedy_rename(m1, m2) == {'A': 'A.2', 'B': 'B.2'}


def test_plain_argmax():
    m1 = _model(('P', 'X.2', 'Q'), ('R', 'X.1', 'Q'))
    m2 = discover_dfg(log_of('PXQ'))
    assert greedy_rename(m1, m2) == {'X': 'X.2'}
    assert duplicate_correspondence(m1, m2) == {'P': 'P', 'Q': 'Q', 'X.2': 'X'}


def test_all_zero_picks_lowest_index():
    m1 = _model(('P', 'X.1', 'Q'), ('R', 'X.2', 'S'))
    m2 = discover_dfg(log_of('AXB'))
    assert greedy_rename(m1, m2) == {'X': 'X.1'}
    merged = merge_with_duplicates(m1, m2)
    assert merged.fused_count == 0
    assert sorted(merged.model.label_families()['X']) == ['X.1', 'X.2', 'X.3']


def test_greedy_matches_exhaustive_optimum(duplicate_pair):
    m1, m2 = duplicate_pair
    families = m1.label_families()
    nodes = renameable_nodes(m1, m2)
    fixed = {v: v for v in 'ABCDEF'}
    best, variants = 0, 0
    for choice in itertools.product(*[families[m2.label(n)] + [None] for n in nodes]):
        corr = dict(fixed)
        corr.update({target: node for node, target in zip(nodes, choice) if target is not None})
        best = max(best, merge_by_correspondence(m1, m2, corr, ACCURATE).fused_count)
        variants += 1
    assert variants == 81
    merged = merge_with_duplicates(m1, m2, ACCURATE)
    assert merged.fused_count == best == 10


def test_merge_with_duplicates(duplicate_pair):
    m1, m2 = duplicate_pair
    merged = merge_with_duplicates(m1, m2, ACCURATE)
    assert is_acyclic(merged.model)
    assert set('ABCDEF') <= merged.merged_labels
    assert len(merged.model.labelled_vertices) == 14
    assert merged.model.duplicated_labels() == ['K', 'L', 'N', 'P']
    assert merged.rename_map[1]['K'] == merged.rename_map[0]['K.1']


@pytest.mark.parametrize('mode', [NAIVE, ACCURATE])
def test_merge_with_duplicates_without_duplicates(pair, mode):
    assert merge_with_duplicates(*pair, mode=mode).model == merge_pair(*pair, mode=mode).model


def _random_duplicated(rng):
    labels = ['%s.%d' % (a, i) for a in 'ABCD' for i in (1, 2)][:rng.randint(3, 8)] + ['E', 'F', 'G']
    return with_base_labels(random_acyclic_dfg(rng, len(labels), labels=labels))


@pytest.mark.parametrize('seed', range(30))
def test_merge_with_duplicates_properties(seed):
    rng = seeded(seed)
    m1 = _random_duplicated(rng)
    m2 = _random_duplicated(rng) if seed % 2 else random_acyclic_dfg(rng, 5, labels=['A', 'B', 'C', 'E', 'F'])
    for mode in (NAIVE, ACCURATE):
        merged = merge_with_duplicates(m1, m2, mode)
        assert is_acyclic(merged.model)
        total = len(m1.labelled_vertices) + len(m2.labelled_vertices)
        assert len(merged.model.labelled_vertices) == total - merged.fused_count
        assert merged.model.display_labels() == {v: v for v in merged.model.labelled_vertices}
    assert greedy_gain(m1, m2) >= 0


def test_merge_many_single():
    model = discover_dfg(log_of('ABC'))
    merged = merge_many([model])
    assert merged.model == model
    assert merged.rename_map == RenameMap({0: {'A': 'A', 'B': 'B', 'C': 'C'}})


def test_merge_many_identical():
    model = discover_dfg(log_of('ABC', 'AC'))
    assert merge_many([model, model, model]).model == model


def test_merge_many_errors():
    with pytest.raises(ValueError):
        merge_many([])
    model = discover_dfg(log_of('AB'))
    with pytest.raises(ValueError):
        merge_many([model, model], order=[0, 0])


def test_merge_many_order(pair):
    m3 = discover_dfg(log_of('ABE'))
    merged = merge_many([pair[0], pair[1], m3], order=[2, 0, 1])
    assert merged.rename_map.sources == [0, 1, 2]
    assert is_acyclic(merged.model)
    total = sum(len(m.labelled_vertices) for m in (pair[0], pair[1], m3))
    assert len(merged.model.labelled_vertices) == total - merged.fused_count


def test_duplicate_ids_skip_existing_activity_names():
    logs = [EventLog.from_sequences([('A', 'B', 'F', 'F.1')]), EventLog.from_sequences([('F', 'A', 'B', 'F.1')])]
    merged = merge_many([discover_dfg(log) for log in logs])
    model = merged.model
    assert model.labelled_vertices == ('A', 'B', 'F.1', 'F.2', 'F.3')
    assert model.label('F.1') == 'F.1'
    assert model.label('F.2') == model.label('F.3') == 'F'
    assert model.display_labels() == {v: v for v in model.labelled_vertices}
    assert len(set(merged.display_maps()[0].values())) == 4
    assert perfectly_fits(model.with_display_labels(), rename_sublogs(logs, merged.display_maps()))
