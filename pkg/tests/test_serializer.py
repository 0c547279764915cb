import pytest

from conftest import log_of
from model_utils.dfg import END, START, Dfg, discover_dfg
from model_utils.serializer import load_model, model_from_json, model_to_json, save_model, to_dot
from utils.exceptions import ModelFormatError


@pytest.fixture
def duplicated():
    labels = {'A': 'A', 'F.1': 'F', 'F.2': 'F'}
    arcs = [(START, 'A'), ('A', 'F.1'), ('A', 'F.2'), ('F.1', END), ('F.2', END)]
    return Dfg(labels, arcs, labels)


def test_model_json(duplicated):
    data = model_to_json(duplicated)
    assert data['nodes'] == [{'id': 'A', 'label': 'A', 'display_label': 'A'},
                             {'id': 'F.1', 'label': 'F', 'display_label': 'F.1'},
                             {'id': 'F.2', 'label': 'F', 'display_label': 'F.2'}]
    assert data['arcs'][0] == ['A', 'F.1']
    assert data['start'] == START and data['end'] == END
    assert 'frequencies' not in data


def test_save_and_load(tmp_path):
    model = discover_dfg(log_of('ABC', 'ACB'))
    path = str(tmp_path / 'model.json')
    save_model(model, path)
    loaded = load_model(path)
    assert loaded == model
    assert loaded.frequencies == model.frequencies


def test_bad_model_json():
    with pytest.raises(ModelFormatError):
        model_from_json({'nodes': [{'id': 'A'}], 'arcs': [], 'start': START, 'end': END})
    with pytest.raises(ModelFormatError):
        model_from_json({'nodes': [], 'arcs': [['x', 'y']], 'start': START, 'end': END})


def test_dot_chain():
    dot = to_dot(discover_dfg(log_of('AB')))
    assert dot.count('->') == 3
    assert dot.count('shape=') == 4
    assert dot == to_dot(discover_dfg(log_of('AB')))


def test_dot_duplicates(duplicated):
    dot = to_dot(duplicated)
    assert 'label="F.1"' in dot
    assert 'label="F.2"' in dot
    assert 'doublecircle' in dot


def test_dot_quotes():
    dot = to_dot(discover_dfg(log_of(['say "hi"'])))
    assert r'"say \"hi\""' in dot
