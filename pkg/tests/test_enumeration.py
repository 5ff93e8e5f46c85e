import numpy as np
import pytest

from modspec import enumerate_labeled, parse_graph6, stream_graph6_file
from modspec.enumeration import masks_to_adjacency, upper_pairs
from modspec.errors import BadGraph6, GraphError, TooLarge

from conftest import complete


def test_small_counts():
    assert enumerate_labeled(2).count() == 1
    assert enumerate_labeled(3).count() == 4
    assert enumerate_labeled(4).count() == 38
    assert enumerate_labeled(4, connected_only=False).count() == 64


def test_ascending_mask_order():
    keys = np.concatenate([b.keys for b in enumerate_labeled(4).batches(chunk=7)])
    assert np.all(np.diff(keys) > 0)
    # bits are (0,1), (0,2), (1,2), (0,3), ...; the first connected mask is the star at 0
    assert keys[0] == 0b001011


def test_masks_follow_graph6_bit_order():
    assert upper_pairs(4).tolist() == [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3], [2, 3]]
    adj = masks_to_adjacency(np.array([0b111]), 3)[0]
    assert np.array_equal(adj, complete(3).weights)


def test_limits():
    with pytest.raises(TooLarge):
        enumerate_labeled(9)
    with pytest.raises(GraphError):
        enumerate_labeled(1)


def test_stream_is_reiterable():
    s = enumerate_labeled(3)
    assert list(s) == list(s)
    assert all(g.is_simple for g in s)


def test_file_examples(tmp_path):
    f = tmp_path / "one.g6"
    f.write_text("Bw\n")
    assert list(stream_graph6_file(f)) == [complete(3)]
    empty = tmp_path / "empty.g6"
    empty.write_text("")
    assert list(stream_graph6_file(empty)) == []
    two = tmp_path / "two.g6"
    two.write_text("A_\nA?\n")
    got = list(stream_graph6_file(two))
    assert got == [complete(2), parse_graph6("A?")]
    assert list(stream_graph6_file(two, connected_only=True)) == [complete(2)]


def test_file_order_preserved_across_sizes(tmp_path):
    f = tmp_path / "mixed.g6"
    f.write_text(">>graph6<<\nBw\nA_\nCF\nBW\n")
    got = [g.n for g in stream_graph6_file(f)]
    assert got == [3, 2, 4, 3]


def test_bad_line_reports_number(tmp_path):
    f = tmp_path / "bad.g6"
    f.write_text("Bw\nA_\nB!\n")
    with pytest.raises(BadGraph6) as exc:
        list(stream_graph6_file(f))
    assert exc.value.line == 3


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        stream_graph6_file(tmp_path / "nope.g6")
