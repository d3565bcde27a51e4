"""Parser tests: frozen join tables, error offsets, round trips."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bprf.newick import (
    LabelMismatchError,
    ModeError,
    ParseError,
    has_internal_labels,
    parse_pair,
    parse_tree,
    write_newick,
)

from conftest import assign_labels, encode_bits, random_topology, to_newick

T4 = "(((A,B),C),(D,E,F));"
T5 = "((D,E,F),(B,(A,C)));"
T2 = "(((B,C)F,D)G,(A,E)H)I;"
T3 = "((B,(D,C)F)G,(A,E)H)I;"
W1 = "(((B:0.2,C:0.2)W:0.3,D:0.5)X:0.6,(A:0.5,E:0.5)Y:0.6)Z;"


def bits01(tree):
    return "".join(map(str, tree.bits.to01().tolist()))


def test_bit_encoding():
    assert bits01(parse_tree(T4)[0]) == "11110100100110101000"
    assert bits01(parse_tree(T5)[0]) == "11101010011011010000"


def test_labels_by_preorder_index():
    tree, labels, w = parse_tree(T4)
    assert w is None
    assert len(labels) == 10
    assert labels.name_of(1) is None
    assert labels.name_of(4) == "A"
    assert labels.name_of(10) == "F"
    assert labels.index_of("C") == 6
    with pytest.raises(KeyError):
        labels.index_of("Z")
    assert labels.labelled_count() == 6


def test_code_map_frozen():
    pair = parse_pair(T4, T5)
    assert pair.mode == "leaf"
    assert pair.code_map.dtype == np.int32
    assert pair.code_map.tolist() == [0, 0, 0, 9, 7, 10, 0, 3, 4, 5]
    assert pair.code_list() == pair.code_map.tolist()
    assert pair.n == 10
    assert not pair.weighted


def test_code_map_full_mode():
    pair = parse_pair(T2, T3, mode="full")
    assert pair.mode == "full"
    # every slot is mapped and the mapping preserves labels
    assert all(pair.code_map > 0)
    for i in range(1, pair.n + 1):
        j = int(pair.code_map[i - 1])
        assert pair.labels2.name_of(j) == pair.labels1.name_of(i)


def test_weights_and_sum():
    pair = parse_pair(W1, W1, mode="full", weighted=True)
    expect = [0.0, 0.6, 0.3, 0.2, 0.2, 0.5, 0.6, 0.5, 0.5]
    assert pair.w1.tolist() == expect
    assert pair.w2.tolist() == expect
    assert pair.weights_sum == pytest.approx(6.8, abs=1e-12)


def test_weights_sum_against_char_scan():
    # independent extraction: walk the text, read every ':' literal, drop
    # the one that closes the whole tree
    def scan_sum(text):
        total = 0.0
        depth = 0
        i = 0
        vals = []
        while i < len(text):
            c = text[i]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            if c == ":":
                j = i + 1
                while j < len(text) and text[j] not in "(),;:":
                    j += 1
                vals.append((depth, float(text[i + 1:j])))
                i = j
                continue
            i += 1
        return sum(v for d, v in vals if d > 0)

    for text in (W1, "(A:1.5,(B:2.25,C:0.5):3.0):9.0;"):
        pair = parse_pair(text, text, mode="auto", weighted=True)
        assert pair.weights_sum == pytest.approx(2 * scan_sum(text), abs=1e-12)


def test_root_weight_discarded():
    tree, labels, w = parse_tree("(A:1.5,B:2.5):7;", weighted=True)
    assert w.tolist() == [0.0, 1.5, 2.5]


def test_weight_forms():
    _, _, w = parse_tree("(A:1,B:.5,C:+2e-3,D:-1.25E2,E:3.);", weighted=True)
    assert w.tolist() == [0.0, 1.0, 0.5, 0.002, -125.0, 3.0]


@pytest.mark.parametrize("text,offset,what", [
    ("((A,B);", 6, "unbalanced"),
    ("(A,B));", 5, "expected a node"),
    ("(A,A);", 3, "duplicate"),
    ("(A,B)", 5, "missing ';'"),
    ("(A:1x,B);", 2, "malformed weight"),
    ("(A,,B);", 3, "expected a node"),
    ("(A B,C);", 3, "unexpected label"),
    (";", 0, "empty tree"),
    ("(A,B); junk", 7, "trailing"),
    ("(A,B valid);", 5, "unexpected label"),
    ("(A:1:2,B);", 4, "unexpected weight"),
    ("(:1,B);", 1, "unexpected weight"),
])
def test_parse_errors(text, offset, what):
    with pytest.raises(ParseError) as ei:
        parse_tree(text)
    assert ei.value.offset == offset
    assert what in str(ei.value)


def test_parse_error_reports_tree_index():
    with pytest.raises(ParseError) as ei:
        parse_pair("(A,B);", "((A,B);")
    assert ei.value.tree_index == 2
    assert "tree 2" in str(ei.value)


def test_label_mismatch():
    with pytest.raises(LabelMismatchError) as ei:
        parse_pair("(A,(B,C));", "((A,B),D);")
    assert ei.value.offset == 7
    assert "'D'" in str(ei.value)

    with pytest.raises(LabelMismatchError) as ei:
        parse_pair("(A,(B,C));", "(A,B);")
    assert "'C'" in str(ei.value)
    assert ei.value.offset == 6


def test_mode_validation():
    with pytest.raises(ModeError) as ei:
        parse_pair(T2, T3, mode="leaf")
    assert ei.value.offset == 7 and ei.value.tree_index == 1

    with pytest.raises(ModeError) as ei:
        parse_pair("((A,B)X,C)R;", "((A,B),C)R;", mode="full")
    assert ei.value.offset == 1 and ei.value.tree_index == 2

    with pytest.raises(ValueError):
        parse_pair(T4, T5, mode="strict")


def test_mode_auto():
    assert parse_pair(T4, T5, mode="auto").mode == "leaf"
    assert parse_pair(T2, T3, mode="auto").mode == "full"
    with pytest.raises(ModeError):
        parse_pair(T2, T4, mode="auto")
    assert has_internal_labels(T2)
    assert not has_internal_labels(T4)


def test_write_newick_fixed():
    tree, labels, w = parse_tree(W1, weighted=True)
    assert write_newick(tree, labels, w) == \
        "(((B:0.2,C:0.2)W:0.3,D:0.5)X:0.6,(A:0.5,E:0.5)Y:0.6)Z;"
    assert write_newick(tree, labels) == "(((B,C)W,D)X,(A,E)Y)Z;"


def test_whitespace_tolerated():
    pair = parse_pair(" ( (A , B) ,\n\tC ) ;", "(C,(B,A));")
    assert pair.code_map.tolist() == [0, 0, 5, 4, 2]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 40),
       st.sampled_from(["binary", "mixed"]), st.booleans(), st.booleans())
def test_roundtrip_random(seed, n_leaves, arity, full, weighted):
    import random

    rng = random.Random(seed)
    root = random_topology(rng, n_leaves, arity)
    assign_labels(root, rng, full=full, weights=weighted)
    text = to_newick(root, weights=weighted)
    tree, labels, w = parse_tree(text, weighted=weighted)

    bits, _ = encode_bits(root)
    assert tree.bits.to01().tolist() == bits
    assert write_newick(tree, labels, w) == text
    if weighted:
        assert w[0] == 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 30))
def test_leaf_join_random(seed, n_leaves):
    import random

    rng = random.Random(seed)
    r1 = random_topology(rng, n_leaves, "binary")
    r2 = random_topology(rng, n_leaves, "mixed")
    assign_labels(r1, rng)
    assign_labels(r2, rng)
    pair = parse_pair(to_newick(r1), to_newick(r2))

    nonzero = 0
    for i in range(1, pair.n + 1):
        j = int(pair.code_map[i - 1])
        name = pair.labels1.name_of(i)
        if name is None:
            assert j == 0
        else:
            nonzero += 1
            assert pair.labels2.name_of(j) == name
    assert nonzero == n_leaves
