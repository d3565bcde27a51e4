"""Newick parsing straight into the succinct representation.

A tree is read in one pass: every '(' appends an opening bit, every leaf
appends an open-close pair, every ')' appends a closing bit.  Labels and
weights land in pre-order slots (slot i-1 for node i), so nothing pointer
shaped is ever built.  The label table used to join the two trees of a
pair is transient: it is dropped before the pair is returned, and the
LabelTable kept on the pair rebuilds its forward map only if someone asks
for a lookup later.

Label syntax: a maximal run of characters excluding '(' ')' ',' ':' ';'
and whitespace.  Weight syntax: ':' immediately followed by a decimal
literal with optional sign, fraction, and exponent.  A weight on the root
is accepted and discarded, the root has no entering edge.

Two labelling modes exist.  In leaf mode only leaves carry labels and
internal labels are rejected; in full mode every node must carry one.
Mode "auto" picks full when both inputs contain internal labels, leaf when
neither does, and refuses to guess otherwise.
"""

import re

import numpy as np

from .bp import BpTree

_TOKEN = re.compile(r"[ \t\r\n]+|([(),;])|:([^(),;:\s]*)|([^(),;:\s]+)")
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")


class ParseError(ValueError):
    """Malformed input; carries the character offset and which tree."""

    def __init__(self, message, offset, tree_index):
        super().__init__(f"tree {tree_index}, offset {offset}: {message}")
        self.offset = offset
        self.tree_index = tree_index


class LabelMismatchError(ParseError):
    """The two trees do not carry the same label set."""


class ModeError(ValueError):
    """Labelling mode, metric, and input do not fit together."""

    def __init__(self, message, offset=None, tree_index=None):
        if offset is not None:
            message = f"tree {tree_index}, offset {offset}: {message}"
        super().__init__(message)
        self.offset = offset
        self.tree_index = tree_index


class LabelTable:
    """label <-> pre-order index for one tree.

    Stores only the reverse array (index to optional name); the forward
    dictionary is rebuilt lazily on the first index_of call, which keeps
    the steady-state footprint at one list of strings.
    """

    __slots__ = ("_names", "_index")

    def __init__(self, names):
        self._names = names
        self._index = None

    def name_of(self, i: int):
        """Label of node i, or None."""
        return self._names[i - 1]

    def index_of(self, label: str) -> int:
        if self._index is None:
            self._index = {nm: i + 1 for i, nm in enumerate(self._names)
                           if nm is not None}
        return self._index[label]

    def labelled_count(self) -> int:
        return sum(1 for nm in self._names if nm is not None)

    def __len__(self) -> int:
        return len(self._names)


class TreePair:
    """Two parsed trees joined by a code map.

    code_map is an int32 array with one slot per node of tree 1: slot i-1
    holds the pre-order index in tree 2 of the node carrying the same
    label as node i of tree 1, or 0 when node i is unlabelled.  In full
    mode both trees have the same node count n; in leaf mode they share
    the leaf count and n is the node count of tree 1.
    """

    __slots__ = ("t1", "t2", "labels1", "labels2", "code_map",
                 "w1", "w2", "weights_sum", "mode", "_code_list")

    def __init__(self, t1, t2, labels1, labels2, code_map, w1, w2,
                 weights_sum, mode):
        self.t1 = t1
        self.t2 = t2
        self.labels1 = labels1
        self.labels2 = labels2
        self.code_map = code_map
        self.w1 = w1
        self.w2 = w2
        self.weights_sum = weights_sum
        self.mode = mode
        self._code_list = None

    @property
    def n(self) -> int:
        return self.t1.n_nodes

    @property
    def weighted(self) -> bool:
        return self.w1 is not None

    def code_list(self):
        """code_map as a plain list, cached; the distance loops index it."""
        if self._code_list is None:
            self._code_list = self.code_map.tolist()
        return self._code_list


class _Scanned:
    __slots__ = ("bits", "kinds", "labels", "offsets", "weights",
                 "table", "n", "any_weight", "any_internal_label")


def _scan(text, tree_index):
    """Single pass over one newick string; all per-node arrays use slot i-1."""
    bits = []
    kinds = []      # True for leaves
    labels = []
    offsets = []    # label offset if labelled, else the node's '(' offset
    weights = []
    table = {}
    stack = []
    expect_node = True
    can_label = can_weight = False
    cur = 0
    n = 0
    any_weight = False
    any_internal = False
    end = None

    for mo in _TOKEN.finditer(text):
        delim, wtok, label = mo.group(1), mo.group(2), mo.group(3)
        if delim is None and wtok is None and label is None:
            continue
        off = mo.start()
        if end is not None:
            raise ParseError("trailing content after ';'", off, tree_index)
        if label is not None:
            if expect_node:
                n += 1
                bits.append(1)
                bits.append(0)
                kinds.append(True)
                labels.append(label)
                offsets.append(off)
                weights.append(0.0)
                if label in table:
                    raise ParseError(f"duplicate label '{label}'", off, tree_index)
                table[label] = n
                expect_node = False
                cur = n
                can_label = False
                can_weight = True
            elif can_label:
                if label in table:
                    raise ParseError(f"duplicate label '{label}'", off, tree_index)
                table[label] = cur
                labels[cur - 1] = label
                offsets[cur - 1] = off
                any_internal = True
                can_label = False
            else:
                raise ParseError(f"unexpected label '{label}'", off, tree_index)
        elif wtok is not None:
            if expect_node or not can_weight:
                raise ParseError("unexpected weight", off, tree_index)
            if not _NUMBER.match(wtok):
                raise ParseError(f"malformed weight ':{wtok}'", off, tree_index)
            any_weight = True
            if cur != 1:
                weights[cur - 1] = float(wtok)
            can_weight = False
            can_label = False
        elif delim == "(":
            if not expect_node:
                raise ParseError("unexpected '('", off, tree_index)
            n += 1
            bits.append(1)
            kinds.append(False)
            labels.append(None)
            offsets.append(off)
            weights.append(0.0)
            stack.append(n)
            cur = 0
        elif delim == ",":
            if expect_node or not stack:
                raise ParseError("expected a node before ','", off, tree_index)
            expect_node = True
            can_label = can_weight = False
            cur = 0
        elif delim == ")":
            if expect_node or not stack:
                raise ParseError("expected a node before ')'", off, tree_index)
            cur = stack.pop()
            bits.append(0)
            can_label = can_weight = True
        else:  # ';'
            if expect_node:
                raise ParseError("empty tree" if n == 0 else
                                 "expected a node before ';'", off, tree_index)
            if stack:
                raise ParseError("unbalanced parentheses", off, tree_index)
            end = mo.end()

    if end is None:
        raise ParseError("missing ';' terminator", len(text), tree_index)

    s = _Scanned()
    s.bits = bits
    s.kinds = kinds
    s.labels = labels
    s.offsets = offsets
    s.weights = weights
    s.table = table
    s.n = n
    s.any_weight = any_weight
    s.any_internal_label = any_internal
    return s


def _check_mode(s, mode, tree_index):
    if mode == "leaf":
        if s.any_internal_label:
            off = min(s.offsets[i] for i in range(s.n)
                      if not s.kinds[i] and s.labels[i] is not None)
            raise ModeError("internal label not allowed in leaf mode",
                            off, tree_index)
    else:
        for i in range(s.n):
            if s.labels[i] is None:
                raise ModeError("unlabelled node in fully-labelled mode",
                                s.offsets[i], tree_index)


def parse_pair(text1: str, text2: str, mode: str = "leaf",
               weighted: bool = False) -> TreePair:
    """Parse two newick strings and join them by label.

    mode is "leaf", "full", or "auto".  With weighted=True the per-node
    weight vectors and their grand total are kept; weight literals in the
    input are validated either way.
    """
    if mode not in ("leaf", "full", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    s1 = _scan(text1, 1)
    s2 = _scan(text2, 2)
    if mode == "auto":
        if s1.any_internal_label != s2.any_internal_label:
            raise ModeError("internal labels present in only one input")
        mode = "full" if s1.any_internal_label else "leaf"
    _check_mode(s1, mode, 1)
    _check_mode(s2, mode, 2)
    if weighted:
        for s, k in ((s1, 1), (s2, 2)):
            if not s.any_weight:
                raise ModeError("weighted parse needs ':' weights",
                                0, k)

    code = [0] * s1.n
    table1 = s1.table
    matched = 0
    labels2 = s2.labels
    for j in range(s2.n):
        lab = labels2[j]
        if lab is None:
            continue
        i = table1.get(lab)
        if i is None:
            raise LabelMismatchError(f"label '{lab}' not in first tree",
                                     s2.offsets[j], 2)
        code[i - 1] = j + 1
        matched += 1
    if matched < len(table1):
        miss = next(s1.labels[i] for i in range(s1.n)
                    if s1.labels[i] is not None and code[i] == 0)
        raise LabelMismatchError(f"label '{miss}' missing from second tree",
                                 len(text2), 2)

    t1 = BpTree(np.array(s1.bits, dtype=np.uint8))
    t2 = BpTree(np.array(s2.bits, dtype=np.uint8))
    return TreePair(
        t1, t2,
        LabelTable(s1.labels), LabelTable(s2.labels),
        np.array(code, dtype=np.int32),
        np.array(s1.weights) if weighted else None,
        np.array(s2.weights) if weighted else None,
        (float(sum(s1.weights)) + float(sum(s2.weights))) if weighted else None,
        mode,
    )


def parse_tree(text: str, weighted: bool = False):
    """Parse a single tree: (BpTree, LabelTable, weight array or None).

    Mode constraints do not apply to a standalone tree; internal labels
    are kept when present.
    """
    s = _scan(text, 1)
    tree = BpTree(np.array(s.bits, dtype=np.uint8))
    w = np.array(s.weights) if (weighted and s.any_weight) else None
    return tree, LabelTable(s.labels), w


def has_internal_labels(text: str) -> bool:
    return _scan(text, 1).any_internal_label


def has_weights(text: str) -> bool:
    return _scan(text, 1).any_weight


def write_newick(tree: BpTree, labels: LabelTable, weights=None) -> str:
    """Canonical newick text: stored child order, labels verbatim, weights
    in shortest round-trip decimal form, none on the root."""
    bits = tree.bits.to01().tolist()
    m = tree.n_bits
    wlist = None if weights is None else (
        weights.tolist() if hasattr(weights, "tolist") else list(weights))
    out = []
    stack = []
    idx = 0
    just_closed = False
    p = 0
    while p < m:
        if bits[p]:
            if just_closed:
                out.append(",")
            idx += 1
            if p + 1 < m and bits[p + 1] == 0:
                out.append(labels.name_of(idx) or "")
                if wlist is not None and idx != 1:
                    out.append(f":{wlist[idx - 1]!r}")
                p += 2
                just_closed = True
            else:
                out.append("(")
                stack.append(idx)
                p += 1
                just_closed = False
        else:
            v = stack.pop()
            out.append(")")
            name = labels.name_of(v)
            if name:
                out.append(name)
            if wlist is not None and v != 1:
                out.append(f":{wlist[v - 1]!r}")
            p += 1
            just_closed = True
    out.append(";")
    return "".join(out)
