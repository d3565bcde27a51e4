"""The four distances over a parsed pair, two traversals each.

Both traversals walk tree 1 and fold, per node, the lca in tree 2 of the
images of everything below.  A cluster is shared exactly when that folded
node spans no more than the original: leaf counts are compared in leaf
mode, subtree sizes in fully-labelled mode.  The post-order driver pulls
nodes with post_order_select and keeps (folded position, subtree size)
entries on one stack; the sibling driver runs first_child/next_sibling
with an explicit frame list so degenerate caterpillars cannot exhaust the
interpreter stack.

Unweighted results count internal clusters only, the root included; it
always matches because both trees span the same label set.  Weighted
results start from the grand weight total and subtract, for every shared
cluster c, w1(c) + w2(c) - |w1(c) - w2(c)|: shared clusters then cost the
absolute difference and unshared ones their full weight.  Leaf singletons
are shared by the label map itself in leaf mode; in fully-labelled mode a
leaf's image must be a leaf too, which is the size test again.

Every call reports how often it touched the navigation operations whose
per-call cost is not constant; the counts back the traversal-bound tests.
"""

from dataclasses import dataclass
from typing import Optional

from .newick import ModeError, TreePair


@dataclass
class OpCounts:
    post_order_select: int = 0
    lca: int = 0
    num_leaves: int = 0
    cluster_size: int = 0
    next_sibling: int = 0

    def total(self) -> int:
        return (self.post_order_select + self.lca + self.num_leaves
                + self.cluster_size + self.next_sibling)


@dataclass(frozen=True)
class DistanceResult:
    metric: str
    algorithm: str
    raw: float            # symmetric-difference count, or the weighted value
    halved: Optional[float]
    equal_clusters: int   # matched non-singleton clusters, root included
    common: Optional[tuple]
    ops: OpCounts

    @property
    def value(self) -> float:
        """What the command line prints by default."""
        return self.raw if self.halved is None else self.halved


def _require(pair: TreePair, metric: str):
    need = "full" if metric in ("erf", "werf") else "leaf"
    if pair.mode != need:
        have = "fully-labelled" if pair.mode == "full" else "leaf-labelled"
        want = "fully-labelled" if need == "full" else "leaf-labelled"
        raise ModeError(f"metric '{metric}' needs a {want} pair, got {have}")
    if metric in ("wrf", "werf") and not pair.weighted:
        raise ModeError(f"metric '{metric}' needs weights on the pair")


def _finish(pair, metric, algorithm, equal, sub, common, ops):
    if metric in ("wrf", "werf"):
        raw = pair.weights_sum - sub
        halved = None
    else:
        t1, t2 = pair.t1, pair.t2
        internal1 = t1.n_nodes - t1.bits.rank10(t1.n_bits)
        internal2 = t2.n_nodes - t2.bits.rank10(t2.n_bits)
        raw = internal1 + internal2 - 2 * equal
        halved = raw / 2
    return DistanceResult(metric, algorithm, raw, halved, equal,
                          None if common is None else tuple(common), ops)


def _run_postorder(pair: TreePair, metric: str, capture: bool):
    extended = metric in ("erf", "werf")
    weighted = metric in ("wrf", "werf")
    t1, t2 = pair.t1, pair.t2
    n = t1.n_nodes
    code = pair.code_list()
    w1 = pair.w1.tolist() if weighted else None
    w2 = pair.w2.tolist() if weighted else None

    pselect = t1.post_order_select
    premap1 = t1.pre_order_map
    premap2 = t2.pre_order_map
    leaf1 = t1.is_leaf
    cs1 = t1.cluster_size
    nl1 = t1.num_leaves
    pos2 = t2.pre_order_select
    lca2 = t2.lca
    cs2 = t2.cluster_size
    nl2 = t2.num_leaves

    ops = OpCounts()
    stack = []
    push = stack.append
    pop = stack.pop
    equal = 0
    sub = 0.0
    common = [] if capture else None

    for i in range(1, n + 1):
        p = pselect(i)
        ops.post_order_select += 1
        if leaf1(p):
            j = code[premap1(p) - 1]
            q = pos2(j)
            if weighted:
                if extended:
                    ops.cluster_size += 1
                    shared = cs2(q) == 1
                else:
                    shared = True
                if shared:
                    a = w1[premap1(p) - 1]
                    b = w2[j - 1]
                    sub += a + b - abs(a - b)
            push((q, 1))
            continue
        s = cs1(p)
        ops.cluster_size += 1
        need = s - 1
        acc = None
        while need:
            q, sz = pop()
            need -= sz
            if acc is None:
                acc = q
            else:
                acc = lca2(acc, q)
                ops.lca += 1
        if extended:
            own = pos2(code[premap1(p) - 1])
            acc = lca2(acc, own)
            ops.lca += 1
        if extended:
            ops.cluster_size += 1
            matched = cs2(acc) == s
        else:
            ops.num_leaves += 2
            matched = nl1(p) == nl2(acc)
        if matched:
            equal += 1
            if weighted:
                a = w1[premap1(p) - 1]
                b = w2[premap2(acc) - 1]
                sub += a + b - abs(a - b)
            if capture:
                common.append((premap1(p), premap2(acc)))
        push((acc, s))

    return _finish(pair, metric, "postorder", equal, sub, common, ops)


def _run_nextsibling(pair: TreePair, metric: str, capture: bool):
    extended = metric in ("erf", "werf")
    weighted = metric in ("wrf", "werf")
    t1, t2 = pair.t1, pair.t2
    code = pair.code_list()
    w1 = pair.w1.tolist() if weighted else None
    w2 = pair.w2.tolist() if weighted else None

    premap1 = t1.pre_order_map
    premap2 = t2.pre_order_map
    leaf1 = t1.is_leaf
    first1 = t1.first_child
    next1 = t1.next_sibling
    cs1 = t1.cluster_size
    nl1 = t1.num_leaves
    pos2 = t2.pre_order_select
    lca2 = t2.lca
    cs2 = t2.cluster_size
    nl2 = t2.num_leaves

    ops = OpCounts()
    equal = 0
    sub = 0.0
    common = [] if capture else None

    def leaf_entry(p):
        nonlocal sub
        j = code[premap1(p) - 1]
        q = pos2(j)
        if weighted:
            if extended:
                ops.cluster_size += 1
                shared = cs2(q) == 1
            else:
                shared = True
            if shared:
                a = w1[premap1(p) - 1]
                b = w2[j - 1]
                sub += a + b - abs(a - b)
        return q

    if leaf1(1):
        leaf_entry(1)
        return _finish(pair, metric, "nextsibling", equal, sub, common, ops)

    frames = []
    cur = 1
    while True:
        while not leaf1(cur):
            frames.append([cur, None])
            cur = first1(cur)
        entry = leaf_entry(cur)
        while True:
            top = frames[-1]
            if top[1] is None:
                top[1] = entry
            else:
                top[1] = lca2(top[1], entry)
                ops.lca += 1
            ns = next1(cur)
            if ns is not None:
                ops.next_sibling += 1
                cur = ns
                break
            frames.pop()
            p, acc = top
            if extended:
                own = pos2(code[premap1(p) - 1])
                acc = lca2(acc, own)
                ops.lca += 1
            if extended:
                ops.cluster_size += 2
                matched = cs2(acc) == cs1(p)
            else:
                ops.num_leaves += 2
                matched = nl1(p) == nl2(acc)
            if matched:
                equal += 1
                if weighted:
                    a = w1[premap1(p) - 1]
                    b = w2[premap2(acc) - 1]
                    sub += a + b - abs(a - b)
                if capture:
                    common.append((premap1(p), premap2(acc)))
            if not frames:
                return _finish(pair, metric, "nextsibling", equal, sub,
                               common, ops)
            entry = acc
            cur = p


def rf_postorder(pair: TreePair, capture: bool = False) -> DistanceResult:
    """Robinson-Foulds over leaf-labelled trees, post-order driver."""
    _require(pair, "rf")
    return _run_postorder(pair, "rf", capture)


def rf_nextsibling(pair: TreePair, capture: bool = False) -> DistanceResult:
    """Robinson-Foulds over leaf-labelled trees, sibling-walk driver."""
    _require(pair, "rf")
    return _run_nextsibling(pair, "rf", capture)


def erf(pair: TreePair, impl: str = "postorder",
        capture: bool = False) -> DistanceResult:
    """Extended RF over fully-labelled trees: all nodes fold, subtree
    sizes decide matching."""
    _require(pair, "erf")
    return _dispatch(pair, "erf", impl, capture)


def wrf(pair: TreePair, impl: str = "postorder",
        capture: bool = False) -> DistanceResult:
    """Weighted RF over leaf-labelled trees; singletons are shared by the
    label map, internal clusters by leaf-count matching."""
    _require(pair, "wrf")
    return _dispatch(pair, "wrf", impl, capture)


def werf(pair: TreePair, impl: str = "postorder",
         capture: bool = False) -> DistanceResult:
    """Weighted extended RF: wrf's subtraction with erf's matching."""
    _require(pair, "werf")
    return _dispatch(pair, "werf", impl, capture)


def _dispatch(pair, metric, impl, capture):
    if impl == "postorder":
        return _run_postorder(pair, metric, capture)
    if impl == "nextsibling":
        return _run_nextsibling(pair, metric, capture)
    raise ValueError(f"unknown implementation {impl!r}")


def compute(pair: TreePair, metric: str, impl: str = "postorder",
            capture: bool = False) -> DistanceResult:
    """Dispatch by metric name; the command line goes through here."""
    if metric == "rf":
        _require(pair, "rf")
        return _dispatch(pair, "rf", impl, capture)
    if metric in ("erf", "wrf", "werf"):
        _require(pair, metric)
        return _dispatch(pair, metric, impl, capture)
    raise ValueError(f"unknown metric {metric!r}")
