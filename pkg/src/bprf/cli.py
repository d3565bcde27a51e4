"""Command line front end: dist, gen, bench, pack, unpack.

Exit codes: 0 success, 1 I/O failure, 2 malformed input (newick or
packed bytes; also argparse usage errors), 3 metric/mode mismatch,
4 label-set mismatch.

The generator draws a uniform leaf-split topology: start from a single
leaf and repeatedly split a uniformly chosen leaf into an internal node
with fresh leaf children, two of them in binary mode and 2..4 in random
mode.  One seeded stream drives, in order: the splits, the leaf-label
shuffle, and the per-edge weights in pre-order, so output is a pure
function of (leaves, seed, flags).

Bench runs every (size, pair, metric, algorithm) cell twice: once
untraced for wall-clock phase timings, once under the tracked allocator
for the peak byte count, so tracing overhead never pollutes the
timings.
"""

import argparse
import csv
import random
import sys
import time
import tracemalloc
from dataclasses import dataclass

from .baseline import PlainNode, _preorder, day_rf_trees, parse_plain
from .distance import _require, compute
from .newick import (
    LabelMismatchError,
    ModeError,
    ParseError,
    parse_pair,
    parse_tree,
    write_newick,
)
from .treeio import PackError, pack, size_report, unpack

# ----------------------------------------------------------------------
# tree generation


def _topology(rng, n_leaves, arity):
    root = PlainNode()
    leaves = [root]
    while len(leaves) < n_leaves:
        i = rng.randrange(len(leaves))
        v = leaves[i]
        k = 2 if arity == "binary" else rng.randint(2, 4)
        k = min(k, n_leaves - len(leaves) + 1)
        kids = [PlainNode() for _ in range(k)]
        v.children = kids
        leaves[i] = kids[0]
        leaves.extend(kids[1:])
    return root


def _decorate(rng, root, full, weights):
    order = _preorder(root)
    leaf_nodes = [v for v in order if not v.children]
    names = [f"L{i + 1}" for i in range(len(leaf_nodes))]
    rng.shuffle(names)
    for v, name in zip(leaf_nodes, names):
        v.label = name
    if full:
        k = 0
        for v in order:
            if v.children:
                k += 1
                v.label = f"I{k}"
    if weights:
        for v in order[1:]:
            v.weight = rng.random()


def _emit(root, weights):
    out = []
    OPEN, CLOSE, COMMA = 0, 1, 2
    stack = [(OPEN, root)]
    while stack:
        op, v = stack.pop()
        if op == COMMA:
            out.append(",")
            continue
        if op == CLOSE:
            out.append(")")
            if v.label:
                out.append(v.label)
        elif v.children:
            out.append("(")
            stack.append((CLOSE, v))
            for i in range(len(v.children) - 1, -1, -1):
                stack.append((OPEN, v.children[i]))
                if i:
                    stack.append((COMMA, None))
            continue
        else:
            out.append(v.label)
        if weights and v is not root:
            out.append(f":{v.weight:.6f}")
    out.append(";")
    return "".join(out)


def _internal_count(root):
    return sum(1 for v in _preorder(root) if v.children)


def generate_tree_text(n_leaves, seed, arity="binary", full=False,
                       weights=False):
    rng = random.Random(seed)
    root = _topology(rng, n_leaves, arity)
    _decorate(rng, root, full, weights)
    return _emit(root, weights)


def generate_pair_texts(n_leaves, seed, arity="binary", full=False,
                        weights=False):
    """Two comparable trees from one stream.  Fully-labelled pairs need
    equal internal counts, so the second topology is redrawn until the
    counts agree; the redraws come from the same stream and stay
    deterministic."""
    rng = random.Random(seed)
    r1 = _topology(rng, n_leaves, arity)
    r2 = _topology(rng, n_leaves, arity)
    if full:
        while _internal_count(r2) != _internal_count(r1):
            r2 = _topology(rng, n_leaves, arity)
    _decorate(rng, r1, full, weights)
    _decorate(rng, r2, full, weights)
    return _emit(r1, weights), _emit(r2, weights)


# ----------------------------------------------------------------------
# measurement


@dataclass
class BenchRecord:
    n_leaves: int
    seed: int
    metric: str
    algorithm: str
    parse_seconds: float
    distance_seconds: float
    peak_tracked_bytes: int
    value: str

    HEADER = ("n_leaves,seed,metric,algorithm,parse_seconds,"
              "distance_seconds,peak_tracked_bytes,value")

    def row(self):
        return [self.n_leaves, self.seed, self.metric, self.algorithm,
                f"{self.parse_seconds:.6f}", f"{self.distance_seconds:.6f}",
                self.peak_tracked_bytes, self.value]


def _format(result, raw=False):
    if result.halved is None:
        return f"{result.raw:.12g}"
    return f"{result.raw:g}" if raw else f"{result.halved:g}"


def _run_phases(text1, text2, metric, algo):
    mode = "full" if metric in ("erf", "werf") else "leaf"
    weighted = metric in ("wrf", "werf")
    if algo == "day":
        t0 = time.perf_counter()
        roots = (parse_plain(text1), parse_plain(text2))
        t1 = time.perf_counter()
        result = day_rf_trees(*roots)
        t2 = time.perf_counter()
    else:
        t0 = time.perf_counter()
        pair = parse_pair(text1, text2, mode=mode, weighted=weighted)
        t1 = time.perf_counter()
        result = compute(pair, metric, algo)
        t2 = time.perf_counter()
    return t1 - t0, t2 - t1, result


def run_record(n_leaves, seed, metric, algo, arity="binary") -> BenchRecord:
    full = metric in ("erf", "werf")
    weighted = metric in ("wrf", "werf")
    text1, text2 = generate_pair_texts(n_leaves, seed, arity, full, weighted)
    parse_s, dist_s, result = _run_phases(text1, text2, metric, algo)
    tracemalloc.start()
    try:
        _run_phases(text1, text2, metric, algo)
        peak = tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()
    return BenchRecord(n_leaves, seed, metric, algo, parse_s, dist_s, peak,
                       _format(result))


def profile_phases(text1, text2, metric="rf", algo="postorder"):
    """Tracked-allocator view of the two phases: peak during parse,
    bytes retained when parsing ends, and peak during the distance walk."""
    mode = "full" if metric in ("erf", "werf") else "leaf"
    weighted = metric in ("wrf", "werf")
    tracemalloc.start()
    try:
        pair = parse_pair(text1, text2, mode=mode, weighted=weighted)
        parse_end_current, parse_peak = tracemalloc.get_traced_memory()
        tracemalloc.reset_peak()
        result = compute(pair, metric, algo)
        dist_end_current, dist_peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return {
        "parse_peak": parse_peak,
        "parse_end_current": parse_end_current,
        "dist_peak": dist_peak,
        "dist_end_current": dist_end_current,
        "result": result,
    }


# ----------------------------------------------------------------------
# subcommands


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_dist(args):
    text1 = _read(args.file1)
    text2 = _read(args.file2)
    weighted = args.metric in ("wrf", "werf")
    if args.algo == "day":
        if args.metric != "rf":
            raise ModeError("--algo day only computes --metric rf")
        if args.emit_common:
            raise ModeError("--emit-common needs --algo postorder or "
                            "nextsibling")
        pair = parse_pair(text1, text2, mode=args.mode)
        _require(pair, "rf")
        result = day_rf_trees(parse_plain(text1), parse_plain(text2))
    else:
        pair = parse_pair(text1, text2, mode=args.mode, weighted=weighted)
        result = compute(pair, args.metric, args.algo,
                         capture=args.emit_common)
    print(_format(result, raw=args.raw))
    if args.emit_common:
        for i, j in result.common:
            print(f"{i}\t{j}")
    return 0


def cmd_gen(args):
    print(generate_tree_text(args.leaves, args.seed, args.arity,
                             args.full_labels, args.weights))
    return 0


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _parse_sizes(spec):
    """Leaf counts: "100,500" or "10000..100000:10000" or a mix."""
    sizes = []
    try:
        for part in spec.split(","):
            part = part.strip()
            if ".." in part:
                span, sep, step_s = part.partition(":")
                if not sep:
                    raise ValueError(f"range {part!r} needs :STEP")
                lo_s, _, hi_s = span.partition("..")
                lo, hi, step = int(lo_s), int(hi_s), int(step_s)
                if lo < 1 or step < 1 or hi < lo:
                    raise ValueError(f"bad range {part!r}")
                sizes.extend(range(lo, hi + 1, step))
            else:
                sizes.append(int(part))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _name_list(allowed):
    def convert(text):
        names = [s.strip() for s in text.split(",")]
        for s in names:
            if s not in allowed:
                raise argparse.ArgumentTypeError(f"unknown name {s!r}")
        return names
    return convert


def cmd_bench(args):
    out = sys.stdout if args.csv == "-" else open(args.csv, "w", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(BenchRecord.HEADER.split(","))
        for n in args.sizes:
            for i in range(args.pairs):
                for metric in args.metrics:
                    for algo in args.algos:
                        if algo == "day" and metric != "rf":
                            continue
                        rec = run_record(n, args.seed + i, metric, algo,
                                         args.arity)
                        writer.writerow(rec.row())
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_pack(args):
    tree, labels, w = parse_tree(_read(args.input), weighted=True)
    with open(args.output, "wb") as fh:
        fh.write(pack(tree, labels, w))
    if args.report:
        text = _read(args.input)
        print(size_report(parse_pair(text, text, mode="auto")))
    return 0


def cmd_unpack(args):
    with open(args.input, "rb") as fh:
        tree, labels, w = unpack(fh.read())
    text = write_newick(tree, labels, w)
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="bprf",
        description="Robinson-Foulds distances over succinct tree encodings")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="distance between two newick files")
    d.add_argument("file1")
    d.add_argument("file2")
    d.add_argument("--metric", choices=("rf", "erf", "wrf", "werf"),
                   default="rf")
    d.add_argument("--algo", choices=("postorder", "nextsibling", "day"),
                   default="postorder")
    d.add_argument("--raw", action="store_true",
                   help="print the symmetric-difference count, not half")
    d.add_argument("--emit-common", action="store_true",
                   help="after the value, one 'i<TAB>j' line per matched "
                        "cluster")
    d.add_argument("--mode", choices=("auto", "leaf", "full"), default="auto")
    d.set_defaults(func=cmd_dist)

    g = sub.add_parser("gen", help="random newick tree on stdout")
    g.add_argument("--leaves", type=_positive_int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--full-labels", action="store_true")
    g.add_argument("--weights", action="store_true")
    g.add_argument("--arity", choices=("binary", "random"), default="binary")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="timing/memory grid as CSV")
    b.add_argument("--sizes", type=_parse_sizes, required=True,
                   help="comma list of leaf counts; A..B:STEP for a range")
    b.add_argument("--pairs", type=_positive_int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--metrics", type=_name_list(("rf", "erf", "wrf", "werf")),
                   default=["rf"])
    b.add_argument("--algos",
                   type=_name_list(("postorder", "nextsibling", "day")),
                   default=["postorder"])
    b.add_argument("--arity", choices=("binary", "random"), default="binary")
    b.add_argument("--csv", default="-", help="output path, '-' for stdout")
    b.set_defaults(func=cmd_bench)

    k = sub.add_parser("pack", help="newick file to packed bytes")
    k.add_argument("input")
    k.add_argument("output")
    k.add_argument("--report", action="store_true",
                   help="print the size report for the tree")
    k.set_defaults(func=cmd_pack)

    u = sub.add_parser("unpack", help="packed bytes back to newick")
    u.add_argument("input")
    u.add_argument("--output", default="-")
    u.set_defaults(func=cmd_unpack)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LabelMismatchError as e:
        print(f"bprf: {e}", file=sys.stderr)
        return 4
    except (ParseError, PackError) as e:
        print(f"bprf: {e}", file=sys.stderr)
        return 2
    except ModeError as e:
        print(f"bprf: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"bprf: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
