"""Balanced-parentheses encoding of an ordered rooted tree.

A tree with n nodes is the bit vector of its depth-first walk: 1 opens a
node, 0 closes it, 2n bits total.  Node identity is carried two ways and
both are 1-based: a position (index of an opening bit) and a pre-order
index.  excess(p) = rank1(p) - rank0(p) is the depth of the node open at
position p, and every navigation operation below reduces to rank, select,
or an excess search.

Excess searches are served by a three-level structure: a byte table for
in-block scans, per-block minima at the leaves of a flat segment tree for
the rest.  The searches used here (matching parenthesis, encloser, range
minimum) all look for the first crossing of a target value, and since the
excess walk moves in unit steps the first block whose minimum reaches the
target must contain that crossing.
"""

import numpy as np

from .bitvec import BitVector

# per-byte excess delta and minimum prefix excess, MSB first
_BYTE_EXC = []
_BYTE_MIN = []
for _b in range(256):
    _e = 0
    _mn = 8
    for _j in range(8):
        _e += 1 if _b & (0x80 >> _j) else -1
        if _e < _mn:
            _mn = _e
    _BYTE_EXC.append(_e)
    _BYTE_MIN.append(_mn)


class BpTree:
    """Navigation over a balanced-parentheses tree encoding."""

    def __init__(self, bits):
        self.bits = bits if isinstance(bits, BitVector) else BitVector(bits)
        m = self.bits.n_bits
        if m < 2 or m % 2:
            raise ValueError("parenthesis sequence must have positive even length")

        arr = self.bits.to01()
        cum = np.cumsum(arr.astype(np.int64) * 2 - 1)
        if int(cum[-1]) != 0 or int(cum[:-1].min(initial=1)) < 1:
            raise ValueError("not a balanced sequence with a single root")

        self.n_bits = m
        self.n_nodes = m // 2
        self._bytes = self.bits._packed.tolist()

        # block minima (absolute excess) under a flat segment tree
        bsize = 64 * self.bits.block_words
        self._bsize = bsize
        nb = -(-m // bsize)
        self._nb = nb
        starts = np.arange(nb) * bsize
        mins = np.minimum.reduceat(cum, starts)
        p2 = 1 << ((nb - 1).bit_length() if nb > 1 else 0)
        self._inf = m + 2
        seg = np.full(2 * p2, self._inf, dtype=np.int64)
        seg[p2:p2 + nb] = mins
        size = p2
        while size > 1:
            size >>= 1
            lo = 2 * size
            seg[size:lo] = np.minimum(seg[lo:2 * lo:2], seg[lo + 1:2 * lo:2])
        self._p2 = p2
        self._seg = seg.tolist()

    # ------------------------------------------------------------------
    # basics

    def _bit(self, p):
        return (self._bytes[(p - 1) >> 3] >> (7 - ((p - 1) & 7))) & 1

    def excess(self, p: int) -> int:
        """Depth measure: ones minus zeros in positions 1..p."""
        return 2 * self.bits.rank1(p) - p

    def is_leaf(self, p: int) -> bool:
        if not 1 <= p <= self.n_bits or not self._bit(p):
            raise ValueError(f"{p} is not an opening position")
        return self._bit(p + 1) == 0

    def pre_order_map(self, p: int) -> int:
        """Pre-order index of the node open at p."""
        return self.bits.rank1(p)

    def pre_order_select(self, i: int) -> int:
        """Opening position of the i-th node in pre-order."""
        return self.bits.select1(i)

    def post_order_select(self, i: int) -> int:
        """Opening position of the i-th node in post-order."""
        return self.find_open(self.bits.select0(i))

    # ------------------------------------------------------------------
    # matching and enclosing

    def find_close(self, p: int) -> int:
        """Position of the closing bit matching the open at p."""
        if not 1 <= p <= self.n_bits or not self._bit(p):
            raise ValueError(f"{p} is not an opening position")
        if self._bit(p + 1) == 0:
            return p + 1
        return self._fwd_excess(p, self.excess(p) - 1)

    def find_open(self, p: int) -> int:
        """Position of the opening bit matching the close at p."""
        if not 1 <= p <= self.n_bits or self._bit(p):
            raise ValueError(f"{p} is not a closing position")
        if self._bit(p - 1) == 1:
            return p - 1
        return self._bwd_excess(p, self.excess(p)) + 1

    def enclose(self, p: int) -> int:
        """Opening position of the parent of the node open at p."""
        if not 1 <= p <= self.n_bits or not self._bit(p):
            raise ValueError(f"{p} is not an opening position")
        if p == 1:
            raise ValueError("the root has no enclosing node")
        if self._bit(p - 1) == 1:
            return p - 1
        return self._bwd_excess(p, self.excess(p) - 2) + 1

    def rmq(self, l: int, r: int) -> int:
        """Leftmost position of minimum excess in [l..r]."""
        if not 1 <= l <= r <= self.n_bits:
            raise ValueError(f"bad range [{l}..{r}]")
        bsize = self._bsize
        bl = (l - 1) // bsize
        br = (r - 1) // bsize
        if bl == br:
            return self._scan_min(l, r)[1]
        best_v, best_p = self._scan_min(l, (bl + 1) * bsize)
        if br > bl + 1:
            mv = self._seg_range_min(bl + 1, br - 1)
            if mv < best_v:
                b = self._seg_next(bl + 1, mv)
                best_v, best_p = mv, self._scan_first(b, mv)
        v, p = self._scan_min(br * bsize + 1, r)
        if v < best_v:
            best_v, best_p = v, p
        return best_p

    # ------------------------------------------------------------------
    # tree navigation

    def first_child(self, p: int) -> int:
        if self.is_leaf(p):
            raise ValueError(f"node at {p} is a leaf")
        return p + 1

    def next_sibling(self, p: int):
        """Opening position of the next sibling, or None for a last child."""
        q = self.find_close(p) + 1
        if q <= self.n_bits and self._bit(q) == 1:
            return q
        return None

    def lca(self, p: int, q: int) -> int:
        """Opening position of the lowest common ancestor of two nodes."""
        if p == q:
            return p
        if p > q:
            p, q = q, p
        return self.enclose(self.rmq(p, q) + 1)

    def cluster_size(self, p: int) -> int:
        """Number of nodes in the subtree rooted at p."""
        return (self.find_close(p) - p + 1) // 2

    def num_leaves(self, p: int) -> int:
        """Number of leaves in the subtree rooted at p."""
        return self.bits.rank10(self.find_close(p)) - self.bits.rank10(p)

    def support_bits(self) -> int:
        """Directory overhead in bits: bit-vector directories plus the
        32-bit-per-entry block-minimum tree."""
        return self.bits.support_bits() + 32 * len(self._seg)

    # ------------------------------------------------------------------
    # excess searches

    def _fwd_excess(self, p, target):
        """Smallest q > p with excess(q) == target.  Sound when every
        position strictly between p and the answer has excess above target,
        which holds for matching-parenthesis searches."""
        m = self.n_bits
        by = self._bytes
        e = self.excess(p)
        q = p
        while q & 7:
            if q >= m:
                raise ValueError("no forward match")
            q += 1
            e += 1 if self._bit(q) else -1
            if e == target:
                return q
        bsize = self._bsize
        blk_end = min(m, (q // bsize + 1) * bsize)
        while True:
            while q + 8 <= blk_end:
                byte = by[q >> 3]
                if e + _BYTE_MIN[byte] <= target:
                    return self._scan_byte_fwd(q, byte, e, target)
                e += _BYTE_EXC[byte]
                q += 8
            while q < blk_end:
                q += 1
                e += 1 if self._bit(q) else -1
                if e == target:
                    return q
            if q >= m:
                raise ValueError("no forward match")
            b = self._seg_next(q // bsize, target)
            if b < 0:
                raise ValueError("no forward match")
            q = b * bsize
            e = self.excess(q)
            blk_end = min(m, q + bsize)

    def _bwd_excess(self, p, target):
        """Largest q < p with excess(q) == target (q may be 0).  Sound under
        the mirror of the _fwd_excess condition."""
        q = p - 1
        e = self.excess(q)
        while q & 7:
            if e == target:
                return q
            e -= 1 if self._bit(q) else -1
            q -= 1
        if e == target:
            return q
        by = self._bytes
        bsize = self._bsize
        while True:
            blk_start = ((q - 1) // bsize) * bsize if q else 0
            while q > blk_start:
                byte = by[(q >> 3) - 1]
                tot = _BYTE_EXC[byte]
                if e - tot + _BYTE_MIN[byte] <= target:
                    return self._scan_byte_bwd(q - 8, byte, e - tot, target)
                e -= tot
                q -= 8
            if q == 0:
                break
            b = self._seg_prev(q // bsize - 1, target)
            if b < 0:
                break
            q = (b + 1) * bsize
            e = self.excess(q)
            if e == target:
                return q
        if target == 0:
            return 0
        raise ValueError("no backward match")

    def _scan_byte_fwd(self, q, byte, e, target):
        for j in range(min(8, self.n_bits - q)):
            e += 1 if byte & (0x80 >> j) else -1
            if e == target:
                return q + j + 1
        raise AssertionError("excess directory out of sync")

    def _scan_byte_bwd(self, base, byte, e, target):
        best = -1
        for j in range(8):
            e += 1 if byte & (0x80 >> j) else -1
            if e == target:
                best = base + j + 1
        if best < 0:
            raise AssertionError("excess directory out of sync")
        return best

    def _scan_min(self, a, b):
        """(min excess, leftmost position) over positions [a..b]."""
        by = self._bytes
        e = self.excess(a - 1)
        best_v = self._inf
        best_p = -1
        q = a - 1
        while q < b and q & 7:
            q += 1
            e += 1 if self._bit(q) else -1
            if e < best_v:
                best_v, best_p = e, q
        while q + 8 <= b:
            byte = by[q >> 3]
            cand = e + _BYTE_MIN[byte]
            if cand < best_v:
                ee = e
                for j in range(8):
                    ee += 1 if byte & (0x80 >> j) else -1
                    if ee == cand:
                        best_v, best_p = cand, q + j + 1
                        break
            e += _BYTE_EXC[byte]
            q += 8
        while q < b:
            q += 1
            e += 1 if self._bit(q) else -1
            if e < best_v:
                best_v, best_p = e, q
        return best_v, best_p

    def _scan_first(self, b, v):
        """Leftmost position in block b with excess == v."""
        bsize = self._bsize
        start = b * bsize
        end = min(self.n_bits, start + bsize)
        by = self._bytes
        e = self.excess(start)
        q = start
        while q + 8 <= end:
            byte = by[q >> 3]
            if e + _BYTE_MIN[byte] <= v:
                return self._scan_byte_fwd(q, byte, e, v)
            e += _BYTE_EXC[byte]
            q += 8
        while q < end:
            q += 1
            e += 1 if self._bit(q) else -1
            if e == v:
                return q
        raise AssertionError("excess directory out of sync")

    # ------------------------------------------------------------------
    # segment tree over block minima

    def _seg_range_min(self, lo, hi):
        seg = self._seg
        res = self._inf
        i = self._p2 + lo
        j = self._p2 + hi + 1
        while i < j:
            if i & 1:
                if seg[i] < res:
                    res = seg[i]
                i += 1
            if j & 1:
                j -= 1
                if seg[j] < res:
                    res = seg[j]
            i >>= 1
            j >>= 1
        return res

    def _seg_next(self, b, target):
        """Smallest block index >= b whose minimum is <= target, else -1."""
        if b >= self._nb:
            return -1
        seg = self._seg
        p2 = self._p2
        i = p2 + b
        while True:
            if seg[i] <= target:
                while i < p2:
                    i *= 2
                    if seg[i] > target:
                        i += 1
                return i - p2
            while i & 1:
                i >>= 1
            if i <= 1:
                return -1
            i += 1

    def _seg_prev(self, b, target):
        """Largest block index <= b whose minimum is <= target, else -1."""
        if b < 0:
            return -1
        seg = self._seg
        p2 = self._p2
        i = p2 + b
        while True:
            if seg[i] <= target:
                while i < p2:
                    i = 2 * i + 1
                    if seg[i] > target:
                        i -= 1
                return i - p2
            while not i & 1:
                i >>= 1
            if i <= 1:
                return -1
            i -= 1
