"""Static bit vector with constant-time rank and near-constant select.

Positions are 1-based and rank queries are inclusive: rank1(p) counts ones
in positions 1..p, rank1(0) == 0.  rank10 counts occurrences of the two-bit
pattern "10", where an occurrence is located at the position of its zero.

Layout: the payload is packed 8 bits per byte, most significant bit first,
so position 1 is the high bit of byte 0.  On top of that sit two count
directories, one absolute (64-bit entries, one per superblock) and one
relative (16-bit entries, one per block).  Block size grows slowly with the
vector length, which keeps the directory overhead a shrinking fraction of
the payload while in-block scans stay a handful of word popcounts.  Select
runs two binary searches over the count directories and finishes inside a
single word with a byte table.
"""

import numpy as np

_M64 = (1 << 64) - 1

_BYTE_POP = bytes(bin(i).count("1") for i in range(256))

# _SEL_BYTE[byte * 8 + k] = offset (0 = MSB) of the (k+1)-th set bit of byte.
_SEL_BYTE = bytearray(256 * 8)
for _b in range(256):
    _k = 0
    for _j in range(8):
        if _b & (0x80 >> _j):
            _SEL_BYTE[_b * 8 + _k] = _j
            _k += 1


def _popcount_words(a):
    """Vectorized 64-bit popcount (build time only; queries use int.bit_count)."""
    a = a - ((a >> np.uint64(1)) & np.uint64(0x5555555555555555))
    a = (a & np.uint64(0x3333333333333333)) + ((a >> np.uint64(2)) & np.uint64(0x3333333333333333))
    a = (a + (a >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (a * np.uint64(0x0101010101010101)) >> np.uint64(56)


class BitVector:
    """Immutable 0/1 vector supporting rank1, rank0, rank10, select1, select0."""

    def __init__(self, bits):
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if arr.size and int(arr.max()) > 1:
            raise ValueError("bits must contain only 0 and 1")
        m = int(arr.size)
        self.n_bits = m

        self._packed = np.packbits(arr) if m else np.zeros(0, np.uint8)
        pad = (-self._packed.size) % 8
        padded = np.concatenate([self._packed, np.zeros(pad, np.uint8)]) if pad else self._packed
        words = np.frombuffer(padded.tobytes(), dtype=">u8").astype(np.uint64)
        nwords = len(words)

        # Geometry: blocks of `bw` words, superblocks of 16 blocks.  16-bit
        # relative counts need 16 * bw * 64 < 2**16, i.e. bw <= 63.
        bw = max(1, m.bit_length() // 8)
        self.block_words = bw
        self.superblock_words = 16 * bw
        nblk = max(1, -(-nwords // bw)) if nwords else 1
        nsb = -(-nblk // 16)

        pop = _popcount_words(words).astype(np.int64)
        cum1 = np.concatenate([[0], np.cumsum(pop)])

        # "10" occurrences per word; the pattern crossing a word boundary is
        # charged to the word holding the zero.
        prev_last = np.roll(words & np.uint64(1), 1)
        if nwords:
            prev_last[0] = 0
        tens = ((words >> np.uint64(1)) | (prev_last << np.uint64(63))) & ~words
        pop10 = _popcount_words(tens).astype(np.int64)
        if nwords:
            # drop phantom occurrences inside the zero padding of the last word
            valid = m - 64 * (nwords - 1)
            if valid < 64:
                t = int(tens[-1]) >> (64 - valid)
                pop10[-1] = t.bit_count()
        cum10 = np.concatenate([[0], np.cumsum(pop10)])

        sb_word = np.minimum(np.arange(nsb + 1) * self.superblock_words, nwords)
        blk_word = np.minimum(np.arange(nblk) * bw, nwords)
        sb_of_blk = np.arange(nblk) // 16

        sb1 = cum1[sb_word]
        blk1 = (cum1[blk_word] - sb1[sb_of_blk]).astype(np.uint16)
        sb10 = cum10[sb_word]
        blk10 = (cum10[blk_word] - sb10[sb_of_blk]).astype(np.uint16)

        sb_bits = np.minimum(sb_word * 64, m)
        sb0 = sb_bits - sb1
        blk_bits_rel = (blk_word - sb_word[sb_of_blk]) * 64
        blk0 = (blk_bits_rel - blk1.astype(np.int64)).astype(np.uint16)

        # numpy copies drive the select binary searches; list mirrors make the
        # per-query hot path plain int arithmetic.
        self._sb1_np, self._blk1_np = sb1, blk1
        self._sb0_np, self._blk0_np = sb0, blk0
        self._sb1, self._blk1 = sb1.tolist(), blk1.tolist()
        self._sb10, self._blk10 = sb10.tolist(), blk10.tolist()
        self._sb0, self._blk0 = sb0.tolist(), blk0.tolist()
        self._words = words.tolist()
        self._nblk = nblk

    # ------------------------------------------------------------------
    # raw access

    def bit(self, p: int) -> int:
        """Bit at position p (1-based)."""
        if not 1 <= p <= self.n_bits:
            raise ValueError(f"position {p} out of range 1..{self.n_bits}")
        return (self._words[(p - 1) >> 6] >> (63 - ((p - 1) & 63))) & 1

    def to01(self):
        """The payload as a uint8 array of 0/1 values."""
        return np.unpackbits(self._packed)[: self.n_bits]

    @property
    def packed_bytes(self) -> bytes:
        """Payload packed MSB-first, position 1 in the high bit of byte 0."""
        return self._packed.tobytes()

    # ------------------------------------------------------------------
    # rank

    def rank1(self, p: int) -> int:
        if not 0 <= p <= self.n_bits:
            raise ValueError(f"position {p} out of range 0..{self.n_bits}")
        if p == 0:
            return 0
        w = (p - 1) >> 6
        blk = w // self.block_words
        r = self._sb1[blk >> 4] + self._blk1[blk]
        words = self._words
        for wi in range(blk * self.block_words, w):
            r += words[wi].bit_count()
        return r + (words[w] >> (63 - ((p - 1) & 63))).bit_count()

    def rank0(self, p: int) -> int:
        if not 0 <= p <= self.n_bits:
            raise ValueError(f"position {p} out of range 0..{self.n_bits}")
        return p - self.rank1(p)

    def rank10(self, p: int) -> int:
        """Occurrences of "10" whose zero lies at a position <= p."""
        if not 0 <= p <= self.n_bits:
            raise ValueError(f"position {p} out of range 0..{self.n_bits}")
        if p == 0:
            return 0
        w = (p - 1) >> 6
        blk = w // self.block_words
        r = self._sb10[blk >> 4] + self._blk10[blk]
        words = self._words
        for wi in range(blk * self.block_words, w + 1):
            x = words[wi]
            prev = (words[wi - 1] & 1) if wi else 0
            t = ((x >> 1) | (prev << 63)) & (~x & _M64)
            if wi == w:
                r += (t >> (63 - ((p - 1) & 63))).bit_count()
            else:
                r += t.bit_count()
        return r

    # ------------------------------------------------------------------
    # select

    def count1(self) -> int:
        return self._sb1[-1]

    def count0(self) -> int:
        return self._sb0[-1]

    def select1(self, i: int) -> int:
        """Position of the i-th one (1-based)."""
        total = self._sb1[-1]
        if not 1 <= i <= total:
            raise ValueError(f"select1 index {i} out of range 1..{total}")
        s = int(np.searchsorted(self._sb1_np, i, side="left")) - 1
        j = i - self._sb1[s]
        lo = s << 4
        hi = min(self._nblk, lo + 16)
        b = lo + int(np.searchsorted(self._blk1_np[lo:hi], j, side="left")) - 1
        j -= self._blk1[b]
        words = self._words
        for wi in range(b * self.block_words, len(words)):
            c = words[wi].bit_count()
            if j <= c:
                return wi * 64 + _select_in_word(words[wi], j)
            j -= c
        raise AssertionError("select1 directory out of sync")

    def select0(self, i: int) -> int:
        """Position of the i-th zero (1-based)."""
        total = self._sb0[-1]
        if not 1 <= i <= total:
            raise ValueError(f"select0 index {i} out of range 1..{total}")
        s = int(np.searchsorted(self._sb0_np, i, side="left")) - 1
        j = i - self._sb0[s]
        lo = s << 4
        hi = min(self._nblk, lo + 16)
        b = lo + int(np.searchsorted(self._blk0_np[lo:hi], j, side="left")) - 1
        j -= self._blk0[b]
        m = self.n_bits
        words = self._words
        for wi in range(b * self.block_words, len(words)):
            valid = min(64, m - wi * 64)
            c = valid - words[wi].bit_count()
            if j <= c:
                mask = _M64 if valid == 64 else (((1 << valid) - 1) << (64 - valid))
                return wi * 64 + _select_in_word(~words[wi] & mask, j)
            j -= c
        raise AssertionError("select0 directory out of sync")

    # ------------------------------------------------------------------

    def support_bits(self) -> int:
        """Directory overhead in bits, by declared entry width (64-bit
        superblock counts, 16-bit block counts); payload and mirrors excluded."""
        sb = 64 * (len(self._sb1) + len(self._sb10) + len(self._sb0))
        blk = 16 * (len(self._blk1) + len(self._blk10) + len(self._blk0))
        return sb + blk

    def __len__(self) -> int:
        return self.n_bits


def _select_in_word(word: int, k: int) -> int:
    """1-based offset of the k-th set bit of a 64-bit word, MSB first."""
    for byte_i in range(8):
        byte = (word >> (56 - 8 * byte_i)) & 0xFF
        c = _BYTE_POP[byte]
        if k <= c:
            return byte_i * 8 + _SEL_BYTE[(byte << 3) | (k - 1)] + 1
        k -= c
    raise AssertionError("fewer set bits than requested")
