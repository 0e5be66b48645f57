"""Generator-matrix linear codes over any constructed field.

Rank and weight distributions come from exact exhaustive enumeration of the
row space (chunked, deterministic, merge by pointwise sums); low-weight dual
codewords from a column-dependency search; plus the classical bound helpers
and the closed-form MDS weight distribution, all in arbitrary precision.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (
    BudgetExceeded,
    InconsistentDistribution,
    MixedFields,
    UnsupportedDistance,
)
from .galois import FiniteField

DEFAULT_BUDGET = 1 << 28
_CHUNK = 1 << 16


class GenMatrix:
    """A k x n matrix of field elements (encoded ints)."""

    def __init__(self, field: FiniteField, rows):
        self.field = field
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("generator matrix must be 2-D and non-empty")
        if arr.min() < 0 or arr.max() >= field.q:
            raise MixedFields("matrix entries out of range for its field")
        self.entries = arr
        self.k, self.n = arr.shape

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries[:, j])

    def __repr__(self):
        return f"GenMatrix({self.k}x{self.n} over GF({self.field.q}))"


def row_reduce(g: GenMatrix) -> tuple[GenMatrix, int]:
    """Reduced row echelon form and rank.

    Pivots are chosen deterministically: leftmost column first, then the
    topmost unused row with a nonzero entry.
    """
    f = g.field
    m = g.entries.copy()
    rank = 0
    for col in range(g.n):
        pivot = None
        for r in range(rank, g.k):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        pv = int(m[rank, col])
        if pv != 1:
            m[rank] = f.vmul_scalar(m[rank], f.inv(pv))
        for r in range(g.k):
            if r != rank and m[r, col]:
                m[r] = f.vsub(m[r], f.vmul_scalar(m[rank], int(m[r, col])))
        rank += 1
        if rank == g.k:
            break
    return GenMatrix(f, m), rank


class LinearCode:
    """Row space of a generator matrix; rank is computed eagerly."""

    def __init__(self, gen: GenMatrix):
        self.gen = gen
        self.field = gen.field
        self.reduced, self.rank = row_reduce(gen)
        self.n = gen.n

    @property
    def basis(self) -> np.ndarray:
        return self.reduced.entries[: self.rank]

    def codeword_count(self) -> int:
        return self.field.q ** self.rank

    def __repr__(self):
        return f"LinearCode([{self.n}, {self.rank}] over GF({self.field.q}))"


@dataclass
class WeightDistribution:
    n: int
    k: int
    q: int
    counts: list[int]
    p: int = dc_field(default=0)

    def __post_init__(self):
        if self.p == 0:
            n = self.q
            d = 2
            while n % d:
                d += 1
            self.p = d
        if len(self.counts) != self.n + 1:
            raise ValueError("counts must have length n + 1")

    @property
    def d(self) -> int | None:
        for i in range(1, self.n + 1):
            if self.counts[i]:
                return i
        return None

    def total(self) -> int:
        return sum(self.counts)

    def nonzero_weights(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.counts[i]]

    def weights_dict(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.counts) if c and i > 0}

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "weights": {str(i): self.counts[i]
                        for i in range(1, self.n + 1) if self.counts[i]},
        }

    def __eq__(self, other):
        return (isinstance(other, WeightDistribution)
                and (self.n, self.k, self.q) == (other.n, other.k, other.q)
                and self.counts == other.counts)


def weight_distribution(code: LinearCode, budget: int = DEFAULT_BUDGET,
                        progress=None) -> WeightDistribution:
    """Exact weight counts by enumerating all q^rank codewords.

    The information-vector space is walked in base-q counter order; the last
    few symbols are expanded as one vectorised block so the python-level loop
    only runs over the prefix.  Partition boundaries never affect the counts
    (merging is a pointwise sum), which test_order_independence checks.
    """
    f = code.field
    q, n, k = f.q, code.n, code.rank
    total = q ** k
    if total > budget:
        raise BudgetExceeded(total, budget)
    counts = [0] * (n + 1)
    if k == 0:
        counts[0] = 1
        return WeightDistribution(n, 0, q, counts, p=f.p)
    rows = code.basis

    # expand the trailing t rows into one vectorised block of q^t codewords;
    # when q alone exceeds the chunk size, slice the multiples of one row
    t = 0
    while t < k and q ** (t + 1) <= _CHUNK:
        t += 1
    t = max(t, 1)
    last_rows = rows[k - t:]
    if q ** t <= _CHUNK:
        block = np.zeros((1, n), dtype=np.int64)
        for row in last_rows:
            mult = f.vmul(np.arange(q, dtype=np.int64)[:, None], row[None, :])
            block = f.vadd(block[:, None, :], mult[None, :, :]).reshape(-1, n)
        slices = (block,)
    else:
        row = last_rows[0]

        def _slices():
            for start in range(0, q, _CHUNK):
                cs = np.arange(start, min(start + _CHUNK, q), dtype=np.int64)
                yield f.vmul(cs[:, None], row[None, :])

        slices = None

    prefix_rows = rows[: k - t]
    last_tick = time.monotonic()

    def tally(vec):
        nonlocal last_tick
        for blk in (slices if slices is not None else _slices()):
            words = f.vadd(vec[None, :], blk)
            w = np.count_nonzero(words, axis=1)
            for wt, c in zip(*np.unique(w, return_counts=True)):
                counts[int(wt)] += int(c)
        if progress is not None:
            now = time.monotonic()
            if now - last_tick >= 2.0:
                last_tick = now
                progress(sum(counts), total)

    if len(prefix_rows) == 0:
        tally(np.zeros(n, dtype=np.int64))
    else:
        # depth-first base-q counter over the prefix with incremental sums
        def descend(level, partial):
            if level == len(prefix_rows):
                tally(partial)
                return
            row = prefix_rows[level]
            for c in range(q):
                nxt = partial if c == 0 else f.vadd(partial, f.vmul_scalar(row, c))
                descend(level + 1, nxt)

        descend(0, np.zeros(n, dtype=np.int64))

    assert sum(counts) == total
    return WeightDistribution(n, k, q, counts, p=f.p)


# ----------------------------------------------------------------------
# Low-weight dual codewords = small dependent column sets of the generator
# ----------------------------------------------------------------------

def _canon_column(f: FiniteField, col: np.ndarray) -> tuple[int, ...] | None:
    """Projective representative: first nonzero entry scaled to 1."""
    for v in col:
        if v:
            if v == 1:
                return tuple(int(x) for x in col)
            return tuple(int(x) for x in f.vmul_scalar(col, f.inv(int(v))))
    return None


def dual_min_distance_upto(code: LinearCode, t: int = 4):
    """Smallest size (up to t <= 4) of a linearly dependent set of generator
    columns, which equals the dual minimum distance when it is <= t.

    Returns (d_perp, witness_columns); (None, None) means the dual distance
    exceeds t.  The scan order is fixed, so the witness is deterministic.
    """
    if not 1 <= t <= 4:
        raise ValueError("search size must be between 1 and 4")
    if code.rank < 1:
        raise ValueError("code must have positive rank")
    f = code.field
    cols = code.basis.T  # n x k
    n = code.n

    canon = []
    for j in range(n):
        c = _canon_column(f, cols[j])
        if c is None:
            return 1, (j,)
        canon.append(c)
    if t < 2:
        return None, None

    buckets: dict[tuple[int, ...], list[int]] = {}
    for j, c in enumerate(canon):
        if c in buckets:
            return 2, (buckets[c][0], j)
        buckets[c] = [j]
    if t < 3:
        return None, None

    # all columns are now nonzero and pairwise independent
    units = range(1, f.q)
    for i in range(n):
        for j in range(i + 1, n):
            for r in units:
                v = f.vadd(cols[i], f.vmul_scalar(cols[j], r))
                key = _canon_column(f, v)
                hit = buckets.get(key)
                if hit:
                    for kk in hit:
                        if kk > j:
                            return 3, (i, j, kk)
    if t < 4:
        return None, None

    # meet in the middle over pairs: a full-support dependency among four
    # columns splits as a common projective point on two disjoint lines
    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    for kpair in range(n):
        for lpair in range(kpair + 1, n):
            combos = []
            for r in units:
                v = f.vadd(cols[kpair], f.vmul_scalar(cols[lpair], r))
                key = _canon_column(f, v)
                combos.append(key)
                prev = seen.get(key)
                if prev and prev[0] != kpair and prev[1] != kpair \
                        and prev[0] != lpair and prev[1] != lpair:
                    return 4, tuple(sorted((prev[0], prev[1], kpair, lpair)))
            for key in combos:
                if key not in seen:
                    seen[key] = (kpair, lpair)
    return None, None


# ----------------------------------------------------------------------
# Closed forms and bounds
# ----------------------------------------------------------------------

def mds_weight_formula(n: int, kappa: int, q: int) -> WeightDistribution:
    """Weight distribution of any [n, kappa, n-kappa+1] MDS code over GF(q)."""
    if not 1 <= kappa <= n:
        raise ValueError("need 1 <= kappa <= n")
    d = n - kappa + 1
    counts = [0] * (n + 1)
    counts[0] = 1
    for i in range(d, n + 1):
        s = 0
        for j in range(i - d + 1):
            s += (-1) ** j * math.comb(i - 1, j) * q ** (i - j - d)
        counts[i] = math.comb(n, i) * (q - 1) * s
    return WeightDistribution(n, kappa, q, counts)


def griesmer_min_length(k: int, d: int, q: int) -> int:
    """Sum of ceil(d / q^i) for i = 0..k-1."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    total, step = 0, 1
    for _ in range(k):
        total += -(-d // step)
        step *= q
    return total


def meets_griesmer(n: int, k: int, d: int, q: int) -> bool:
    return griesmer_min_length(k, d, q) == n


def is_griesmer_nearly_optimal(n: int, k: int, d: int, q: int) -> bool:
    """One step from the bound: a length-(n-1) code would meet it exactly."""
    return griesmer_min_length(k, d, q) == n - 1


def sphere_packing_feasible(n: int, k: int, d: int, q: int) -> bool:
    """q^k * V_q(n, floor((d-1)/2)) <= q^n, evaluated exactly."""
    t = (d - 1) // 2
    vol = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return q ** k * vol <= q ** n


def sphere_packing_max_dim(n: int, d: int, q: int) -> int:
    """Largest k a single-error-correcting [n, k, 3] code can have."""
    if d != 3:
        raise UnsupportedDistance(f"only d = 3 is supported, got d = {d}")
    vol = 1 + n * (q - 1)
    k, power = 0, 1
    qn = q ** n
    while power * q * vol <= qn:
        power *= q
        k += 1
    return k


def _krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (j - s) * math.comb(i, s)
               * math.comb(n - i, j - s) for s in range(j + 1))


def pless_dual_low_weights(wd: WeightDistribution, q: int) -> tuple[int, int, int]:
    """A1, A2, A3 of the dual code from the primal weight distribution.

    Solves the first four power-moment identities (equivalently, applies the
    truncated MacWilliams transform).  Raises InconsistentDistribution when
    the solution is not a non-negative integer triple.
    """
    n = wd.n
    size = Fraction(q) ** wd.k
    out = []
    for j in (1, 2, 3):
        s = sum(Fraction(a) * _krawtchouk(j, i, n, q)
                for i, a in enumerate(wd.counts) if a)
        val = s / size
        if val.denominator != 1 or val < 0:
            raise InconsistentDistribution(
                f"dual A_{j} = {val} is not a non-negative integer")
        out.append(int(val))
    return tuple(out)
