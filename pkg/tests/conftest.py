"""Shared brute-force oracles, kept independent of the library's fast paths."""

from itertools import product

import pytest

from sfc.galois import make_field
from sfc.lincode import GenMatrix, LinearCode


def naive_weight_counts(code: LinearCode) -> list[int]:
    """Scalar enumeration of the whole row space, one codeword at a time."""
    f = code.field
    rows = [list(int(v) for v in r) for r in code.basis]
    n = code.n
    counts = [0] * (n + 1)
    for info in product(range(f.q), repeat=len(rows)):
        word = [0] * n
        for c, row in zip(info, rows):
            if c:
                for j in range(n):
                    word[j] = f.add(word[j], f.mul(c, row[j]))
        counts[sum(1 for v in word if v)] += 1
    return counts


def codeword_set(code: LinearCode) -> set[tuple[int, ...]]:
    """All codewords as tuples, via plain scalar arithmetic."""
    f = code.field
    rows = [list(int(v) for v in r) for r in code.basis]
    n = code.n
    out = set()
    for info in product(range(f.q), repeat=len(rows)):
        word = [0] * n
        for c, row in zip(info, rows):
            if c:
                for j in range(n):
                    word[j] = f.add(word[j], f.mul(c, row[j]))
        out.add(tuple(word))
    return out


def count_weight3_dual_codewords(code: LinearCode) -> int:
    """Number of weight-3 dual codewords by direct column-triple scanning.

    Each unordered column triple carrying a full-support dependency
    contributes q-1 dual codewords (the projective class of the dependency,
    scaled by every nonzero constant).
    """
    f = code.field
    cols = [tuple(int(v) for v in c) for c in code.basis.T]
    n = code.n

    def canon(vec):
        for v in vec:
            if v:
                inv = f.inv(v)
                return tuple(f.mul(inv, x) for x in vec)
        return None

    buckets = {}
    for j, col in enumerate(cols):
        buckets.setdefault(canon(col), []).append(j)
    triples = 0
    for i in range(n):
        for j in range(i + 1, n):
            for r in range(1, f.q):
                v = tuple(f.add(a, f.mul(r, b)) for a, b in zip(cols[i], cols[j]))
                for kk in buckets.get(canon(v), ()):
                    if kk > j:
                        triples += 1
    return triples * (f.q - 1)


def extended_rs_code(q: int, k: int) -> LinearCode:
    """Doubly-extended Reed-Solomon style [q+1, k, q-k+2] MDS code.

    Codewords are (g(x) for every x in GF(q), lead coefficient of g) over all
    polynomials g of degree < k; an independent construction used as an MDS
    oracle.
    """
    # find (p, m) with p^m = q
    p = 2
    while q % p:
        p += 1
    m = 0
    qq = q
    while qq > 1:
        qq //= p
        m += 1
    f = make_field(p, m)
    points = list(range(q))
    rows = []
    for deg in range(k):
        row = [f.pow(x, deg) if (x or deg == 0) else 0 for x in points]
        row.append(1 if deg == k - 1 else 0)
        rows.append(row)
    return LinearCode(GenMatrix(f, rows))


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)
