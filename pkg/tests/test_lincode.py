import numpy as np
import pytest

from conftest import (
    count_weight3_dual_codewords,
    extended_rs_code,
    naive_weight_counts,
)
from sfc import errors
from sfc.galois import make_field
from sfc.lincode import (
    GenMatrix,
    LinearCode,
    dual_min_distance_upto,
    griesmer_min_length,
    is_griesmer_nearly_optimal,
    mds_weight_formula,
    meets_griesmer,
    pless_dual_low_weights,
    row_reduce,
    sphere_packing_feasible,
    sphere_packing_max_dim,
    weight_distribution,
)


def test_row_reduce_zero_matrix():
    f = make_field(2, 2)
    g = GenMatrix(f, [[0, 0, 0], [0, 0, 0]])
    reduced, rank = row_reduce(g)
    assert rank == 0
    assert not reduced.entries.any()


def test_row_reduce_preserves_row_space(gf9):
    first = [1, 2, 3, 0]
    rows = [first, [gf9.mul(2, v) for v in first], [0, 0, 1, 5]]
    g = GenMatrix(gf9, rows)
    reduced, rank = row_reduce(g)
    assert rank == 2  # second row is twice the first
    # every original row must be a combination of the reduced basis
    from conftest import codeword_set

    orig = codeword_set(LinearCode(g))
    red = codeword_set(LinearCode(reduced))
    assert orig == red


def test_row_reduce_deterministic_pivots(gf4):
    g = GenMatrix(gf4, [[0, 2, 1], [3, 1, 0]])
    reduced, rank = row_reduce(g)
    assert rank == 2
    # leftmost pivot first: row 0 of RREF starts with 1 in column 0
    assert reduced.entries[0, 0] == 1 and reduced.entries[1, 0] == 0
    assert reduced.entries[1, 1] == 1


def test_weight_distribution_rank_zero(gf4):
    code = LinearCode(GenMatrix(gf4, [[0, 0, 0, 0]]))
    wd = weight_distribution(code)
    assert wd.counts == [1, 0, 0, 0, 0]
    assert wd.k == 0 and wd.d is None


@pytest.mark.parametrize("p,m,rows", [
    (2, 2, [[1, 2, 3, 0, 1], [2, 2, 0, 1, 1]]),
    (3, 1, [[1, 2, 0, 1], [0, 1, 1, 2], [1, 0, 0, 2]]),
    (2, 3, [[1, 4, 6, 2], [7, 1, 0, 3], [5, 5, 1, 1]]),
    (5, 1, [[1, 2, 3, 4], [4, 3, 2, 1]]),
])
def test_weight_distribution_matches_naive(p, m, rows):
    f = make_field(p, m)
    code = LinearCode(GenMatrix(f, rows))
    wd = weight_distribution(code)
    assert wd.counts == naive_weight_counts(code)
    assert wd.total() == f.q ** code.rank
    assert wd.counts[0] == 1


def test_weight_distribution_order_independent(gf8):
    # permuting the generator rows (and scaling them) must not change counts
    rows = [[1, 4, 6, 2, 0], [7, 1, 0, 3, 1], [5, 5, 1, 1, 1]]
    code_a = LinearCode(GenMatrix(gf8, rows))
    scaled = [[gf8.mul(3, v) for v in rows[2]],
              [gf8.mul(2, v) for v in rows[0]],
              [gf8.mul(5, v) for v in rows[1]]]
    code_b = LinearCode(GenMatrix(gf8, scaled))
    assert weight_distribution(code_a).counts == weight_distribution(code_b).counts


def test_weight_distribution_budget():
    f = make_field(2, 1)
    rows = [[1] * 8 for _ in range(5)]
    rows = np.eye(5, 8, dtype=int).tolist()
    code = LinearCode(GenMatrix(f, rows))
    with pytest.raises(errors.BudgetExceeded):
        weight_distribution(code, budget=31)
    wd = weight_distribution(code, budget=32)
    assert wd.total() == 32


def test_mds_formula_one_weight():
    # [q+1, 2, q] instance: only weight q survives
    wd = mds_weight_formula(5, 2, 4)
    assert wd.counts[4] == 15 and wd.d == 4
    assert wd.nonzero_weights() == [4]
    assert wd.total() == 16


def test_mds_formula_full_space():
    import math

    for q, n in [(2, 5), (3, 4)]:
        wd = mds_weight_formula(n, n, q)
        assert wd.d == 1
        for i in range(n + 1):
            assert wd.counts[i] == math.comb(n, i) * (q - 1) ** i


def test_mds_formula_matches_extended_rs():
    # independent oracle: enumerate a doubly-extended RS [5, 3, 3] over GF(4)
    code = extended_rs_code(4, 3)
    assert code.rank == 3
    wd = weight_distribution(code)
    assert wd.d == 3  # really is MDS
    assert wd.counts == mds_weight_formula(5, 3, 4).counts


def test_dual_distance_zero_column(gf4):
    code = LinearCode(GenMatrix(gf4, [[1, 0, 2], [0, 0, 1]]))
    d, witness = dual_min_distance_upto(code)
    assert d == 1 and witness == (1,)


def test_dual_distance_proportional_pair(gf9):
    # columns 0 and 1 proportional by design: (1,2) and 2*(1,2)
    code = LinearCode(GenMatrix(gf9, [[1, gf9.mul(2, 1), 0],
                                      [2, gf9.mul(2, 2), 1]]))
    d, witness = dual_min_distance_upto(code)
    assert d == 2 and witness == (0, 1)
    i, j = witness
    cols = code.basis.T
    # re-verify: the two columns really are proportional
    a, b = cols[i], cols[j]
    ratios = {gf9.div(int(x), int(y)) for x, y in zip(a, b) if y or x}
    assert len(ratios) == 1


def test_dual_distance_three_and_four():
    f = make_field(2, 1)
    # columns e1, e2, e1+e2 -> dependent triple
    code = LinearCode(GenMatrix(f, [[1, 0, 1], [0, 1, 1]]))
    d, witness = dual_min_distance_upto(code)
    assert d == 3 and witness == (0, 1, 2)
    # identity columns of size 4 plus their sum -> smallest dependency is 5 > 4
    code = LinearCode(GenMatrix(f, np.eye(4, dtype=int).tolist()))
    assert dual_min_distance_upto(code) == (None, None)
    # e1, e2, e3, e1+e2+e3: a four-column dependency, no smaller one
    rows = np.eye(3, 4, dtype=int)
    rows[:, 3] = 1
    code = LinearCode(GenMatrix(f, rows.tolist()))
    d, witness = dual_min_distance_upto(code)
    assert d == 4 and witness == (0, 1, 2, 3)


def test_griesmer():
    assert griesmer_min_length(1, 7, 2) == 7
    assert griesmer_min_length(2, 4, 4) == 5  # k=2, d=q meets the bound at q+1
    assert meets_griesmer(5, 2, 4, 4)
    # k = m+1, d = (p-1)p^(m-1), p = 3, m = 2: bound gives 9, so n = 10 is
    # one step away
    assert griesmer_min_length(3, 6, 3) == 9
    assert is_griesmer_nearly_optimal(10, 3, 6, 3)
    assert not is_griesmer_nearly_optimal(9, 3, 6, 3)


def test_sphere_packing():
    with pytest.raises(errors.UnsupportedDistance):
        sphere_packing_max_dim(10, 5, 2)
    # n = 2^m + 1 over GF(2): k_max = 2^m - m
    for m in (2, 3, 4, 5):
        n = 2 ** m + 1
        assert sphere_packing_max_dim(n, 3, 2) == 2 ** m - m
    assert sphere_packing_max_dim(3, 3, 2) == 1
    # [n, k] with a distance cap of 4: feasible at d=4, infeasible at d=5
    assert sphere_packing_feasible(17, 11, 4, 2)
    assert not sphere_packing_feasible(17, 11, 5, 2)


def test_sphere_packing_exhaustive_small():
    # brute-force check of k_max for tiny parameters: count actual volumes
    import math

    for n in range(3, 9):
        for q in (2, 3):
            k = sphere_packing_max_dim(n, 3, q)
            vol = 1 + n * (q - 1)
            assert q ** k * vol <= q ** n
            assert q ** (k + 1) * vol > q ** n


def test_pless_moments_full_space():
    wd = mds_weight_formula(4, 4, 2)
    assert pless_dual_low_weights(wd, 2) == (0, 0, 0)


def test_pless_moments_match_direct_triple_count(gf4):
    # a code whose dual has weight-3 words: check the moment solution against
    # explicit column scanning
    # last column = col0 + 2*col1, a designed full-support dependent triple
    rows = [[1, 0, 0, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 0]]
    code = LinearCode(GenMatrix(gf4, rows))
    wd = weight_distribution(code)
    a1, a2, a3 = pless_dual_low_weights(wd, 4)
    assert (a1, a2) == (0, 0)
    assert a3 == count_weight3_dual_codewords(code)
    assert a3 > 0
    assert dual_min_distance_upto(code)[0] == 3


def test_pless_moments_inconsistent():
    wd = mds_weight_formula(5, 2, 4)
    wd.counts[4] -= 1  # break the distribution
    with pytest.raises(errors.InconsistentDistribution):
        pless_dual_low_weights(wd, 4)


def test_weight_distribution_json_shape():
    wd = mds_weight_formula(5, 2, 4)
    d = wd.to_json_dict()
    assert d == {"p": 2, "q": 4, "n": 5, "k": 2, "d": 4, "weights": {"4": 15}}
