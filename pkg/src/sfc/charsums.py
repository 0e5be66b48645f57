"""Numeric character sums against their closed forms, plus exact counting
oracles for the trace/norm/quadratic-residue point counts that drive the
subfield-code weight frequencies.

Complex sums are double precision and compared at 1e-6 absolute tolerance;
all counting predicates are evaluated exactly in the field, never in floats.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BudgetExceeded,
    EvenCharacteristic,
    EvenM,
    NotApplicable,
    OddCharacteristic,
    ZeroArgument,
)
from .galois import FiniteField, make_field

TOL = 1e-6


def _zeta_powers(order: int) -> list[complex]:
    return [cmath.exp(2j * cmath.pi * k / order) for k in range(order)]


def additive_char(field: FiniteField, a: int, x: int) -> complex:
    """zeta_p ** tr(a x)."""
    t = field.trace(field.mul(a, x))
    return cmath.exp(2j * cmath.pi * t / field.p)


def mult_char(field: FiniteField, j: int, x: int) -> complex:
    """zeta_(q-1) ** (j * log x); undefined at zero."""
    if x == 0:
        raise ZeroArgument("multiplicative characters are defined on GF(q)^*")
    k = (j * field.log(x)) % (field.q - 1)
    return cmath.exp(2j * cmath.pi * k / (field.q - 1))


def eta(field: FiniteField, x: int) -> int:
    """Quadratic character as an exact +-1, from discrete-log parity."""
    if field.q % 2 == 0:
        raise EvenCharacteristic("the quadratic character needs odd q")
    if x == 0:
        raise ZeroArgument("eta is defined on GF(q)^*")
    return 1 if field.log(x) % 2 == 0 else -1


def eta_prime(p: int, c: int) -> int:
    """Quadratic character of GF(p)^* (Legendre symbol), exact +-1."""
    if p == 2:
        raise EvenCharacteristic("the quadratic character needs odd p")
    if c % p == 0:
        raise ZeroArgument("eta' is defined on GF(p)^*")
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


def gauss_sum(field: FiniteField, j: int) -> complex:
    """Numeric G(psi_j, chi_1) = sum over x != 0 of psi_j(x) chi_1(x)."""
    zp = _zeta_powers(field.p)
    zq = _zeta_powers(field.q - 1)
    tr = field.trace_table
    total = 0j
    for k, x in enumerate(field.antilog_table):
        total += zq[(j * k) % (field.q - 1)] * zp[int(tr[x])]
    return total


def quad_gauss_closed(p: int, m: int) -> complex:
    """Closed form of the quadratic Gauss sum over GF(p^m), odd p:
    (-1)^(m-1) * i^(((p-1)/2)^2 * m) * sqrt(q)."""
    if p == 2:
        raise EvenCharacteristic("quadratic Gauss sums need odd characteristic")
    i_pow = (((p - 1) // 2) ** 2 * m) % 4
    return (-1) ** (m - 1) * (1j ** i_pow) * math.sqrt(p ** m)


@dataclass
class WeilResult:
    numeric: complex
    closed: complex

    @property
    def error(self) -> float:
        return abs(self.numeric - self.closed)

    def matches(self, tol: float = TOL) -> bool:
        return self.error <= tol


def weil_quadratic(field: FiniteField, a2: int, a1: int, a0: int,
                   b: int = 1) -> WeilResult:
    """Sum over GF(q) of chi_b(a2 x^2 + a1 x + a0), numeric and closed.

    Odd q: chi(A0 - A1^2 (4 A2)^-1) eta(A2) G(eta, chi) after folding b into
    the coefficients.  Even q: chi_b(a0) q when a2 = b a1^2, else 0.
    """
    if a2 == 0:
        raise ValueError("need a quadratic: a2 != 0")
    if b == 0:
        raise ValueError("chi_b must be nontrivial: b != 0")
    q = field.q
    zp = _zeta_powers(field.p)
    tr = field.trace_table
    xs = np.arange(q, dtype=np.int64)
    poly = field.vadd(field.vadd(field.vmul_scalar(field.vmul(xs, xs), a2),
                                 field.vmul_scalar(xs, a1)),
                      np.full(q, a0, dtype=np.int64))
    bpoly = field.vmul_scalar(poly, b)
    numeric = complex(sum(zp[int(t)] for t in tr[bpoly]))
    if field.p == 2:
        closed = (zp[int(tr[field.mul(b, a0)])] * q
                  if a2 == field.mul(b, field.mul(a1, a1)) else 0j)
    else:
        A2, A1, A0 = (field.mul(b, a2), field.mul(b, a1), field.mul(b, a0))
        shift = field.sub(A0, field.mul(field.mul(A1, A1),
                                        field.inv(field.mul(4 % field.p, A2))))
        closed = (zp[int(tr[shift])] * eta(field, A2)
                  * quad_gauss_closed(field.p, field.m))
    return WeilResult(numeric, closed)


@dataclass
class AffineSumResult:
    numeric: complex
    closed: complex
    kernel_condition: bool

    @property
    def error(self) -> float:
        return abs(self.numeric - self.closed)

    def matches(self, tol: float = TOL) -> bool:
        return self.error <= tol


def affine_p_poly_sum(field: FiniteField, coeffs, const: int,
                      b: int) -> AffineSumResult:
    """Sum over GF(q) of chi_b(f(x)) for the additive polynomial
    f(x) = sum_i coeffs[i] x^(p^i) + const.

    Equals chi_b(const) q exactly when
    b a_r + (b a_(r-1))^p + ... + (b a_0)^(p^r) = 0, else 0.
    """
    if b == 0:
        raise ValueError("chi_b must be nontrivial: b != 0")
    coeffs = [field._check(int(c)) for c in coeffs]
    r = len(coeffs) - 1
    q = field.q
    zp = _zeta_powers(field.p)
    tr = field.trace_table
    xs = np.arange(q, dtype=np.int64)
    acc = np.full(q, const, dtype=np.int64)
    power = xs.copy()
    for i, c in enumerate(coeffs):
        if c:
            acc = field.vadd(acc, field.vmul_scalar(power, c))
        if i < r:
            exp_log = field._np("log")
            power = np.where(power == 0, 0,
                             field._np("exp")[(exp_log[power] * field.p) % (q - 1)])
    bacc = field.vmul_scalar(acc, b)
    numeric = complex(sum(zp[int(t)] for t in tr[bacc]))
    cond = 0
    for i in range(r + 1):
        cond = field.add(cond, field.pow(field.mul(b, coeffs[r - i]), field.p ** i))
    kernel = cond == 0
    closed = zp[int(tr[field.mul(b, const)])] * q if kernel else 0j
    return AffineSumResult(numeric, closed, kernel)


# ----------------------------------------------------------------------
# The cubic sum over GF(2^m), m odd
# ----------------------------------------------------------------------

def carlitz_S(field: FiniteField, a: int, b: int) -> int:
    """Exact integer sum over GF(q) of (-1)^tr(a x^3 + b x), q = 2^m, m odd."""
    if field.p != 2:
        raise OddCharacteristic("the cubic sum is defined in characteristic 2")
    if field.m % 2 == 0:
        raise EvenM("the cubic sum evaluation needs odd m")
    field._check(a)
    field._check(b)
    xs = np.arange(field.q, dtype=np.int64)
    cubes = field.vmul(field.vmul(xs, xs), xs)
    vals = field.vadd(field.vmul_scalar(cubes, a), field.vmul_scalar(xs, b))
    return int(field._np("sign")[vals].sum())


def carlitz_cbrt(field: FiniteField, a: int) -> int:
    """The unique cube root of a in GF(2^m), m odd (3 is a unit mod q-1)."""
    if a == 0:
        return 0
    inv3 = pow(3, -1, field.q - 1)
    return field.pow(a, inv3)


def carlitz_closed_S11(m: int) -> int:
    """Closed form of the sum at a = b = 1: (-1)^((m^2-1)/8) 2^((m+1)/2)."""
    if m % 2 == 0:
        raise EvenM("closed form needs odd m")
    return (-1) ** ((m * m - 1) // 8) * 2 ** ((m + 1) // 2)


def carlitz_zero_iff(field: FiniteField, a: int, b: int) -> bool:
    """Predicted zero criterion for a, b != 0: tr(b / cbrt(a)) = 0."""
    c = carlitz_cbrt(field, a)
    return field.trace(field.div(b, c)) == 0


# ----------------------------------------------------------------------
# Counting oracles
# ----------------------------------------------------------------------

@dataclass
class CountReport:
    lemma: str
    p: int
    param: int
    counts: list[int]
    closed: list[int]
    labels: tuple[str, ...] = dc_field(default=(), repr=False)

    @property
    def match(self) -> bool:
        return self.counts == self.closed

    def to_json_dict(self) -> dict:
        return {"lemma": self.lemma, "p": self.p, "param": self.param,
                "counts": self.counts, "closed": self.closed,
                "match": self.match}


def _norm_pair_counts(p: int, l: int, budget: int) -> tuple[list[int], list[int]]:
    """Joint counts over (a, b) in GF(p^l)^* x GF(p^(2l)) of the predicate
    triple (tr_small(norm(b)/a) = 0, tr_small(a) = 0, tr_big(b) = 0)."""
    big = make_field(p, 2 * l)
    emb = big.subfield(l)
    small = emb.small
    pairs = (small.q - 1) * big.q
    if pairs > budget:
        raise BudgetExceeded(pairs, budget)
    tr_small = [small.trace(x) for x in range(small.q)]
    tr_big = big.trace_table
    norm_pre = [emb.preimage(big.norm_to_subfield(x, l)) for x in range(big.q)]
    buckets = [0] * 8
    for a in range(1, small.q):
        inv_a = small.inv(a)
        ta = tr_small[a] == 0
        for b in range(big.q):
            t_ratio = tr_small[small.mul(norm_pre[b], inv_a)] == 0
            tb = int(tr_big[b]) == 0
            buckets[(t_ratio << 2) | (ta << 1) | tb] += 1

    def pick(ratio, a0, b0):
        return buckets[(ratio << 2) | (a0 << 1) | b0]

    n1 = pick(1, 1, 1)
    n2 = pick(0, 1, 1)
    n3 = pick(1, 1, 0) + pick(1, 0, 1)
    n4 = pick(0, 1, 0) + pick(0, 0, 1)
    n5 = pick(1, 0, 0)
    n6 = pick(0, 0, 0)
    return [n1], [n2, n3, n4, n5, n6]


def _closed_norm_counts(p: int, l: int) -> tuple[list[int], list[int]]:
    n1 = (p ** (l - 1) - 1) * (p ** (2 * l - 2) - p ** l + p ** (l - 1))
    n2 = (p - 1) * (p ** (l - 1) - 1) * (p ** (2 * l - 2) + p ** (l - 1))
    n3 = p ** (2 * l - 2) * (p - 1) * (2 * p ** (l - 1) - 1)
    n4 = p ** (2 * l - 2) * (p - 1) ** 2 * (2 * p ** (l - 1) - 1)
    n5 = p ** (2 * l - 2) * (p - 1) ** 2 * (p ** (l - 1) - 1)
    n6 = p ** (2 * l - 2) * (p - 1) ** 2 * (p ** l - p ** (l - 1) + 1)
    return [n1], [n2, n3, n4, n5, n6]


def _quad_pair_buckets(p: int, m: int, budget: int) -> list[int]:
    """Counts over (a, b) in GF(p^m)^* x GF(p^m) keyed by the predicates
    (tr(b^2 / 4a) zero / sign class, tr(a) = 0, tr(b) = 0)."""
    f = make_field(p, m)
    if f.q * f.q > budget:
        raise BudgetExceeded(f.q * f.q, budget)
    tr = [int(v) for v in f.trace_table]
    inv4 = f.inv(4 % p)
    # class 0: tr(b^2/4a) = 0; class 1: eta(a) eta'(-tr) = 1; class 2: = -1
    buckets = [0] * 12
    for a in range(1, f.q):
        inv_a = f.mul(f.inv(a), inv4)
        ea = 1 if f.log_table[a] % 2 == 0 else -1
        ta = tr[a] == 0
        for b in range(f.q):
            t = tr[f.mul(f.mul(b, b), inv_a)]
            if t == 0:
                cls = 0
            else:
                sign = ea * eta_prime(p, (-t) % p)
                cls = 1 if sign == 1 else 2
            tb = tr[b] == 0
            buckets[cls * 4 + (ta << 1) + tb] += 1
    return buckets


def _closed_quad_zero(p: int, m: int) -> list[int]:
    n1 = (p ** (m - 1) - 1) * p ** (m - 2)
    n2 = (p ** (m - 1) - 1) * (p ** (m - 1) - p ** (m - 2))
    n3 = p ** (m - 2) * (p - 1) * (p ** (m - 1) + p - 1)
    n4 = p ** (m - 2) * (p - 1) ** 2 * (p ** (m - 1) - 1)
    return [n1, n2, n3, n4]


def _closed_quad_signed(p: int, m: int) -> list[int]:
    eps = (-1) ** (((p - 1) * (m + 1)) // 4)
    half = p ** ((m - 1) // 2)
    base = p ** (m - 2)
    n5 = (p - 1) * (p ** (m - 1) - 1) * (base + eps * half) // 2
    n6 = (p - 1) * (p ** (m - 1) - 1) * (base - eps * half) // 2
    n7 = base * (p - 1) ** 2 * (p ** (m - 1) - 1) // 2
    n8 = n7
    n9 = (base * (p - 1) ** 2 * (p ** m - p ** (m - 1) + 1)
          + eps * p ** (3 * (m - 1) // 2) * (p - 1) ** 2) // 2
    n10 = n7
    n11 = n7
    n12 = (base * (p - 1) ** 2 * (p ** m - p ** (m - 1) + 1)
           - eps * p ** (3 * (m - 1) // 2) * (p - 1) ** 2) // 2
    return [n5, n6, n7, n8, n9, n10, n11, n12]


_LEMMA_PARAM = {"6.2": "l", "6.3": "l", "6.5": "m", "6.6": "m"}


def count_oracle(lemma: str, p: int, param: int,
                 budget: int = 1 << 28) -> CountReport:
    """Brute-force the defining point counts of the named counting claim and
    compare them with the closed forms, exactly.

    6.2 / 6.3: norm-and-trace counts over GF(p^l)^* x GF(p^2l), l >= 2.
    6.5 / 6.6: quadratic-trace counts over GF(p^m)^* x GF(p^m), odd p, odd m.
    """
    if lemma in ("6.2", "6.3"):
        l = param
        if l < 2:
            raise NotApplicable(f"lemma {lemma}", "needs l >= 2")
        got1, got26 = _norm_pair_counts(p, l, budget)
        want1, want26 = _closed_norm_counts(p, l)
        if lemma == "6.2":
            return CountReport(lemma, p, param, got1, want1, ("N1",))
        return CountReport(lemma, p, param, got26, want26,
                           ("N2", "N3", "N4", "N5", "N6"))
    if lemma in ("6.5", "6.6"):
        m = param
        if p == 2 or m % 2 == 0:
            raise NotApplicable(f"lemma {lemma}", "needs odd p and odd m")
        buckets = _quad_pair_buckets(p, m, budget)
        if lemma == "6.5":
            got = [buckets[0 + 3], buckets[0 + 2], buckets[0 + 1], buckets[0 + 0]]
            return CountReport(lemma, p, param, got, _closed_quad_zero(p, m),
                               ("N1", "N2", "N3", "N4"))
        # order: N5, N6, N7, N8, N9, N10, N11, N12
        got = [buckets[4 + 3], buckets[8 + 3], buckets[4 + 2], buckets[4 + 1],
               buckets[4 + 0], buckets[8 + 2], buckets[8 + 1], buckets[8 + 0]]
        return CountReport(lemma, p, param, got, _closed_quad_signed(p, m),
                           ("N5", "N6", "N7", "N8", "N9", "N10", "N11", "N12"))
    raise NotApplicable(f"lemma {lemma}", "unknown counting claim")
