"""Prime-subfield codes, derived two independent ways.

expand_subfield rewrites each generator entry as its column of basis
coordinates; trace_code builds the codewords ((tr(a f(x) + b x))_x, tr(a),
tr(b)) directly from a basis of the coefficient domain.  Both use the column
order fixed by construct.build_G, so the resulting code sets are comparable
coordinatewise.  For p = 2 the codeword weights also come out of the Walsh
transform of f via a three-case correction.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidBasis, NonzeroAtZero, NotADivisor, OddCharacteristic
from .galois import FiniteField, make_field
from .lincode import GenMatrix, LinearCode
from .construct import PolySpec, build_G


class Basis:
    """m elements of GF(p^m), linearly independent over GF(p)."""

    def __init__(self, field: FiniteField, elements):
        self.field = field
        self.elements = tuple(int(e) for e in elements)
        if len(self.elements) != field.m:
            raise InvalidBasis(f"need {field.m} elements, got {len(self.elements)}")
        mat = np.array([field.coeffs(e) for e in self.elements], dtype=np.int64).T
        self._inverse = _inv_mod_p(mat, field.p)
        if self._inverse is None:
            raise InvalidBasis("elements are linearly dependent over GF(p)")

    @classmethod
    def polynomial(cls, field: FiniteField) -> "Basis":
        return cls(field, [field.pow(field.alpha, i) if i else 1
                           for i in range(field.m)])

    def coords(self, x: int) -> np.ndarray:
        digits = np.array(self.field.coeffs(x), dtype=np.int64)
        return (self._inverse @ digits) % self.field.p

    def coords_rows(self, values) -> np.ndarray:
        """Coordinate rows for a vector of entries: result[s, j] is the s-th
        coordinate of values[j]."""
        vals = np.asarray(values, dtype=np.int64)
        p, m = self.field.p, self.field.m
        digits = np.stack([(vals // p ** i) % p for i in range(m)])
        return (self._inverse @ digits) % p


def _inv_mod_p(mat: np.ndarray, p: int):
    """Inverse of a square integer matrix over GF(p), or None if singular."""
    m = mat.shape[0]
    work = np.concatenate([mat % p, np.eye(m, dtype=np.int64)], axis=1)
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, m):
            if work[r, col] % p:
                piv = r
                break
        if piv is None:
            return None
        work[[row, piv]] = work[[piv, row]]
        inv = pow(int(work[row, col]), -1, p)
        work[row] = (work[row] * inv) % p
        for r in range(m):
            if r != row and work[r, col]:
                work[r] = (work[r] - work[r, col] * work[row]) % p
        row += 1
    return work[:, m:]


def expand_subfield(code, basis: Basis | None = None) -> LinearCode:
    """GF(p) code generated by replacing every generator entry with its
    column of basis coordinates (k rows become k*m rows, then row-reduce)."""
    gen = code.gen if isinstance(code, LinearCode) else code
    field = gen.field
    if basis is None:
        basis = Basis.polynomial(field)
    elif basis.field != field:
        raise InvalidBasis("basis belongs to a different field")
    prime = make_field(field.p, 1)
    rows = []
    for r in range(gen.k):
        rows.extend(basis.coords_rows(gen.entries[r]))
    return LinearCode(GenMatrix(prime, np.array(rows, dtype=np.int64)))


def trace_code(f: PolySpec, a_domain: int | None = None) -> LinearCode:
    """GF(p) code of the trace codewords ((tr(a f(x) + b x))_x, tr(a), tr(b)).

    a ranges over the whole field by default; a_domain = l restricts a to the
    embedded GF(p^l) (then f must take values there, and the appended symbol
    is the small-field trace of a).  Generator rows are the codewords at
    basis elements of the a-domain with b = 0, then a = 0 with b over the
    field basis; x runs through alpha^0..alpha^(q-2), and the two appended
    coordinates are (tr(b), tr(a)), matching build_G's final columns
    (0, 1) then (1, 0).
    """
    field = f.field
    prime = make_field(field.p, 1)
    xs = field.antilog_table
    fvals = [f.eval(x) for x in xs]
    rows = []
    if a_domain is None or a_domain == field.m:
        for i in range(field.m):
            e = field.pow(field.alpha, i) if i else 1
            row = [field.trace(field.mul(e, fv)) for fv in fvals]
            row += [0, field.trace(e)]
            rows.append(row)
    else:
        l = a_domain
        if l <= 0 or field.m % l:
            raise NotADivisor(l, field.m)
        emb = field.subfield(l)
        small = emb.small
        nvals = []
        for fv in fvals:
            nvals.append(small._check(emb.preimage(fv)))
        for i in range(small.m):
            e = small.pow(small.alpha, i) if i else 1
            row = [small.trace(small.mul(e, nv)) for nv in nvals]
            row += [0, small.trace(e)]
            rows.append(row)
    for i in range(field.m):
        e = field.pow(field.alpha, i) if i else 1
        row = [field.trace(field.mul(e, x)) for x in xs]
        row += [field.trace(e), 0]
        rows.append(row)
    return LinearCode(GenMatrix(prime, np.array(rows, dtype=np.int64)))


def subfield_code(f: PolySpec, basis: Basis | None = None) -> LinearCode:
    """The GF(p) code of the 2 x (q+1) construction for f (expansion route)."""
    return expand_subfield(build_G(f), basis=basis)


def walsh(f: PolySpec, a: int, b: int) -> int:
    """Sum over GF(q) of (-1)^tr(a f(x) + b x); needs p = 2 and f(0) = 0."""
    field = f.field
    if field.p != 2:
        raise OddCharacteristic("the Walsh transform needs characteristic 2")
    if f.eval(0) != 0:
        raise NonzeroAtZero("the Walsh weight formulas need f(0) = 0")
    field._check(a)
    field._check(b)
    ftab = f.np_table()
    xtab = np.arange(field.q, dtype=np.int64)
    vals = field.vadd(field.vmul_scalar(ftab, a), field.vmul_scalar(xtab, b))
    return int(field._np("sign")[vals].sum())


def weight_via_walsh(f: PolySpec, a: int, b: int) -> int:
    """Hamming weight of the trace codeword at (a, b) from the Walsh value:
    q/2 - W/2, plus 1 for each of tr(a), tr(b) that is nonzero."""
    field = f.field
    w = walsh(f, a, b)
    base = field.q // 2 - w // 2
    return base + (1 if field.trace(a) else 0) + (1 if field.trace(b) else 0)
