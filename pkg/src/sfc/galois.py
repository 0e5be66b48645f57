"""Exact arithmetic in GF(p) and GF(p^m).

Elements are plain ints in [0, q): the base-p digits of the int are the
coefficients of the residue polynomial in the polynomial basis, low degree
first (so the prime subfield is exactly the ints below p, and 0 encodes the
zero element).  Multiplication runs on discrete log/antilog tables built once
per field.  The defining modulus is always the lexicographically smallest
primitive polynomial of its degree, coefficients compared low-degree-first,
so construction is reproducible across runs and machines.

Fields up to DEFAULT_CEILING (2^20) elements are supported; big tables can be
persisted with save_tables/load_tables instead of being rebuilt.
"""

from __future__ import annotations

import os
import struct
import zlib
from itertools import product

import numpy as np

from .errors import (
    CorruptTable,
    EvenCharacteristic,
    FieldMismatch,
    FieldTooLarge,
    MixedFields,
    NotADivisor,
    NotPrime,
    VersionMismatch,
    ZeroArgument,
)

DEFAULT_CEILING = 1 << 20

_CACHE_MAGIC = b"SFCF"
_CACHE_VERSION = 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# Modulus search.  A monic degree-m polynomial f with f(0) != 0 is primitive
# iff x has order q-1 in GF(p)[x]/(f); that single condition also forces f to
# be irreducible, so no separate factorisation step is needed.
# ----------------------------------------------------------------------

def _order_is_full_p2(mask: int, m: int, qm1: int, factors: list[int]) -> bool:
    # mask includes the leading bit m; elements are bitmask polynomials
    def mulmod(a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> m & 1:
                a ^= mask
        return r

    def powx(e):
        result, base = 1, 2
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    if powx(qm1) != 1:
        return False
    return all(powx(qm1 // r) != 1 for r in factors)


def _order_is_full(coeffs: tuple[int, ...], p: int, m: int, qm1: int,
                   factors: list[int]) -> bool:
    # coeffs: monic modulus, length m+1, low degree first
    def mulmod(a, b):
        res = [0] * (2 * m - 1 if m > 1 else 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        res[i + j] = (res[i + j] + ai * bj) % p
        for i in range(len(res) - 1, m - 1, -1):
            c = res[i]
            if c:
                res[i] = 0
                for j in range(m + 1):
                    res[i - m + j] = (res[i - m + j] - c * coeffs[j]) % p
        return tuple(res[:m])

    if m == 1:
        x = (-coeffs[0]) % p
        if pow(x, qm1, p) != 1:
            return False
        return all(pow(x, qm1 // r, p) != 1 for r in factors)

    xpoly = tuple(1 if i == 1 else 0 for i in range(m))
    one = tuple(1 if i == 0 else 0 for i in range(m))

    def powx(e):
        result, base = one, xpoly
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    if powx(qm1) != one:
        return False
    return all(powx(qm1 // r) != one for r in factors)


def find_primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive degree-m polynomial over GF(p).

    Returned as m+1 coefficients, low degree first, leading coefficient 1.
    Comparison is low-degree-first, so the constant term is the most
    significant position of the scan.
    """
    q = p ** m
    qm1 = q - 1
    factors = prime_factors(qm1) if qm1 > 1 else []
    if p == 2:
        for c0 in (1,):
            for rest in product(range(2), repeat=m - 1):
                mask = c0 | (1 << m)
                for i, c in enumerate(rest, start=1):
                    mask |= c << i
                # even-weight binary polynomials vanish at 1
                if bin(mask).count("1") % 2 == 0 and m > 1:
                    continue
                if _order_is_full_p2(mask, m, qm1, factors):
                    return tuple((mask >> i) & 1 for i in range(m + 1))
    else:
        # the constant term of a primitive polynomial is (-1)^m times the
        # norm of its root, and the norm of a generator generates GF(p)^*,
        # so whole c0 branches can be skipped up front
        p_factors = prime_factors(p - 1) if p > 2 else []
        for c0 in range(1, p):
            nrm = (c0 if m % 2 == 0 else -c0) % p
            if pow(nrm, p - 1, p) != 1 or \
                    any(pow(nrm, (p - 1) // r, p) == 1 for r in p_factors):
                continue
            for rest in product(range(p), repeat=m - 1):
                coeffs = (c0,) + rest + (1,)
                if m > 1 and sum(coeffs) % p == 0:
                    continue  # has root 1
                if _order_is_full(coeffs, p, m, qm1, factors):
                    return coeffs
    raise ArithmeticError(f"no primitive polynomial found for GF({p}^{m})")


# ----------------------------------------------------------------------
# The field itself
# ----------------------------------------------------------------------

class FiniteField:
    """GF(p^m) with precomputed log/antilog tables.

    Not constructed directly in normal use: call make_field(p, m), which
    caches one instance per (p, m).
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...],
                 antilog: list[int] | None = None):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus)
        self.antilog_table: list[int] = antilog if antilog is not None \
            else self._build_antilog()
        self.alpha = self.antilog_table[1] if self.q > 2 else 1
        self.log_table: list[int | None] = [None] * self.q
        for i, el in enumerate(self.antilog_table):
            if self.log_table[el] is not None:
                raise CorruptTable(f"element {el} repeats in antilog table")
            self.log_table[el] = i
        if self.antilog_table[0] != 1 or any(v is None for v in self.log_table[1:]):
            raise CorruptTable("antilog table does not enumerate GF(q)^*")
        self._np_cache: dict[str, np.ndarray] = {}
        self._embeddings: dict[int, SubfieldEmbedding] = {}

    # -- construction --------------------------------------------------

    def _build_antilog(self) -> list[int]:
        p, m, q = self.p, self.m, self.q
        table = [0] * (q - 1)
        if p == 2:
            mask = 0
            for i, c in enumerate(self.modulus):
                mask |= c << i
            x = 1
            for i in range(q - 1):
                table[i] = x
                x <<= 1
                if x >> m & 1:
                    x ^= mask
        elif m == 1:
            alpha = (-self.modulus[0]) % p
            x = 1
            for i in range(q - 1):
                table[i] = x
                x = (x * alpha) % p
        elif q <= 1 << 12:
            digits = [0] * m
            digits[0] = 1
            weights = [p ** i for i in range(m)]
            mod = self.modulus
            for i in range(q - 1):
                table[i] = sum(d * w for d, w in zip(digits, weights))
                lead = digits[m - 1]
                for j in range(m - 1, 0, -1):
                    digits[j] = digits[j - 1]
                digits[0] = 0
                if lead:
                    for j in range(m):
                        digits[j] = (digits[j] - lead * mod[j]) % p
        else:
            table = self._build_antilog_blocked()
        return table

    def _build_antilog_blocked(self) -> list[int]:
        # big odd-characteristic fields: step a whole block of consecutive
        # powers by a fixed power of alpha with vectorised digit arithmetic
        p, m, q = self.p, self.m, self.q
        mod = np.array(self.modulus[:m], dtype=np.int64)
        block = min(q - 1, 1 << 12)
        cur = np.zeros((block, m), dtype=np.int64)
        cur[0, 0] = 1
        for i in range(1, block):
            cur[i, 1:] = cur[i - 1, :-1]
            lead = cur[i - 1, m - 1]
            if lead:
                cur[i, :] = (cur[i, :] - lead * mod) % p

        def mul_fixed(dig: np.ndarray, g: np.ndarray) -> np.ndarray:
            wide = np.zeros((dig.shape[0], 2 * m - 1), dtype=np.int64)
            for j in range(m):
                if g[j]:
                    wide[:, j:j + m] += dig * g[j]
            wide %= p
            for deg in range(2 * m - 2, m - 1, -1):
                c = wide[:, deg]
                wide[:, deg - m:deg] = (wide[:, deg - m:deg]
                                        - c[:, None] * mod[None, :]) % p
                wide[:, deg] = 0
            return wide[:, :m]

        # alpha**block = last block row advanced one step
        g = np.zeros(m, dtype=np.int64)
        g[1:] = cur[block - 1, :-1]
        lead = cur[block - 1, m - 1]
        if lead:
            g = (g - lead * mod) % p
        weights = np.array([p ** i for i in range(m)], dtype=np.int64)
        out = np.empty(q - 1, dtype=np.int64)
        written = 0
        while written < q - 1:
            take = min(block, q - 1 - written)
            out[written:written + take] = cur[:take] @ weights
            written += take
            if written < q - 1:
                cur = mul_fixed(cur, g)
        return out.tolist()

    # -- scalar arithmetic ----------------------------------------------

    def _check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise MixedFields(f"{x} is not an element of {self!r}")
        return x

    def add(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        p, s, w = self.p, 0, 1
        while x or y:
            s += ((x + y) % p) * w
            x //= p
            y //= p
            w *= p
        return s

    def neg(self, x: int) -> int:
        self._check(x)
        if self.p == 2:
            return x
        if self.m == 1:
            return (-x) % self.p
        p, s, w = self.p, 0, 1
        while x:
            s += ((p - x % p) % p) * w
            x //= p
            w *= p
        return s

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        if x == 0 or y == 0:
            return 0
        return self.antilog_table[(self.log_table[x] + self.log_table[y])
                                  % (self.q - 1)]

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.antilog_table[(-self.log_table[x]) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        self._check(x)
        self._check(y)
        if y == 0:
            raise ZeroDivisionError("division by zero")
        if x == 0:
            return 0
        return self.antilog_table[(self.log_table[x] - self.log_table[y])
                                  % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        """x**e; negative e goes through the inverse, and 0**e = 0 for e > 0."""
        self._check(x)
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroDivisionError("zero has no inverse")
        return self.antilog_table[(self.log_table[x] * e) % (self.q - 1)]

    def log(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise ZeroArgument("zero has no discrete logarithm")
        return self.log_table[x]

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Polynomial-basis coordinates of x, low degree first, length m."""
        self._check(x)
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        s, w = 0, 1
        for c in coeffs:
            s += (c % self.p) * w
            w *= self.p
        return self._check(s)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- traces, norms, subfields ----------------------------------------

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    def trace(self, x: int) -> int:
        """Absolute trace down to GF(p); the result is an int below p."""
        s, y = x, x
        for _ in range(self.m - 1):
            y = self.pow(y, self.p)
            s = self.add(s, y)
        return s

    def rel_trace(self, x: int, l: int) -> int:
        """Trace onto the degree-l subfield: sum of x**(p**(l*i)).

        The result is fixed by y -> y**(p**l), i.e. lies in the embedded
        copy of GF(p^l).
        """
        if l <= 0 or self.m % l:
            raise NotADivisor(l, self.m)
        step = self.p ** l
        s, y = x, x
        for _ in range(self.m // l - 1):
            y = self.pow(y, step)
            s = self.add(s, y)
        return s

    def norm_to_subfield(self, x: int, l: int) -> int:
        """x**(p^l + 1), the multiplicative norm onto GF(p^l) when m = 2l."""
        if self.m != 2 * l:
            raise NotADivisor(l, self.m)
        return self.pow(x, self.p ** l + 1)

    def subfield(self, l: int) -> "SubfieldEmbedding":
        if l <= 0 or self.m % l:
            raise NotADivisor(l, self.m)
        if l not in self._embeddings:
            self._embeddings[l] = SubfieldEmbedding(self, l)
        return self._embeddings[l]

    # -- vectorised helpers (numpy arrays of encoded elements) -----------

    def _np(self, key: str) -> np.ndarray:
        if key not in self._np_cache:
            if key == "exp":
                self._np_cache[key] = np.array(self.antilog_table, dtype=np.int64)
            elif key == "log":
                arr = np.zeros(self.q, dtype=np.int64)
                for el, i in enumerate(self.log_table):
                    if i is not None:
                        arr[el] = i
                self._np_cache[key] = arr
            elif key == "trace":
                drange = np.arange(self.q, dtype=np.int64)
                tr = np.zeros(self.q, dtype=np.int64)
                for i in range(self.m):
                    digit = (drange // self.p ** i) % self.p
                    tr += digit * self.trace(self.p ** i)
                self._np_cache[key] = tr % self.p
            elif key == "sign":  # (-1)**trace, characteristic 2 only
                self._np_cache[key] = 1 - 2 * self._np("trace")
            else:
                raise KeyError(key)
        return self._np_cache[key]

    @property
    def trace_table(self) -> np.ndarray:
        return self._np("trace")

    def vadd(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += (((x // w) + (y // w)) % self.p) * w
            w *= self.p
        return out

    def vneg(self, x: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return x.copy() if isinstance(x, np.ndarray) else x
        if self.m == 1:
            return (-x) % self.p
        out = np.zeros(np.shape(x), dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += ((self.p - (x // w) % self.p) % self.p) * w
            w *= self.p
        return out

    def vsub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return x ^ y
        return self.vadd(x, self.vneg(y))

    def vmul_scalar(self, x: np.ndarray, c: int) -> np.ndarray:
        self._check(c)
        x = np.asarray(x, dtype=np.int64)
        if c == 0:
            return np.zeros(x.shape, dtype=np.int64)
        if c == 1:
            return x.copy()
        exp, log = self._np("exp"), self._np("log")
        out = np.zeros(x.shape, dtype=np.int64)
        nz = x != 0
        out[nz] = exp[(log[x[nz]] + self.log_table[c]) % (self.q - 1)]
        return out

    def vmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        exp, log = self._np("exp"), self._np("log")
        xb, yb = np.broadcast_arrays(x, y)
        out = np.zeros(xb.shape, dtype=np.int64)
        nz = (xb != 0) & (yb != 0)
        out[nz] = exp[(log[xb[nz]] + log[yb[nz]]) % (self.q - 1)]
        return out

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.m, self.modulus)
                == (other.p, other.m, other.modulus))

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.modulus):
            if c:
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append("x" if c == 1 else f"{c}x")
                else:
                    terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        poly = " + ".join(reversed(terms))
        return f"GF({self.p}^{self.m}, modulus {poly})"

    # -- persistence -------------------------------------------------------

    def save_tables(self, path) -> None:
        save_tables(self, path)


class SubfieldEmbedding:
    """Field homomorphism GF(p^l) -> GF(p^m) for l | m.

    The image is {0} together with the subgroup generated by
    alpha**((q-1)/(p^l-1)); the map sends the small field's generator to the
    smallest-encoded root of the small modulus inside that image.
    """

    def __init__(self, big: FiniteField, l: int):
        self.big = big
        self.l = l
        self.small = make_field(big.p, l)
        q, ql = big.q, big.p ** l
        if ql == q:
            members = list(range(q))
        else:
            step = (q - 1) // (ql - 1)
            members = [0] + [big.antilog_table[(step * j) % (q - 1)]
                             for j in range(ql - 1)]
        self.image = sorted(set(members))
        if len(self.image) != ql:
            raise ArithmeticError("subfield image has wrong size")
        root = min(z for z in self.image if self._eval_small_mod(z) == 0)
        table = []
        for x in range(ql):
            acc, zp = 0, 1
            for c in self.small.coeffs(x):
                if c:
                    acc = big.add(acc, big.mul(zp, c))
                zp = big.mul(zp, root)
            table.append(acc)
        self.root = root
        self._table = table
        self._preimage = {v: i for i, v in enumerate(table)}
        if len(self._preimage) != ql:
            raise ArithmeticError("subfield embedding is not injective")

    def _eval_small_mod(self, z: int) -> int:
        big = self.big
        acc = 0
        for c in reversed(self.small.modulus):
            acc = big.add(big.mul(acc, z), c % big.p)
        return acc

    def embed(self, x: int) -> int:
        return self._table[x]

    def preimage(self, y: int) -> int:
        try:
            return self._preimage[y]
        except KeyError:
            raise ZeroArgument(f"{y} is not in the embedded GF({self.big.p}^{self.l})") \
                from None

    def contains(self, y: int) -> bool:
        return y in self._preimage


_FIELDS: dict[tuple[int, int], FiniteField] = {}


def make_field(p: int, m: int, ceiling: int = DEFAULT_CEILING) -> FiniteField:
    """The canonical GF(p^m); instances are cached per (p, m)."""
    if not is_prime(p):
        raise NotPrime(p)
    if m < 1:
        raise ValueError(f"extension degree must be positive, got {m}")
    if p ** m > ceiling:
        raise FieldTooLarge(p, m, ceiling)
    key = (p, m)
    if key not in _FIELDS:
        _FIELDS[key] = FiniteField(p, m, find_primitive_modulus(p, m))
    return _FIELDS[key]


# ----------------------------------------------------------------------
# Table cache files.  Layout, little-endian throughout:
#   magic "SFCF" | u16 version | u64 p | u32 m | (m+1) x u64 modulus
#   | q x u64 antilog entries for exponents 0..q-1 | u32 CRC32
# The CRC covers everything between the magic and itself.  The antilog array
# carries one wrap-around entry (exponent q-1, always 1) on top of the q-1
# in-memory entries.
# ----------------------------------------------------------------------

def save_tables(field: FiniteField, path) -> None:
    payload = struct.pack("<HQI", _CACHE_VERSION, field.p, field.m)
    payload += np.array(field.modulus, dtype="<u8").tobytes()
    ext = field.antilog_table + [field.antilog_table[0]]
    payload += np.array(ext, dtype="<u8").tobytes()
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(_CACHE_MAGIC + payload + struct.pack("<I", crc))


def load_tables(path, p: int | None = None, m: int | None = None,
                ceiling: int = DEFAULT_CEILING) -> FiniteField:
    """Load a persisted field; optional p/m pin down the expected field."""
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError:
        raise
    if len(blob) < 4 + 14 + 4 or blob[:4] != _CACHE_MAGIC:
        raise CorruptTable(f"{path} is not a field-table cache")
    payload, (crc,) = blob[4:-4], struct.unpack("<I", blob[-4:])
    if zlib.crc32(payload) & 0xFFFFFFFF != crc:
        raise CorruptTable(f"{path} failed its checksum")
    version, fp, fm = struct.unpack("<HQI", payload[:14])
    if version != _CACHE_VERSION:
        raise VersionMismatch(f"{path} has version {version}, expected {_CACHE_VERSION}")
    if (p is not None and p != fp) or (m is not None and m != fm):
        raise FieldMismatch(f"{path} holds GF({fp}^{fm})")
    if not is_prime(fp):
        raise CorruptTable(f"{path} declares non-prime characteristic {fp}")
    q = fp ** fm
    if q > ceiling:
        raise FieldTooLarge(fp, fm, ceiling)
    body = payload[14:]
    need = (fm + 1 + q) * 8
    if len(body) != need:
        raise CorruptTable(f"{path} has wrong payload size")
    modulus = tuple(int(v) for v in np.frombuffer(body[:(fm + 1) * 8], dtype="<u8"))
    ext = np.frombuffer(body[(fm + 1) * 8:], dtype="<u8")
    if int(ext[-1]) != int(ext[0]):
        raise CorruptTable(f"{path} antilog table does not wrap to 1")
    antilog = [int(v) for v in ext[:-1]]
    return FiniteField(fp, fm, modulus, antilog=antilog)


def cached_field(p: int, m: int, cache_dir=None,
                 ceiling: int = DEFAULT_CEILING) -> FiniteField:
    """make_field with a persistent table cache directory."""
    if cache_dir is None:
        return make_field(p, m, ceiling=ceiling)
    path = os.path.join(cache_dir, f"gf_{p}_{m}.sfcf")
    if os.path.exists(path):
        return load_tables(path, p=p, m=m, ceiling=ceiling)
    field = make_field(p, m, ceiling=ceiling)
    os.makedirs(cache_dir, exist_ok=True)
    field.save_tables(path)
    return field
