"""Exact arithmetic in cyclotomic fields Q(zeta_N) and their subfields.

Everything here is exact: coefficients are `fractions.Fraction`, reduction is
modulo the N-th cyclotomic polynomial, and no floating point is used anywhere.
The module provides

  * CycloNum       -- an element of Q(zeta_N) in the power basis,
  * FieldSpec      -- a subfield of Q(zeta_N) cut out by a Galois stabilizer,
  * KummerExt      -- one radical layer k(u^(1/l)) with its cyclic automorphism,
  * root finding   -- exact roots of monic polynomials inside Q(zeta_N)
                      (norm/resultant method; the only outside help is rational
                      polynomial factorization, delegated to sympy),
  * small exact linear algebra used for eigenvector and descent computations.

Conventions: `zeta(N)` is a primitive N-th root of unity, the power basis of
Q(zeta_N) is 1, z, ..., z^(phi(N)-1), and Galois automorphisms are indexed by
residues j coprime to N acting as z -> z^j.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ConductorMismatch,
    ConductorTooSmall,
    MissingRootOfUnity,
    NotCoprime,
    NotInField,
    NotIrreducible,
    ZeroInverse,
)

ZERO = Fraction(0)
ONE = Fraction(1)


# --------------------------------------------------------------------------
# integer helpers
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    assert n >= 1
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    assert n >= 1
    if n == 1:
        return 1
    m = n
    count = 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            count += 1
        p += 1
    if m > 1:
        count += 1
    return -1 if count % 2 else 1


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, ascending, as exact integers."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed by exact division.
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        den = cyclotomic_poly(d)
        num = _int_poly_div_exact(num, list(den))
    return tuple(num)


def _int_poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], den[-1])
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _unit_group(n: int) -> tuple[int, ...]:
    if n <= 2:
        return (1 % max(n, 1),) if n == 1 else (1,)
    return tuple(j for j in range(1, n) if math.gcd(j, n) == 1)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta_n^e for phi(n) <= e <= 2*phi(n) - 2, reduced to the power basis."""
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    # zeta^phi = -(poly[0] + poly[1] z + ...)/poly[phi]; Phi_n is monic.
    rows = []
    current = [Fraction(-poly[i]) for i in range(phi)]
    rows.append(tuple(current))
    for _ in range(phi - 2):
        shifted = [ZERO] + current[:-1]
        top = current[-1]
        if top:
            first = rows[0]
            shifted = [shifted[i] + top * first[i] for i in range(phi)]
        current = shifted
        rows.append(tuple(current))
    return tuple(rows)


@lru_cache(maxsize=None)
def _int_power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Integer version of the reduction table; rows of x^e mod Phi_n are
    integral because Phi_n is monic over Z."""
    table = []
    for row in _power_table(n):
        assert all(v.denominator == 1 for v in row)
        table.append(tuple(v.numerator for v in row))
    return tuple(table)


@lru_cache(maxsize=None)
def _trace_vector(n: int) -> tuple[Fraction, ...]:
    """Tr(zeta_n^i) over Q for 0 <= i < phi(n)."""
    phi = euler_phi(n)
    out = []
    for i in range(phi):
        g = math.gcd(i, n)
        m = n // g
        out.append(Fraction(mobius(m) * phi, euler_phi(m)))
    return tuple(out)


@lru_cache(maxsize=None)
def _zeta_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """zeta_n^r reduced to the power basis, as integer rows, for 0 <= r < n."""
    phi = euler_phi(n)
    rows = []
    for r in range(phi):
        row = [0] * phi
        row[r] = 1
        rows.append(tuple(row))
    if n > phi:
        fold = _int_power_table(n)[0]  # zeta^phi
        cur = list(rows[phi - 1])
        for _ in range(phi, n):
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c + top * f for c, f in zip(cur, fold)]
            rows.append(tuple(cur))
    return tuple(rows)


def _int_vector(coeffs) -> tuple[int, list[int]]:
    """Common denominator and integer numerators of a Fraction vector."""
    den = math.lcm(*[c.denominator for c in coeffs])
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def _int_mul_reduce(na: list[int], nb: list[int], n: int) -> list[int]:
    """Convolution of two basis vectors reduced mod Phi_n, over the integers."""
    phi = euler_phi(n)
    prod = [0] * (2 * phi - 1)
    for i, x in enumerate(na):
        if x:
            for j, y in enumerate(nb):
                if y:
                    prod[i + j] += x * y
    out = prod[:phi]
    if phi > 1:
        table = _int_power_table(n)
        for e in range(phi, 2 * phi - 1):
            c = prod[e]
            if c:
                row = table[e - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
    return out


def _int_galois(v: list[int], j: int, n: int) -> list[int]:
    phi = euler_phi(n)
    rows = _zeta_rows(n)
    out = [0] * phi
    for i, c in enumerate(v):
        if c:
            row = rows[(i * j) % n]
            for k in range(phi):
                if row[k]:
                    out[k] += c * row[k]
    return out


# --------------------------------------------------------------------------
# CycloNum
# --------------------------------------------------------------------------

class CycloNum:
    """An element of Q(zeta_N), stored reduced in the power basis.

    Instances are immutable; arithmetic between different conductors lifts
    both operands into Q(zeta_lcm). Equality is mathematical equality of the
    underlying complex numbers; hashing uses conductor-independent trace
    invariants so equal elements at different conductors collide correctly.
    """

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ConductorMismatch(f"conductor must be positive, got {conductor}")
        phi = euler_phi(conductor)
        vals = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(vals) > phi:
            vals = _reduce_mod_cyclotomic(conductor, vals)
        elif len(vals) < phi:
            vals = vals + [ZERO] * (phi - len(vals))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(vals))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("CycloNum is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q, conductor: int = 1) -> "CycloNum":
        return CycloNum(conductor, [Fraction(q)])

    @staticmethod
    def zeta(conductor: int, power: int = 1) -> "CycloNum":
        power %= conductor
        coeffs = [ZERO] * (power + 1)
        coeffs[power] = ONE
        return CycloNum(conductor, coeffs)

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotInField(f"{self} is not rational")
        return self.coeffs[0]

    # -- conductor plumbing -------------------------------------------------

    def embed(self, conductor: int) -> "CycloNum":
        """Rewrite in Q(zeta_conductor); requires self.conductor | conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise ConductorMismatch(
                f"cannot embed conductor {self.conductor} into {conductor}")
        step = conductor // self.conductor
        out = [ZERO] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return CycloNum(conductor, out)

    def reduce_conductor(self) -> "CycloNum":
        """Rewrite at the smallest conductor M | N whose field contains self."""
        n = self.conductor
        for m in divisors(n):
            if m == n:
                break
            if all(self.galois(j) == self
                   for j in _unit_group(n) if j % m == 1 % max(m, 1)):
                descended = _descend(self, m)
                if descended is not None:
                    return descended
        return self

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            pass
        elif isinstance(other, (int, Fraction)):
            other = CycloNum.rational(other, 1)
        else:
            return None, None
        if self.conductor == other.conductor:
            return self, other
        n = math.lcm(self.conductor, other.conductor)
        return self.embed(n), other.embed(n)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycloNum(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return CycloNum(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum(self.conductor, [c * q for c in self.coeffs])
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        n = a.conductor
        phi = len(a.coeffs)
        # clear denominators once and convolve over the integers
        da, na = _int_vector(a.coeffs)
        db, nb = _int_vector(b.coeffs)
        out = _int_mul_reduce(na, nb, n)
        den = da * db
        return CycloNum(n, [Fraction(v, den) for v in out])

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroInverse("cannot invert 0")
        if self.is_rational():
            return CycloNum(self.conductor, [1 / self.coeffs[0]])
        n = self.conductor
        support = [i for i, c in enumerate(self.coeffs) if c != 0]
        if len(support) == 1:
            # (c * zeta^e)^-1 = zeta^(n-e) / c
            e = support[0]
            return CycloNum.zeta(n, n - e) * (1 / self.coeffs[e])
        # 1/x = (product of the other Galois conjugates) / Norm(x),
        # computed over the integers after clearing denominators.
        den, v = _int_vector(self.coeffs)
        prod = [1] + [0] * (len(self.coeffs) - 1)
        for j in _unit_group(n)[1:]:
            prod = _int_mul_reduce(prod, _int_galois(v, j, n), n)
        norm_vec = _int_mul_reduce(prod, v, n)
        assert all(c == 0 for c in norm_vec[1:]), "norm must be rational"
        norm = norm_vec[0]
        return CycloNum(n, [Fraction(den * p, norm) for p in prod])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroInverse("cannot invert 0")
            return self * (1 / q)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return CycloNum.rational(other) / self

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = CycloNum.rational(1, self.conductor)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # -- Galois action --------------------------------------------------------

    def galois(self, j: int) -> "CycloNum":
        """Apply the automorphism zeta -> zeta^j; j must be coprime to N."""
        n = self.conductor
        if math.gcd(j, n) != 1:
            raise NotCoprime(f"{j} is not coprime to conductor {n}")
        j %= n
        if j == 1 % n:
            return self
        den, v = _int_vector(self.coeffs)
        out = _int_galois(v, j, n)
        return CycloNum(n, [Fraction(c, den) for c in out])

    # -- equality / ordering ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if self.conductor == other.conductor:
                return self.coeffs == other.coeffs
            a, b = self._coerce(other)
            return a.coeffs == b.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            tv = _trace_vector(self.conductor)
            phi = len(self.coeffs)
            t1 = sum(c * tv[i] for i, c in enumerate(self.coeffs)) / phi
            sq = self * self
            t2 = sum(c * tv[i] for i, c in enumerate(sq.coeffs)) / phi
            object.__setattr__(self, "_hash", hash((t1, t2)))
        return self._hash

    def sort_key(self):
        """Stable ordering key; meaningful among elements of one conductor."""
        return (self.conductor, self.coeffs)

    # -- display -----------------------------------------------------------------

    def __repr__(self):
        return f"CycloNum({self.conductor}, {list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z{self.conductor}")
            else:
                parts.append(f"{c}*z{self.conductor}^{i}")
        return " + ".join(parts)


def _reduce_with_table(n: int, coeffs: list[Fraction]) -> list[Fraction]:
    """Reduce a coefficient list of length <= 2 phi - 1 using the power table."""
    phi = euler_phi(n)
    if len(coeffs) <= phi:
        return coeffs
    table = _power_table(n)
    out = coeffs[:phi]
    for e in range(phi, len(coeffs)):
        c = coeffs[e]
        if c:
            row = table[e - phi]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _reduce_mod_cyclotomic(n: int, coeffs: list[Fraction]) -> list[Fraction]:
    """Full polynomial remainder mod Phi_n for arbitrarily long inputs."""
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    out = list(coeffs)
    for e in range(len(out) - 1, phi - 1, -1):
        c = out[e]
        if c:
            out[e] = ZERO
            for i in range(phi):
                if poly[i]:
                    out[e - phi + i] -= c * poly[i]
    return out[:phi]


def _poly_degree(p) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


def _frac_poly_divmod(num, den):
    dn, dd = _poly_degree(num), _poly_degree(den)
    num = list(num)
    if dd < 0:
        raise ZeroDivisionError
    q = [ZERO] * max(dn - dd + 1, 1)
    lead = den[dd]
    for i in range(dn - dd, -1, -1):
        c = num[i + dd] / lead
        if c != 0:
            q[i] = c
            for j in range(dd + 1):
                num[i + j] -= c * den[j]
    return q, num[:dd] if dd > 0 else [ZERO]


# --------------------------------------------------------------------------
# spec-level operations
# --------------------------------------------------------------------------

def cyclo_make(conductor: int, coeffs) -> CycloNum:
    """Build a canonical element of Q(zeta_conductor) from rational coefficients."""
    return CycloNum(conductor, coeffs)


def galois_apply(j: int, x: CycloNum) -> CycloNum:
    """Apply the automorphism zeta_N -> zeta_N^j to x."""
    return x.galois(j)


def root_of_unity(conductor: int, m: int) -> CycloNum:
    """zeta_m expressed in Q(zeta_conductor), or ConductorTooSmall.

    Q(zeta_N) contains exactly the roots of unity of order dividing N for even
    N, and dividing 2N for odd N (because -zeta_N has order 2N).
    """
    n = conductor
    if m < 1:
        raise ConductorTooSmall(f"invalid root-of-unity order {m}")
    if n % 2 == 0:
        if n % m != 0:
            raise ConductorTooSmall(f"zeta_{m} is not in Q(zeta_{n})")
        return CycloNum.zeta(n, n // m)
    if (2 * n) % m != 0:
        raise ConductorTooSmall(f"zeta_{m} is not in Q(zeta_{n})")
    if n % m == 0:
        return CycloNum.zeta(n, n // m)
    # m | 2N but m does not divide odd N: zeta_m = (-zeta_n^((n+1)/2))^(2n/m)
    base = -CycloNum.zeta(n, (n + 1) // 2)
    return base ** ((2 * n) // m)


def _descend(x: CycloNum, m: int):
    """Rewrite x in Q(zeta_m) for m | conductor, or None if it does not fit."""
    n = x.conductor
    phi_m = euler_phi(m)
    basis = [CycloNum.zeta(m, i).embed(n) for i in range(phi_m)]
    rows = [[b.coeffs[r] for b in basis] for r in range(euler_phi(n))]
    rhs = list(x.coeffs)
    sol = _solve_rational(rows, rhs)
    if sol is None:
        return None
    return CycloNum(m, sol)


def _solve_rational(rows, rhs):
    """Solve an overdetermined rational system exactly; None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    piv_cols = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        lead = a[row][col]
        a[row] = [v / lead for v in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        piv_cols.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n] != 0:
            return None
    sol = [ZERO] * n
    for r, col in enumerate(piv_cols):
        sol[col] = a[r][n]
    return sol


# --------------------------------------------------------------------------
# FieldSpec
# --------------------------------------------------------------------------

class FieldSpec:
    """A subfield k of Q(zeta_N) described by generators.

    The stabilizer (all automorphisms fixing every generator) is computed at
    construction; membership in k is Galois invariance under it.
    """

    __slots__ = ("conductor", "generators", "stabilizer", "label")

    def __init__(self, conductor: int, generators=(), label: str = ""):
        gens = tuple(g.embed(conductor) if isinstance(g, CycloNum)
                     else CycloNum.rational(g, conductor)
                     for g in generators)
        stab = frozenset(
            j for j in _unit_group(conductor)
            if all(g.galois(j) == g for g in gens))
        self.conductor = conductor
        self.generators = gens
        self.stabilizer = stab
        self.label = label

    @staticmethod
    def rationals(conductor: int = 1, label: str = "Q") -> "FieldSpec":
        return FieldSpec(conductor, (), label=label)

    def degree(self) -> int:
        """[k : Q]."""
        return euler_phi(self.conductor) // len(self.stabilizer)

    def embed(self, conductor: int) -> "FieldSpec":
        """The same subfield described inside a larger cyclotomic field."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise ConductorMismatch(
                f"cannot embed field at conductor {self.conductor} into {conductor}")
        return FieldSpec(conductor, self.generators, label=self.label)

    def contains(self, x: CycloNum) -> bool:
        y = self.coerce(x)
        return all(y.galois(j) == y for j in self.stabilizer)

    def coerce(self, x: CycloNum) -> CycloNum:
        """Embed x into the ambient field of this spec, or ConductorMismatch."""
        if not isinstance(x, CycloNum):
            return CycloNum.rational(x, self.conductor)
        if self.conductor % x.conductor == 0:
            return x.embed(self.conductor)
        reduced = x.reduce_conductor()
        if self.conductor % reduced.conductor == 0:
            return reduced.embed(self.conductor)
        raise ConductorMismatch(
            f"element of conductor {x.conductor} does not fit in Q(zeta_{self.conductor})")

    def contains_root_of_unity(self, m: int) -> bool:
        return self.contains(root_of_unity(self.conductor, m))

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and self.conductor == other.conductor
                and self.stabilizer == other.stabilizer)

    def __hash__(self):
        return hash((self.conductor, self.stabilizer))

    def __repr__(self):
        name = self.label or f"<{len(self.generators)} gens>"
        return f"FieldSpec({name} in Q(zeta_{self.conductor}), degree {self.degree()})"


def subfield_contains(field: FieldSpec, x: CycloNum) -> bool:
    """True iff x is fixed by every automorphism in the field's stabilizer."""
    return field.contains(x)


def contains_root_of_unity(field: FieldSpec, m: int) -> bool:
    return field.contains_root_of_unity(m)


# --------------------------------------------------------------------------
# polynomials over CycloNum (ascending coefficient lists)
# --------------------------------------------------------------------------

def poly_mul(a, b):
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            p = x * y
            out[i + j] = p if out[i + j] is None else out[i + j] + p
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    zero = (a[0] - a[0]) if a else (b[0] - b[0])
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def poly_scale(a, c):
    return [x * c for x in a]


def poly_eval(a, x):
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def _poly_trim(a):
    d = len(a) - 1
    while d > 0 and a[d].is_zero():
        d -= 1
    return a[:d + 1]


def _poly_monic(a):
    a = _poly_trim(a)
    lead = a[-1]
    return [c / lead for c in a]


def _poly_divmod_k(num, den):
    num = list(num)
    den = _poly_trim(den)
    dd = len(den) - 1
    lead = den[-1]
    dn = len(_poly_trim(num)) - 1
    if dn < dd:
        return [num[0] - num[0]], num
    q = [num[0] - num[0]] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        c = num[i + dd] / lead
        q[i] = c
        if not c.is_zero():
            for j in range(dd + 1):
                num[i + j] = num[i + j] - c * den[j]
    return q, _poly_trim(num[:dd] if dd > 0 else num[:1])


def poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while not (len(b) == 1 and b[0].is_zero()):
        _, r = _poly_divmod_k(a, b)
        a, b = b, r
    return _poly_monic(a) if not (len(a) == 1 and a[0].is_zero()) else a

def poly_derivative(a):
    if len(a) == 1:
        return [a[0] - a[0]]
    return [a[i] * i for i in range(1, len(a))]


def poly_shift(a, c):
    """a(x + c), computed by Horner on (x + c)."""
    zero = a[0] - a[0]
    result = [a[-1]]
    for coeff in reversed(a[:-1]):
        # result * (x + c) + coeff
        shifted = [zero] + result
        scaled = [r * c for r in result] + [zero]
        result = [s + t for s, t in zip(shifted, scaled)]
        result[0] = result[0] + coeff
    return result


# --------------------------------------------------------------------------
# exact linear algebra over CycloNum
# --------------------------------------------------------------------------

def nullspace(rows: list[list[CycloNum]], conductor: int) -> list[list[CycloNum]]:
    """Basis of the right kernel of a small matrix over Q(zeta_N)."""
    zero = CycloNum.rational(0, conductor)
    one = CycloNum.rational(1, conductor)
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [[v.embed(conductor) for v in r] for r in rows]
    piv_cols = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if not a[r][col].is_zero()), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = a[row][col].inverse()
        a[row] = [v * inv for v in a[row]]
        for r in range(m):
            if r != row and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        piv_cols.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free:
        vec = [zero] * n
        vec[fc] = one
        for r, pc in enumerate(piv_cols):
            vec[pc] = -a[r][fc]
        basis.append(vec)
    return basis


# --------------------------------------------------------------------------
# exact roots inside Q(zeta_N)
# --------------------------------------------------------------------------

def roots_in_field(coeffs: list[CycloNum], conductor: int) -> list[CycloNum]:
    """All roots in Q(zeta_N) of a monic polynomial with CycloNum coefficients.

    Norm method: push the problem down to Q by taking the product of all
    Galois conjugates of f(x - s*zeta), factor the resulting rational
    polynomial (sympy), and pull each irreducible factor back up with a gcd.
    Exact throughout; the shift s is increased until the norm is squarefree.
    """
    n = conductor
    f = [_as_cyclo(c, n) for c in coeffs]
    f = _poly_monic(f)
    if len(f) == 2:
        return [-f[0]]
    # squarefree part
    g = poly_gcd(f, poly_derivative(f))
    if len(g) > 1:
        f, _ = _poly_divmod_k(f, g)
        f = _poly_monic(f)
    zero = CycloNum.rational(0, n)
    theta = CycloNum.zeta(n)
    for s in range(0, 12):
        norm = _norm_polynomial(f, n, s)
        if norm is None:
            continue
        if _rational_poly_squarefree(norm):
            break
    else:
        raise ArithmeticError("no squarefree shift found for norm computation")
    roots: list[CycloNum] = []
    for factor in _factor_rational_poly(norm):
        if len(factor) - 1 > euler_phi(n):
            continue
        lifted = [CycloNum.rational(c, n) for c in factor]
        if s:
            lifted = poly_shift(lifted, theta * s)
        h = poly_gcd(f, lifted)
        if len(h) == 2:
            roots.append(-h[0])
    for r in roots:
        assert poly_eval(f, r).is_zero()
    return roots


def _as_cyclo(c, n):
    if isinstance(c, CycloNum):
        return c.embed(n)
    return CycloNum.rational(c, n)


def _norm_polynomial(f, n, s):
    """prod over Galois conjugates of sigma(f)(x - s*zeta^j), as rationals."""
    prod = [CycloNum.rational(1, n)]
    for j in _unit_group(n):
        conj = [c.galois(j) for c in f]
        if s:
            conj = poly_shift(conj, -CycloNum.zeta(n, j) * s)
        prod = poly_mul(prod, conj)
    out = []
    for c in prod:
        if not c.is_rational():
            return None
        out.append(c.as_rational())
    return out


def _rational_poly_squarefree(p: list[Fraction]) -> bool:
    a, b = list(p), [p[i] * i for i in range(1, len(p))]
    while any(c != 0 for c in b):
        _, r = _frac_poly_divmod(a, b)
        a, b = b, r
    return _poly_degree(a) == 0


def _factor_rational_poly(p: list[Fraction]) -> list[list[Fraction]]:
    """Monic irreducible factors over Q, via sympy's integer factorization."""
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Add(*[sympy.Rational(c) * x**i for i, c in enumerate(p)])
    poly = sympy.Poly(expr, x, domain="QQ")
    out = []
    for fac, mult in poly.factor_list()[1]:
        coeffs = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        lead = coeffs[-1]
        out.extend([[c / lead for c in coeffs]] * mult)
    return out


_SQRT_CACHE: dict[tuple, object] = {}


def sqrt_in_field(d: CycloNum, conductor: int | None = None):
    """A square root of d in Q(zeta_N), or None when no root exists there.

    Rational radicands go through explicit quadratic Gauss sums (a verified
    fast path); everything else falls back to the exact norm-method root
    finder. The returned value always satisfies root*root == d exactly.
    """
    n = conductor or d.conductor
    d = _as_cyclo(d, n)
    key = (n, d.coeffs)
    if key in _SQRT_CACHE:
        return _SQRT_CACHE[key]
    result = None
    if d.is_zero():
        result = d
    elif d.is_rational():
        result = _sqrt_rational_fast(d.as_rational(), n)
    if result is None:
        one = CycloNum.rational(1, n)
        roots = roots_in_field([-d, CycloNum.rational(0, n), one], n)
        result = roots[0] if roots else None
    if result is not None:
        assert result * result == d
    _SQRT_CACHE[key] = result
    return result


def _sqrt_rational_fast(q: Fraction, n: int):
    """sqrt of a rational inside Q(zeta_n) via Gauss sums, or None to fall back."""
    if q == 0:
        return CycloNum.rational(0, n)
    num, den = q.numerator, q.denominator
    target = num * den  # sqrt(q) = sqrt(num*den)/den
    sign = 1 if target > 0 else -1
    target = abs(target)
    square_part = 1
    squarefree = 1
    m = target
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        square_part *= p ** (e // 2)
        if e % 2:
            squarefree *= p
        p += 1
    squarefree *= m
    try:
        acc = CycloNum.rational(Fraction(square_part, den), n)
        needs_i = sign < 0
        for p in prime_factors(squarefree):
            if p == 2:
                z8 = root_of_unity(n, 8)
                acc = acc * (z8 + z8.inverse())
            else:
                gauss = _gauss_sum(p, n)
                if p % 4 == 3:
                    needs_i = not needs_i
                    # gauss^2 = -p; multiply by -i later to fix the sign
                acc = acc * gauss
        if needs_i:
            acc = acc * root_of_unity(n, 4)
    except ConductorTooSmall:
        return None
    target_num = CycloNum.rational(q, n)
    if acc * acc == target_num:
        return acc
    if acc * acc == -target_num:
        try:
            acc = acc * root_of_unity(n, 4)
        except ConductorTooSmall:
            return None
        if acc * acc == target_num:
            return acc
    return None


def _gauss_sum(p: int, n: int) -> CycloNum:
    """Quadratic Gauss sum over Q(zeta_p), embedded at conductor n."""
    zp = root_of_unity(n, p)
    acc = CycloNum.rational(0, n)
    for a in range(1, p):
        legendre = pow(a, (p - 1) // 2, p)
        term = zp ** a
        acc = acc + term if legendre == 1 else acc - term
    return acc


# --------------------------------------------------------------------------
# Kummer layer k(u^(1/l))
# --------------------------------------------------------------------------

class KummerNum:
    """Element of a Kummer extension: polynomial of degree < l in the radical s."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: "KummerExt", coeffs):
        padded = list(coeffs) + [CycloNum.rational(0, ext.conductor)] * (ext.l - len(coeffs))
        if len(padded) > ext.l:
            folded = padded[:ext.l]
            for e in range(ext.l, len(padded)):
                folded[e % ext.l] = folded[e % ext.l] + padded[e] * ext.u ** (e // ext.l)
            padded = folded
        self.ext = ext
        self.coeffs = tuple(c.embed(ext.conductor) for c in padded)

    def s_degree(self) -> int:
        for i in range(self.ext.l - 1, -1, -1):
            if not self.coeffs[i].is_zero():
                return i
        return 0

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def scalar_part(self) -> CycloNum:
        if not self.is_scalar():
            raise NotInField(f"{self} involves the radical")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _coerce(self, other):
        if isinstance(other, KummerNum):
            assert other.ext is self.ext or other.ext == self.ext
            return other
        if isinstance(other, (int, Fraction)):
            return self.ext.scalar(CycloNum.rational(other, self.ext.conductor))
        if isinstance(other, CycloNum):
            return self.ext.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KummerNum(self.ext, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return KummerNum(self.ext, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KummerNum(self.ext, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        l = self.ext.l
        zero = CycloNum.rational(0, self.ext.conductor)
        prod = [zero] * (2 * l - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return KummerNum(self.ext, prod)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        result = self.ext.scalar(CycloNum.rational(1, self.ext.conductor))
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                terms.append(f"({c})")
            else:
                terms.append(f"({c})*s^{i}" if i > 1 else f"({c})*s")
        return " + ".join(terms) if terms else "0"


class KummerExt:
    """The extension k(s) with s^l = u, plus its cyclic base-fixing automorphism.

    Construction validates that x^l - u is irreducible over the base field and
    that zeta_l lies in the base, so gamma: s -> zeta_l^(-1) s generates a
    cyclic automorphism group of order exactly l.
    """

    __slots__ = ("base", "u", "l", "conductor", "zeta_l")

    def __init__(self, base: FieldSpec, u: CycloNum, l: int):
        self.base = base
        self.conductor = base.conductor
        self.u = base.coerce(u)
        self.l = l
        if not base.contains(self.u):
            raise NotInField("radicand u is not a member of the base field")
        try:
            self.zeta_l = root_of_unity(base.conductor, l)
        except ConductorTooSmall as exc:
            raise MissingRootOfUnity(str(exc)) from exc
        if not base.contains(self.zeta_l):
            raise MissingRootOfUnity(f"zeta_{l} is not in the base field")
        self._check_irreducible()

    def _check_irreducible(self):
        # standard criterion: u is not a p-th power in k for any prime p | l,
        # and when 4 | l additionally u is not in -4 k^4.
        n = self.conductor
        zero = CycloNum.rational(0, n)
        one = CycloNum.rational(1, n)
        for p in prime_factors(self.l):
            poly = [-self.u] + [zero] * (p - 1) + [one]
            for root in roots_in_field(poly, n):
                if self.base.contains(root):
                    raise NotIrreducible(
                        f"u is a {p}-th power in the base field", witness=root)
        if self.l % 4 == 0:
            poly = [self.u / 4] + [zero] * 3 + [one]
            for root in roots_in_field(poly, n):
                if self.base.contains(root):
                    raise NotIrreducible(
                        "u lies in -4 k^4, so x^l - u factors", witness=root)

    def gen(self) -> KummerNum:
        zero = CycloNum.rational(0, self.conductor)
        one = CycloNum.rational(1, self.conductor)
        return KummerNum(self, [zero, one])

    def scalar(self, c) -> KummerNum:
        if isinstance(c, (int, Fraction)):
            c = CycloNum.rational(c, self.conductor)
        return KummerNum(self, [c])

    def galois(self, j: int, x: KummerNum) -> KummerNum:
        """Apply gamma^j, where gamma: s -> zeta_l^(-1) s fixes the base."""
        twist = self.zeta_l.inverse() ** j
        return KummerNum(self, [c * twist ** i for i, c in enumerate(x.coeffs)])

    def __eq__(self, other):
        return (isinstance(other, KummerExt) and self.base == other.base
                and self.u == other.u and self.l == other.l)

    def __hash__(self):
        return hash((self.base, self.u, self.l))

    def __repr__(self):
        return f"KummerExt(u={self.u}, l={self.l} over {self.base!r})"


def kummer_make(base: FieldSpec, u: CycloNum, l: int) -> KummerExt:
    """Validated construction of k(u^(1/l)); see KummerExt."""
    return KummerExt(base, u, l)


def kummer_galois(ext: KummerExt, j: int, x: KummerNum) -> KummerNum:
    return ext.galois(j, x)
