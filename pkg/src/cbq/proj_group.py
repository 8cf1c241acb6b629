"""Finite subgroups of PGL2 acting on the projective line, exactly.

Points, projective 2x2 matrices and closed finite matrix groups over a
cyclotomic ambient field, together with the explicit generator sets for the
five kinds of finite subgroup (cyclic, dihedral, A4, S4, A5), fixed points,
orbits, stabilizers, and the question of whether fixed points are defined
over a given subfield.

Fixed points are computed exactly: for elements of projective order > 2 the
eigenvalue ratio is a primitive root of unity, so eigenvalues come from
exact division; order-2 elements need one square root in the ambient field.
Eigenvectors are exact 2x2 kernel computations.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclofield import (
    CycloNum,
    FieldSpec,
    root_of_unity,
    sqrt_in_field,
)
from .errors import (
    ConductorTooSmall,
    MissingConstant,
    NeedsLargerField,
    NotFinite,
    Unclassifiable,
    CbqInternalError,
    CbqInputError,
)


class AllPoints:
    """Sentinel: the identity fixes every point of the line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_POINTS"


ALL_POINTS = AllPoints()


class P1Point:
    """A point (t1 : t0) of the projective line, canonically normalized.

    Normalization: the last nonzero coordinate equals 1, so equal points have
    literally equal coordinate tuples.
    """

    __slots__ = ("t1", "t0")

    def __init__(self, t1: CycloNum, t0: CycloNum):
        if t0.conductor != t1.conductor:
            n = math.lcm(t0.conductor, t1.conductor)
            t1, t0 = t1.embed(n), t0.embed(n)
        if not t0.is_zero():
            inv = t0.inverse()
            t1, t0 = t1 * inv, t0 * inv
        elif not t1.is_zero():
            inv = t1.inverse()
            t1, t0 = t1 * inv, t0 * inv
        else:
            raise CbqInputError("(0 : 0) is not a point of the projective line")
        self.t1 = t1
        self.t0 = t0

    @staticmethod
    def of(t1, t0, conductor: int = 1) -> "P1Point":
        mk = lambda v: v if isinstance(v, CycloNum) else CycloNum.rational(v, conductor)
        return P1Point(mk(t1), mk(t0))

    @staticmethod
    def infinity(conductor: int = 1) -> "P1Point":
        return P1Point(CycloNum.rational(1, conductor), CycloNum.rational(0, conductor))

    def embed(self, conductor: int) -> "P1Point":
        return P1Point(self.t1.embed(conductor), self.t0.embed(conductor))

    def is_infinity(self) -> bool:
        return self.t0.is_zero()

    def defined_over(self, field: FieldSpec) -> bool:
        return field.contains(self.t1) and field.contains(self.t0)

    def galois(self, j: int) -> "P1Point":
        return P1Point(self.t1.galois(j), self.t0.galois(j))

    def __eq__(self, other):
        if not isinstance(other, P1Point):
            return NotImplemented
        return self.t1 == other.t1 and self.t0 == other.t0

    def __hash__(self):
        return hash((self.t1, self.t0))

    def sort_key(self):
        return (self.t0.sort_key(), self.t1.sort_key())

    def __repr__(self):
        return f"({self.t1} : {self.t0})"


class Pgl2Elem:
    """A 2x2 projective matrix with nonzero determinant, in canonical form.

    Canonical form scales the first nonzero entry (row-major order) to 1, so
    equality of instances is equality in PGL2.
    """

    __slots__ = ("m", "conductor", "_hash")

    def __init__(self, rows, conductor: int | None = None):
        flat = [rows[0][0], rows[0][1], rows[1][0], rows[1][1]]
        n = conductor or max(v.conductor for v in flat if isinstance(v, CycloNum))
        flat = [v.embed(n) if isinstance(v, CycloNum) else CycloNum.rational(v, n)
                for v in flat]
        n = math.lcm(*[v.conductor for v in flat])
        flat = [v.embed(n) for v in flat]
        pivot = next((v for v in flat if not v.is_zero()), None)
        if pivot is None:
            raise CbqInputError("zero matrix is not a projective transformation")
        if not (pivot.is_rational() and pivot.coeffs[0] == 1):
            inv = pivot.inverse()
            flat = [v * inv for v in flat]
        a, b, c, d = flat
        if (a * d - b * c).is_zero():
            raise CbqInputError("matrix has zero determinant")
        object.__setattr__(self, "m", ((a, b), (c, d)))
        object.__setattr__(self, "conductor", n)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("Pgl2Elem is immutable")

    @staticmethod
    def identity(conductor: int = 1) -> "Pgl2Elem":
        one = CycloNum.rational(1, conductor)
        zero = CycloNum.rational(0, conductor)
        return Pgl2Elem(((one, zero), (zero, one)))

    @staticmethod
    def diag(a, b, conductor: int = 1) -> "Pgl2Elem":
        mk = lambda v: v if isinstance(v, CycloNum) else CycloNum.rational(v, conductor)
        a, b = mk(a), mk(b)
        zero = CycloNum.rational(0, a.conductor)
        return Pgl2Elem(((a, zero), (zero, b)))

    def embed(self, conductor: int) -> "Pgl2Elem":
        return Pgl2Elem([[v.embed(conductor) for v in row] for row in self.m])

    def entries(self):
        return [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]

    def det(self) -> CycloNum:
        return self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]

    def trace(self) -> CycloNum:
        return self.m[0][0] + self.m[1][1]

    def is_identity(self) -> bool:
        return (self.m[0][1].is_zero() and self.m[1][0].is_zero()
                and self.m[0][0] == self.m[1][1])

    def __mul__(self, other: "Pgl2Elem") -> "Pgl2Elem":
        n = math.lcm(self.conductor, other.conductor)
        x = self.embed(n).m
        y = other.embed(n).m
        return Pgl2Elem((
            (x[0][0] * y[0][0] + x[0][1] * y[1][0],
             x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0],
             x[1][0] * y[0][1] + x[1][1] * y[1][1]),
        ))

    def inverse(self) -> "Pgl2Elem":
        (a, b), (c, d) = self.m
        return Pgl2Elem(((d, -b), (-c, a)))

    def conjugate_by(self, t: "Pgl2Elem") -> "Pgl2Elem":
        return t * self * t.inverse()

    def galois(self, j: int) -> "Pgl2Elem":
        return Pgl2Elem([[v.galois(j) for v in row] for row in self.m])

    def defined_over(self, field: FieldSpec) -> bool:
        return all(field.contains(v) for v in self.entries())

    def apply(self, p: P1Point) -> P1Point:
        n = math.lcm(self.conductor, p.t1.conductor)
        m = self.embed(n).m
        q = p.embed(n)
        return P1Point(m[0][0] * q.t1 + m[0][1] * q.t0,
                       m[1][0] * q.t1 + m[1][1] * q.t0)

    def order(self, cap: int = 256) -> int:
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc * self
        raise NotFinite(f"element order exceeds cap {cap}")

    def __pow__(self, exp: int) -> "Pgl2Elem":
        if exp < 0:
            return self.inverse() ** (-exp)
        acc = Pgl2Elem.identity(self.conductor)
        base = self
        while exp:
            if exp & 1:
                acc = acc * base
            base = base * base
            exp >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, Pgl2Elem):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.m == other.m
        n = math.lcm(self.conductor, other.conductor)
        return self.embed(n).m == other.embed(n).m

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self.entries())))
        return self._hash

    def sort_key(self):
        return tuple(v.sort_key() for v in self.entries())

    def __repr__(self):
        (a, b), (c, d) = self.m
        return f"[[{a}, {b}], [{c}, {d}]]"


# --------------------------------------------------------------------------
# standard matrices of the explicit representations
# --------------------------------------------------------------------------

# The classical generator arithmetic works with specific matrix lifts, not
# canonical projective forms: sums like Id + I + J + K depend on the lift.

def _ijk_raw(conductor: int):
    i = root_of_unity(conductor, 4)
    one = CycloNum.rational(1, conductor)
    zero = CycloNum.rational(0, conductor)
    I = ((-i, zero), (zero, i))
    J = ((zero, -one), (one, zero))
    K = ((zero, i), (i, zero))
    return I, J, K


def _raw_identity(conductor: int):
    one = CycloNum.rational(1, conductor)
    zero = CycloNum.rational(0, conductor)
    return ((one, zero), (zero, one))


def _raw_sum(*mats):
    acc = [[mats[0][r][c] for c in range(2)] for r in range(2)]
    for m in mats[1:]:
        for r in range(2):
            for c in range(2):
                acc[r][c] = acc[r][c] + m[r][c]
    return acc


def _raw_scale(m, s):
    return [[v * s for v in row] for row in m]


def _raw_mul(x, y):
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0],
             x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0],
             x[1][0] * y[0][1] + x[1][1] * y[1][1]))


DEFAULT_CONDUCTOR = {
    "C": lambda k: math.lcm(4, k),
    "D": lambda k: math.lcm(4, 2 * k),
    "A4": lambda k: 24,
    "S4": lambda k: 24,
    "A5": lambda k: 60,
}


def default_conductor(kind: str, param: int | None = None) -> int:
    """Ambient conductor hosting all eigen-data of the standard representation."""
    if kind not in DEFAULT_CONDUCTOR:
        raise CbqInputError(f"unknown group kind {kind!r}")
    return DEFAULT_CONDUCTOR[kind](param or 1)


def minimal_field_for(kind: str, param: int | None = None,
                      conductor: int | None = None,
                      variant: str = "i") -> FieldSpec:
    """The smallest base field the standard generator construction allows."""
    n = conductor or default_conductor(kind, param)
    if kind == "C":
        return FieldSpec(n, [root_of_unity(n, param)], label=f"Q(zeta_{param})")
    if kind == "D":
        zk = root_of_unity(n, param)
        cos = (zk + zk.inverse()) / 2
        return FieldSpec(n, [cos], label=f"Q(cos 2pi/{param})")
    if kind == "A4":
        return FieldSpec(n, [root_of_unity(n, 4)], label="Q(i)")
    if kind == "S4":
        if variant == "isqrt2":
            z8 = root_of_unity(n, 8)
            return FieldSpec(n, [z8 + z8 ** 3], label="Q(i*sqrt2)")
        return FieldSpec(n, [root_of_unity(n, 4)], label="Q(i)")
    if kind == "A5":
        i = root_of_unity(n, 4)
        s5 = sqrt_in_field(CycloNum.rational(5, n))
        return FieldSpec(n, [i, s5], label="Q(i, sqrt5)")
    raise CbqInputError(f"unknown group kind {kind!r}")


def standard_generators(kind: str, param: int | None, field: FieldSpec):
    """Generator matrices of the explicit representations, over `field`.

    Raises MissingConstant naming the element the field lacks.
    """
    n = field.conductor
    one = CycloNum.rational(1, n)
    zero = CycloNum.rational(0, n)
    if kind == "C":
        k = param
        try:
            zk = root_of_unity(n, k)
        except ConductorTooSmall as exc:
            raise MissingConstant(f"zeta_{k} not representable at conductor {n}") from exc
        if not field.contains(zk):
            raise MissingConstant(f"zeta_{k}")
        return [Pgl2Elem.diag(zk, one)]
    if kind == "D":
        k = param
        if k < 2:
            raise CbqInputError("dihedral parameter must be >= 2")
        S = Pgl2Elem(((zero, one), (one, zero)))
        if k == 2:
            return [Pgl2Elem.diag(-one, one), S]
        try:
            zk = root_of_unity(n, k)
        except ConductorTooSmall as exc:
            raise MissingConstant(f"cos 2pi/{k} not representable at conductor {n}") from exc
        cos = (zk + zk.inverse()) / 2
        if not field.contains(cos):
            raise MissingConstant(f"cos 2pi/{k}")
        t = cos * 2 + 2  # 4 cos^2(pi/k)
        R = Pgl2Elem(((t - one, -one), (one, one)))
        return [R, S]
    if kind == "A4":
        if not _field_has_i(field):
            raise MissingConstant("i")
        I, J, K = _ijk_raw(n)
        return [Pgl2Elem(I), Pgl2Elem(_raw_sum(_raw_identity(n), I, J, K))]
    if kind == "S4":
        if _field_has_i(field):
            I, J, K = _ijk_raw(n)
            return [Pgl2Elem(I),
                    Pgl2Elem(_raw_sum(_raw_identity(n), I, J, K)),
                    Pgl2Elem(_raw_sum(I, J))]
        isqrt2 = _isqrt2(n)
        if isqrt2 is not None and field.contains(isqrt2):
            I, J, K = _ijk_raw(n)
            # I~ = sqrt2*I - i*K = [[-i sqrt2, 1], [1, i sqrt2]]
            It = ((-isqrt2, one), (one, isqrt2))
            ItJ = _raw_mul(It, J)
            return [Pgl2Elem(It),
                    Pgl2Elem(_raw_sum(_raw_identity(n), It, J, ItJ)),
                    Pgl2Elem(_raw_sum(It, J))]
        raise MissingConstant("i or i*sqrt2")
    if kind == "A5":
        if not _field_has_i(field):
            raise MissingConstant("i")
        s5 = sqrt_in_field(CycloNum.rational(5, n))
        if s5 is None or not field.contains(s5):
            raise MissingConstant("sqrt5")
        phi = (s5 + 1) / 2
        I, J, K = _ijk_raw(n)
        gen3 = _raw_sum(_raw_identity(n), _raw_scale(I, phi),
                        _raw_scale(J, phi.inverse()))
        return [Pgl2Elem(I),
                Pgl2Elem(_raw_sum(_raw_identity(n), I, J, K)),
                Pgl2Elem(gen3)]
    raise CbqInputError(f"unknown group kind {kind!r}")


def _field_has_i(field: FieldSpec) -> bool:
    try:
        return field.contains(root_of_unity(field.conductor, 4))
    except ConductorTooSmall:
        return False


def _isqrt2(n: int):
    try:
        z8 = root_of_unity(n, 8)
    except ConductorTooSmall:
        return None
    return z8 + z8 ** 3


# --------------------------------------------------------------------------
# finite groups
# --------------------------------------------------------------------------

class FiniteGroup:
    """A closed finite set of projective matrices with its classification tag."""

    def __init__(self, elements, generators=()):
        elements = sorted(set(elements), key=Pgl2Elem.sort_key)
        self.elements = tuple(elements)
        self.element_set = frozenset(elements)
        self.generators = tuple(generators)
        self.conductor = max(g.conductor for g in elements)
        self._orders: dict[Pgl2Elem, int] = {}
        self._kind = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    def identity(self) -> Pgl2Elem:
        return Pgl2Elem.identity(self.conductor)

    def element_order(self, g: Pgl2Elem) -> int:
        if g not in self._orders:
            self._orders[g] = g.order(cap=len(self.elements) + 1)
        return self._orders[g]

    def order_statistics(self) -> dict[int, int]:
        stats: dict[int, int] = {}
        for g in self.elements:
            o = self.element_order(g)
            stats[o] = stats.get(o, 0) + 1
        return stats

    @property
    def kind(self):
        if self._kind is None:
            self._kind = classify_group(self)
        return self._kind

    def defined_over(self, field: FieldSpec) -> bool:
        return all(g.defined_over(field) for g in self.elements)

    def conjugate_by(self, t: Pgl2Elem) -> "FiniteGroup":
        return FiniteGroup([g.conjugate_by(t) for g in self.elements],
                           [g.conjugate_by(t) for g in self.generators])

    def subgroup_generated(self, gens) -> "FiniteGroup":
        return generate_group(list(gens), cap=len(self.elements) + 1)

    def __repr__(self):
        k, p = self.kind
        name = f"{k}{p}" if k in ("C", "D") else k
        return f"FiniteGroup({name}, order {len(self)})"


def generate_group(gens, cap: int = 512) -> FiniteGroup:
    """Closure of the generators under multiplication, capped for safety."""
    if cap < 1:
        raise CbqInputError("cap must be >= 1")
    if not gens:
        return FiniteGroup([Pgl2Elem.identity()])
    n = math.lcm(*[g.conductor for g in gens])
    gens = [g.embed(n) for g in gens]
    identity = Pgl2Elem.identity(n)
    els = {identity}
    boundary = [identity]
    while boundary:
        new = []
        for g in gens:
            for b in boundary:
                c = g * b
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > cap:
                        raise NotFinite(f"group closure exceeded cap {cap}")
        boundary = new
    return FiniteGroup(els, gens)


def classify_group(group: FiniteGroup):
    """Tag a closed finite subgroup of PGL2 as ('C', k), ('D', k), A4, S4, A5.

    Dihedral tags use the half-order parameter: ('D', k) is the group of
    order 2k, with ('D', 2) the Klein four-group.
    """
    n = len(group)
    stats = group.order_statistics()
    max_order = max(stats)
    if max_order == n:
        return ("C", n)
    if n % 2 == 0 and max_order == n // 2 and stats.get(n // 2, 0) > 0:
        if n == 4 or _has_dihedral_shape(group):
            return ("D", n // 2)
    if n == 12 and max_order == 3:
        return ("A4", None)
    if n == 24 and max_order == 4:
        return ("S4", None)
    if n == 60 and max_order == 5:
        return ("A5", None)
    raise Unclassifiable(f"order {n} with element orders {sorted(stats)}")


def _has_dihedral_shape(group: FiniteGroup) -> bool:
    n = len(group)
    k = n // 2
    rot = next(g for g in group if group.element_order(g) == k)
    refl = next((g for g in group
                 if g not in generate_group([rot], cap=n).element_set
                 and group.element_order(g) == 2), None)
    if refl is None:
        return False
    return refl * rot * refl == rot.inverse()


# --------------------------------------------------------------------------
# fixed points
# --------------------------------------------------------------------------

def fixed_points(g: Pgl2Elem, order: int | None = None):
    """The fixed points of g on the projective line.

    Returns ALL_POINTS for the identity and an ordered pair of distinct
    points for any other finite-order element.  Raises NeedsLargerField when
    the eigen-data does not live in the ambient cyclotomic field.
    """
    if g.is_identity():
        return ALL_POINTS
    n = g.conductor
    m = order or g.order()
    t = g.trace()
    d = g.det()
    if m == 2:
        assert t.is_zero()
        lam = sqrt_in_field(-d, n)
        if lam is None:
            raise NeedsLargerField(
                f"square root of {-d} not in Q(zeta_{n})", discriminant=-d)
        eigs = (lam, -lam)
    else:
        eigs = None
        try:
            zm = root_of_unity(n, m)
        except ConductorTooSmall as exc:
            raise NeedsLargerField(
                f"zeta_{m} not representable at conductor {n}",
                discriminant=None) from exc
        for j in range(1, m):
            if math.gcd(j, m) != 1:
                continue
            zeta = zm ** j
            lam2 = t / (zeta + 1)
            lam1 = zeta * lam2
            if lam1 * lam2 == d:
                eigs = (lam1, lam2)
                break
        if eigs is None:
            raise NeedsLargerField(
                f"no eigenvalue ratio of order {m} found at conductor {n}",
                discriminant=None)
    points = []
    (a, b), (c, dd) = g.m
    for lam in eigs:
        # kernel of (g - lam): rows (a - lam, b) and (c, d - lam)
        v = (b, lam - a)
        if v[0].is_zero() and v[1].is_zero():
            v = (lam - dd, c)
        p = P1Point(v[0], v[1])
        q = g.apply(p)
        assert q == p, "eigenvector computation failed"
        points.append(p)
    assert points[0] != points[1], "finite non-identity element must have 2 fixed points"
    points.sort(key=P1Point.sort_key)
    return tuple(points)


def group_fixed_points(group: FiniteGroup) -> dict[Pgl2Elem, tuple]:
    """Fixed-point pairs for every non-identity element of the group.

    Computes one pair per conjugacy class directly, then transfers along
    conjugation (fixed points of h g h^-1 are h-images of those of g) and
    along powers (a cyclic group shares one fixed pair).
    """
    done: dict[Pgl2Elem, tuple] = {}
    inverses = {h: h.inverse() for h in group.elements}
    for g in group.elements:
        if g.is_identity() or g in done:
            continue
        pair = fixed_points(g, order=group.element_order(g))
        done[g] = pair
        for h in group.elements:
            conj = (h * g) * inverses[h]
            if conj not in done:
                pts = tuple(sorted((h.apply(pair[0]), h.apply(pair[1])),
                                   key=P1Point.sort_key))
                done[conj] = pts
            powered = conj
            base = done[conj]
            for _ in range(group.element_order(conj) - 2):
                powered = powered * conj
                if powered.is_identity():
                    break
                if powered not in done:
                    done[powered] = base
    return done


def fixed_points_defined_over(g: Pgl2Elem, field: FieldSpec,
                              order: int | None = None) -> bool:
    """Whether both fixed points of g have coordinates in the subfield.

    For elements of order > 2 defined over the field, the answer is
    cross-checked against the root-of-unity criterion; a mismatch would be an
    internal error.
    """
    m = order or g.order()
    if m == 1:
        raise CbqInputError("identity has no well-defined fixed pair")
    pair = fixed_points(g, order=m)
    answer = all(p.defined_over(field) for p in pair)
    if m > 2 and g.defined_over(field):
        expected = field.contains_root_of_unity(m)
        if expected != answer:
            raise CbqInternalError(
                f"definability of fixed points disagrees with the zeta_{m} criterion")
    return answer


# --------------------------------------------------------------------------
# orbits and stabilizers
# --------------------------------------------------------------------------

def orbit(p: P1Point, group: FiniteGroup) -> list[P1Point]:
    seen = {}
    for g in group.elements:
        q = g.apply(p)
        seen.setdefault(q, None)
    points = sorted(seen, key=P1Point.sort_key)
    assert len(group) % len(points) == 0
    return points


def stabilizer(p: P1Point, group: FiniteGroup) -> FiniteGroup:
    fixing = [g for g in group.elements if g.apply(p) == p]
    sub = FiniteGroup(fixing)
    assert len(sub) * len(orbit(p, group)) == len(group)
    return sub


def special_orbit_table(group: FiniteGroup) -> tuple[int, ...]:
    """Multiset of orbit lengths of all points with non-trivial stabilizer.

    Every special orbit is the orbit of a fixed point of some non-identity
    element, and elements sharing one fixed point share both, so it suffices
    to resolve fixed pairs until every non-identity element is accounted for
    by some stabilizer already seen.
    """
    if len(group) <= 1:
        raise CbqInputError("special orbits are defined for non-trivial groups")
    inverses = {h: h.inverse() for h in group.elements}
    uncovered = {g for g in group.elements if not g.is_identity()}
    lengths = []
    seen_points: set[P1Point] = set()
    while uncovered:
        g = _cheapest_candidate(group, uncovered)
        pair = fixed_points(g, order=group.element_order(g))
        for p in pair:
            if p in seen_points:
                continue
            images = [(h, h.apply(p)) for h in group.elements]
            orb = {q for _, q in images}
            lengths.append(len(orb))
            seen_points.update(orb)
            stab = [h for h, q in images if q == p]
            reps = {}
            for h, q in images:
                reps.setdefault(q, h)
            for h in reps.values():
                for s in stab:
                    if s.is_identity():
                        continue
                    uncovered.discard((h * s) * inverses[h])
    return tuple(sorted(lengths))


def _cheapest_candidate(group: FiniteGroup, pool: set) -> Pgl2Elem:
    """Prefer elements whose fixed points need no square-root extraction."""
    best, best_rank = None, None
    for g in pool:
        m = group.element_order(g)
        if m > 2:
            rank = 0
        else:
            rank = 1 if (-g.det()).is_rational() else 2
        if best_rank is None or rank < best_rank:
            best, best_rank = g, rank
            if rank == 0:
                break
    return best


def expected_orbit_table(kind: str, param: int | None = None) -> tuple[int, ...]:
    """Orbit lengths of points with non-trivial stabilizer, by group kind."""
    if kind == "C":
        return (1, 1)
    if kind == "D":
        return tuple(sorted((2, param, param)))
    if kind == "A4":
        return (4, 4, 6)
    if kind == "S4":
        return (6, 8, 12)
    if kind == "A5":
        return (12, 20, 30)
    raise CbqInputError(f"unknown group kind {kind!r}")


def standard_group(kind: str, param: int | None = None,
                   field: FieldSpec | None = None,
                   variant: str = "i") -> FiniteGroup:
    """Generate the standard representation of the given kind over its field."""
    if field is None:
        field = minimal_field_for(kind, param, variant=variant)
    gens = standard_generators(kind, param, field)
    expected = {"C": param, "D": 2 * param if param else None,
                "A4": 12, "S4": 24, "A5": 60}[kind]
    group = generate_group(gens, cap=max(2 * (expected or 60), 128))
    if expected is not None and len(group) != expected:
        raise CbqInternalError(
            f"standard generators for {kind} produced order {len(group)}")
    return group
