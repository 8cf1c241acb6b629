"""Comparison of singular-fibre loci under base changes defined over k.

For relatively minimal conic bundles with K^2 <= 0 (at least eight singular
fibres), any birational equivalence induces an isomorphism of bases carrying
one singular locus to the other; the locus is therefore a birational
invariant up to the Mobius action of PGL2(k).  This module decides whether
two Galois-stable point sets on the projective line are related by a Mobius
transformation defined over k, and produces pairwise verdict matrices for
families of models, comparing the images of the marked loci on the quotient
base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclofield import CycloNum, FieldSpec, nullspace
from .errors import CbqInputError, DegenerateTriple, FieldMismatch
from .proj_group import P1Point, Pgl2Elem
from .quotient_engine import SINGULAR, SurfaceModel

RIGIDITY_THRESHOLD = 8  # singular fibres forcing K^2 <= 0


@dataclass(frozen=True)
class FibreLocus:
    """A Galois-stable finite set of points of the projective line over k."""

    points: tuple
    field: FieldSpec

    @staticmethod
    def make(points, field: FieldSpec) -> "FibreLocus":
        n = field.conductor
        pts = sorted({p.embed(n) for p in points}, key=P1Point.sort_key)
        for j in field.stabilizer:
            moved = {p.galois(j) for p in pts}
            if moved != set(pts):
                raise CbqInputError(
                    "locus is not stable under the Galois action of the field")
        return FibreLocus(tuple(pts), field)

    def __len__(self):
        return len(self.points)

    def rigidity_applies(self) -> bool:
        return len(self.points) >= RIGIDITY_THRESHOLD


def mobius_from_triples(a1: P1Point, a2: P1Point, a3: P1Point,
                        b1: P1Point, b2: P1Point, b3: P1Point) -> Pgl2Elem:
    """The unique projective map sending the first triple to the second."""
    for trip in ((a1, a2, a3), (b1, b2, b3)):
        if trip[0] == trip[1] or trip[0] == trip[2] or trip[1] == trip[2]:
            raise DegenerateTriple("triple points must be pairwise distinct")
    m_a = _to_standard_triple(a1, a2, a3)
    m_b = _to_standard_triple(b1, b2, b3)
    return m_b.inverse() * m_a


def _to_standard_triple(p1: P1Point, p2: P1Point, p3: P1Point) -> Pgl2Elem:
    """Map sending p1, p2, p3 to (0 : 1), (1 : 1), (1 : 0)."""
    n = math.lcm(p1.t1.conductor, p2.t1.conductor, p3.t1.conductor)
    p1, p2, p3 = p1.embed(n), p2.embed(n), p3.embed(n)
    zero = CycloNum.rational(0, n)
    one = CycloNum.rational(1, n)
    # unknowns (m00, m01, m10, m11): M p1 has first coord 0, M p3 has second
    # coord 0, and M p2 has equal coordinates
    rows = [
        [p1.t1, p1.t0, zero, zero],
        [zero, zero, p3.t1, p3.t0],
        [p2.t1, p2.t0, -p2.t1, -p2.t0],
    ]
    basis = nullspace(rows, n)
    if len(basis) != 1:
        raise DegenerateTriple("triple does not determine a unique map")
    m00, m01, m10, m11 = basis[0]
    mat = Pgl2Elem(((m00, m01), (m10, m11)))
    assert mat.apply(p1) == P1Point(zero, one)
    assert mat.apply(p3) == P1Point(one, zero)
    assert mat.apply(p2) == P1Point(one, one)
    return mat


def loci_equivalent(locus_a: FibreLocus, locus_b: FibreLocus):
    """A k-defined Mobius map carrying one locus onto the other, or None.

    Fixes the first three points of the first locus and tries every ordered
    triple of the second; a candidate counts when it is defined over k and
    maps the point sets exactly onto each other.
    """
    if locus_a.field != locus_b.field:
        raise FieldMismatch("loci live over different fields")
    if len(locus_a) != len(locus_b):
        return None
    if len(locus_a) < 3:
        raise CbqInputError("need at least three points to compare loci")
    a_pts = locus_a.points
    b_set = set(locus_b.points)
    field = locus_a.field
    m_a = _to_standard_triple(a_pts[0], a_pts[1], a_pts[2])
    for b1 in locus_b.points:
        for b2 in locus_b.points:
            if b2 == b1:
                continue
            for b3 in locus_b.points:
                if b3 == b1 or b3 == b2:
                    continue
                candidate = _to_standard_triple(b1, b2, b3).inverse() * m_a
                if not candidate.defined_over(field):
                    continue
                image = {candidate.apply(p) for p in a_pts}
                if image == b_set:
                    return candidate
    return None


# --------------------------------------------------------------------------
# loci of models and pairwise verdicts
# --------------------------------------------------------------------------

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
NO_CONCLUSION = "no_conclusion"


def upstairs_locus(model: SurfaceModel, conductor: int | None = None) -> FibreLocus:
    """The singular-fibre base points of the bundle, as an explicit locus.

    Needs an ambient conductor in which the radical u^(1/l) exists (the
    marked points have coordinates mu_i * u^(1/l)).
    """
    from .cyclofield import sqrt_in_field

    eq = model.equation
    if eq is None:
        raise CbqInputError("model carries no equation payload")
    if eq.l != 2:
        raise CbqInputError("explicit loci are implemented for l = 2 only")
    n = conductor or model.base_field.conductor
    root = sqrt_in_field(eq.u.embed(n) if n % eq.u.conductor == 0 else eq.u, n)
    if root is None:
        raise CbqInputError(
            f"u^(1/2) does not exist in Q(zeta_{n}); pass a larger conductor")
    field = model.base_field.embed(n)
    one = CycloNum.rational(1, n)
    points = []
    for mu in eq.mus:
        lam = mu.embed(n) * root
        points.append(P1Point(lam, one))
        points.append(P1Point(-lam, one))
    return FibreLocus.make(points, field)


def quotient_locus(model: SurfaceModel) -> FibreLocus:
    """Images of the marked singular-fibre points on the quotient base.

    The quotient base of the cyclic scaling action t -> zeta_l t is
    coordinatized by t^l, so the marked orbits land at (u * mu^l : 1); these
    are k-points.  Only models whose group is the full cyclic scaling group
    are supported (the acceptance families use C2).
    """
    eq = model.equation
    if eq is None:
        raise CbqInputError("model carries no equation payload")
    kind, param = model.kind
    if kind != "C" or param != eq.l:
        raise CbqInputError(
            "quotient locus is implemented for the cyclic scaling group only")
    field = model.base_field
    n = field.conductor
    one = CycloNum.rational(1, n)
    points = [P1Point(eq.u * mu ** eq.l, one) for mu in eq.mus]
    if len(set(points)) != len(points):
        raise CbqInputError("marked orbits collide on the quotient base")
    return FibreLocus.make(points, field)


@dataclass
class PairVerdict:
    verdict: str
    witness: Pgl2Elem | None = None
    note: str = ""


def compare_loci(locus_a: FibreLocus, locus_b: FibreLocus) -> PairVerdict:
    """Equivalence verdict with the rigidity hypothesis tracked."""
    if len(locus_a) != len(locus_b):
        if locus_a.rigidity_applies() or locus_b.rigidity_applies():
            return PairVerdict(INEQUIVALENT, note="sizes differ")
        return PairVerdict(NO_CONCLUSION, note="sizes differ; K^2 > 0")
    witness = loci_equivalent(locus_a, locus_b)
    if witness is not None:
        return PairVerdict(EQUIVALENT, witness=witness)
    if locus_a.rigidity_applies():
        return PairVerdict(INEQUIVALENT)
    return PairVerdict(NO_CONCLUSION,
                       note="loci differ but rigidity needs >= 8 points")


def pairwise_inequivalence(models: list) -> list[list[PairVerdict | None]]:
    """Pairwise verdict matrix for a family of models over one field/group.

    Models are compared through the images of their singular loci on the
    quotient base.  Entry [i][j] is None on the diagonal.
    """
    if not models:
        return []
    field = models[0].base_field
    kind = models[0].kind
    for m in models[1:]:
        if m.base_field != field:
            raise FieldMismatch("family members live over different fields")
        if m.kind != kind:
            raise CbqInputError("family members have different groups")
    loci = [quotient_locus(m) for m in models]
    size = len(models)
    matrix = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            if j < i:
                matrix[i][j] = matrix[j][i]
                continue
            matrix[i][j] = compare_loci(loci[i], loci[j])
    return matrix
