"""Explicit conic-bundle models with prescribed non-rational quotients.

The construction: over a base field k containing zeta_l, pick u in k with
x^l - u irreducible, a group G of base automorphisms containing the scaling
g: (t1 : t0) -> (zeta_l t1 : t0) of even order l, marked values mu_1..mu_n
in k, and B, C in k with B/C = -u.  The hypersurface

    A x^2 prod_i prod_{h in G} h(t1 - mu_i u^(1/l) t0)
      + B y^2 (prod_{h in G} h(t0))^n  + C z^2 (prod_{h in G} h(t0))^n = 0

in P^2 x P^1 is defined over k (each orbit of marked points is closed under
the radical Galois twist), fibres over the marked orbits are singular with
components swapped only together with the Galois action, and A is chosen so
the fibre over a marked k-point q passes through (1 : 1 : 0).

`build_example` expands the products exactly and assembles the orbit model;
`verify_example` reports the rationality of the bundle upstairs and the
per-orbit image fates downstairs; `build_stabilized_example` runs the same
machinery on a fibre with non-trivial odd stabilizer, realizing the swap
mechanisms tied to dihedral, S4 and A5 symmetry; `generate_family` produces
lists of models differing only in the mu-tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclofield import (
    CycloNum,
    FieldSpec,
    KummerExt,
    KummerNum,
    kummer_make,
    poly_mul,
    root_of_unity,
)
from .errors import (
    CbqInputError,
    HypothesisFailed,
    OrbitCollision,
    SamplerExhausted,
    StabilizerNotTrivial,
    VanishingAtQ,
)
from .proj_group import (
    FiniteGroup,
    P1Point,
    Pgl2Elem,
    fixed_points,
    fixed_points_defined_over,
    group_fixed_points,
    orbit,
    standard_group,
)
from .quotient_engine import (
    SINGULAR,
    SMOOTH,
    SWAP_MIXED,
    OrbitDatum,
    SurfaceModel,
    fibre_fate,
    quotient_count,
)


@dataclass(frozen=True)
class EquationPayload:
    """The defining equation of the bundle: coefficients and the three forms.

    Forms are homogeneous in (t1, t0), stored as coefficient tuples indexed
    by the power of t1; the y^2 and z^2 coefficients share one form.
    """

    a_coeff: CycloNum
    b_coeff: CycloNum
    c_coeff: CycloNum
    x_form: tuple
    yz_form: tuple
    u: CycloNum
    l: int
    mus: tuple
    q: P1Point

    @property
    def degree(self) -> int:
        return len(self.x_form) - 1

    def render(self) -> str:
        x = _form_text(self.x_form)
        yz = _form_text(self.yz_form)
        return (f"({self.a_coeff})*x^2*({x}) + ({self.b_coeff})*y^2*({yz})"
                f" + ({self.c_coeff})*z^2*({yz}) = 0")


def _form_text(form) -> str:
    terms = []
    d = len(form) - 1
    for j in range(d, -1, -1):
        c = form[j]
        if c.is_zero():
            continue
        t1 = "" if j == 0 else ("t1" if j == 1 else f"t1^{j}")
        t0 = "" if j == d else ("t0" if d - j == 1 else f"t0^{d - j}")
        mono = "*".join(p for p in (t1, t0) if p) or "1"
        terms.append(f"({c})*{mono}")
    return " + ".join(terms) if terms else "0"


@dataclass
class ExampleSpec:
    """Input data of the construction; see the module docstring."""

    base_field: FieldSpec
    group: FiniteGroup
    g: Pgl2Elem
    l: int
    u: CycloNum
    mus: tuple
    b_coeff: CycloNum
    c_coeff: CycloNum
    q: P1Point
    mode: str = "generic"  # "generic" requires trivial stabilizers at marked points

    def __post_init__(self):
        k = self.base_field
        n = k.conductor
        if self.l % 2 or self.l < 2:
            raise CbqInputError("the distinguished element must have even order")
        if self.g not in self.group:
            raise CbqInputError("distinguished element is not in the group")
        zl = root_of_unity(n, self.l)
        if self.g != Pgl2Elem.diag(zl, CycloNum.rational(1, n)):
            raise CbqInputError(
                "distinguished element must act as (t1 : t0) -> (zeta_l t1 : t0)")
        self.u = k.coerce(self.u)
        if not k.contains(self.u):
            raise CbqInputError("u must be a member of the base field")
        self.mus = tuple(k.coerce(m) for m in self.mus)
        if any(m.is_zero() for m in self.mus):
            raise CbqInputError("mu values must be nonzero")
        if any(not k.contains(m) for m in self.mus):
            raise CbqInputError("mu values must be members of the base field")
        self.b_coeff = k.coerce(self.b_coeff)
        self.c_coeff = k.coerce(self.c_coeff)
        if self.b_coeff.is_zero() or self.c_coeff.is_zero():
            raise CbqInputError("B and C must be nonzero")
        if not (k.contains(self.b_coeff) and k.contains(self.c_coeff)):
            raise CbqInputError("B and C must be members of the base field")
        if self.b_coeff / self.c_coeff != -self.u:
            raise CbqInputError("B/C must equal -u")
        self.q = self.q.embed(n)
        if not self.q.defined_over(k):
            raise CbqInputError("q must be a k-point")


def _kummer_apply(h: Pgl2Elem, point, ext: KummerExt):
    """Image of a projective point with radical coordinates under h."""
    (a, b), (c, d) = h.embed(ext.conductor).m
    p1, p0 = point
    return (p1 * a + p0 * b, p1 * c + p0 * d)


def _proportional(p, q) -> bool:
    return p[0] * q[1] == q[0] * p[1]


def build_example(spec: ExampleSpec) -> SurfaceModel:
    """Expand the defining equation and assemble the quotient input model."""
    k = spec.base_field
    n = k.conductor
    ext = kummer_make(k, spec.u, spec.l)
    s = ext.gen()
    one = ext.scalar(1)
    zero = ext.scalar(0)
    group = spec.group

    marked = [( ext.scalar(mu) * s, one) for mu in spec.mus]
    # orbit data of the marked points, with collision and stabilizer checks
    inverses = {h: h.inverse() for h in group.elements}
    orbits_of_marked = []
    for i, p in enumerate(marked):
        images = [_kummer_apply(inverses[h], p, ext) for h in group.elements]
        distinct = []
        for img in images:
            if not any(_proportional(img, d) for d in distinct):
                distinct.append(img)
        stab = len(group) // len(distinct)
        if spec.mode == "generic" and stab != 1:
            raise StabilizerNotTrivial(
                f"marked point {i} has stabilizer of order {stab}")
        for j in range(i):
            if any(_proportional(img, marked[j]) for img in images):
                raise OrbitCollision(f"marked points {j} and {i} share an orbit")
        orbits_of_marked.append((len(distinct), stab))

    # expand the forms
    x_form = [one]
    for mu in spec.mus:
        lam = ext.scalar(mu) * s
        for h in group.elements:
            hinv = inverses[h].embed(n).m
            # (t1 - lam t0) evaluated at h^-1 t
            c1 = ext.scalar(hinv[0][0]) - lam * hinv[1][0]
            c0 = ext.scalar(hinv[0][1]) - lam * hinv[1][1]
            x_form = poly_mul(x_form, [c0, c1])
    y_base = [one]
    for h in group.elements:
        hinv = inverses[h].embed(n).m
        y_base = poly_mul(y_base, [ext.scalar(hinv[1][1]), ext.scalar(hinv[1][0])])
    yz_form = [one]
    for _ in range(len(spec.mus)):
        yz_form = poly_mul(yz_form, y_base)

    x_scalar = _descend_form(x_form, k)
    yz_scalar = _descend_form(yz_form, k)
    assert len(x_scalar) == len(yz_scalar) == len(spec.mus) * len(group) + 1

    # pick A so the fibre over q passes through (1 : 1 : 0)
    px_q = _form_eval(x_scalar, spec.q)
    py_q = _form_eval(yz_scalar, spec.q)
    if px_q.is_zero():
        raise VanishingAtQ("the x^2 coefficient form vanishes at q")
    if py_q.is_zero():
        raise VanishingAtQ("the y^2 coefficient form vanishes at q")
    a_coeff = -spec.b_coeff * py_q / px_q
    assert (a_coeff * px_q + spec.b_coeff * py_q).is_zero()

    equation = EquationPayload(
        a_coeff=a_coeff, b_coeff=spec.b_coeff, c_coeff=spec.c_coeff,
        x_form=tuple(x_scalar), yz_form=tuple(yz_scalar),
        u=spec.u, l=spec.l, mus=spec.mus, q=spec.q)

    kind = group.kind
    orbit_data = []
    for i, (length, stab) in enumerate(orbits_of_marked):
        mechanism = _swap_mechanism_tag(kind, stab, spec.l)
        orbit_data.append(OrbitDatum(
            orbit_length=length, stabilizer_order=stab, fibre_kind=SINGULAR,
            weight=(stab - 1) // 2 if stab > 1 else None,
            swap=SWAP_MIXED, mechanism=mechanism))
    # smooth fibres over the zero locus of prod h(t0): the orbit of (1 : 0);
    # their image fate depends on resolution data the equation does not carry
    if spec.mus:
        infinity = P1Point.infinity(n)
        inf_orbit = orbit(infinity, group)
        orbit_data.append(OrbitDatum(
            orbit_length=len(inf_orbit),
            stabilizer_order=len(group) // len(inf_orbit),
            fibre_kind=SMOOTH, weight=None, swap=None,
            base_points=tuple(inf_orbit)))

    return SurfaceModel(
        group_order=len(group), kind=kind, base_field=k,
        orbits=orbit_data, has_k_point=True, group=group, equation=equation)


def _descend_form(form, k: FieldSpec):
    """Strip the radical layer off each coefficient and check k-membership."""
    out = []
    for i, c in enumerate(form):
        if not c.is_scalar():
            raise CbqInputError(
                f"form coefficient {i} involves the radical; marked orbits "
                f"are not Galois-stable")
        v = c.scalar_part()
        if not k.contains(v):
            raise CbqInputError(f"form coefficient {i} is not in the base field")
        out.append(v)
    return out


def _form_eval(form, q: P1Point) -> CycloNum:
    d = len(form) - 1
    acc = None
    for j, c in enumerate(form):
        term = c * q.t1 ** j * q.t0 ** (d - j)
        acc = term if acc is None else acc + term
    return acc


def _swap_mechanism_tag(kind: tuple, stab: int, l: int) -> int | None:
    """Exchange-pattern tag for a marked singular orbit, where determined."""
    name, param = kind
    if stab == 1:
        return 2
    if name == "D" and param % 2 == 1 and stab == param:
        return 3
    if name == "S4" and stab == 3:
        return 4
    if name == "A5" and stab == 5:
        return 5
    if name == "A5" and stab == 3:
        return 6
    return None


# --------------------------------------------------------------------------
# verification report
# --------------------------------------------------------------------------

@dataclass
class ExampleReport:
    x_rational: bool
    x_rational_reason: str
    n: int
    singular_images: int        # singular fibres upstairs whose image stays singular
    k_y_squared: int            # 8 - singular_images
    verdict: str                # rationality of the quotient reduction
    family_dimension: int
    orbit_fates: list
    quotient: object            # the orbit-level QuotientReport

    def lines(self) -> list[str]:
        out = [
            f"x_rational: {self.x_rational} ({self.x_rational_reason})",
            f"n: {self.n}",
            f"singular_images: {self.singular_images}",
            f"k_y_squared: {self.k_y_squared}",
            f"verdict: {self.verdict}",
            f"family_dimension: {self.family_dimension}",
        ]
        for o, fate in self.orbit_fates:
            out.append(
                f"orbit length={o.orbit_length} stab={o.stabilizer_order} "
                f"{o.fibre_kind} -> {fate}")
        return out


def verify_example(model: SurfaceModel) -> ExampleReport:
    """Check the rationality claims of a built model and report the fates.

    The bundle upstairs is rational over k when every component swap involves
    a non-trivial Galois part (the singular fibres then contract over the
    radical extension) and the bundle has a k-point.  Downstairs, every
    singular fibre over a marked orbit keeps a singular image, so the
    reduction carries at least n singular fibres counted over the closure;
    with n > 3 the quotient is not k-rational.
    """
    swaps_ok = all(o.swap_by_galois for o in model.orbits
                   if o.fibre_kind == SINGULAR)
    x_rational = bool(swaps_ok and model.has_k_point)
    reason = ("all swaps carry a Galois part and the bundle has a k-point"
              if x_rational else "swap or k-point certificate missing")
    fates = []
    weighted = 0
    for o in model.orbits:
        if o.fibre_kind != SINGULAR:
            continue
        f = fibre_fate(o)
        fates.append((o, f.fate))
        if f.fate == SINGULAR:
            weighted += o.orbit_length
    n = model.n
    if weighted < n:
        raise CbqInputError(
            f"model claims n = {n} singular fibres but only {weighted} "
            f"survive to the reduction")
    k_y = 8 - weighted
    if weighted > 3:
        verdict = "not_rational"
    elif model.has_k_point:
        verdict = "rational"
    else:
        verdict = "unknown"
    return ExampleReport(
        x_rational=x_rational, x_rational_reason=reason, n=n,
        singular_images=weighted, k_y_squared=k_y, verdict=verdict,
        family_dimension=max(n - 3, 0), orbit_fates=fates,
        quotient=quotient_count(model))


# --------------------------------------------------------------------------
# stabilized examples: marked point with non-trivial odd stabilizer
# --------------------------------------------------------------------------

def build_stabilized_example(kind: str, param: int | None, base_field: FieldSpec,
                             h_order: int | None = None,
                             variant: str = "i") -> SurfaceModel:
    """A model whose marked fibre has odd stabilizer; image fibre singular.

    Searches the standard representation for a pair (g, h): g of order 2
    with k-rational fixed points, h of odd order whose fixed points are not
    k-rational, with g normalizing <h> (hence swapping h's fixed pair).
    Coordinates are then moved so g becomes (t1 : t0) -> (-t1 : t0), the
    fixed point (lambda : 1) of h supplies u = lambda^2, and the generic
    construction runs with the single marked value mu = 1.

    Raises HypothesisFailed when no pair exists (e.g. A4 over Q(i)).
    """
    group = standard_group(kind, param, field=base_field, variant=variant)
    n = group.conductor
    k = base_field.embed(n) if n % base_field.conductor == 0 else base_field
    if k.conductor != n:
        raise CbqInputError("field and group live at incompatible conductors")
    fp = group_fixed_points(group)

    def orders_of(o):
        return [g for g in group if group.element_order(g) == o]

    h_candidates = []
    for h in group:
        o = group.element_order(h)
        if o <= 1 or o % 2 == 0:
            continue
        if h_order is not None and o != h_order:
            continue
        if all(not p.defined_over(k) for p in fp[h]):
            h_candidates.append(h)
    if not h_candidates:
        raise HypothesisFailed(
            "no odd-order element with non-k-rational fixed points")
    g_candidates = [g for g in orders_of(2)
                    if all(p.defined_over(k) for p in fp[g])]
    if not g_candidates:
        raise HypothesisFailed("no order-2 element with k-rational fixed points")

    chosen = None
    for h in h_candidates:
        h_sub = {h ** j for j in range(group.element_order(h))}
        for g in g_candidates:
            if (g * h) * g.inverse() not in h_sub:
                continue
            p1, p2 = fp[h]
            if g.apply(p1) == p2 and g.apply(p2) == p1:
                chosen = (g, h)
                break
        if chosen:
            break
    if chosen is None:
        raise HypothesisFailed(
            "no pair (g, h) with g of order 2 normalizing <h> and swapping "
            "its non-rational fixed points")
    g, h = chosen

    # move the fixed points of g to (1 : 0) and (0 : 1)
    gp1, gp2 = fp[g]
    t_mat = Pgl2Elem(((gp2.t0, -gp2.t1), (gp1.t0, -gp1.t1)))
    group2 = group.conjugate_by(t_mat)
    g2 = g.conjugate_by(t_mat)
    h2 = h.conjugate_by(t_mat)
    hp = t_mat.apply(fp[h][0])
    assert not hp.t0.is_zero(), "h-fixed point collides with a g-fixed point"
    lam = hp.t1
    if k.contains(lam):
        raise HypothesisFailed("fixed point of h became k-rational")
    u = lam * lam
    if not k.contains(u):
        raise HypothesisFailed("lambda^2 is not a member of the base field")

    one = CycloNum.rational(1, n)
    spec = ExampleSpec(
        base_field=k, group=group2, g=g2, l=2, u=u,
        mus=(one,), b_coeff=u, c_coeff=-one,
        q=_pick_q(k, n), mode="stabilized")
    # q must avoid the special loci; retry over small rational points
    model = None
    for q in _q_candidates(n):
        spec.q = q
        try:
            model = build_example(spec)
            break
        except VanishingAtQ:
            continue
    if model is None:
        raise VanishingAtQ("no small k-rational q avoids the special loci")
    marked = next(o for o in model.orbits if o.fibre_kind == SINGULAR)
    if marked.stabilizer_order != group.element_order(h):
        raise HypothesisFailed(
            f"marked stabilizer {marked.stabilizer_order} != ord h")
    return model


def _q_candidates(conductor: int):
    vals = [(1, 1), (2, 1), (1, 2), (3, 1), (-1, 1), (3, 2), (-2, 1), (5, 1)]
    return [P1Point.of(Fraction(a), Fraction(b), conductor) for a, b in vals]


def _pick_q(k: FieldSpec, conductor: int) -> P1Point:
    return _q_candidates(conductor)[0]


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------

def integer_mu_tuples(size: int, start: int = 1):
    """Deterministic stream of increasing integer mu-tuples of given size."""
    base = list(range(start, start + size))
    step = 0
    while True:
        yield tuple(Fraction(v) for v in base)
        step += 1
        base[-1] += 1


def generate_family(spec: ExampleSpec, count: int, sampler=None) -> list[SurfaceModel]:
    """Models sharing (G, u, l) and differing in the mu-tuple.

    The sampler yields mu-tuples; duplicates are dropped and inadmissible
    tuples (orbit collisions, non-trivial stabilizers in generic mode) are
    skipped.  Raises SamplerExhausted if the stream ends first.
    """
    if count < 1:
        raise CbqInputError("count must be >= 1")
    if sampler is None:
        sampler = integer_mu_tuples(len(spec.mus))
    seen = set()
    out = []
    for mus in sampler:
        mus = tuple(Fraction(m) for m in mus)
        if mus in seen:
            continue
        seen.add(mus)
        candidate = ExampleSpec(
            base_field=spec.base_field, group=spec.group, g=spec.g,
            l=spec.l, u=spec.u, mus=mus, b_coeff=spec.b_coeff,
            c_coeff=spec.c_coeff, q=spec.q, mode=spec.mode)
        try:
            out.append(build_example(candidate))
        except (OrbitCollision, StabilizerNotTrivial):
            continue
        if len(out) == count:
            return out
    raise SamplerExhausted(
        f"sampler ended after {len(out)} of {count} admissible tuples")
