"""Fibre-fate rules for quotients of conic bundles by base-faithful groups.

Inputs are surface models: a finite group of base automorphisms, a base
field, and the orbits of special fibres (orbit length, stabilizer order,
smooth/singular, the weight of the stabilizer action on the fibre, and a
component-swap descriptor).  The engine validates the two structural
constraints (even-stabilizer invariant fibres are smooth; no group element
alone swaps components of a singular fibre), decides the image fate of each
orbit on the relative MMP-reduction of the quotient, counts singular fibres
there, compares against the closed-form orbit table, and issues the
rationality verdict K^2 >= 5 plus a rational point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cyclofield import FieldSpec
from .errors import (
    CbqInputError,
    ConditionViolated,
    MissingWeight,
    NoCaseMatches,
)
from .hj_chains import (
    SINGULAR,
    SMOOTH,
    FibreFate,
    contract_chain,
    singular_fibre_chain,
    smooth_fibre_chain,
)
from .proj_group import FiniteGroup, generate_group

# swap descriptors: which kind of element of G x Gal exchanges the two
# components (of the fibre upstairs, or the two chain ends for smooth fibres)
SWAP_NONE = None
SWAP_GALOIS = "galois"   # a pure Galois element swaps
SWAP_MIXED = "mixed"     # g*gamma with both parts non-trivial
SWAP_GROUP = "group"     # a group element alone: forbidden on valid models

UNKNOWN = "unknown"


@dataclass(frozen=True)
class OrbitDatum:
    """One orbit of special fibres over the base.

    `weight` is the exponent a of the stabilizer action on an invariant
    smooth fibre (multiplication by zeta_k^a at a fixed point); it is only
    needed for even stabilizers.  `swap` describes the component-exchanging
    element for singular fibres, and the end-exchange symmetry of the
    resolution chain for invariant smooth fibres.
    """

    orbit_length: int
    stabilizer_order: int
    fibre_kind: str  # SMOOTH | SINGULAR
    weight: int | None = None
    swap: str | None = SWAP_NONE
    mechanism: int | None = None
    base_points: tuple = ()

    @property
    def swap_by_galois(self) -> bool:
        return self.swap in (SWAP_GALOIS, SWAP_MIXED)


@dataclass
class SurfaceModel:
    """A conic bundle with a base-faithful group action, as orbit data."""

    group_order: int
    kind: tuple | None = None  # ("C", k), ("D", k) with |G| = 2k, ("A4"|"S4"|"A5", None)
    base_field: FieldSpec | None = None
    orbits: list = field(default_factory=list)
    has_k_point: bool | None = None
    group: FiniteGroup | None = None
    equation: object = None

    @property
    def n(self) -> int:
        """Number of singular fibres of the bundle over the closed field."""
        return sum(o.orbit_length for o in self.orbits if o.fibre_kind == SINGULAR)

    @property
    def k_x_squared(self) -> int:
        return 8 - self.n


@dataclass
class QuotientReport:
    m: int                        # singular fibres on the reduction, decided fates
    m_bound: int                  # including orbits whose fate is undetermined
    k_y_squared: int
    fate_per_orbit: list
    rationality: str              # "rational" | "not_rational" | "unknown"
    n: int
    table: dict | None = None


def validate_model(model: SurfaceModel) -> list[str]:
    """Structural violations of the model; empty list means valid."""
    issues = []
    for idx, o in enumerate(model.orbits):
        if o.fibre_kind not in (SMOOTH, SINGULAR):
            issues.append(f"orbit {idx}: unknown fibre kind {o.fibre_kind!r}")
            continue
        if o.orbit_length < 1 or o.stabilizer_order < 1:
            issues.append(f"orbit {idx}: non-positive orbit data")
            continue
        if o.orbit_length * o.stabilizer_order != model.group_order:
            issues.append(
                f"orbit {idx}: orbit length {o.orbit_length} x stabilizer "
                f"{o.stabilizer_order} != |G| = {model.group_order}")
        if o.fibre_kind == SINGULAR and o.stabilizer_order % 2 == 0 \
                and o.stabilizer_order > 1:
            issues.append(
                f"orbit {idx}: eveninvariantfibre violated (singular fibre "
                f"with even stabilizer {o.stabilizer_order})")
        if o.swap == SWAP_GROUP:
            issues.append(
                f"orbit {idx}: permutation violated (component swap by a "
                f"group element alone)")
    return issues


def fibre_fate(o: OrbitDatum) -> FibreFate:
    """Image of the orbit's fibre on the relative MMP-reduction of X/G."""
    k = o.stabilizer_order
    if o.fibre_kind == SINGULAR:
        if k == 1:
            # free orbit: the image is singular exactly when some element of
            # G x Gal still exchanges the components
            fate = SINGULAR if o.swap_by_galois else SMOOTH
            return FibreFate(fate, ((),))
        if k % 2 == 0:
            raise CbqInputError(
                "singular fibre with even stabilizer; validate the model first")
        a = (k - 1) // 2
        return contract_chain(singular_fibre_chain(a))
    # smooth fibre
    if k == 1:
        return FibreFate(SMOOTH, ((),))
    if k % 2 == 1:
        # odd maximal-cyclic stabilizer: quotient fibre is smooth
        return FibreFate(SMOOTH, ((),))
    if o.weight is None:
        raise MissingWeight(
            "even-stabilizer smooth fibre needs the fibre-action weight")
    chain = smooth_fibre_chain(k, o.weight, galois_swap=o.swap_by_galois)
    return contract_chain(chain)


def quotient_count(model: SurfaceModel) -> QuotientReport:
    """Count singular fibres of the relative MMP-reduction of the quotient."""
    issues = validate_model(model)
    if issues:
        raise CbqInputError("invalid model: " + "; ".join(issues))
    fates = []
    m = 0
    undecided = 0
    for o in model.orbits:
        try:
            f = fibre_fate(o)
        except MissingWeight:
            fates.append((o, UNKNOWN, None))
            undecided += 1
            continue
        fates.append((o, f.fate, f))
        if f.fate == SINGULAR:
            m += 1
    m_bound = m + undecided
    table = None
    if model.kind is not None:
        table = _table_consistency(model, fates)
    rationality = _rationality_verdict(m, m_bound, model.has_k_point)
    return QuotientReport(
        m=m, m_bound=m_bound, k_y_squared=8 - m,
        fate_per_orbit=fates, rationality=rationality,
        n=model.n, table=table)


def _rationality_verdict(m: int, m_bound: int, has_k_point) -> str:
    if m >= 4:
        return "not_rational"
    if m_bound > 3:
        return UNKNOWN
    if has_k_point is True:
        return "rational"
    if has_k_point is False:
        return "not_rational"
    return UNKNOWN


# --------------------------------------------------------------------------
# the closed-form singular-fibre table
# --------------------------------------------------------------------------

def table1_bound(kind: str, param: int | None = None,
                 a: int = 0, b: int = 0, c: int = 0, d: int = 0) -> tuple[int, int]:
    """(n, m) for the given orbit counts; raises ConditionViolated off-table.

    `kind`/`param` follow the group tags: ("C", k) is cyclic of order k and
    ("D", k) dihedral of order 2k.  The letters count orbits of singular
    fibres on the reduction, by the orbit type upstairs.
    """
    for name, v in (("a", a), ("b", b), ("c", c), ("d", d)):
        if v < 0:
            raise ConditionViolated(f"{name} must be >= 0")

    def need(cond: bool, text: str):
        if not cond:
            raise ConditionViolated(text)

    if kind == "C":
        need(param >= 1, "cyclic order must be >= 1")
        need(c == 0 and d == 0, "cyclic rows use letters a, b only")
        need(a <= 2, "a <= 2")
        if param % 2 == 0:
            return (param * b, a + b)
        return (a + param * b, a + b)
    if kind == "D":
        order = 2 * param
        need(param >= 2, "dihedral parameter must be >= 2")
        need(d == 0, "dihedral rows use letters a, b, c only")
        need(a <= 1, "a <= 1")
        need(b <= 2, "b <= 2")
        if param % 2 == 0:
            return (order * c, a + b + c)
        return (2 * a + order * c, a + b + c)
    if kind == "A4":
        need(d == 0, "A4 row uses letters a, b, c only")
        need(a <= 2, "a <= 2")
        need(b <= 1, "b <= 1")
        return (4 * a + 12 * c, a + b + c)
    if kind == "S4":
        need(a <= 1, "a <= 1")
        need(b <= 1, "b <= 1")
        need(c <= 1, "c <= 1")
        return (8 * a + 24 * d, a + b + c + d)
    if kind == "A5":
        need(a <= 1, "a <= 1")
        need(b <= 1, "b <= 1")
        need(c <= 1, "c <= 1")
        return (12 * a + 20 * b + 60 * d, a + b + c + d)
    raise CbqInputError(f"unknown group kind {kind!r}")


# letter slots per row: letter -> (orbit_length as fraction of |G|, fibre kind)
def _letter_slots(kind: str, param: int | None, order: int) -> dict:
    if kind == "C":
        if order % 2 == 0:
            return {"a": (1, SMOOTH), "b": (order, SINGULAR)}
        return {"a": (1, SINGULAR), "b": (order, SINGULAR)}
    if kind == "D":
        if param % 2 == 0:
            return {"a": (2, SMOOTH), "b": (param, SMOOTH), "c": (order, SINGULAR)}
        return {"a": (2, SINGULAR), "b": (param, SMOOTH), "c": (order, SINGULAR)}
    if kind == "A4":
        return {"a": (4, SINGULAR), "b": (6, SMOOTH), "c": (12, SINGULAR)}
    if kind == "S4":
        return {"a": (8, SINGULAR), "b": (6, SMOOTH), "c": (12, SMOOTH),
                "d": (24, SINGULAR)}
    if kind == "A5":
        return {"a": (12, SINGULAR), "b": (20, SINGULAR), "c": (30, SMOOTH),
                "d": (60, SINGULAR)}
    raise CbqInputError(f"unknown group kind {kind!r}")


def _table_consistency(model: SurfaceModel, fates) -> dict:
    """Match orbits to table letters and check m against the closed form."""
    kind, param = model.kind
    slots = _letter_slots(kind, param, model.group_order)
    letters = {name: 0 for name in "abcd"}
    unmatched = []
    for o, fate, _ in fates:
        if fate == SMOOTH:
            continue  # inert: contributes neither to m nor to a letter
        slot = next((name for name, (length, fk) in slots.items()
                     if o.orbit_length == length and o.fibre_kind == fk), None)
        if slot is None:
            unmatched.append(o)
        else:
            letters[slot] += 1
    result = {"letters": dict(letters), "unmatched": len(unmatched)}
    try:
        n_row, m_row = table1_bound(kind, param, **letters)
    except ConditionViolated as exc:
        result["consistent"] = False
        result["reason"] = str(exc)
        return result
    m_exact = sum(1 for _, fate, _ in fates if fate == SINGULAR)
    m_bound = m_exact + sum(1 for _, fate, _ in fates if fate == UNKNOWN)
    result["n_row"] = n_row
    result["m_row"] = m_row
    result["consistent"] = (not unmatched) and m_bound <= m_row \
        and model.n == n_row
    return result


# --------------------------------------------------------------------------
# scan of the reduction bounds
# --------------------------------------------------------------------------

@dataclass
class ScanReport:
    instances: int
    violations: list
    equality_cases: list

    @property
    def ok(self) -> bool:
        return not self.violations


def _scan_rows(k_max: int):
    rows = []
    for k in range(1, k_max + 1):
        rows.append(("C", 2 * k))
        rows.append(("C", 2 * k + 1))
        rows.append(("D", 2 * k))      # order 4k
        rows.append(("D", 2 * k + 1))  # order 4k + 2
    rows += [("A4", None), ("S4", None), ("A5", None)]
    return rows


def _scan_one_row(args):
    kind, param, n_max = args
    instances = []
    letter_names = "abcd"
    maxima = []
    for name in letter_names:
        cap = 0
        for v in range(0, n_max + 1):
            try:
                n, _ = table1_bound(kind, param, **{name: v})
            except ConditionViolated:
                break
            if n > n_max:
                break
            cap = v
        maxima.append(cap)
    for combo in itertools.product(*[range(m + 1) for m in maxima]):
        letters = dict(zip(letter_names, combo))
        try:
            n, m = table1_bound(kind, param, **letters)
        except ConditionViolated:
            continue
        if n > n_max:
            continue
        instances.append((kind, param, letters, n, m))
    return instances


def check_theorem_cbundle(k_max: int = 10, n_max: int = 12, jobs: int = 1) -> ScanReport:
    """Scan every admissible table row and check the reduction inequalities:

      n <= 3 implies m <= 3;  n > 3 implies m <= n;  and m = n > 3 only for
      n = m = 4 with the group C2 or D4 (the Klein four-group).
    """
    rows = [(kind, param, n_max) for kind, param in _scan_rows(k_max)]
    if jobs > 1:
        from multiprocessing import Pool
        with Pool(jobs) as pool:
            chunks = pool.map(_scan_one_row, rows)
    else:
        chunks = [_scan_one_row(r) for r in rows]
    violations = []
    equality = []
    count = 0
    for chunk in chunks:
        for kind, param, letters, n, m in chunk:
            count += 1
            if n <= 3 and m > 3:
                violations.append((kind, param, letters, n, m, "n<=3 but m>3"))
            if n > 3 and m > n:
                violations.append((kind, param, letters, n, m, "m > n"))
            if n > 3 and m == n:
                equality.append((kind, param, letters, n, m))
                allowed = (kind == "C" and param == 2) or (kind == "D" and param == 2)
                if not (n == 4 and allowed):
                    violations.append((kind, param, letters, n, m,
                                       "equality outside C2/D4 at n=4"))
    return ScanReport(instances=count, violations=violations, equality_cases=equality)


# --------------------------------------------------------------------------
# swap mechanisms
# --------------------------------------------------------------------------

def classify_swap_mechanism(kind: str, param: int | None,
                            stabilizer_order: int, g_order: int,
                            galois_relation: str,
                            g_class: str | None = None) -> int:
    """Match a component-swap situation against the six exchange patterns.

    `galois_relation` is one of "delta_swaps" (a pure Galois element already
    exchanges the components), "gp" (gamma moves the base point p to g p) or
    "g_inv_p" (to g^-1 p).  `g_class` refines order-2 elements of S4:
    "transposition" or "double".
    """
    if galois_relation == "delta_swaps":
        return 1
    if galois_relation not in ("gp", "g_inv_p"):
        raise CbqInputError(f"unknown galois relation {galois_relation!r}")
    if stabilizer_order == 1 and g_order % 2 == 0 and galois_relation == "g_inv_p":
        return 2
    if g_order == 2 and stabilizer_order > 1 and stabilizer_order % 2 == 1:
        if kind == "D" and param is not None and param % 2 == 1 \
                and stabilizer_order == param:
            return 3
        if kind == "S4" and stabilizer_order == 3 \
                and g_class in (None, "transposition", "(12)"):
            return 4
        if kind == "A5" and stabilizer_order == 5:
            return 5
        if kind == "A5" and stabilizer_order == 3:
            return 6
    raise NoCaseMatches(
        f"no exchange pattern for {kind}{param or ''}, stabilizer "
        f"{stabilizer_order}, ord g = {g_order}, relation {galois_relation}")


# --------------------------------------------------------------------------
# reduction to 2-groups and swap parity
# --------------------------------------------------------------------------

def reduce_group(group: FiniteGroup):
    """Maximal odd-order cyclic normal subgroup N and the quotient kind.

    For cyclic and dihedral groups this is the odd part of the rotation
    subgroup, and G/N is cyclic or dihedral of 2-power order; for A4, S4, A5
    the subgroup is trivial.
    """
    kind, param = group.kind
    if kind not in ("C", "D"):
        return FiniteGroup([group.identity()]), (kind, param)
    k = param  # cyclic order, or half the dihedral order
    odd = k
    two_part = 1
    while odd % 2 == 0:
        odd //= 2
        two_part *= 2
    if kind == "C":
        gen = next(g for g in group if group.element_order(g) == k)
        sub = generate_group([gen ** two_part], cap=len(group) + 1) if odd > 1 \
            else FiniteGroup([group.identity()])
        return sub, ("C", two_part)
    if k == 2:
        return FiniteGroup([group.identity()]), ("D", 2)
    rot = next(g for g in group if group.element_order(g) == k)
    sub = generate_group([rot ** two_part], cap=len(group) + 1) if odd > 1 \
        else FiniteGroup([group.identity()])
    quotient_order = 2 * two_part
    quotient_kind = ("C", 2) if quotient_order == 2 else ("D", two_part)
    return sub, quotient_kind


def swap_parity_check(g_order: int, g_gamma_swaps: bool):
    """Brute-force the swap parity of gamma^(ord g) over the order-2 group.

    The component swap is tracked in the two-element group: group elements
    never swap on their own, so gamma acts like g*gamma does, and
    gamma^(ord g) swaps iff (g*gamma)^(ord g) does.  The identification is
    only valid for odd ord g; even orders return "undetermined".
    """
    if g_order < 1:
        raise CbqInputError("order must be positive")
    if g_order % 2 == 0:
        return "undetermined"
    sign = 1
    for _ in range(g_order):
        sign *= -1 if g_gamma_swaps else 1
    return sign == -1
