"""Hirzebruch-Jung continued fractions and fibre-chain contraction.

A cyclic quotient singularity of type 1/k(1,a) resolves into a chain of
rational curves whose self-intersections are the negated digits of the
continued-fraction expansion k/a = s1 - 1/(s2 - ...), all digits >= 2.  The
image of a fibre through such singularities is a chain of rational curves;
running the relative minimal model program on the chain is a purely
combinatorial blow-down game, implemented by `contract_chain`.

A chain may carry a Galois symmetry exchanging its two ends; in that case
only the central curve alone, or mirror pairs of disjoint (-1)-curves, may
be contracted in one step, and the terminal states are a single 0-curve
(smooth conic fibre) or a swapped pair of (-1)-curves (singular fibre).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ChainSearchFailed, NonTerminating, NotCoprime, OutOfRange


@dataclass(frozen=True)
class HJFraction:
    k: int
    a: int
    digits: tuple[int, ...]


def hj_expand(k: int, a: int) -> HJFraction:
    """The unique all-digits >= 2 continued fraction expansion of k/a."""
    if not 1 <= a < k:
        raise OutOfRange(f"need 1 <= a < k, got a={a}, k={k}")
    if math.gcd(k, a) != 1:
        raise NotCoprime(f"gcd({k}, {a}) != 1")
    digits = []
    num, den = k, a
    while den:
        s = -(-num // den)  # ceil
        digits.append(s)
        num, den = den, s * den - num
    assert all(s >= 2 for s in digits)
    frac = HJFraction(k, a, tuple(digits))
    assert hj_eval(frac) == Fraction(k, a)
    return frac


def hj_eval(frac: HJFraction | tuple[int, ...]) -> Fraction:
    """Value of s1 - 1/(s2 - 1/(...)) as an exact rational."""
    digits = frac.digits if isinstance(frac, HJFraction) else tuple(frac)
    if not digits:
        raise OutOfRange("empty digit list")
    value = Fraction(digits[-1])
    for s in reversed(digits[:-1]):
        value = s - 1 / value
    return value


# --------------------------------------------------------------------------
# fibre chains
# --------------------------------------------------------------------------

SMOOTH = "smooth"
SINGULAR = "singular"


@dataclass(frozen=True)
class FibreChain:
    """A chain of rational curves over a fibre, to be contracted.

    `selfints` lists self-intersection numbers along the chain; `galois_swap`
    says whether the Galois group exchanges the chain's two ends (only
    possible for palindromic chains); `origin` records where the chain came
    from.
    """

    selfints: tuple[int, ...]
    galois_swap: bool = False
    origin: str = "custom"

    def __post_init__(self):
        if len(self.selfints) < 1:
            raise OutOfRange("chain must contain at least one curve")
        if self.galois_swap and self.selfints != self.selfints[::-1]:
            raise OutOfRange("an end-swapping symmetry needs a palindromic chain")

    def is_palindrome(self) -> bool:
        return self.selfints == self.selfints[::-1]

    def __str__(self):
        body = ",".join(str(s) for s in self.selfints)
        return body + (";swap" if self.galois_swap else "")

    @staticmethod
    def parse(text: str) -> "FibreChain":
        """Parse the chain text format, e.g. "-3,-1,-3,-1,-3;swap"."""
        text = text.strip()
        swap = False
        if ";" in text:
            body, flag = text.split(";", 1)
            if flag.strip() != "swap":
                raise OutOfRange(f"unknown chain flag {flag!r}")
            swap = True
        else:
            body = text
        try:
            ints = tuple(int(p) for p in body.split(",") if p.strip())
        except ValueError as exc:
            raise OutOfRange(f"bad chain syntax {text!r}") from exc
        return FibreChain(ints, galois_swap=swap)


@dataclass(frozen=True)
class FibreFate:
    fate: str  # SMOOTH or SINGULAR
    trace: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def __str__(self):
        steps = " -> ".join("[" + ",".join(map(str, c)) + "]" for c in self.trace)
        return f"{self.fate}: {steps}"


def singular_fibre_chain(a: int) -> FibreChain:
    """Resolution chain over the image of a singular fibre with odd stabilizer.

    The stabilizer has order k = 2a+1; the chain is the HJ block of
    (2a+1)/a, a (-1)-curve, the (-2a-1)-transform of the node, a (-1)-curve,
    and the mirrored block.  The Galois group exchanges the two ends.
    """
    if a < 1:
        raise OutOfRange("need a >= 1")
    block = [-d for d in hj_expand(2 * a + 1, a).digits]
    chain = block + [-1, -(2 * a + 1), -1] + block[::-1]
    return FibreChain(tuple(chain), galois_swap=True, origin="singular-quotient")


def smooth_fibre_chain(k: int, a: int, galois_swap: bool = False) -> FibreChain:
    """Resolution chain over the image of an invariant smooth fibre.

    The stabilizer of order k acts on the fibre with weight a, producing
    quotient singularities of types 1/k(1,a) and 1/k(1,k-a) at the two fixed
    points.  When gcd(a,k) = d > 1 the subgroup acting trivially on the fibre
    is a quasi-reflection group and the types reduce to 1/(k/d)(1, a/d); the
    weight is taken mod k, and weight 0 means a pointwise-fixed fibre whose
    image is already a smooth 0-curve.

    The central self-intersection of the fibre transform is not part of the
    continued-fraction data; it is recovered as the unique value in
    {-1, ..., -25} for which the unswapped chain contracts to a 0-curve.
    """
    if k < 1:
        raise OutOfRange("need k >= 1")
    a %= k
    if a == 0:
        return FibreChain((0,), galois_swap=False, origin="smooth-quotient")
    d = math.gcd(a, k)
    k, a = k // d, a // d
    left = [-s for s in hj_expand(k, a).digits][::-1]
    right = [-s for s in hj_expand(k, k - a).digits]
    candidates = []
    for c in range(-1, -26, -1):
        chain = tuple(left + [c] + right)
        try:
            fate = contract_chain(FibreChain(chain, galois_swap=False))
        except NonTerminating:
            continue
        if fate.fate == SMOOTH:
            candidates.append(c)
    if len(candidates) != 1:
        raise ChainSearchFailed(
            f"central self-intersection for ({k},{a}) not unique: {candidates}")
    chain = tuple(left + [candidates[0]] + right)
    return FibreChain(chain, galois_swap=galois_swap, origin="smooth-quotient")


# --------------------------------------------------------------------------
# contraction
# --------------------------------------------------------------------------

def _legal_moves(chain: tuple[int, ...], swap: bool):
    """Galois-stable blow-down moves: lists of pairwise disjoint (-1) indices."""
    n = len(chain)
    moves = []
    if not swap:
        for i, s in enumerate(chain):
            if s == -1:
                moves.append((i,))
        return moves
    # mirror pairs of disjoint (-1)-curves first, then the central curve
    for i in range(n // 2):
        j = n - 1 - i
        if chain[i] == -1 and chain[j] == -1 and j - i >= 2:
            moves.append((i, j))
    if n % 2 == 1 and chain[n // 2] == -1:
        moves.append((n // 2,))
    return moves


def _blow_down(chain: tuple[int, ...], indices: tuple[int, ...]) -> tuple[int, ...]:
    """Contract the given disjoint (-1)-curves simultaneously."""
    bumped = list(chain)
    for i in indices:
        if i - 1 >= 0:
            bumped[i - 1] += 1
        if i + 1 < len(chain):
            bumped[i + 1] += 1
    return tuple(s for i, s in enumerate(bumped) if i not in indices)


def contract_chain(chain: FibreChain, rng: random.Random | None = None) -> FibreFate:
    """Run the relative MMP on a fibre chain; decide the final fibre.

    Deterministically contracts the first legal Galois-stable set of
    (-1)-curves (mirror pairs before the central curve under a swap); pass
    `rng` to randomize the order, which must not change the fate.  Terminal
    states: [0] is a smooth fibre; a swapped [-1,-1] is a singular fibre.
    """
    state = tuple(chain.selfints)
    swap = chain.galois_swap
    trace = [state]
    while True:
        if state == (0,):
            return FibreFate(SMOOTH, tuple(trace))
        if swap and state == (-1, -1):
            return FibreFate(SINGULAR, tuple(trace))
        moves = _legal_moves(state, swap)
        if not moves:
            raise NonTerminating(
                f"no Galois-stable (-1)-curve in {list(state)} (swap={swap})")
        move = rng.choice(moves) if rng is not None else moves[0]
        state = _blow_down(state, move)
        trace.append(state)
        if len(trace) > 10_000:
            raise NonTerminating("contraction did not terminate")
