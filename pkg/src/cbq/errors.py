"""Exception hierarchy shared by all cbq modules.

Two families: CbqInputError covers everything a caller can trigger with bad
or inconsistent input (the CLI maps these to exit code 2), CbqInternalError
signals a broken invariant inside the library itself (exit code 1).
"""


class CbqError(Exception):
    pass


class CbqInputError(CbqError):
    """Invalid or inconsistent caller input."""


class CbqInternalError(CbqError):
    """A library invariant failed; this is a bug, not a usage error."""


# ---------------------------------------------------------------- cyclofield

class ZeroInverse(CbqInputError):
    """Inversion of the zero element."""


class NotCoprime(CbqInputError):
    pass


class OutOfRange(CbqInputError):
    pass


class ConductorMismatch(CbqInputError):
    """Element cannot be embedded into the requested cyclotomic field."""


class ConductorTooSmall(CbqInputError):
    """The requested root of unity does not live in the ambient field."""


class NotInField(CbqInputError):
    """Element is not a member of the given subfield."""


class MissingRootOfUnity(CbqInputError):
    pass


class NotIrreducible(CbqInputError):
    """x^l - u factors over the base field; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------- proj_group

class MissingConstant(CbqInputError):
    """The base field lacks a constant the generator construction needs."""


class NotFinite(CbqInputError):
    """Group closure exceeded the cap; generators have infinite order."""


class Unclassifiable(CbqInternalError):
    """A closed finite subgroup of PGL2 that matches no known kind."""


class NeedsLargerField(CbqError):
    """Eigenvalue data does not live in the ambient cyclotomic field.

    `discriminant` records the element whose square root was required.
    """

    def __init__(self, message, discriminant=None):
        super().__init__(message)
        self.discriminant = discriminant


# ----------------------------------------------------------------- hj_chains

class NonTerminating(CbqInputError):
    """Chain contraction got stuck: no legal blow-down and not terminal."""


class ChainSearchFailed(CbqInternalError):
    """No unique central self-intersection makes the chain contract to [0]."""


# ----------------------------------------------------------- quotient_engine

class MissingWeight(CbqInputError):
    """Even-stabilizer smooth fibre without fibre-action weight data."""


class ConditionViolated(CbqInputError):
    """Orbit counts violate the admissibility column of the fibre table."""


class NoCaseMatches(CbqInputError):
    """Swap-mechanism input matches none of the six exchange patterns."""


# ----------------------------------------------------------- example_factory

class VanishingAtQ(CbqInputError):
    pass


class OrbitCollision(CbqInputError):
    """Two marked points lie in one group orbit."""


class StabilizerNotTrivial(CbqInputError):
    pass


class HypothesisFailed(CbqInputError):
    """No (g, h) pair in the group satisfies the construction hypotheses."""


class SamplerExhausted(CbqInputError):
    pass


# -------------------------------------------------------- birational_compare

class DegenerateTriple(CbqInputError):
    pass


class FieldMismatch(CbqInputError):
    pass
