"""Exception types raised across the package.

Every failure mode that callers are expected to handle gets its own class;
all of them derive from LogflattenError so a CLI layer can catch the lot.
"""


class LogflattenError(Exception):
    """Base class for all package-specific errors."""


# -- lattice ----------------------------------------------------------------

class ZeroVector(LogflattenError):
    """An operation that needs a nonzero vector got the zero vector."""


class NotPrimitive(LogflattenError):
    """Vector has a coordinate gcd greater than one."""


class NotABasis(LogflattenError):
    """Row set is not a unimodular basis of the ambient lattice."""


class DimensionMismatch(LogflattenError):
    """Vector/matrix shapes are incompatible."""


# -- polyhedra --------------------------------------------------------------

class NotPointed(LogflattenError):
    """Cone is not strongly convex."""


class NotInSupport(LogflattenError):
    """Point does not lie in the support of the fan."""


class NotInCone(LogflattenError):
    """Point does not lie in the given cone."""


class SupportNotMapped(LogflattenError):
    """Lattice map does not carry the source support into the target support."""


class NotASubdivision(LogflattenError):
    """Fan is not a subdivision of the expected cone."""


# -- monoids ----------------------------------------------------------------

class TorsionQuotient(LogflattenError):
    """Requested quotient lattice has torsion; out of scope here."""


class NotSubmonoid(LogflattenError):
    """Generators of the would-be submonoid do not all lie in the parent."""


class NotSharp(LogflattenError):
    """Monoid has nontrivial units where a sharp monoid is required."""


class NotSaturated(LogflattenError):
    """Monoid is not saturated where a saturated one is required."""


class NotFullRank(LogflattenError):
    """Monoid's group does not span the ambient lattice."""


# -- homs -------------------------------------------------------------------

class NotInjective(LogflattenError):
    """Homomorphism is not injective on associated groups."""


class NotLocal(LogflattenError):
    """Homomorphism is not local (unit preimage differs from source units)."""


# -- ideals -----------------------------------------------------------------

class NotInMonoid(LogflattenError):
    """A supposed ideal generator lies outside the parent monoid."""


class ParentMismatch(LogflattenError):
    """Two ideals (or an ideal and a hom) disagree about the parent monoid."""


class EmptyIdeal(LogflattenError):
    """Operation needs a nonempty ideal."""


class ConventionViolation(LogflattenError):
    """Support function fails nonnegativity, integrality, or the min-of-pieces rule."""


# -- blowup / flatten -------------------------------------------------------

class NotAGenerator(LogflattenError):
    """Pivot element is not among the ideal's minimal generators."""


class InvertibilityFailure(LogflattenError):
    """Internal consistency guard: extended ideal not principal in a chart."""


class NoStrictFunctionWithinBound(LogflattenError):
    """No strictly compatible support function exists within the height bound."""


class IterationCapExceeded(LogflattenError):
    """Refinement loop hit its iteration cap."""


# -- cli --------------------------------------------------------------------

class UnsupportedRank(LogflattenError):
    """Renderer only supports rank-2 fans."""


class InvalidInput(LogflattenError):
    """Input file failed to parse or validate; message carries the position."""
