"""Exception types shared across the package."""


class OrbstabError(Exception):
    """Base class for all orbstab-specific errors."""


class InvalidCardinality(OrbstabError, ValueError):
    """A cardinality outside the domain of the classification (n < 1),
    or a request for a witness size the construction cannot realize."""


class NearDegenerateTriple(OrbstabError, ValueError):
    """Two points of a triple coincide within tolerance, so no unique
    Mobius transformation through the triple exists numerically."""


class DegenerateMap(OrbstabError, ValueError):
    """A 2x2 matrix whose determinant falls below the floor after
    normalization; it does not represent a Mobius transformation."""


class AmbiguousMatching(OrbstabError, ValueError):
    """Tolerance balls of a point set overlap, so nearest-neighbour set
    matching is not well defined."""


class UnrecognizedGroup(OrbstabError, RuntimeError):
    """The (order, max element order) signature matches no finite Mobius
    group; indicates a broken closure check or a tolerance failure."""


class OrbitSizeMismatch(OrbstabError, RuntimeError):
    """An orbit size is not permitted for the identified group, or the
    orbit counts exceed the slots of the component index."""


class UnrealizableIndex(OrbstabError, ValueError):
    """The requested component index forces a strictly larger stabilizer
    and therefore has no witness with the requested group."""


class WitnessSearchExhausted(OrbstabError, RuntimeError):
    """The propose-and-verify loop ran out of retries without the oracle
    confirming the requested entry."""


class ClosedFormMismatch(OrbstabError, RuntimeError):
    """The closed-form and definitional evaluations of the parameter-space
    action disagree beyond tolerance."""


class EnumerationBoundExceeded(OrbstabError, ValueError):
    """Direct enumeration of the symmetric group was requested above the
    configured bound."""


class SeedOnSpecialLocus(OrbstabError, ValueError):
    """A seed point for a generic orbit lies on a special locus, so its
    orbit is smaller than the group order."""
