"""Exception types shared across the package."""


class EdgeSubError(Exception):
    """Base class for all library errors."""


class GraphFormatError(EdgeSubError):
    """A graph document could not be parsed or violates basic invariants."""


class GraphInvariantError(EdgeSubError):
    """A WeightedGraph invariant (positivity, no loops, connectivity) fails."""


class SubstituentInvalid(EdgeSubError):
    """Base class for substituent validation failures."""


class GammaNotAutomorphism(SubstituentInvalid):
    pass


class GammaDoesNotSwapAB(SubstituentInvalid):
    pass


class VMinusBDisconnected(SubstituentInvalid):
    pass


class EmptyInterior(SubstituentInvalid):
    pass


class CyclesNotOdd(EdgeSubError):
    """Joined-path construction requires two odd cycles."""


class GridTooCoarse(EdgeSubError):
    """Root scan suspects a root pair below grid resolution."""


class TooCloseToInteriorSpectrum(EdgeSubError):
    """Float evaluation requested too close to a pole."""


class KernelPole(EdgeSubError):
    """Transfer extension requested at an interior eigenvalue."""


class RankAmbiguous(EdgeSubError):
    """Boundary-matrix rank decision is numerically borderline."""


class S2ConsistencyFailure(EdgeSubError):
    """Set-membership and equation characterizations of S2 disagree."""


class InvalidTypeCombination(EdgeSubError):
    """Multiplicity table queried at an impossible type pair."""


class TotalMismatch(EdgeSubError):
    """Assembled multiplicities do not sum to |X[V]|."""


class TooLarge(EdgeSubError):
    """Brute-force eigendecomposition refused above the size cap."""


class NoSuchCluster(EdgeSubError):
    """Requested eigenvalue is not close to any cluster."""


class PreconditionNotMet(EdgeSubError):
    """Operation preconditions (e.g. for the spectral gap) do not hold."""
