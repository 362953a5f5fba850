"""Exception types shared across the package."""


class HeisWhitError(Exception):
    """Base class for every error this package raises on purpose."""


class IdenticallyZeroError(HeisWhitError):
    """Root isolation was asked to isolate roots of the zero polynomial."""


class RootBudgetError(HeisWhitError):
    """Bisection failed to reach the requested width within its budget."""


class ZeroDilationError(HeisWhitError):
    """Dilation by r = 0 is not a group automorphism."""


class CoincidentNodesError(HeisWhitError):
    """A difference quotient needs two distinct parameters."""


class LengthMismatchError(HeisWhitError):
    """Jet vectors are shorter than the requested order allows."""


class DomainViolationError(HeisWhitError):
    """An evaluation grid leaves the declared domain."""


class DuplicateNodeError(HeisWhitError):
    """Nodes must be pairwise distinct."""


class QuadratureBudgetError(HeisWhitError):
    """Adaptive quadrature ran out of refinement budget before converging."""


class TooFewNodesError(HeisWhitError):
    """The operation needs more nodes than the input provides."""


class NodeNotFoundError(HeisWhitError):
    """A parameter value is not a node of the sampled object."""


class OrderViolationError(HeisWhitError):
    """Endpoints must satisfy a < b."""


class BadSubsetError(HeisWhitError):
    """The node subset does not match the required shape."""


class OrderMismatchError(HeisWhitError):
    """The supplied pieces do not carry jets of the requested order."""


class DegenerateGapError(HeisWhitError):
    """A gap construction needs a strictly positive gap."""


class SynthesisDefectError(HeisWhitError):
    """The synthesized curve failed its audit."""


class ParseError(HeisWhitError):
    """The input file is malformed."""


class NonFiniteError(HeisWhitError):
    """Input values must be finite."""
