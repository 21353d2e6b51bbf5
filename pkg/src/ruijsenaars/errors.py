"""Exceptions raised by the exact solvers and numeric checks."""


class RuijsenaarsError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(RuijsenaarsError):
    """Operands live over different numbers of variables."""


class NonExactDivision(RuijsenaarsError):
    """Laurent division left a nonzero remainder.

    This is raised eagerly: exact divisibility by the Weyl denominator is a
    structural property of the operators, so a remainder means a bug (or a
    non-symmetric input), never something to round away.
    """


class NotSymmetric(RuijsenaarsError):
    """A Laurent polynomial expected to be S_n-invariant is not."""


class NonUnitSeries(RuijsenaarsError):
    """Attempt to invert a truncated series whose constant term vanishes."""


class GenericityViolation(RuijsenaarsError):
    """Parameters hit a resonance (t^k or s_j/s_i in q^Z, etc.)."""


class EigenvalueCollision(RuijsenaarsError):
    """Two weights in the working span share the same d_mu(c) eigenvalue."""


class TriangularityViolation(RuijsenaarsError):
    """Operator output left the expected dominance-bounded span."""


class NonConstantRatio(RuijsenaarsError):
    """A claimed eigenfunction relation failed: ratio is not a constant."""


class PoleProximity(RuijsenaarsError):
    """A numeric evaluation point is too close to a pole of the weight."""


class ConfigError(RuijsenaarsError):
    """Invalid CLI / context configuration."""
