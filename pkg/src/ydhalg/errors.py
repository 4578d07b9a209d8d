"""Exception types shared across the toolkit."""


class YdhError(Exception):
    """Base class for all toolkit errors."""


class NonDivisibleOrders(YdhError):
    """A cyclotomic order embedding was requested where one order does not
    divide the other."""


class NonSplitField(YdhError):
    """A characteristic polynomial has an irreducible factor of degree > 1
    over the working cyclotomic field.  Enlarging the cyclotomic order N of
    the input usually fixes this."""


class GroupMismatch(YdhError):
    """Two structures live over different groups or cyclotomic orders."""


class PreconditionViolated(YdhError):
    """An operation's stated precondition does not hold for the input."""


class MalformedStructure(YdhError):
    """Dimension or shape mismatches detected before any axiom is checked."""


class NotSemisimple(YdhError):
    """The integral exists only with counit value zero, so the algebra is
    not semisimple."""


class NotUnique(YdhError):
    """The space of two-sided integrals does not have dimension one."""


class NoAntipode(YdhError):
    """The antipode system is inconsistent (or not 1-dimensional)."""


class NotColinear(YdhError):
    """A solved antipode fails linearity or colinearity."""


class NotCommutative(YdhError):
    """The analyzer requires a commutative multiplication."""


class NotSubcoalgebra(YdhError):
    """The candidate subspace is not closed under comultiplication."""


class NotUnitalSubalgebra(YdhError):
    """The candidate subspace is not a unital subalgebra."""


class NonIntegralRank(YdhError):
    """A freeness rank came out non-integral, which signals inconsistent
    input (the divisibility theorem guarantees an integer)."""


class FormulaMismatch(YdhError):
    """The four integral-based idempotent formulas disagree; the structure
    constants are corrupt."""


class DecompositionFailure(YdhError):
    """A module that must split into one-dimensional pieces did not."""


class EquivalenceViolation(YdhError):
    """Conditions that a theorem asserts to be equivalent evaluated
    differently."""


class TheoremViolation(YdhError):
    """A theorem check failed on input that passed the axiom checks.  This
    must never happen on valid input and indicates an implementation bug or
    corrupted structure constants."""


class ClosureFailure(YdhError):
    """A subspace that must be closed under a structure map is not."""


class BudgetExhausted(YdhError):
    """The search space was truncated by the configured budget; partial
    results are attached to the exception."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class ParseError(YdhError):
    """Malformed YDH input, with position information."""

    def __init__(self, line, col, expected):
        super().__init__("line %d, col %d: expected %s" % (line, col, expected))
        self.line = line
        self.col = col
        self.expected = expected


class DimensionMismatch(YdhError):
    """A YDH document section disagrees with the declared dimension."""
