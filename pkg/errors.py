"""Exception types raised by the solver and mapped to CLI exit codes."""


class TemporalError(Exception):
    """Root of all errors raised by this package."""

    exit_code = 1


class ParseError(TemporalError, ValueError):
    """Malformed relation, structure, clone tag or dimension mismatch."""

    exit_code = 2


class HypothesisViolation(TemporalError):
    """The input does not satisfy the hypotheses of the requested construction."""

    exit_code = 3


class NoFence(HypothesisViolation):
    """No m-fence joins two factor vertices."""


class KernelMismatch(HypothesisViolation):
    """A tuple's kernel differs from the common kernel of a derivative."""


class PreconditionViolation(HypothesisViolation):
    """A chase step was called outside of its preconditions."""


class FoundSingletonM(TemporalError):
    """A member whose minimum is attained in exactly one component was found.

    Callers catch this and use ``witness`` directly, since such a member is
    trivially min-clean.
    """

    exit_code = 3

    def __init__(self, message: str, witness, orbit=None):
        super().__init__(message)
        self.witness = witness
        self.orbit = orbit


class BudgetExceeded(TemporalError):
    """A closure or enumeration grew past its configured bound."""

    exit_code = 4


class DepthMismatch(TemporalError, ValueError):
    """Layered keys of incompatible structure were compared."""


class InconsistentAlignment(TemporalError, ValueError):
    """An alignment does not restrict to the orbits it is applied to."""


class ContractViolation(TemporalError, AssertionError):
    """A construction postcondition failed while contract checks are on."""
