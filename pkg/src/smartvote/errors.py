"""Exception hierarchy shared by all modules."""


class SmartVoteError(Exception):
    """Base class for every error raised by this package."""


class FormulaError(SmartVoteError, ValueError):
    """A delegation formula could not be parsed or is not a valid DNF."""


class TautologyError(FormulaError):
    pass


class ContradictionError(FormulaError):
    pass


class ProfileError(SmartVoteError, ValueError):
    """A profile or ballot is structurally malformed."""


class InvalidProfileError(SmartVoteError):
    """A profile violates ballot validity and cannot be unravelled."""

    def __init__(self, violations):
        self.violations = violations
        agents = ", ".join(sorted(violations))
        super().__init__(f"invalid ballots for agent(s): {agents}")


class BoundsError(SmartVoteError, ValueError):
    """A certificate entry lies outside its ballot."""


class InconsistentCertificateError(SmartVoteError):
    def __init__(self, stuck):
        self.stuck = frozenset(stuck)
        super().__init__(f"certificate is not consistent; stuck agents: {sorted(self.stuck)}")


class CapExceededError(SmartVoteError):
    """An exhaustive computation would exceed its configured size cap."""

    def __init__(self, size, cap, what="search space"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} of size {size} exceeds cap {cap}")


class NotLiquidError(SmartVoteError):
    """A Liquid-only algorithm received a profile with non-identity delegations."""


class UnreachableNodeError(SmartVoteError):
    def __init__(self, nodes):
        self.nodes = frozenset(nodes)
        super().__init__(f"nodes unreachable from the root: {sorted(map(str, self.nodes))}")


class AgentMismatchError(SmartVoteError, ValueError):
    pass


class DomainError(SmartVoteError, ValueError):
    pass


class SelfLoopError(SmartVoteError, ValueError):
    pass


class ParameterError(SmartVoteError, ValueError):
    pass
