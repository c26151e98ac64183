"""Unravelling procedures for smart voting ballots.

Smart ballots rank delegations (a set of delegates and a function of their
votes) and end with a direct backup vote. This package parses and validates
such profiles and turns them into one direct vote per agent with greedy
(U, DU, RU, DRU) or optimal (MinSum, MinMax) procedures.
"""

from .ballots import (
    ABSTAIN,
    Delegation,
    DirectVote,
    Domain,
    Dnf,
    Identity,
    Profile,
    SmartBallot,
    ballot,
    classify_language,
    is_valid,
    profile_from_rows,
    validate_profile,
)
from .certificates import Certificate, Outcome, check_consistent, enumerate_consistent, outcome_of
from .greedy import UpdateKind, enumerate_random_branches, unravel
from .optimal import (
    bounded_minmax,
    bounded_minsum,
    minmax_exact,
    minmax_liquid,
    minsum_exact,
    minsum_liquid,
)

__version__ = "0.1.0"
