"""Exception types raised by partstab operations."""


class PartstabError(Exception):
    """Base class for all partstab errors."""


class DuplicateUnit(PartstabError):
    """A unit id appears more than once in one partition input."""


class EmptyInput(PartstabError):
    """A partition input contains no records."""


class MalformedRecord(PartstabError):
    """A partition record is syntactically or semantically invalid."""


class NonOverlappingSets(PartstabError):
    """Two partitions share no units, so alignment is undefined."""


class TooFewUnits(PartstabError):
    """Fewer than two units, so no unit pairs exist."""


class UnitSetMismatch(PartstabError):
    """Two partitions cover different unit sets where identical sets are required."""


class DegenerateIndex(PartstabError):
    """An index denominator is zero for this input."""


class ScopeViolation(PartstabError):
    """The requested index kind excludes a group that is present in the data."""


class DegenerateAdjustment(PartstabError):
    """Chance correction is undefined because the expected value reaches the maximum."""


class EstimateUnreliable(PartstabError):
    """Too many Monte Carlo replicates were degenerate to trust the estimate."""


class InvalidDesign(PartstabError):
    """A simulation design parameter is out of range."""
