"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Two objects that must share a variable count n do not."""


class ContractViolation(ValueError):
    """An operation was called outside its stated domain."""


class ConfigError(ValueError):
    """A run or sweep configuration is invalid; reject before executing."""
