"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Vector dimension is too small or inconsistent between arguments."""


class IndexRangeError(ValueError):
    """A shift distance or pair-sum index lies outside its admissible range."""


class SpecError(ValueError):
    """A system/form specification violates its preconditions."""


class NumericInconsistencyError(ArithmeticError):
    """A numeric cross-check failed (e.g. a residue that must vanish did not)."""


class SingularLatticeError(ArithmeticError):
    """The generator matrix is singular within the scale-aware threshold."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured dimension/box caps."""
