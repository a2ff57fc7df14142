"""Exception types shared across modules; the CLI maps them to exit codes."""


class BudgetError(ValueError):
    """A request exceeds a configured computation budget (exit code 3)."""


class NumericError(ArithmeticError):
    """A numeric procedure failed or left its valid regime (exit code 4)."""
