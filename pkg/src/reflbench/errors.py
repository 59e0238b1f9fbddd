"""Shared exception types.

Exit-code mapping used by the CLI: BudgetExceededError -> 2, InputError -> 3,
everything that merely *falsifies* a property is ordinary data (exit 1 is
decided by the caller, not by raising).
"""


class BudgetExceededError(RuntimeError):
    """An enumeration (cosets, group elements, lattice flats, ...) hit its budget.

    This is a first-class outcome for computations that may legitimately not
    terminate within bounds, not a programming error.
    """


class InputError(ValueError):
    """Malformed user-facing input (bad word syntax, unknown catalog name, ...)."""
