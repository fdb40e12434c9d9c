"""Exception types shared across the package.

The CLI maps these onto exit codes: validation -> 2, resource limit -> 3,
internal invariant violation -> 4.
"""


class ValidationError(ValueError):
    """Bad user input: malformed channel file, invalid q, masses that do not
    form a probability vector, out-of-range indices, and the like."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured work bound."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
