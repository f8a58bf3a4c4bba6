"""Package-wide exception types.

Input validation failures raise plain ValueError so callers can treat them
like any other bad-argument error.  InvariantViolation is reserved for
internal accounting identities that can only break if the implementation
itself is wrong; the CLI maps it to a distinct exit code.
"""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (not a user-input problem)."""
