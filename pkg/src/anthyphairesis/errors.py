"""Error taxonomy shared by every module.

Three failure modes are kept apart on purpose:

* ``DomainError`` -- the caller violated a stated precondition (bad input).
* ``IndeterminateError`` -- the computation was cut off before it could
  decide anything (step budget exhausted); the answer is unknown, not false.
* ``InternalInvariantError`` -- a branch that the underlying theory rules
  out was reached.  This is a bug in the library, never a caller problem.
"""


class DomainError(ValueError):
    """A documented precondition does not hold for the given input."""


class IndeterminateError(RuntimeError):
    """A truncated expansion was asked to support a definite verdict."""


class InternalInvariantError(AssertionError):
    """An impossible case was reached; the library itself is at fault."""
