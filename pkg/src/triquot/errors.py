"""Exception hierarchy shared across the package."""


class InputError(ValueError):
    """Caller supplied invalid data (bad shapes, labels, expressions)."""


class UnsupportedError(InputError):
    """Input is valid but outside the supported class of algebras/modules."""


class InternalConsistencyError(RuntimeError):
    """A solve that theory guarantees feasible turned out infeasible.

    Raised instead of returning wrong data; signals corrupted inputs or a
    bug, never a legitimate negative answer.
    """
