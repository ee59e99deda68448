class InputError(ValueError):
    """Malformed or inconsistent input (unknown atom, mismatched spaces, t = 0, ...)."""


class PreconditionError(ValueError):
    """Input is well formed but the requested quantity does not exist there."""
