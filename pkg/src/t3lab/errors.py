"""Exception hierarchy. The CLI maps these onto exit codes."""


class InputError(ValueError):
    """Malformed input: out-of-range vertex, missing adjacency, bad file."""


class PreconditionError(InputError):
    """A verifier was called on an instance outside its hypotheses."""


class ResourceError(RuntimeError):
    """A configured size cap was exceeded, or a capped value could not
    resolve a comparison."""


class TheoryDiscrepancy(RuntimeError):
    """A structural statement that should hold did not.

    Either a precondition was silently breached or there is a bug; it is
    never swallowed.
    """

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class NoTypedPair(TheoryDiscrepancy):
    """No explodable pair of type 1, 2 or 3 exists in a reduced graph."""
