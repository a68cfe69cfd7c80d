"""Exception types shared across the toolkit."""


class BoolcspError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(BoolcspError):
    """Malformed input: invalid construction, mismatched universes, bad files."""


class PreconditionError(BoolcspError):
    """An operation was invoked outside its stated preconditions."""


class ResourceCapError(BoolcspError):
    """An exhaustive path would exceed its configured size cap."""


class UnsupportedArityError(ResourceCapError):
    """The definability oracle only enumerates clause families up to arity 3."""


class ConstructionUnavailableError(BoolcspError):
    """No conjunctive expression of the required target exists for this
    constraint set, so the reduction cannot be materialized."""


class OracleMismatchError(BoolcspError):
    """A cross-check oracle disagreed with the main pipeline; this is a bug."""
