"""Exception hierarchy shared by every module of the package."""


class SubconsError(Exception):
    """Base class for all package errors."""


class InstanceError(SubconsError, ValueError):
    """A subset or instance does not fit the ground set it is used with."""


class ParameterError(SubconsError, ValueError):
    """An operation received an out-of-range parameter."""


class PreconditionError(SubconsError, ValueError):
    """An oracle violates a structural precondition (zero singleton, modular input, ...)."""


class InfeasibleError(SubconsError):
    """The cover constraint cannot be met by any subset."""


class SearchExhaustedError(SubconsError):
    """A conversion search hit its probe cap without terminating."""


class SchemaError(SubconsError, ValueError):
    """A serialized instance, config or result file is malformed."""
