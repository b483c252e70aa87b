"""Exception hierarchy shared by the library and the command line."""


class AffineLyndonError(Exception):
    """Base class for every error raised by this package."""


class UsageError(AffineLyndonError, ValueError):
    """Bad arguments: wrong dimensions, non-roots, unknown letters and so on."""


class ConfigurationError(UsageError):
    """Inadmissible type, rank or order."""


class DepthError(AffineLyndonError):
    """A request needs more of the table than is generated or allowed."""
