"""Exception types shared by every module.

The CLI maps ``InvalidArgument`` to exit code 2 and ``ResourceLimit`` to 3.
"""


class InvalidArgument(ValueError):
    pass


class Unsupported(InvalidArgument):
    """A request outside what the library implements (e.g. composite-modulus characters)."""


class ResourceLimit(RuntimeError):
    """Input would overflow 64-bit arithmetic or exceed a memory/size guard."""
