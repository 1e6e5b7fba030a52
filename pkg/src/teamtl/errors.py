"""Exception types shared across the library.

Resource caps are reported through :class:`ResourceCapError` so callers can
distinguish "too big to decide with the configured limits" from an actual
verdict; the CLI maps these onto distinct exit codes.
"""


class TeamTLError(Exception):
    """Base class for all library-specific errors."""


class UnsupportedNodeError(TeamTLError):
    """A formula node kind is not admitted by the called evaluator."""


class ResourceCapError(TeamTLError):
    """A configured size or search cap was exceeded; no verdict produced."""


class LassoForestViolation(TeamTLError):
    """The structure's trace set cannot be finitely enumerated: some world
    reachable from the initial world lies on a cycle but branches."""

    def __init__(self, world: str):
        super().__init__(
            f"world {world!r} lies on a cycle and has out-degree > 1; "
            "the trace set of this structure is not finitely enumerable"
        )
        self.world = world


class SplitjunctionPresent(TeamTLError):
    """Splitjunction-free model checking was called on a formula with `|`."""


class GenAtomPresent(TeamTLError):
    """Flattening-based model checking cannot handle generalised atoms."""
