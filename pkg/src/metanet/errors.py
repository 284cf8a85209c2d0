"""Exception types shared across the package."""


class MetanetError(Exception):
    """Base class for all package errors."""


class EdgeListParseError(MetanetError, ValueError):
    """Malformed edge-list input (bad line, self-loop)."""


class MetadataError(MetanetError, ValueError):
    """Label file inconsistent with the graph (missing/unknown/duplicate node)."""


class DegenerateBlockError(MetanetError, ValueError):
    """A block has an edge-probability estimate outside [0, 1]."""


class InstanceTooLargeError(MetanetError, ValueError):
    """Exhaustive enumeration would exceed the configured cap."""
