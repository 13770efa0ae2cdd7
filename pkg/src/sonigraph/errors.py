"""Exception types shared across the engine."""


class SonigraphError(Exception):
    """Base class for all engine errors."""


# -- diagram loading -------------------------------------------------------

class MalformedDocument(SonigraphError):
    """The input document is not parseable XML/GraphML."""


class SchemaViolation(SonigraphError):
    """The document parses but breaks the expected GraphML schema."""


class UnsupportedFeature(SonigraphError):
    """Directed edges, self-loops and parallel edges are not supported."""


class EmptyDiagram(SonigraphError):
    """The document contains no nodes."""


class UnknownNode(SonigraphError):
    """A node id does not exist in the diagram."""


class UnknownLink(SonigraphError):
    """A link id does not exist in the diagram."""


# -- geometry --------------------------------------------------------------

class DegenerateRegion(SonigraphError):
    """Dome contact points are collinear and span no area."""


# -- gesture input ---------------------------------------------------------

class NonMonotoneTime(SonigraphError):
    """A touch frame timestamp did not advance past the previous frame."""


class NotListening(SonigraphError):
    """A speech command arrived without a recent flick-down."""


class NoActiveTarget(SonigraphError):
    """Guidance was requested while no search target is active."""


# -- configuration ---------------------------------------------------------

class ParseError(SonigraphError):
    """A config file line or key could not be parsed."""


class ValidationError(SonigraphError):
    """A config value is outside its permitted range."""


# -- session / replay ------------------------------------------------------

class FileError(SonigraphError):
    """An input file is missing or unreadable."""


class SchemaError(SonigraphError):
    """A trace or log record does not match its line format."""


class NonMonotoneTrace(SonigraphError):
    """Trace record timestamps are not strictly increasing."""


class VersionMismatch(SonigraphError):
    """Two session logs use different schema versions."""
