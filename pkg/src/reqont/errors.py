"""Exception taxonomy for the ontology repository engine.

Three broad families map onto the CLI exit codes: :class:`ParseError` and
:class:`RepositoryError` are "could not even read the input" problems
(exit 2), everything else derived from :class:`ReqontError` is a domain
violation (exit 1).
"""

from __future__ import annotations


class ReqontError(Exception):
    """Base class for all engine errors."""


class ParseError(ReqontError):
    """Raised when a file is syntactically or structurally invalid.

    Covers malformed JSON, wrong value kinds, unknown keys, and missing
    required fields. ``path`` names the offending file (when known) and
    ``location`` a JSON-pointer-ish position inside it.
    """

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        location: str | None = None,
        line: int | None = None,
    ) -> None:
        self.path = path
        self.location = location
        self.line = line
        prefix = ""
        if path:
            prefix = f"{path}: "
            if line is not None:
                prefix = f"{path}:{line}: "
        if location:
            message = f"{message} (at {location})"
        super().__init__(prefix + message)


class RepositoryError(ReqontError):
    """Raised when the on-disk repository layout is unusable."""


class FieldError(ReqontError):
    """Raised by strict parsing when a record uses unknown vocabulary.

    Unknown taxonomy names, dimension names, characteristic labels, scope
    note names, or relation names. ``findings`` carries one entry per
    offence so callers can report all of them at once.
    """

    def __init__(self, message: str, findings: tuple = ()) -> None:
        self.findings = findings
        super().__init__(message)


class LinkError(ReqontError):
    """Raised by strict snapshot building on unresolvable or broken links."""

    def __init__(self, message: str, findings: tuple = ()) -> None:
        self.findings = findings
        super().__init__(message)


class DuplicateReference(ReqontError):
    """Raised when two extraction records claim the same reference key."""


class EmptyName(ReqontError):
    """Raised when a factor name normalizes to the empty string."""


class UnknownFactor(ReqontError):
    """Raised when a lookup names a factor absent from the snapshot."""


class UnknownCharacteristic(ReqontError):
    """Raised when a filter uses a value outside the schema vocabulary."""


class ReferenceMismatch(ReqontError):
    """Raised when comparing extraction records for different references."""


class EmptyComparison(ReqontError):
    """Raised when two annotator corpora share no reference keys."""
