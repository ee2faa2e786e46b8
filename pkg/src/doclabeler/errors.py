"""Exception hierarchy shared across the package."""


class DocLabelerError(Exception):
    """Base class for all doclabeler errors."""


class ProjectLoadError(DocLabelerError):
    """A project directory is missing or corrupt."""

    def __init__(self, message: str, path=None):
        super().__init__(message)
        self.path = str(path) if path is not None else None


class PdfError(DocLabelerError):
    """A PDF cannot be opened or understood."""


class FormatError(DocLabelerError):
    """A dataset file does not match its declared format."""

    def __init__(self, message: str, path=None, record=None):
        super().__init__(message)
        self.path = str(path) if path is not None else None
        self.record = record


class OperationError(DocLabelerError):
    """A page operation was called with invalid arguments; the page is untouched."""


class LabelerError(DocLabelerError):
    """An auto-labeler could not produce proposals."""


class VersionConflict(DocLabelerError):
    """Optimistic concurrency check failed; carries the current page state."""

    def __init__(self, message: str, current_version: int, page=None):
        super().__init__(message)
        self.current_version = current_version
        self.page = page
