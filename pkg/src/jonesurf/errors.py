"""Exceptions shared across modules."""


class ResourceLimitError(RuntimeError):
    """A configured size limit was reached before the computation finished.

    ``partial`` carries whatever was computed up to that point, if anything.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
