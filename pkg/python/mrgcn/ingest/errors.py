"""Input parsing errors."""

class IngestError(Exception):
    pass

class ConllParseError(IngestError):

    def __init__(self, message: str, line_number: int, source: str = "<string>"):
        super().__init__(f"{source}:{line_number}: {message}")
        self.line_number = line_number
        self.source = source

class SidecarError(IngestError):
    pass

class AnonymizationError(IngestError):
    pass

class EmbeddingFileError(IngestError):
    pass
