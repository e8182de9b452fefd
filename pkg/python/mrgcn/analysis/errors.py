"""Analysis errors."""

class AnalysisError(Exception):
    pass

class BucketEdgeError(AnalysisError):
    pass
