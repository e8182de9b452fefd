"""Graph pooling errors."""

class CoarsenError(Exception):
    pass

class MatchingError(CoarsenError):
    pass

class DimensionMismatchError(CoarsenError):
    pass
