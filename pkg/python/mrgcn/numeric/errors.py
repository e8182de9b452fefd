"""Numeric kernel errors."""

class NumericError(Exception):
    pass

class ShapeMismatchError(NumericError):
    pass

class NonFiniteError(NumericError):
    pass

class BackwardError(NumericError):
    pass
