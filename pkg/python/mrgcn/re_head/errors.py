"""Relation head errors."""

class HeadError(Exception):
    pass

class EmptyClusterError(HeadError):
    pass
