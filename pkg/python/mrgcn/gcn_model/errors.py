"""Model assembly errors."""

class ModelError(Exception):
    pass

class HierarchyMismatchError(ModelError):
    pass

class CheckpointError(ModelError):
    pass
