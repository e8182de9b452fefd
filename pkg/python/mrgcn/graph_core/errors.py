"""Graph construction errors."""

class GraphError(Exception):
    pass

class GraphConstructionError(GraphError):
    pass
