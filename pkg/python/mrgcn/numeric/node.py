"""Reverse-mode nodes over dense float64 matrices.

Every primitive records its operands and a closure that pushes the upstream
gradient into them. Gradients add up across fan-out; parameters keep their
gradient between steps until `sgd_step` clears it.
"""

from collections.abc import Callable
from typing import TypeAlias

import numpy as np
import numpy.typing as npt
from numeric.errors import BackwardError, NonFiniteError, ShapeMismatchError

Matrix: TypeAlias = npt.NDArray[np.float64]
BackwardFn: TypeAlias = Callable[[Matrix], None]


def as_matrix(value: npt.ArrayLike) -> Matrix:
    matrix = np.asarray(value, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    if matrix.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-D matrix, got shape {matrix.shape}")
    return matrix


class Node:

    def __init__(
        self,
        value: npt.ArrayLike,
        parents: tuple["Node", ...] = (),
        backward_fn: BackwardFn | None = None,
        *,
        requires_grad: bool | None = None,
        op: str = "leaf",
    ):
        self.value = as_matrix(value)
        if not np.isfinite(self.value).all():
            raise NonFiniteError(f"{op} produced non-finite values")
        self.parents = parents
        self._backward_fn = backward_fn
        self.requires_grad = (
            any(parent.requires_grad for parent in parents) if requires_grad is None else requires_grad
        )
        self.grad: Matrix | None = None
        self.op = op
        self._consumed = False

    @property
    def shape(self) -> tuple[int, int]:
        return (self.value.shape[0], self.value.shape[1])

    @property
    def rows(self) -> int:
        return self.value.shape[0]

    @property
    def cols(self) -> int:
        return self.value.shape[1]

    def accumulate(self, grad: Matrix) -> None:
        if not self.requires_grad:
            return
        if grad.shape != self.value.shape:
            raise ShapeMismatchError(f"gradient of shape {grad.shape} for {self.op} of shape {self.value.shape}")
        if self.grad is None:
            self.grad = np.zeros_like(self.value)
        self.grad += grad

    def __repr__(self) -> str:
        return f"Node({self.op}, shape={self.shape})"


class Parameter(Node):

    def __init__(self, value: npt.ArrayLike, name: str = ""):
        super().__init__(value, requires_grad=True, op=f"param:{name}" if name else "param")
        self.name = name
        self.grad = np.zeros_like(self.value)

    def zero_grad(self) -> None:
        self.grad = np.zeros_like(self.value)

    def assign(self, value: npt.ArrayLike) -> None:
        new_value = as_matrix(value)
        if new_value.shape != self.value.shape:
            raise ShapeMismatchError(f"cannot assign {new_value.shape} to parameter {self.name} of {self.value.shape}")
        self.value = new_value.copy()


def constant(value: npt.ArrayLike) -> Node:
    return Node(value, requires_grad=False, op="const")


def _topological_order(root: Node) -> list[Node]:
    order = list[Node]()
    visited = set[int]()
    stack: list[tuple[Node, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited or not node.requires_grad:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node.parents:
            stack.append((parent, False))
    return order


def backward(root: Node, upstream: npt.ArrayLike | None = None) -> None:
    if root._consumed:
        raise BackwardError("backward already ran on this graph; run the forward pass again")
    if not root.requires_grad:
        raise BackwardError("root does not depend on any parameter")
    seed = np.ones_like(root.value) if upstream is None else as_matrix(upstream)
    order = _topological_order(root)
    for node in order:
        if not isinstance(node, Parameter):
            node.grad = None
    root.accumulate(seed)
    for node in reversed(order):
        if node._backward_fn is not None and node.grad is not None:
            node._backward_fn(node.grad)
    root._consumed = True
