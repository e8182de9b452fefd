"""Differentiable primitives used by the GCN stack and the relation head."""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from numeric.errors import NumericError, ShapeMismatchError
from numeric.node import Matrix, Node
from scipy.special import logsumexp as _logsumexp
from scipy.special import softmax


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ShapeMismatchError(message)


def matmul(a: Node, b: Node) -> Node:
    _require(a.cols == b.rows, f"matmul: {a.shape} x {b.shape}")

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad @ b.value.T)
        b.accumulate(a.value.T @ grad)

    return Node(a.value @ b.value, (a, b), backward_fn, op="matmul")


def add(a: Node, b: Node) -> Node:
    _require(a.shape == b.shape, f"add: {a.shape} + {b.shape}")

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad)
        b.accumulate(grad)

    return Node(a.value + b.value, (a, b), backward_fn, op="add")


def add_bias(a: Node, bias: Node) -> Node:
    """a + 1·bias, bias being a single row broadcast over every row of a."""
    _require(bias.rows == 1 and bias.cols == a.cols, f"add_bias: {a.shape} + {bias.shape}")

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad)
        bias.accumulate(grad.sum(axis=0, keepdims=True))

    return Node(a.value + bias.value, (a, bias), backward_fn, op="add_bias")


def relu(a: Node) -> Node:
    mask = a.value > 0

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad * mask)

    return Node(np.where(mask, a.value, 0.0), (a,), backward_fn, op="relu")


def row_max_pool(a: Node, rows: Sequence[int]) -> Node:
    """Columnwise maximum over the selected rows; ties go to the first of them."""
    if len(rows) == 0:
        raise ShapeMismatchError("row_max_pool: empty row selection")
    index = np.asarray(rows, dtype=np.int64)
    if index.min() < 0 or index.max() >= a.rows:
        raise ShapeMismatchError(f"row_max_pool: rows {list(rows)} outside {a.shape}")
    selected = a.value[index]
    winners = index[np.argmax(selected, axis=0)]
    columns = np.arange(a.cols)

    def backward_fn(grad: Matrix) -> None:
        routed = np.zeros_like(a.value)
        np.add.at(routed, (winners, columns), grad[0])
        a.accumulate(routed)

    return Node(a.value[winners, columns].reshape(1, -1), (a,), backward_fn, op="row_max_pool")


def concat_cols(parts: Sequence[Node]) -> Node:
    if not parts:
        raise ShapeMismatchError("concat_cols: nothing to concatenate")
    rows = parts[0].rows
    _require(all(part.rows == rows for part in parts), f"concat_cols: {[part.shape for part in parts]}")
    bounds = np.cumsum([0] + [part.cols for part in parts])

    def backward_fn(grad: Matrix) -> None:
        for part, start, end in zip(parts, bounds[:-1], bounds[1:]):
            part.accumulate(grad[:, start:end])

    return Node(np.hstack([part.value for part in parts]), tuple(parts), backward_fn, op="concat_cols")


def concat_rows(parts: Sequence[Node]) -> Node:
    if not parts:
        raise ShapeMismatchError("concat_rows: nothing to concatenate")
    cols = parts[0].cols
    _require(all(part.cols == cols for part in parts), f"concat_rows: {[part.shape for part in parts]}")
    bounds = np.cumsum([0] + [part.rows for part in parts])

    def backward_fn(grad: Matrix) -> None:
        for part, start, end in zip(parts, bounds[:-1], bounds[1:]):
            part.accumulate(grad[start:end])

    return Node(np.vstack([part.value for part in parts]), tuple(parts), backward_fn, op="concat_rows")


def column_logsumexp(a: Node) -> Node:
    """Per column: log Σ_rows exp(a), computed with the max shift."""
    _require(a.rows > 0, f"column_logsumexp: {a.shape}")
    weights = softmax(a.value, axis=0)

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(weights * grad)

    return Node(_logsumexp(a.value, axis=0, keepdims=True), (a,), backward_fn, op="column_logsumexp")


def segment_sum(a: Node, assignment: Sequence[int], groups: int) -> Node:
    """Row j of the result is the sum of the rows i with assignment[i] == j (Mᵀ·a)."""
    _require(len(assignment) == a.rows, f"segment_sum: {len(assignment)} assignments for {a.shape}")
    index = np.asarray(assignment, dtype=np.int64)
    summed = np.zeros((groups, a.cols), dtype=np.float64)
    np.add.at(summed, index, a.value)

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad[index])

    return Node(summed, (a,), backward_fn, op="segment_sum")


def gather_rows(a: Node, index: Sequence[int]) -> Node:
    """Row i of the result is row index[i] of a (M·a)."""
    rows = np.asarray(index, dtype=np.int64)
    _require(rows.size == 0 or (rows.min() >= 0 and rows.max() < a.rows), f"gather_rows: index outside {a.shape}")

    def backward_fn(grad: Matrix) -> None:
        routed = np.zeros_like(a.value)
        np.add.at(routed, rows, grad)
        a.accumulate(routed)

    return Node(a.value[rows], (a,), backward_fn, op="gather_rows")


def scale(a: Node, factors: npt.ArrayLike) -> Node:
    """Elementwise product with a constant broadcastable to a."""
    constant = np.broadcast_to(np.asarray(factors, dtype=np.float64), a.value.shape)

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad * constant)

    return Node(a.value * constant, (a,), backward_fn, op="scale")


def weighted_sum(a: Node, weights: npt.ArrayLike) -> Node:
    """Scalar Σ a ⊙ weights, as a 1x1 node."""
    w = np.broadcast_to(np.asarray(weights, dtype=np.float64), a.value.shape)

    def backward_fn(grad: Matrix) -> None:
        a.accumulate(grad[0, 0] * w)

    return Node([[float((a.value * w).sum())]], (a,), backward_fn, op="weighted_sum")


def logsumexp(values: Sequence[float]) -> float:
    if len(values) == 0:
        raise NumericError("logsumexp of an empty list")
    return float(_logsumexp(np.asarray(values, dtype=np.float64)))
