"""Dense float64 matrix kernel with reverse-mode gradients."""

from numeric.errors import BackwardError, NonFiniteError, NumericError, ShapeMismatchError
from numeric.gradcheck import numerical_gradient, relative_error
from numeric.node import Matrix, Node, Parameter, as_matrix, backward, constant
from numeric.ops import (
    add,
    add_bias,
    column_logsumexp,
    concat_cols,
    concat_rows,
    gather_rows,
    logsumexp,
    matmul,
    relu,
    row_max_pool,
    scale,
    segment_sum,
    weighted_sum,
)
from numeric.optim import clip_grad_norm, decayed_lr, sgd_step

__all__ = [
    "BackwardError",
    "Matrix",
    "Node",
    "NonFiniteError",
    "NumericError",
    "Parameter",
    "ShapeMismatchError",
    "add",
    "add_bias",
    "as_matrix",
    "backward",
    "clip_grad_norm",
    "column_logsumexp",
    "concat_cols",
    "concat_rows",
    "constant",
    "decayed_lr",
    "gather_rows",
    "logsumexp",
    "matmul",
    "numerical_gradient",
    "relative_error",
    "relu",
    "row_max_pool",
    "scale",
    "segment_sum",
    "sgd_step",
    "weighted_sum",
]
