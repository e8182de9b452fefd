"""GCN layers and blocks: h_i <- ReLU(Σ_j A_ij h_j W + b)."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from graph_core import AdjacencyMatrix
from numeric import (
    Node,
    Parameter,
    add_bias,
    constant,
    matmul,
    relu,
    scale,
)


@dataclass(frozen=True, eq=False)
class GcnLayer:
    W: Parameter
    b: Parameter

    @classmethod
    def create(cls, d_in: int, d_out: int, name: str) -> "GcnLayer":
        return GcnLayer(
            W=Parameter(np.zeros((d_in, d_out)), name=f"{name}.W"),
            b=Parameter(np.zeros((1, d_out)), name=f"{name}.b"),
        )

    def parameters(self) -> list[Parameter]:
        return [self.W, self.b]


@dataclass(frozen=True, eq=False)
class GcnBlock:
    layers: tuple[GcnLayer, ...]

    def __post_init__(self):
        assert len(self.layers) >= 1

    @classmethod
    def create(cls, d_in: int, hidden: int, sublayers: int, name: str) -> "GcnBlock":
        return GcnBlock(layers=tuple(
            GcnLayer.create(d_in if s == 0 else hidden, hidden, f"{name}.{s}")
            for s in range(sublayers)
        ))

    def parameters(self) -> list[Parameter]:
        return [param for layer in self.layers for param in layer.parameters()]


def gcn_block_forward(
    block: GcnBlock,
    a: AdjacencyMatrix | Node,
    h_in: Node,
    *,
    dropout: float = 0.0,
    rng: np.random.Generator | None = None,
) -> Node:
    """A is applied as given: integer weights and coarsening diagonal kept, no normalization."""
    a_node = a if isinstance(a, Node) else constant(a)
    h = h_in
    for layer in block.layers:
        if dropout > 0.0 and rng is not None:
            keep = (rng.random(h.shape) >= dropout) / (1.0 - dropout)
            h = scale(h, keep)
        h = relu(add_bias(matmul(matmul(a_node, h), layer.W), layer.b))
    return h


def glorot_uniform(params: Sequence[Parameter], rng: np.random.Generator) -> None:
    """Weights uniform in ±sqrt(6 / (d_in + d_out)); biases (.b, .b1, .b2) zero."""
    for param in params:
        rows, cols = param.shape
        if param.name.rsplit(".", 1)[-1].startswith("b"):
            param.assign(np.zeros((rows, cols)))
            continue
        bound = math.sqrt(6.0 / (rows + cols))
        param.assign(rng.uniform(-bound, bound, size=(rows, cols)))
