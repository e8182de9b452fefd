"""Pooling-unpooling GCN over a graph hierarchy.

Pooling branch: H_out_0 = block_0(A^0, X); H_in_l = Mᵀ H_out_{l-1}; H_out_l = block_l(A^l, H_in_l).
Unpooling branch: U_out_{top} = H_out_{top}; U_in_l = M U_out_{l+1}; U_out_l = ublock_l(A^l, U_in_l) + H_out_l.

M is stored n_fine x n_coarse, so pooling sums member rows and unpooling copies the
supernode row back to each member.
"""

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
from coarsen import GraphHierarchy, MatchingMatrix
from gcn_model.errors import HierarchyMismatchError
from gcn_model.layers import GcnBlock, gcn_block_forward, glorot_uniform
from numeric import (
    Node,
    Parameter,
    ShapeMismatchError,
    add,
    constant,
    gather_rows,
    scale,
    segment_sum,
)

log = logging.getLogger(__name__)


class MrGcnModel:

    def __init__(self, *, in_dim: int, hidden: int, levels: int, sublayers: int):
        assert levels >= 1 and sublayers >= 1
        self.in_dim = in_dim
        self.hidden = hidden
        self.levels = levels
        self.sublayers = sublayers
        self.pool_blocks = tuple(
            GcnBlock.create(in_dim if l == 0 else hidden, hidden, sublayers, f"pool{l}")
            for l in range(levels)
        )
        # level l -> block refining the unpooled features of G_l
        self.unpool_blocks = {
            l: GcnBlock.create(hidden, hidden, sublayers, f"unpool{l}")
            for l in range(levels - 2, -1, -1)
        }

    def blocks(self) -> list[GcnBlock]:
        return [*self.pool_blocks, *self.unpool_blocks.values()]

    def parameters(self) -> list[Parameter]:
        return [param for block in self.blocks() for param in block.parameters()]

    @property
    def layer_count(self) -> int:
        return sum(len(block.layers) for block in self.blocks())


@dataclass
class ForwardTrace:
    h_in: list[Node] = field(default_factory=list)
    h_out: list[Node] = field(default_factory=list)
    u_in: dict[int, Node] = field(default_factory=dict)
    u_tilde: dict[int, Node] = field(default_factory=dict)
    u_out: dict[int, Node] = field(default_factory=dict)


def pool_features(
    matching: MatchingMatrix,
    h_out: Node,
    mode: Literal["sum", "mean"] = "sum",
) -> Node:
    if matching.n_fine != h_out.rows:
        raise ShapeMismatchError(f"pool: matching over {matching.n_fine} nodes, features {h_out.shape}")
    pooled = segment_sum(h_out, matching.assignment, matching.n_coarse)
    if mode == "mean":
        return scale(pooled, 1.0 / matching.sizes().reshape(-1, 1))
    return pooled


def unpool_features(matching: MatchingMatrix, u_out: Node) -> Node:
    if matching.n_coarse != u_out.rows:
        raise ShapeMismatchError(f"unpool: matching onto {matching.n_coarse} supernodes, features {u_out.shape}")
    return gather_rows(u_out, matching.assignment)


def residual_combine(u_tilde: Node, h_out: Node) -> Node:
    return add(u_tilde, h_out)


def mrgcn_forward(
    model: MrGcnModel,
    hierarchy: GraphHierarchy,
    x: Node | npt.NDArray[np.float64],
    *,
    pool_mode: Literal["sum", "mean"] = "sum",
    dropout: float = 0.0,
    rng: np.random.Generator | None = None,
) -> tuple[Node, ForwardTrace]:
    if len(hierarchy.levels) != model.levels:
        raise HierarchyMismatchError(
            f"model expects {model.levels} graphs, hierarchy has {len(hierarchy.levels)}"
        )
    x_node = x if isinstance(x, Node) else constant(x)
    if x_node.rows != hierarchy.levels[0].size:
        raise ShapeMismatchError(f"features {x_node.shape} for a graph of {hierarchy.levels[0].size} nodes")
    trace = ForwardTrace()
    adjacency = [constant(level.adjacency) for level in hierarchy.levels]

    h_in = x_node
    for l, block in enumerate(model.pool_blocks):
        if l > 0:
            h_in = pool_features(hierarchy.matchings[l - 1], trace.h_out[l - 1], pool_mode)
        trace.h_in.append(h_in)
        trace.h_out.append(gcn_block_forward(block, adjacency[l], h_in, dropout=dropout, rng=rng))

    top = model.levels - 1
    trace.u_out[top] = trace.h_out[top]
    for l in range(top - 1, -1, -1):
        trace.u_in[l] = unpool_features(hierarchy.matchings[l], trace.u_out[l + 1])
        trace.u_tilde[l] = gcn_block_forward(
            model.unpool_blocks[l], adjacency[l], trace.u_in[l], dropout=dropout, rng=rng
        )
        trace.u_out[l] = residual_combine(trace.u_tilde[l], trace.h_out[l])
    return trace.u_out[0], trace


def init_parameters(model: MrGcnModel, seed: int) -> None:
    glorot_uniform(model.parameters(), np.random.default_rng(seed))
