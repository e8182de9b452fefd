"""Pooling-unpooling GCN stack."""

from gcn_model.checkpoint import load_checkpoint, restore_parameters, save_checkpoint
from gcn_model.config import ModelConfig
from gcn_model.errors import CheckpointError, HierarchyMismatchError, ModelError
from gcn_model.layers import GcnBlock, GcnLayer, gcn_block_forward, glorot_uniform
from gcn_model.mrgcn import (
    ForwardTrace,
    MrGcnModel,
    init_parameters,
    mrgcn_forward,
    pool_features,
    residual_combine,
    unpool_features,
)

__all__ = [
    "CheckpointError",
    "ForwardTrace",
    "GcnBlock",
    "GcnLayer",
    "HierarchyMismatchError",
    "ModelConfig",
    "ModelError",
    "MrGcnModel",
    "gcn_block_forward",
    "glorot_uniform",
    "init_parameters",
    "load_checkpoint",
    "mrgcn_forward",
    "pool_features",
    "residual_combine",
    "restore_parameters",
    "save_checkpoint",
    "unpool_features",
]
