from dataclasses import field, make_dataclass

from coarsen import CoarsenConfig
from gcn_model import ModelConfig
from mrgcn_config import ConfigBase
from training import EmbeddingConfig, TrainConfig

MrgcnConfig = make_dataclass(
    cls_name="MrgcnConfig",
    bases=(ConfigBase,),
    fields=[
        (
            "coarsen_config",
            CoarsenConfig,
            field(default=CoarsenConfig()),
        ),
        (
            "model_config",
            ModelConfig,
            field(default=ModelConfig()),
        ),
        (
            "embedding_config",
            EmbeddingConfig,
            field(default=EmbeddingConfig()),
        ),
        (
            "train_config",
            TrainConfig,
            field(default=TrainConfig()),
        ),
    ],
    frozen=True,
)


__all__ = [
  "MrgcnConfig",
]
