from dataclasses import dataclass
from pathlib import Path

from ingest import POS_DIM, EmbeddingTable, load_embeddings
from mrgcn_config import ConfigBase, ConfigError


@dataclass(frozen=True)
class EmbeddingConfig(ConfigBase):
    word_dim: int = 16
    pos_dim: int = POS_DIM
    # empty means hash-seeded vectors for every word
    embedding_file: str = ""
    anonymize: bool = False

    def table(self) -> EmbeddingTable:
        if self.embedding_file:
            return load_embeddings(Path(self.embedding_file), pos_dim=self.pos_dim)
        return EmbeddingTable.hashed(self.word_dim, self.pos_dim)


@dataclass(frozen=True)
class TrainConfig(ConfigBase):
    lr: float = 0.02
    lr_decay: float = 0.95
    decay_start_epoch: int = 15
    epochs: int = 30
    seed: int = 0
    num_classes: int = 2
    # global gradient-norm bound per step; 0 disables clipping
    gradient_clip: float = 1.0

    def __post_init__(self):
        if self.lr < 0 or self.gradient_clip < 0:
            raise ConfigError(f"lr and gradient_clip must be >= 0, got {self.lr} and {self.gradient_clip}")
        if self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if not 0.0 < self.lr_decay <= 1.0:
            raise ConfigError(f"lr_decay must be in (0, 1], got {self.lr_decay}")
        if self.num_classes < 2:
            raise ConfigError(f"num_classes must be >= 2, got {self.num_classes}")
