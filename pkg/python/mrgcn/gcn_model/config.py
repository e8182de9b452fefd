from dataclasses import dataclass
from typing import Literal

from mrgcn_config import ConfigBase, ConfigError


@dataclass(frozen=True)
class ModelConfig(ConfigBase):
    # number of graphs G_0..G_{levels-1}; 1 is a plain GCN block
    levels: int = 3
    sublayers: int = 1
    hidden: int = 16
    head_hidden: int = 0
    pool_mode: Literal["sum", "mean"] = "mean"
    dropout: float = 0.0

    def __post_init__(self):
        if self.levels < 1 or self.sublayers < 1 or self.hidden < 1:
            raise ConfigError(
                f"levels, sublayers and hidden must be >= 1, got {self.levels}, {self.sublayers}, {self.hidden}"
            )
        if self.head_hidden < 0:
            raise ConfigError(f"head_hidden must be >= 0, got {self.head_hidden}")
        if self.pool_mode not in ("sum", "mean"):
            raise ConfigError(f"pool_mode must be sum or mean, got {self.pool_mode!r}")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError(f"dropout must be in [0, 1), got {self.dropout}")

    def head_width(self) -> int:
        return self.head_hidden or self.hidden

    def layer_count(self) -> int:
        return (2 * self.levels - 1) * self.sublayers
