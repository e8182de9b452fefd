from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

from coarsen.clause import CORE_ARGUMENTS, ClauseMatchConfig
from mrgcn_config import ConfigBase


class PoolingMethod(Enum):
    HM = "hm"
    CM = "cm"
    RANDOM = "random"
    IDENTITY = "identity"


@dataclass(frozen=True)
class CoarsenConfig(ConfigBase):
    method: Literal["hm", "cm", "random", "identity"] = "hm"
    seed: int = 0
    # 2 reproduces the "aggressive" variants: two matching passes per pooling step
    passes_per_level: int = 1
    random_merge_probability: float = 0.5
    core_arguments: list[str] = field(default_factory=lambda: sorted(CORE_ARGUMENTS))

    def pooling_method(self) -> PoolingMethod:
        return PoolingMethod(self.method)

    def clause_config(self) -> ClauseMatchConfig:
        return ClauseMatchConfig(core_arguments=frozenset(self.core_arguments))
