import math
from collections.abc import Iterable, Sequence

from numeric.node import Parameter


def sgd_step(params: Iterable[Parameter], lr: float) -> None:
    for param in params:
        param.value = param.value - lr * param.grad
        param.zero_grad()


def clip_grad_norm(params: Sequence[Parameter], max_norm: float) -> float:
    """Rescales all gradients together so their global L2 norm is at most max_norm.

    Returns the norm before clipping. max_norm <= 0 leaves gradients alone.
    """
    total = math.sqrt(sum(float((param.grad * param.grad).sum()) for param in params))
    if max_norm > 0 and total > max_norm:
        factor = max_norm / total
        for param in params:
            param.grad = param.grad * factor
    return total


def decayed_lr(epoch: int, base_lr: float, decay: float, decay_start: int) -> float:
    """Constant before decay_start, then multiplied by decay once per epoch from decay_start on."""
    if epoch < decay_start:
        return base_lr
    return base_lr * decay ** (epoch - decay_start + 1)
