import numpy as np
import numpy.typing as npt
from scipy.special import log_softmax, softmax


def cross_entropy(logits: npt.ArrayLike, label: int) -> tuple[float, npt.NDArray[np.float64]]:
    """-log softmax(logits)[label] and its gradient softmax - onehot, shaped like logits."""
    values = np.asarray(logits, dtype=np.float64)
    flat = values.reshape(-1)
    if not 0 <= label < flat.size:
        raise ValueError(f"label {label} outside [0, {flat.size})")
    loss = -float(log_softmax(flat)[label])
    grad = softmax(flat)
    grad[label] -= 1.0
    return loss, grad.reshape(values.shape)
