"""Checkpoint file: u64 header length, JSON header, little-endian float64 payload.

Parameters are written in the order given by the caller (model blocks, their
layers, W before b, then the relation head).
"""

import json
import struct
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Final

import numpy as np
from gcn_model.errors import CheckpointError
from numeric import Matrix, Parameter

FORMAT_VERSION: Final[int] = 1
_LENGTH: Final = struct.Struct("<Q")


def save_checkpoint(path: Path, header: dict[str, Any], params: Sequence[Parameter]) -> None:
    full_header = {
        **header,
        "format": FORMAT_VERSION,
        "parameters": [{"name": param.name, "shape": list(param.shape)} for param in params],
    }
    header_bytes = json.dumps(full_header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as checkpoint_file:
        checkpoint_file.write(_LENGTH.pack(len(header_bytes)))
        checkpoint_file.write(header_bytes)
        for param in params:
            checkpoint_file.write(np.ascontiguousarray(param.value, dtype="<f8").tobytes())


def _parameter_table(header: dict[str, Any], path: Path) -> list[tuple[str, int, int]]:
    table = list[tuple[str, int, int]]()
    try:
        for entry in header["parameters"]:
            name, shape = str(entry["name"]), entry["shape"]
            if not (isinstance(shape, list) and len(shape) == 2 and all(isinstance(dim, int) and dim >= 0 for dim in shape)):
                raise CheckpointError(f"checkpoint {path} gives parameter {name} the shape {shape!r}")
            table.append((name, shape[0], shape[1]))
    except (KeyError, TypeError) as e:
        raise CheckpointError(f"checkpoint {path} has a malformed parameter table: {e!r}") from e
    return table


def load_checkpoint(path: Path) -> tuple[dict[str, Any], list[Matrix]]:
    try:
        raw = path.read_bytes()
        (header_length,) = _LENGTH.unpack_from(raw, 0)
        header = json.loads(raw[_LENGTH.size:_LENGTH.size + header_length].decode("utf-8"))
    except (OSError, struct.error, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError(f"unreadable checkpoint {path}: {e}") from e
    if not isinstance(header, dict) or header.get("format") != FORMAT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format in {path}")
    arrays = list[Matrix]()
    offset = _LENGTH.size + header_length
    for name, rows, cols in _parameter_table(header, path):
        size = rows * cols * 8
        if offset + size > len(raw):
            raise CheckpointError(f"truncated checkpoint {path} at parameter {name}")
        arrays.append(np.frombuffer(raw, dtype="<f8", count=rows * cols, offset=offset).reshape(rows, cols).astype(np.float64))
        offset += size
    if offset != len(raw):
        raise CheckpointError(f"{len(raw) - offset} trailing bytes in checkpoint {path}")
    return header, arrays


def restore_parameters(params: Sequence[Parameter], header: dict[str, Any], arrays: Sequence[Matrix]) -> None:
    expected = [(param.name, list(param.shape)) for param in params]
    stored = [(entry["name"], list(entry["shape"])) for entry in header["parameters"]]
    if expected != stored:
        raise CheckpointError(f"checkpoint parameters {stored} do not match model parameters {expected}")
    for param, array in zip(params, arrays):
        param.assign(array)
