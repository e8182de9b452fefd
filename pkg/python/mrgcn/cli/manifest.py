"""manifest.json written next to every command's outputs."""

import hashlib
import json
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from mrgcn_config import TOOL_VERSION


def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def input_hashes(paths: Iterable[Path]) -> dict[str, str]:
    """sha256 per file; directories contribute every file below them."""
    hashes = dict[str, str]()
    for path in paths:
        files = sorted(p for p in path.rglob("*") if p.is_file()) if path.is_dir() else [path]
        for file in files:
            hashes[str(file)] = file_digest(file)
    return hashes


@dataclass(frozen=True)
class RunManifest:
    command: str
    config: dict[str, Any]
    seed: int | None
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    tool_version: str = TOOL_VERSION

    def write(self, out_dir: Path) -> Path:
        path = out_dir / "manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")
        return path
