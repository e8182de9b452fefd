"""Mention, entity and relation annotations carried by the JSON sidecar."""

import json
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any

from ingest.errors import SidecarError


class TaskKind(Enum):
    MENTION_LEVEL = "mention"
    ENTITY_LEVEL = "entity"


@dataclass(frozen=True)
class MentionSpan:
    start: int
    end: int
    entity_id: str

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise SidecarError(f"invalid mention span [{self.start}, {self.end}) of entity {self.entity_id}")

    def tokens(self) -> range:
        return range(self.start, self.end)


@dataclass(frozen=True)
class EntityCluster:
    entity_id: str
    mentions: tuple[MentionSpan, ...]

    def __post_init__(self):
        if not self.mentions:
            raise SidecarError(f"entity {self.entity_id} has no mentions")


@dataclass(frozen=True)
class RelationInstance:
    doc_id: str
    entities: tuple[EntityCluster, ...]
    label: int
    task: TaskKind = TaskKind.ENTITY_LEVEL

    def __post_init__(self):
        if len(self.entities) < 2:
            raise SidecarError(f"relation instance in {self.doc_id} needs at least 2 entities")

    def validate(self, *, token_count: int, num_classes: int | None = None) -> None:
        for cluster in self.entities:
            for span in cluster.mentions:
                if span.end > token_count:
                    raise SidecarError(
                        f"mention [{span.start}, {span.end}) of {span.entity_id} exceeds {token_count} tokens in {self.doc_id}"
                    )
        if num_classes is not None and not 0 <= self.label < num_classes:
            raise SidecarError(f"label {self.label} outside [0, {num_classes}) in {self.doc_id}")


@dataclass(frozen=True)
class Sidecar:
    doc_id: str
    coref: tuple[tuple[int, int], ...]
    instances: tuple[RelationInstance, ...]


def _entity(raw: Mapping[str, Any]) -> EntityCluster:
    entity_id = str(raw["id"])
    return EntityCluster(
        entity_id=entity_id,
        mentions=tuple(MentionSpan(int(start), int(end), entity_id) for start, end in raw["mentions"]),
    )


def _instance(doc_id: str, raw: Mapping[str, Any]) -> RelationInstance:
    return RelationInstance(
        doc_id=doc_id,
        entities=tuple(_entity(entity) for entity in raw["entities"]),
        label=int(raw["label"]),
        task=TaskKind(raw.get("task", TaskKind.ENTITY_LEVEL.value)),
    )


def parse_sidecar(text: str, *, token_count: int | None = None) -> Sidecar:
    try:
        raw = json.loads(text)
        doc_id = str(raw["doc_id"])
        coref = tuple((int(a), int(b)) for a, b in raw.get("coref", []))
        instances = tuple(_instance(doc_id, instance) for instance in raw.get("instances", []))
    except SidecarError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SidecarError(f"malformed sidecar: {e!r}") from e
    for a, b in coref:
        if a == b:
            raise SidecarError(f"coreference pair ({a}, {b}) links a token to itself in {doc_id}")
    if token_count is not None:
        for a, b in coref:
            if not (0 <= a < token_count and 0 <= b < token_count):
                raise SidecarError(f"coreference pair ({a}, {b}) out of range in {doc_id}")
        for instance in instances:
            instance.validate(token_count=token_count)
    return Sidecar(doc_id=doc_id, coref=coref, instances=instances)


def sidecar_to_json(sidecar: Sidecar) -> str:
    return json.dumps({
        "doc_id": sidecar.doc_id,
        "coref": [list(pair) for pair in sidecar.coref],
        "instances": [
            {
                "entities": [
                    {"id": cluster.entity_id, "mentions": [[m.start, m.end] for m in cluster.mentions]}
                    for cluster in instance.entities
                ],
                "label": instance.label,
                "task": instance.task.value,
            }
            for instance in sidecar.instances
        ],
    }, indent=2)
