"""Matching matrices: one-hot maps from fine nodes to supernodes."""

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt
from coarsen.errors import MatchingError


@dataclass(frozen=True)
class MatchingMatrix:
    """Dense form of M (n_fine x n_coarse) with m_ij = 1 iff assignment[i] == j."""

    n_fine: int
    n_coarse: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.n_fine:
            raise MatchingError(f"assignment covers {len(self.assignment)} nodes, expected {self.n_fine}")
        if self.n_coarse > self.n_fine:
            raise MatchingError(f"{self.n_coarse} supernodes for {self.n_fine} nodes")
        if set(self.assignment) != set(range(self.n_coarse)):
            raise MatchingError("supernode indices must be dense in [0, n_coarse) and every supernode nonempty")

    @classmethod
    def identity(cls, n: int) -> "MatchingMatrix":
        return MatchingMatrix(n_fine=n, n_coarse=n, assignment=tuple(range(n)))

    @classmethod
    def from_groups(cls, n: int, groups: Iterable[Iterable[int]]) -> "MatchingMatrix":
        """Disjoint groups become supernodes, every other node a singleton; indices follow smallest member."""
        owner = list(range(n))
        for group in groups:
            members = sorted(group)
            for member in members:
                if owner[member] != member:
                    raise MatchingError(f"node {member} appears in two groups")
                owner[member] = members[0]
        anchors = sorted(set(owner))
        index = {anchor: j for j, anchor in enumerate(anchors)}
        return MatchingMatrix(n_fine=n, n_coarse=len(anchors), assignment=tuple(index[o] for o in owner))

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        groups: list[list[int]] = [[] for _ in range(self.n_coarse)]
        for i, j in enumerate(self.assignment):
            groups[j].append(i)
        return tuple(tuple(group) for group in groups)

    @property
    def is_identity(self) -> bool:
        return self.n_coarse == self.n_fine

    def sizes(self) -> npt.NDArray[np.int64]:
        return np.bincount(np.asarray(self.assignment, dtype=np.int64), minlength=self.n_coarse)

    def to_dense(self) -> npt.NDArray[np.int64]:
        dense = np.zeros((self.n_fine, self.n_coarse), dtype=np.int64)
        dense[np.arange(self.n_fine), np.asarray(self.assignment, dtype=np.int64)] = 1
        return dense

    def then(self, coarser: "MatchingMatrix") -> "MatchingMatrix":
        """Compose with the next matching: fine -> this level's supernode -> coarser supernode."""
        if coarser.n_fine != self.n_coarse:
            raise MatchingError(f"cannot compose {self.n_fine}->{self.n_coarse} with {coarser.n_fine}->{coarser.n_coarse}")
        return MatchingMatrix(
            n_fine=self.n_fine,
            n_coarse=coarser.n_coarse,
            assignment=tuple(coarser.assignment[j] for j in self.assignment),
        )


def anchors_by_smallest_member(matching: MatchingMatrix) -> tuple[int, ...]:
    return tuple(group[0] for group in matching.members)
