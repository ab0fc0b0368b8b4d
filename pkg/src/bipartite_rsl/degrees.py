"""Per-node degree sequences for one node class."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class NodeClass(str, enum.Enum):
    MOVIE = "movie"
    ACTOR = "actor"


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Degree of every node of one class, zero-degree nodes included."""

    degrees: np.ndarray
    class_label: NodeClass = NodeClass.ACTOR

    def __post_init__(self):
        arr = np.asarray(self.degrees)
        if arr.ndim != 1:
            raise ValueError("degrees must be one-dimensional")
        if arr.size and not np.issubdtype(arr.dtype, np.integer):
            if not np.all(arr == np.floor(arr)):
                raise ValueError("degrees must be integers")
        arr = arr.astype(np.int64, copy=True)
        if arr.size and arr.min() < 0:
            raise ValueError("degrees must be non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "degrees", arr)
        object.__setattr__(self, "class_label", NodeClass(self.class_label))

    def __len__(self):
        return int(self.degrees.size)

    def __eq__(self, other):
        if not isinstance(other, DegreeSequence):
            return NotImplemented
        return self.class_label == other.class_label and np.array_equal(self.degrees, other.degrees)

    @property
    def total(self) -> int:
        return int(self.degrees.sum())

    def shifted(self, amount: int) -> "DegreeSequence":
        """Subtract ``amount`` from every degree; fails if any degree would go negative."""
        return DegreeSequence(self.degrees - amount, self.class_label)


def as_degree_array(degrees) -> np.ndarray:
    """Accept a DegreeSequence, ProjectedDegrees or plain sequence and return an int array."""
    arr = getattr(degrees, "degrees", degrees)
    return np.asarray(arr, dtype=np.int64)
