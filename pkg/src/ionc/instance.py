from __future__ import annotations

import warnings
from dataclasses import dataclass

from .graph import MalformedGraphError, Universe
from .projection import InputGraph


class OverlapWarning(UserWarning):
    """The inputs' variable sets do not form a connected overlap structure."""


@dataclass(frozen=True)
class Instance:
    universe: Universe
    inputs: tuple[InputGraph, ...]

    __hash__ = None

    def __post_init__(self):
        inputs = tuple(self.inputs)
        object.__setattr__(self, "inputs", inputs)
        n = len(self.universe)
        if not inputs:
            raise MalformedGraphError("an instance needs at least one input graph")
        covered = set()
        for t in inputs:
            if t.vars and (t.vars[0] < 0 or t.vars[-1] >= n):
                raise MalformedGraphError("input graph references nodes outside the universe")
            covered.update(t.vars)
        if covered != set(range(n)):
            missing = [self.universe.names[v] for v in sorted(set(range(n)) - covered)]
            raise MalformedGraphError(f"variables not measured by any input: {missing}")
        if not overlap_connected(inputs):
            warnings.warn("overlap graph of the inputs is not connected", OverlapWarning, stacklevel=3)

    @property
    def n(self) -> int:
        return len(self.universe)


def overlap_connected(inputs) -> bool:
    """True iff the graph linking inputs with intersecting variable sets is connected."""
    sets = [set(t.vars) if hasattr(t, "vars") else set(t) for t in inputs]
    if len(sets) <= 1:
        return True
    reached = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, s in enumerate(sets):
            if j not in reached and sets[i] & s:
                reached.add(j)
                stack.append(j)
    return len(reached) == len(sets)
