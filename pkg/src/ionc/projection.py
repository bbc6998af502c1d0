"""Latent projection of a DAG onto an observed subset of its nodes.

An observed pair gets a directed edge when one endpoint reaches the other
through unobserved nodes only, a bidirected edge when the pair instead shares
an unobserved common cause, and is absent otherwise.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Dag, Edge, MalformedGraphError, reachable_through, to_mask


class PairLabel(enum.Enum):
    FORWARD = "->"
    BACKWARD = "<-"
    BIDIRECTED = "<->"
    ABSENT = "none"

    def flipped(self) -> "PairLabel":
        if self is PairLabel.FORWARD:
            return PairLabel.BACKWARD
        if self is PairLabel.BACKWARD:
            return PairLabel.FORWARD
        return self


@dataclass(frozen=True)
class InputGraph:
    """A variable subset plus a label for every unordered pair inside it.

    ``labels`` is keyed by ``(a, b)`` with ``a < b``; FORWARD means ``a -> b``.
    """

    vars: tuple[int, ...]
    labels: dict = field(compare=True)

    __hash__ = None  # labels is a dict

    def __post_init__(self):
        vs = tuple(sorted(set(int(v) for v in self.vars)))
        if len(vs) != len(tuple(self.vars)):
            raise MalformedGraphError("duplicate variables in input graph")
        object.__setattr__(self, "vars", vs)
        members = set(vs)
        labels = {}
        for (a, b), lab in dict(self.labels).items():
            if a == b:
                raise MalformedGraphError(f"self-pair ({a},{a}) in input graph")
            if a not in members or b not in members:
                raise MalformedGraphError(f"pair ({a},{b}) not inside the input's variables")
            if a > b:
                a, b, lab = b, a, lab.flipped()
            if (a, b) in labels:
                raise MalformedGraphError(f"pair ({a},{b}) labelled twice")
            labels[a, b] = lab
        expected = len(vs) * (len(vs) - 1) // 2
        if len(labels) != expected:
            raise MalformedGraphError(
                f"incomplete labelling: {len(labels)} of {expected} pairs labelled"
            )
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(
        cls,
        vars: Iterable[int],
        directed: Iterable[Edge] = (),
        bidirected: Iterable[Edge] = (),
    ) -> "InputGraph":
        """Build an input graph where every pair not listed is ABSENT."""
        vs = sorted(set(vars))
        labels: dict = {}

        def put(a, b, lab):
            if a > b:
                a, b, lab = b, a, lab.flipped()
            if (a, b) in labels:
                raise MalformedGraphError(f"pair ({a},{b}) listed more than once")
            labels[a, b] = lab

        for a, b in directed:
            put(a, b, PairLabel.FORWARD)
        for a, b in bidirected:
            put(a, b, PairLabel.BIDIRECTED)
        members = set(vs)
        for (a, b) in labels:
            if a not in members or b not in members:
                raise MalformedGraphError(f"pair ({a},{b}) not inside the input's variables")
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                labels.setdefault((a, b), PairLabel.ABSENT)
        return cls(tuple(vs), labels)

    @property
    def mask(self) -> int:
        return to_mask(self.vars)

    def label(self, x: int, y: int) -> PairLabel:
        """Label of the pair seen from ``x`` (FORWARD means ``x -> y``)."""
        if x < y:
            return self.labels[x, y]
        return self.labels[y, x].flipped()

    @property
    def directed(self) -> list[Edge]:
        out = []
        for (a, b), lab in sorted(self.labels.items()):
            if lab is PairLabel.FORWARD:
                out.append((a, b))
            elif lab is PairLabel.BACKWARD:
                out.append((b, a))
        return sorted(out)

    @property
    def bidirected(self) -> list[Edge]:
        return sorted(p for p, lab in self.labels.items() if lab is PairLabel.BIDIRECTED)

    @property
    def absent(self) -> list[Edge]:
        return sorted(p for p, lab in self.labels.items() if lab is PairLabel.ABSENT)

    def relabel(self, perm) -> "InputGraph":
        return InputGraph.from_edges(
            [perm[v] for v in self.vars],
            [(perm[a], perm[b]) for a, b in self.directed],
            [(perm[a], perm[b]) for a, b in self.bidirected],
        )


def _observed_mask(g: Dag, observed) -> int:
    mask = observed if isinstance(observed, int) else to_mask(observed)
    if mask >> g.n:
        raise MalformedGraphError("observed set references nodes outside the graph")
    return mask


def dir_t(g: Dag, x: int, y: int, observed) -> bool:
    """Directed path ``x -> ... -> y`` whose intermediate nodes are all unobserved."""
    obs = _observed_mask(g, observed)
    if x == y:
        raise ValueError("x and y must differ")
    if not obs >> y & 1:
        raise ValueError(f"target {y} is not in the observed set")
    latent = ((1 << g.n) - 1) & ~obs
    return reachable_through(g, x, y, latent)


def _latent_reach(g: Dag, obs: int) -> list[set[int]]:
    """For every node v, the observed nodes it reaches through unobserved intermediates."""
    n = g.n
    out = []
    for v in range(n):
        found: set[int] = set()
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for c in g.children(u):
                if obs >> c & 1:
                    found.add(c)
                elif c not in seen:
                    seen.add(c)
                    stack.append(c)
        out.append(found)
    return out


def causal_conn(g: Dag, x: int, y: int, observed) -> bool:
    """Symmetric causal connection between observed ``x`` and ``y``: a latent-only
    directed path either way, or an unobserved common cause of both."""
    obs = _observed_mask(g, observed)
    if x == y:
        raise ValueError("x and y must differ")
    if not (obs >> x & 1 and obs >> y & 1):
        raise ValueError("x and y must both be observed")
    reach = _latent_reach(g, obs)
    if y in reach[x] or x in reach[y]:
        return True
    return any(
        not obs >> z & 1 and x in reach[z] and y in reach[z] for z in range(g.n)
    )


def latent_project(g: Dag, observed) -> InputGraph:
    """Marginalize ``g`` onto ``observed``, returning the fully labelled input graph."""
    obs = _observed_mask(g, observed)
    members = [v for v in range(g.n) if obs >> v & 1]
    if not members:
        raise ValueError("cannot project onto an empty observed set")
    reach = _latent_reach(g, obs)
    latent = [z for z in range(g.n) if not obs >> z & 1]
    labels = {}
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if b in reach[a]:
                lab = PairLabel.FORWARD
            elif a in reach[b]:
                lab = PairLabel.BACKWARD
            elif any(a in reach[z] and b in reach[z] for z in latent):
                lab = PairLabel.BIDIRECTED
            else:
                lab = PairLabel.ABSENT
            labels[a, b] = lab
    return InputGraph(tuple(members), labels)
