"""Core graph types: the variable universe, DAGs stored as bitset rows, and
the basic queries (acyclicity, restricted reachability, d-separation).

A graph over ``n`` nodes is held as a tuple of ``n`` integers; bit ``j`` of
``rows[i]`` is set iff the graph contains the edge ``i -> j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class MalformedGraphError(ValueError):
    """Raised for edges that reference nodes outside the graph or loop back on themselves."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Universe:
    """Ordered table of variable names; node ids are indices into ``names``."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if any(not isinstance(s, str) or not s for s in names):
            raise ValueError("variable names must be non-empty strings")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")

    def __len__(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    @classmethod
    def numbered(cls, n: int, prefix: str = "V") -> "Universe":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))


def _check_edges(edges: Iterable[Edge], n: int) -> list[Edge]:
    out = []
    for e in edges:
        a, b = e
        if not (0 <= a < n and 0 <= b < n):
            raise MalformedGraphError(f"edge {a}->{b} out of range for {n} nodes")
        out.append((int(a), int(b)))
    return out


def rows_from_edges(edges: Iterable[Edge], n: int) -> tuple[int, ...]:
    rows = [0] * n
    for a, b in _check_edges(edges, n):
        rows[a] |= 1 << b
    return tuple(rows)


def _rows_acyclic(rows: Sequence[int]) -> bool:
    # Kahn's algorithm on bitset rows.
    n = len(rows)
    indeg = [0] * n
    for r in rows:
        for j in iter_bits(r):
            indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for j in iter_bits(rows[v]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return seen == n


def is_acyclic(edges: Iterable[Edge], n: int) -> bool:
    """True iff the directed graph given by ``edges`` over ``n`` nodes has no cycle.

    Self-loops count as cycles.
    """
    return _rows_acyclic(rows_from_edges(edges, n))


@dataclass(frozen=True, order=False)
class Dag:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise MalformedGraphError(f"expected {self.n} rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(rows):
            if r & ~full or r < 0:
                raise MalformedGraphError(f"row {i} references nodes outside 0..{self.n - 1}")
            if r >> i & 1:
                raise MalformedGraphError(f"self-loop on node {i}")
        if not _rows_acyclic(rows):
            raise ValueError("graph contains a directed cycle")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Dag":
        return cls(n, rows_from_edges(edges, n))

    @classmethod
    def empty(cls, n: int) -> "Dag":
        return cls(n, (0,) * n)

    @property
    def edges(self) -> list[Edge]:
        return [(i, j) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def adjacent(self, a: int, b: int) -> bool:
        return self.has_edge(a, b) or self.has_edge(b, a)

    def children(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def parents(self, v: int) -> list[int]:
        return [i for i, r in enumerate(self.rows) if r >> v & 1]

    def bitstring(self) -> str:
        """Row-major adjacency bitstring; position ``i*n + j`` is the edge ``i -> j``."""
        return "".join(
            "1" if r >> j & 1 else "0" for r in self.rows for j in range(self.n)
        )

    def key(self) -> int:
        """Integer whose ascending order equals ascending :meth:`bitstring` order."""
        return canonical_key(self.rows, self.n)

    def relabel(self, perm: Sequence[int]) -> "Dag":
        """Map node ``i`` to ``perm[i]``."""
        return Dag.from_edges(self.n, [(perm[a], perm[b]) for a, b in self.edges])

    def __repr__(self):
        return f"Dag(n={self.n}, edges={self.edges})"


def canonical_key(rows: Sequence[int], n: int) -> int:
    key = 0
    for r in rows:
        r = int(r)
        rev = 0
        for j in range(n):
            rev = (rev << 1) | (r >> j & 1)
        key = (key << n) | rev
    return key


def descendants(g: Dag, v: int) -> int:
    """Bitmask of nodes reachable from ``v`` by a directed path of length >= 1."""
    seen = 0
    frontier = g.rows[v]
    while frontier:
        seen |= frontier
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.rows[u]
        frontier = nxt & ~seen
    return seen


def reachable_through(g: Dag, src: int, dst: int, allowed: Iterable[int] | int) -> bool:
    """True iff a directed path ``src -> ... -> dst`` exists whose intermediate
    vertices all lie in ``allowed`` (an iterable of node ids or a bitmask)."""
    if src == dst:
        raise ValueError("src and dst must differ")
    allowed_mask = allowed if isinstance(allowed, int) else to_mask(allowed)
    seen = 0
    frontier = 1 << src
    while frontier:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.rows[u]
        if nxt >> dst & 1:
            return True
        seen |= frontier
        frontier = nxt & allowed_mask & ~seen
    return False


def d_separated(g: Dag, x: int, y: int, z: Iterable[int]) -> bool:
    """Standard d-separation of ``x`` and ``y`` given ``z`` in a DAG.

    Reachability search over (node, direction) states ("Bayes ball"): a collider
    passes the ball iff it or one of its descendants is in ``z``.
    """
    z = set(z)
    if x == y or x in z or y in z:
        raise ValueError("x, y must be distinct and not in the conditioning set")
    for v in (x, y, *z):
        if not 0 <= v < g.n:
            raise MalformedGraphError(f"node {v} out of range")

    parents = [g.parents(v) for v in range(g.n)]
    # z together with all of its ancestors
    anc_z = set(z)
    stack = list(z)
    while stack:
        v = stack.pop()
        for p in parents[v]:
            if p not in anc_z:
                anc_z.add(p)
                stack.append(p)

    # "up": arrived from a child; "down": arrived from a parent
    visited = set()
    stack = [(x, "up")]
    while stack:
        v, d = stack.pop()
        if (v, d) in visited:
            continue
        visited.add((v, d))
        if v == y:
            return False
        if d == "up":
            if v in z:
                continue
            stack.extend((p, "up") for p in parents[v])
            stack.extend((c, "down") for c in g.children(v))
        else:
            if v not in z:
                stack.extend((c, "down") for c in g.children(v))
            if v in anc_z:
                stack.extend((p, "up") for p in parents[v])
    return True
