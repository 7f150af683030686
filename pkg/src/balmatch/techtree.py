"""Technology trees: nested worker requirements with ordered upgrades.

A tree vertex is a technology carrying the worker set needed to run it;
an edge is an upgrade to a strictly larger requirement. The certified
condition is that every worker's upgrades sit under a single vertex and
form a contiguous run of that vertex's ordered children.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .market import FirmPreference, Market, MarketError
from .matrices import ZeroOneMatrix, matrix_of_sets
from .prefs import primitive_acceptable_sets
from .market import acceptable_sets

Edge = tuple[str, str]  # (parent, child)


class TreeError(ValueError):
    """Malformed technology tree."""


@dataclass(frozen=True)
class TechnologyTree:
    """Rooted ordered tree; ``children`` order is the left-to-right order."""

    root: str
    worker_sets: dict[str, frozenset[str]]
    children: dict[str, tuple[str, ...]]

    def __post_init__(self):
        if self.root not in self.worker_sets:
            raise TreeError("root has no worker set")
        if self.worker_sets[self.root]:
            raise TreeError("the root technology must require no worker")
        seen = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self.children.get(v, ()):
                if c in seen:
                    raise TreeError(f"vertex {c} reachable twice")
                if c not in self.worker_sets:
                    raise TreeError(f"vertex {c} has no worker set")
                if not self.worker_sets[v] < self.worker_sets[c]:
                    raise TreeError(
                        f"upgrade {v}->{c} must strictly enlarge the worker set"
                    )
                seen.add(c)
                stack.append(c)
        if seen != set(self.worker_sets):
            raise TreeError("tree is not connected")

    def vertices(self) -> list[str]:
        """Vertices in depth-first outline order."""
        out, stack = [], [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children.get(v, ())))
        return out

    def edges(self) -> list[Edge]:
        out = []
        for v in self.vertices():
            out.extend((v, c) for c in self.children.get(v, ()))
        return out

    def workers(self) -> list[str]:
        """All workers, in first-appearance (outline) order."""
        seen: set[str] = set()
        out = []
        for v in self.vertices():
            for w in sorted(self.worker_sets[v]):
                if w not in seen:
                    seen.add(w)
                    out.append(w)
        return out

    def reordered(self, orders: dict[str, tuple[str, ...]]) -> "TechnologyTree":
        new = dict(self.children)
        for v, order in orders.items():
            if sorted(order) != sorted(self.children[v]):
                raise TreeError(f"reordering of {v} is not a permutation")
            new[v] = tuple(order)
        return TechnologyTree(self.root, self.worker_sets, new)


def upgrade_workers(e: Edge, t: TechnologyTree) -> frozenset[str]:
    """The workers an upgrade adds."""
    v, c = e
    if c not in t.children.get(v, ()):
        raise TreeError(f"unknown edge: {v}->{c}")
    return t.worker_sets[c] - t.worker_sets[v]


def engagement(w: str, t: TechnologyTree) -> list[Edge]:
    """All upgrades the worker takes part in, in outline order."""
    return [e for e in t.edges() if w in upgrade_workers(e, t)]


@dataclass(frozen=True)
class NeighbourCertificate:
    verdict: str  # PASS | FAIL
    worker: Optional[str] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "PASS"

    def render(self) -> str:
        if self.ok:
            return "PASS"
        return f"FAIL: worker {self.worker}: {self.detail}"

    def to_json(self) -> str:
        import json

        return json.dumps(
            {"verdict": self.verdict, "worker": self.worker, "detail": self.detail}
        )


def check_neighbour_condition(t: TechnologyTree) -> NeighbourCertificate:
    """Every worker's upgrades come from one vertex and are contiguous there."""
    for w in t.workers():
        eng = engagement(w, t)
        sources = {v for v, _ in eng}
        if len(sources) > 1:
            a, b = sorted(sources)[:2]
            return NeighbourCertificate(
                verdict="FAIL",
                worker=w,
                detail=f"engages in upgrades from distinct vertices {a} and {b}",
            )
        if len(eng) <= 1:
            continue
        (v,) = sources
        kids = t.children[v]
        positions = sorted(kids.index(c) for _, c in eng)
        gap = _first_gap(positions)
        if gap is not None:
            lo, mid, hi = gap
            return NeighbourCertificate(
                verdict="FAIL",
                worker=w,
                detail=(
                    f"upgrades {v}->{kids[lo]} and {v}->{kids[hi]} are separated "
                    f"by {v}->{kids[mid]}"
                ),
            )
    return NeighbourCertificate(verdict="PASS")


def _first_gap(positions: list[int]) -> Optional[tuple[int, int, int]]:
    have = set(positions)
    for lo, hi in zip(positions, positions[1:]):
        for mid in range(lo + 1, hi):
            if mid not in have:
                return lo, mid, hi
    return None


MAX_PERMUTE_CHILDREN = 6


def find_neighbour_ordering(t: TechnologyTree) -> Optional[TechnologyTree]:
    """Exhaustive child-reordering search for an order satisfying the
    contiguity condition, or None when no ordering works.

    Reordering cannot merge engagement sources, so a worker engaging at
    two vertices rules out every ordering immediately. Otherwise each
    vertex is solved independently.
    """
    per_vertex: dict[str, list[set[int]]] = {}
    for w in t.workers():
        eng = engagement(w, t)
        sources = {v for v, _ in eng}
        if len(sources) > 1:
            return None
        if len(eng) > 1:
            (v,) = sources
            kids = t.children[v]
            per_vertex.setdefault(v, []).append({kids.index(c) for _, c in eng})
    orders: dict[str, tuple[str, ...]] = {}
    for v, groups in per_vertex.items():
        kids = t.children[v]
        if len(kids) > MAX_PERMUTE_CHILDREN:
            raise TreeError(
                f"vertex {v} has more than {MAX_PERMUTE_CHILDREN} children; "
                "permutation search capped"
            )
        found = None
        for perm in itertools.permutations(range(len(kids))):
            pos = {orig: where for where, orig in enumerate(perm)}
            if all(_contiguous({pos[i] for i in g}) for g in groups):
                found = tuple(kids[i] for i in perm)
                break
        if found is None:
            return None
        orders[v] = found
    return t.reordered(orders)


def _contiguous(positions: set[int]) -> bool:
    return max(positions) - min(positions) + 1 == len(positions)


def worker_set_matrix(t: TechnologyTree) -> ZeroOneMatrix:
    """Indicator matrix of the distinct nonempty technology worker sets."""
    seen: set[frozenset[str]] = set()
    cols = []
    for v in t.vertices():
        s = t.worker_sets[v]
        if s and s not in seen:
            seen.add(s)
            cols.append(s)
    return matrix_of_sets(cols, t.workers())


def profile_from_tree(
    firm_vertices: dict[str, Iterable[str]], t: TechnologyTree
) -> dict[str, FirmPreference]:
    """Firm chains assembled from chosen technology vertices, in given order."""
    out = {}
    for f, vertex_chain in firm_vertices.items():
        sets = []
        for v in vertex_chain:
            if v not in t.worker_sets:
                raise TreeError(f"unknown vertex: {v}")
            sets.append(t.worker_sets[v])
        out[f] = FirmPreference(tuple(sets))
    return out


def sets_from_tree(
    f: str, m: Market, t: TechnologyTree, mode: str = "primitive"
) -> bool:
    """Whether f's (primitive) acceptable sets all appear as technology sets.

    Modes: ``primitive`` checks primitive acceptable sets, ``all`` checks
    every acceptable set, ``nonsingleton`` relaxes ``primitive`` to the
    non-singleton primitive sets only.
    """
    m.require_firm(f)
    if mode == "all":
        targets = acceptable_sets(f, m)
    elif mode == "primitive":
        targets = primitive_acceptable_sets(f, m)
    elif mode == "nonsingleton":
        targets = [s for s in primitive_acceptable_sets(f, m) if len(s) >= 2]
    else:
        raise ValueError(f"unknown mode: {mode}")
    tech = set(t.worker_sets.values())
    return all(s in tech for s in targets)


def market_sets_from_tree(m: Market, t: TechnologyTree, mode: str = "primitive") -> bool:
    """sets_from_tree over every firm of the market."""
    return all(sets_from_tree(f, m, t, mode) for f in m.firms)
