"""Constructive reductions between distance-game rulesets.

Each reduction takes a source game and produces a ReducedInstance: a new
graph containing the original vertices untouched (same names, same leading
indices), gadget machinery around them, fixed gadget stones as the starting
position, and the target ruleset. The intent, checked by the verifier
module rather than assumed here, is that play on the original vertices is
move-for-move the same game as the source.

Degenerate parameters that make the target coincide with the source (for
example a distance bound of 1) return the source instance unchanged with an
identity embedding instead of erroring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from .errors import NotBipartiteError, ParameterViolationError
from .gadgets import (
    GadgetInstance,
    _splice_edges,
    embed_gadget,
    forbidden_path,
    replace_all_edges,
    stones_position,
)
from .graph import Bipartition, Graph
from .rules import (
    Colour,
    Position,
    Ruleset,
    bigraph_node_kayles,
    col,
    distance_game,
    node_kayles,
    position_is_legal,
    snort,
)


@dataclass(frozen=True)
class ReducedInstance:
    """Output of one reduction, ready for solving and verification."""

    source_graph: Graph
    source_ruleset: Ruleset
    target_graph: Graph
    target_ruleset: Ruleset
    initial_position: Position
    embedded: tuple[tuple[str, str], ...]
    gadgets: tuple[GadgetInstance, ...]

    @property
    def embedded_map(self) -> dict[str, str]:
        return dict(self.embedded)

    @cached_property
    def source_to_target(self) -> tuple[int, ...]:
        """Target index of each source vertex, in source index order."""
        mapping = self.embedded_map
        return tuple(
            self.target_graph.index_of(mapping[name])
            for name in self.source_graph.names
        )

    @cached_property
    def embedded_mask(self) -> int:
        return sum(1 << t for t in self.source_to_target)

    def embed_position(self, pos: Position) -> Position:
        """Target position holding the gadget stones plus the mapped source stones."""
        blue, red = self.initial_position.blue, self.initial_position.red
        mapping = self.source_to_target
        for i, colour in pos.stones():
            bit = 1 << mapping[i]
            if colour is Colour.BLUE:
                blue |= bit
            else:
                red |= bit
        return Position(blue, red)


def _as_index_set(g: Graph, side: Iterable[int | str]) -> frozenset[int]:
    return frozenset(g.index_of(v) for v in side)


def _check_bipartition(g: Graph, left, right) -> Bipartition:
    left = _as_index_set(g, left)
    right = _as_index_set(g, right)
    if left & right:
        raise NotBipartiteError("sides overlap")
    if left | right != frozenset(range(g.vertex_count)):
        raise NotBipartiteError("sides do not cover every vertex")
    for i, j in g.edges():
        if (i in left) == (j in left):
            raise NotBipartiteError(
                f"edge {g.name_of(i)!r} -- {g.name_of(j)!r} stays inside one side"
            )
    return left, right


def _copy_original(g: Graph) -> Graph:
    new = Graph()
    for name in g.names:
        new.add_vertex(name)
    for i, j in g.edges():
        new.add_edge(i, j)
    return new


def _finish(source_graph: Graph, source_rs: Ruleset, target_graph: Graph,
            target_rs: Ruleset, gadgets: Iterable[GadgetInstance]) -> ReducedInstance:
    gadgets = tuple(gadgets)
    target_graph.freeze()
    source_graph.freeze()
    pos = stones_position(target_graph, gadgets)
    instance = ReducedInstance(
        source_graph=source_graph,
        source_ruleset=source_rs,
        target_graph=target_graph,
        target_ruleset=target_rs,
        initial_position=pos,
        embedded=tuple((name, name) for name in source_graph.names),
        gadgets=gadgets,
    )
    # Construction invariants; a failure here is a bug in the builder.
    assert position_is_legal(target_graph, target_rs, pos), "gadget stones clash"
    gadget_names = {v for gadget in gadgets for v in gadget.vertices}
    for i, _ in pos.stones():
        assert target_graph.name_of(i) in gadget_names, "stray stone outside gadgets"
    for idx, name in enumerate(source_graph.names):
        assert target_graph.index_of(name) == idx, "original vertices must keep indices"
    return instance


def _identity(g: Graph, source_rs: Ruleset, target_rs: Ruleset) -> ReducedInstance:
    return _finish(g, source_rs, _copy_original(g), target_rs, ())


def _edge_gadget_list(gadget_map: dict[tuple[int, int], GadgetInstance]) -> list[GadgetInstance]:
    return [gadget_map[e] for e in sorted(gadget_map)]


def reduce_bgnk_to_d12(g: Graph, left, right, s: Iterable[int] = ()) -> ReducedInstance:
    """Two-sided Node-Kayles to the distance game with d = {1,2}.

    Each non-empty side gets a small anchoring gadget whose fixed stone of
    that side's colour sits at distance two from every side vertex, locking
    the side to its player. With s empty the anchor needs a second, opposite
    stone two steps further out to make its own attachment vertex
    unplayable; with s = {1} the single stone already does that.
    """
    s = frozenset(s)
    if s not in (frozenset(), frozenset({1})):
        raise ParameterViolationError("same-colour set must be {} or {1}")
    left, right = _check_bipartition(g, left, right)

    new = _copy_original(g)
    gadgets: list[GadgetInstance] = []
    gid = 0
    for side, colour, label in ((left, Colour.BLUE, "left"), (right, Colour.RED, "right")):
        if not side:
            continue
        near = f"g{gid}.{colour.value}"
        far_colour = colour.opposite
        if s:
            attach = f"g{gid}.v"
            gadget = GadgetInstance(
                vertices=(attach, near),
                edges=((attach, near),),
                precoloured=((near, colour),),
                ports=(("attach", attach),),
                origin=f"{label} side anchor",
            )
        else:
            attach = f"g{gid}.v2"
            mid = f"g{gid}.v1"
            far = f"g{gid}.{far_colour.value}"
            gadget = GadgetInstance(
                vertices=(attach, near, mid, far),
                edges=((attach, near), (attach, mid), (mid, far)),
                precoloured=((near, colour), (far, far_colour)),
                ports=(("attach", attach),),
                origin=f"{label} side anchor",
            )
        embed_gadget(new, gadget)
        for u in sorted(side):
            new.add_edge(g.name_of(u), attach)
        gadgets.append(gadget)
        gid += 1

    return _finish(
        g, bigraph_node_kayles(left, right), new, distance_game({1, 2}, s), gadgets
    )


def reduce_snort_family(g: Graph, n: int, s: Iterable[int] = ()) -> ReducedInstance:
    """Adjacency-only cross-colour blocking to blocking at all distances up to n.

    Splices every edge with a path of n-1 size-n blockers, stretching former
    neighbours to distance exactly n. Any same-colour set with maximum below
    n rides along for free.
    """
    s = frozenset(s)
    if n < 1:
        raise ParameterViolationError("n must be >= 1")
    if max(s, default=0) >= n:
        raise ParameterViolationError("same-colour set must have max below n")
    target = distance_game(range(1, n + 1), s)
    if n == 1:
        return _identity(g, snort(), target)
    new, gadget_map = replace_all_edges(g, n - 1, n)
    return _finish(g, snort(), new, target, _edge_gadget_list(gadget_map))


def reduce_node_kayles_equalmax(g: Graph, d: Iterable[int], s: Iterable[int]) -> ReducedInstance:
    """Node-Kayles to any game whose two distance sets share their maximum m,
    provided one of them is the full interval {1..m}.

    Same edge splice as the cross-colour family; since m is in both sets, a
    stone on a former edge endpoint blocks the other endpoint for both
    players, which is exactly the Node-Kayles constraint.
    """
    d, s = frozenset(d), frozenset(s)
    if not d or not s:
        raise ParameterViolationError("both distance sets must be non-empty")
    m = max(d)
    if max(s) != m:
        raise ParameterViolationError("the two sets must share their maximum")
    interval = frozenset(range(1, m + 1))
    if d != interval and s != interval:
        raise ParameterViolationError("one set must be the full interval up to the maximum")
    target = distance_game(d, s)
    if m == 1:
        return _identity(g, node_kayles(), target)
    new, gadget_map = replace_all_edges(g, m - 1, m)
    return _finish(g, node_kayles(), new, target, _edge_gadget_list(gadget_map))


def reduce_col_family(g: Graph, k: int, d: Iterable[int] = ()) -> ReducedInstance:
    """Adjacency-only same-colour blocking to blocking at all distances up to k.

    Mirror of the cross-colour family with the two set roles swapped: edges
    become paths of k-1 size-k blockers, and any cross-colour set with
    maximum below k has no effect on the original vertices.
    """
    d = frozenset(d)
    if k < 1:
        raise ParameterViolationError("k must be >= 1")
    if max(d, default=0) >= k:
        raise ParameterViolationError("cross-colour set must have max below k")
    target = distance_game(d, range(1, k + 1))
    if k == 1:
        return _identity(g, col(), target)
    new, gadget_map = replace_all_edges(g, k - 1, k)
    return _finish(g, col(), new, target, _edge_gadget_list(gadget_map))


def reduce_bgnk_window(g: Graph, left, right, d: Iterable[int], k: int,
                       allow_out_of_range: bool = False) -> ReducedInstance:
    """Two-sided Node-Kayles to games with s = {1..k} and max(d) = n, n < k < 2n.

    Edges are spliced with paths of n-1 size-k blockers (the same-colour set
    is the interval that powers the blockers), putting former neighbours at
    distance n. Each side vertex is then anchored through its own path of
    k-1 blockers to one shared stone per side, exactly k away: the stone's
    colour blocks that side for the same-coloured opponent stone set via s,
    while d cannot reach it because max(d) = n < k.

    The upper bound k < 2n matters: two same-side vertices with a common
    neighbour end up 2n apart, and if k were 2n or more a stone on one would
    wrongly block the other through s. `allow_out_of_range` builds such an
    instance anyway so the verifier can exhibit the failure.
    """
    d = frozenset(d)
    if not d:
        raise ParameterViolationError("cross-colour set must be non-empty")
    n = max(d)
    if not 1 < n < k:
        raise ParameterViolationError("need 1 < max(d) < k")
    if k >= 2 * n and not allow_out_of_range:
        raise ParameterViolationError(
            f"k = {k} >= 2*max(d) = {2 * n}: same-side vertices sharing a neighbour sit "
            f"{2 * n} apart after the splice, within the same-colour range; the "
            "construction is unsound there (pass allow_out_of_range to build it anyway)"
        )
    left, right = _check_bipartition(g, left, right)

    new, gadget_map = _splice_edges(g, list(g.edges()), n - 1, k)
    gadgets = _edge_gadget_list(gadget_map)
    gid = len(gadgets)
    for side, colour, label in ((left, Colour.RED, "left"), (right, Colour.BLUE, "right")):
        # The shared stone carries the colour the side may NOT take.
        if not side:
            continue
        anchors = []
        for u in sorted(side):
            fp = forbidden_path(
                k - 1, k, prefix=f"g{gid}",
                origin=f"{label} side anchor for {g.name_of(u)}",
            )
            embed_gadget(new, fp)
            new.add_edge(g.name_of(u), fp.port("left"))
            anchors.append(fp)
            gid += 1
        stone = f"g{gid}.{colour.value}"
        stone_gadget = GadgetInstance(
            vertices=(stone,),
            edges=(),
            precoloured=((stone, colour),),
            ports=(),
            origin=f"{label} side shared stone",
        )
        embed_gadget(new, stone_gadget)
        for fp in anchors:
            new.add_edge(fp.port("right"), stone)
        gadgets.extend(anchors)
        gadgets.append(stone_gadget)
        gid += 1

    return _finish(
        g,
        bigraph_node_kayles(left, right),
        new,
        distance_game(d, range(1, k + 1)),
        gadgets,
    )


# -- registry (used by the verifier corpora and the CLI) ----------------------


@dataclass(frozen=True)
class ReductionSpec:
    """How to drive one reduction generically from (graph, params)."""

    name: str
    bipartite: bool
    param_types: tuple[tuple[str, str], ...]  # (param name, "int"|"set"|"flag")
    build: Callable[[Graph, Bipartition | None, dict], ReducedInstance]


def _build_bgnk_d12(g, bipartition, params):
    left, right = bipartition
    return reduce_bgnk_to_d12(g, left, right, params.get("s", frozenset()))


def _build_snort_family(g, bipartition, params):
    return reduce_snort_family(g, params["n"], params.get("s", frozenset()))


def _build_equalmax(g, bipartition, params):
    return reduce_node_kayles_equalmax(g, params["d"], params["s"])


def _build_col_family(g, bipartition, params):
    return reduce_col_family(g, params["k"], params.get("d", frozenset()))


def _build_bgnk_window(g, bipartition, params):
    left, right = bipartition
    return reduce_bgnk_window(
        g, left, right, params["d"], params["k"],
        allow_out_of_range=params.get("allow_out_of_range", False),
    )


REDUCTIONS: dict[str, ReductionSpec] = {
    spec.name: spec
    for spec in (
        ReductionSpec("bgnk-d12", True, (("s", "set"),), _build_bgnk_d12),
        ReductionSpec("snort-family", False, (("n", "int"), ("s", "set")), _build_snort_family),
        ReductionSpec("node-kayles-equalmax", False, (("d", "set"), ("s", "set")), _build_equalmax),
        ReductionSpec("col-family", False, (("k", "int"), ("d", "set")), _build_col_family),
        ReductionSpec(
            "bgnk-window", True,
            (("d", "set"), ("k", "int"), ("allow_out_of_range", "flag")),
            _build_bgnk_window,
        ),
    )
}
