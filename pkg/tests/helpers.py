"""Independent oracles shared by the test modules.

These deliberately avoid the library's optimized paths: distances come from
a local BFS over the adjacency lists, legality from a full recompute, and
game values from a plain unmemoized recursion through the public rules API.
"""

from __future__ import annotations

import random
from collections import deque

from distance_games import Graph, Player, Position, Ruleset, distance_game
from distance_games import apply_move, is_legal


def build_graph(names, edges) -> Graph:
    g = Graph()
    for name in names:
        g.add_vertex(name)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def bfs_distance(g: Graph, u, v):
    """Plain BFS, written against neighbors() only."""
    src, dst = g.index_of(u), g.index_of(v)
    dist = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nxt in g.neighbors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist.get(dst)


def naive_is_legal(g: Graph, rs: Ruleset, pos: Position, v, player: Player) -> bool:
    """Legality by recomputing a full BFS distance to every stone."""
    i = g.index_of(v)
    if pos.colour_at(i) is not None:
        return False
    if rs.ownership is not None and i not in rs.ownership.side(player):
        return False
    own = player.colour
    for w, colour in pos.stones():
        dist = bfs_distance(g, i, w)
        if dist is None:
            continue
        forbidden = rs.s if colour is own else rs.d
        if dist in forbidden:
            return False
    return True


def naive_wins(g: Graph, rs: Ruleset, pos: Position, player: Player) -> bool:
    """Unmemoized recursion over every legal move sequence."""
    for i in range(g.vertex_count):
        if is_legal(g, rs, pos, i, player):
            if not naive_wins(g, rs, apply_move(g, rs, pos, i, player), player.opponent):
                return True
    return False


def random_ruleset(rng: random.Random, max_radius: int = 3) -> Ruleset:
    universe = range(1, max_radius + 1)
    d = frozenset(x for x in universe if rng.random() < 0.5)
    s = frozenset(x for x in universe if rng.random() < 0.5)
    return distance_game(d, s)


def random_legal_position(g: Graph, rs: Ruleset, rng: random.Random,
                          max_plies: int | None = None) -> Position:
    """Random playout from the empty position; always engine-reachable."""
    if max_plies is None:
        max_plies = g.vertex_count
    pos = Position()
    player = rng.choice([Player.LEFT, Player.RIGHT])
    for _ in range(rng.randrange(max_plies + 1)):
        moves = [i for i in range(g.vertex_count) if is_legal(g, rs, pos, i, player)]
        if not moves:
            break
        pos = apply_move(g, rs, pos, rng.choice(moves), player)
        player = player.opponent
    return pos


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    from itertools import combinations

    g = Graph()
    for i in range(n):
        g.add_vertex(f"v{i}")
    for bit, (i, j) in enumerate(combinations(range(n), 2)):
        if mask >> bit & 1:
            g.add_edge(i, j)
    return g
