"""Rulesets, positions, and move legality for distance games.

A ruleset is a pair of forbidden-distance sets: placing a stone is illegal
at any distance in `d` from an opposite-colour stone and at any distance in
`s` from a same-colour stone. The restricted two-sided variant layers an
ownership map on top of the all-distances-one ruleset, so one legality code
path serves every game.

`is_legal` is the reference implementation (it walks the ball of radius
max(d | s) around the candidate vertex). `LegalityIndex` precomputes
per-vertex forbidden-witness bitmasks for the solver and verifier; it must
stay observationally equivalent to `is_legal` and is tested against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import IllegalMoveError, InvalidParameterError
from .graph import Graph


class Colour(Enum):
    BLUE = "B"
    RED = "R"

    @property
    def opposite(self) -> "Colour":
        return Colour.RED if self is Colour.BLUE else Colour.BLUE


class Player(Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def colour(self) -> Colour:
        return Colour.BLUE if self is Player.LEFT else Colour.RED

    @property
    def opponent(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT


@dataclass(frozen=True)
class Ownership:
    """Which player may occupy which vertices (indices into one fixed graph)."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        if self.left & self.right:
            raise InvalidParameterError("ownership sides must be disjoint")

    def side(self, player: Player) -> frozenset[int]:
        return self.left if player is Player.LEFT else self.right

    def covers(self, n: int) -> bool:
        return self.left | self.right == frozenset(range(n))

    def swapped(self) -> "Ownership":
        return Ownership(self.right, self.left)


@dataclass(frozen=True)
class Ruleset:
    """Forbidden opposite-colour distances `d`, same-colour distances `s`.

    `ownership` is present exactly for the two-sided restricted variant,
    which additionally fixes d = s = {1}.
    """

    d: frozenset[int]
    s: frozenset[int]
    ownership: Ownership | None = None

    def __post_init__(self):
        object.__setattr__(self, "d", frozenset(self.d))
        object.__setattr__(self, "s", frozenset(self.s))
        for x in self.d | self.s:
            if not isinstance(x, int) or x < 1:
                raise InvalidParameterError("distance sets must hold integers >= 1")
        if self.ownership is not None and (self.d != {1} or self.s != {1}):
            raise InvalidParameterError("ownership requires d = s = {1}")

    @property
    def variant(self) -> str:
        return "bigraph" if self.ownership is not None else "distance"

    @property
    def max_radius(self) -> int:
        """Largest forbidden distance; 0 when both sets are empty."""
        return max(self.d | self.s, default=0)

    def forbidden(self, colour_placed: Colour, colour_seen: Colour) -> frozenset[int]:
        return self.s if colour_placed is colour_seen else self.d


def distance_game(d: Iterable[int], s: Iterable[int]) -> Ruleset:
    """General ruleset from explicit forbidden-distance sets."""
    return Ruleset(frozenset(d), frozenset(s))


def snort() -> Ruleset:
    """Adjacent vertices may not take different colours."""
    return Ruleset(frozenset({1}), frozenset())


def col() -> Ruleset:
    """Adjacent vertices may not take the same colour."""
    return Ruleset(frozenset(), frozenset({1}))


def node_kayles() -> Ruleset:
    """No stone adjacent to any other stone; impartial."""
    return Ruleset(frozenset({1}), frozenset({1}))


def n_snort(n: int) -> Ruleset:
    """Opposite colours forbidden at every distance up to n."""
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    return Ruleset(frozenset(range(1, n + 1)), frozenset())


def k_col(k: int) -> Ruleset:
    """Same colours forbidden at every distance up to k."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    return Ruleset(frozenset(), frozenset(range(1, k + 1)))


def bigraph_node_kayles(left: Iterable[int], right: Iterable[int]) -> Ruleset:
    """Node-Kayles where Left owns one side of a bipartition, Right the other."""
    return Ruleset(
        frozenset({1}), frozenset({1}), Ownership(frozenset(left), frozenset(right))
    )


@dataclass(frozen=True)
class Position:
    """Partial two-colouring, stored as bitmasks over dense vertex indices."""

    blue: int = 0
    red: int = 0

    def __post_init__(self):
        if self.blue & self.red:
            raise InvalidParameterError("a vertex cannot hold both colours")

    @property
    def occupied(self) -> int:
        return self.blue | self.red

    def colour_at(self, i: int) -> Colour | None:
        bit = 1 << i
        if self.blue & bit:
            return Colour.BLUE
        if self.red & bit:
            return Colour.RED
        return None

    def is_empty(self, i: int) -> bool:
        return not (self.occupied >> i) & 1

    def place(self, i: int, colour: Colour) -> "Position":
        bit = 1 << i
        if colour is Colour.BLUE:
            return Position(self.blue | bit, self.red)
        return Position(self.blue, self.red | bit)

    def stones(self) -> Iterator[tuple[int, Colour]]:
        """Occupied indices with their colours, ascending."""
        mask = self.occupied
        while mask:
            bit = mask & -mask
            i = bit.bit_length() - 1
            yield i, Colour.BLUE if self.blue & bit else Colour.RED
            mask ^= bit

    @property
    def stone_count(self) -> int:
        return self.occupied.bit_count()

    def swap_colours(self) -> "Position":
        return Position(self.red, self.blue)


def _owned(rs: Ruleset, i: int, player: Player) -> bool:
    if rs.ownership is None:
        return True
    if i in rs.ownership.side(player):
        return True
    if i in rs.ownership.side(player.opponent):
        return False
    raise InvalidParameterError(f"ownership map does not cover vertex index {i}")


def is_legal(g: Graph, rs: Ruleset, pos: Position, v: int | str, player: Player) -> bool:
    """Whether `player` may place a stone on `v` in `pos`.

    Reference implementation: only stones inside the ball of radius
    max(d | s) around v can forbid the move, so the scan stops there.
    Unreachable vertices never match a forbidden distance.
    """
    i = g.index_of(v)
    if pos.colour_at(i) is not None:
        return False
    if not _owned(rs, i, player):
        return False
    radius = rs.max_radius
    if radius == 0:
        return True
    own = player.colour
    for w, dist in g.ball(i, radius).items():
        if dist == 0:
            continue
        seen = pos.colour_at(w)
        if seen is None:
            continue
        if dist in rs.forbidden(own, seen):
            return False
    return True


def legal_moves(g: Graph, rs: Ruleset, pos: Position, player: Player) -> list[int]:
    """Indices of all legal placements for `player`, ascending."""
    return [i for i in range(g.vertex_count) if is_legal(g, rs, pos, i, player)]


def apply_move(g: Graph, rs: Ruleset, pos: Position, v: int | str, player: Player) -> Position:
    """New position with `player`'s stone on `v`; the input is unchanged."""
    i = g.index_of(v)
    if not is_legal(g, rs, pos, i, player):
        raise IllegalMoveError(f"{player.name} cannot play {g.name_of(i)!r}")
    return pos.place(i, player.colour)


def position_is_legal(g: Graph, rs: Ruleset, pos: Position) -> bool:
    """Whether a standalone position violates no distance or ownership rule."""
    stones = list(pos.stones())
    for i, colour in stones:
        if rs.ownership is not None:
            player = Player.LEFT if colour is Colour.BLUE else Player.RIGHT
            if i not in rs.ownership.side(player):
                return False
    radius = rs.max_radius
    if radius == 0:
        return True
    for i, colour in stones:
        for w, dist in g.ball(i, radius).items():
            if dist == 0 or w <= i:
                continue
            seen = pos.colour_at(w)
            if seen is not None and dist in rs.forbidden(colour, seen):
                return False
    return True


class LegalityIndex:
    """Per-vertex forbidden-witness bitmasks for one (graph, ruleset) pair.

    For each vertex, `d_mask` collects the vertices whose stones of the
    opposite colour would forbid a placement there, `s_mask` the same-colour
    witnesses. A legality test is then three mask intersections. Freezes the
    graph on construction; safe to share once built.
    """

    __slots__ = ("graph", "ruleset", "_d_mask", "_s_mask", "_allowed", "_all")

    def __init__(self, g: Graph, rs: Ruleset):
        g.freeze()
        self.graph = g
        self.ruleset = rs
        n = g.vertex_count
        radius = rs.max_radius
        d_mask = [0] * n
        s_mask = [0] * n
        if radius:
            for i in range(n):
                for w, dist in g.ball(i, radius).items():
                    if dist:
                        if dist in rs.d:
                            d_mask[i] |= 1 << w
                        if dist in rs.s:
                            s_mask[i] |= 1 << w
        self._d_mask = d_mask
        self._s_mask = s_mask
        self._all = (1 << n) - 1
        if rs.ownership is None:
            self._allowed = {Player.LEFT: self._all, Player.RIGHT: self._all}
        else:
            if not rs.ownership.covers(n):
                raise InvalidParameterError("ownership map must cover every vertex")
            self._allowed = {
                Player.LEFT: sum(1 << i for i in rs.ownership.left),
                Player.RIGHT: sum(1 << i for i in rs.ownership.right),
            }

    def is_legal(self, pos: Position, i: int, player: Player) -> bool:
        bit = 1 << i
        if (pos.blue | pos.red) & bit or not self._allowed[player] & bit:
            return False
        own, opp = (
            (pos.blue, pos.red) if player is Player.LEFT else (pos.red, pos.blue)
        )
        return not self._d_mask[i] & opp and not self._s_mask[i] & own

    def legal_moves_mask(self, pos: Position, player: Player, candidates: int | None = None) -> int:
        scan = self._all if candidates is None else candidates
        scan &= ~(pos.blue | pos.red) & self._allowed[player]
        own, opp = (
            (pos.blue, pos.red) if player is Player.LEFT else (pos.red, pos.blue)
        )
        d_mask, s_mask = self._d_mask, self._s_mask
        out = 0
        while scan:
            bit = scan & -scan
            i = bit.bit_length() - 1
            if not d_mask[i] & opp and not s_mask[i] & own:
                out |= bit
            scan ^= bit
        return out

    def legal_moves(self, pos: Position, player: Player, candidates: int | None = None) -> list[int]:
        """Legal placement indices, ascending, optionally limited to a mask."""
        mask = self.legal_moves_mask(pos, player, candidates)
        out = []
        while mask:
            bit = mask & -mask
            out.append(bit.bit_length() - 1)
            mask ^= bit
        return out
