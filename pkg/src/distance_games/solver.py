"""Exact game-tree search for distance games under normal play.

Depth-first minimax over all legal placements, memoized in a transposition
table keyed by the two colour bitmasks plus the player to move. Moves are
tried in ascending vertex index, so results and reported best moves are
deterministic. Gadget vertices in reduced instances get no special
treatment; if they are unplayable that has to come out of the rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graph import Graph
from .rules import LegalityIndex, Player, Position, Ruleset


class Outcome(Enum):
    LEFT_WINS = "LeftWins"
    RIGHT_WINS = "RightWins"
    FIRST_WINS = "FirstWins"
    SECOND_WINS = "SecondWins"

    @staticmethod
    def from_first_move_wins(left_first: bool, right_first: bool) -> "Outcome":
        if left_first and right_first:
            return Outcome.FIRST_WINS
        if left_first:
            return Outcome.LEFT_WINS
        if right_first:
            return Outcome.RIGHT_WINS
        return Outcome.SECOND_WINS

    def swap_players(self) -> "Outcome":
        if self is Outcome.LEFT_WINS:
            return Outcome.RIGHT_WINS
        if self is Outcome.RIGHT_WINS:
            return Outcome.LEFT_WINS
        return self


class MoveStatus(Enum):
    """Non-vertex results of a best-move query."""

    NO_MOVE = "no-move"
    NO_WINNING_MOVE = "no-winning-move"


@dataclass
class SearchStats:
    """Counters for one search: node visits, table hits, peak table size."""

    nodes: int = 0
    hits: int = 0
    peak_entries: int = 0

    def absorb(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.hits += other.hits
        self.peak_entries = max(self.peak_entries, other.peak_entries)


def _search(index: LegalityIndex, table: dict, stats: SearchStats,
            pos: Position, player: Player) -> bool:
    stats.nodes += 1
    key = (pos.blue, pos.red, player)
    cached = table.get(key)
    if cached is not None:
        stats.hits += 1
        return cached
    win = False
    opponent = player.opponent
    colour = player.colour
    for i in index.legal_moves(pos, player):
        if not _search(index, table, stats, pos.place(i, colour), opponent):
            win = True
            break
    table[key] = win
    if len(table) > stats.peak_entries:
        stats.peak_entries = len(table)
    return win


def wins_moving_first(g: Graph, rs: Ruleset, pos: Position = Position(),
                      player: Player = Player.LEFT, *,
                      index: LegalityIndex | None = None,
                      stats: SearchStats | None = None) -> bool:
    """Whether `player`, moving next from `pos`, can force the last move."""
    idx = index if index is not None else LegalityIndex(g, rs)
    local = SearchStats()
    result = _search(idx, {}, local, pos, player)
    if stats is not None:
        stats.absorb(local)
    return result


def outcome(g: Graph, rs: Ruleset, pos: Position = Position(), *,
            index: LegalityIndex | None = None,
            stats: SearchStats | None = None) -> Outcome:
    """Outcome class of `pos`: who wins under optimal alternating play."""
    idx = index if index is not None else LegalityIndex(g, rs)
    left = wins_moving_first(g, rs, pos, Player.LEFT, index=idx, stats=stats)
    right = wins_moving_first(g, rs, pos, Player.RIGHT, index=idx, stats=stats)
    return Outcome.from_first_move_wins(left, right)


def best_move(g: Graph, rs: Ruleset, pos: Position = Position(),
              player: Player = Player.LEFT, *,
              index: LegalityIndex | None = None,
              stats: SearchStats | None = None) -> int | MoveStatus:
    """Lowest-index winning placement for `player`, if any.

    Returns MoveStatus.NO_MOVE when no placement is legal at all and
    MoveStatus.NO_WINNING_MOVE when every legal placement loses.
    """
    idx = index if index is not None else LegalityIndex(g, rs)
    local = SearchStats()
    table: dict = {}
    moves = idx.legal_moves(pos, player)
    result: int | MoveStatus = MoveStatus.NO_MOVE if not moves else MoveStatus.NO_WINNING_MOVE
    for i in moves:
        child = pos.place(i, player.colour)
        if not _search(idx, table, local, child, player.opponent):
            result = i
            break
    if stats is not None:
        stats.absorb(local)
    return result
