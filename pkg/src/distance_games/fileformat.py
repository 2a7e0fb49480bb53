"""Line-oriented text format for boards, plus DOT export.

    ruleset D=1,2 S=        # comma lists; nothing after '=' means empty
    variant distance        # or: variant bigraph
    vertex a [colour=B|R] [owner=L|R]
    edge a b

'#' starts a comment. Owner attributes are required on every vertex exactly
when the variant is bigraph, and are rejected otherwise. A missing ruleset
line defaults to D={1} S={} for the distance variant and D=S={1} for
bigraph. `parse_graph` and `serialize` round-trip exactly on the canonical
form serialize emits.
"""

from __future__ import annotations

from .errors import DistanceGameError, FormatError
from .graph import Graph
from .rules import Colour, Ownership, Player, Position, Ruleset

_COLOURS = {"B": Colour.BLUE, "R": Colour.RED}
_OWNERS = {"L": Player.LEFT, "R": Player.RIGHT}


def _parse_distance_list(text: str, lineno: int) -> frozenset[int]:
    if not text:
        return frozenset()
    out = set()
    for piece in text.split(","):
        try:
            value = int(piece)
        except ValueError:
            raise FormatError(f"bad distance {piece!r}", lineno) from None
        if value < 1:
            raise FormatError(f"distances must be >= 1, got {value}", lineno)
        out.add(value)
    return frozenset(out)


def _parse_ruleset_tokens(parts: list[str], lineno: int | None) -> tuple[frozenset[int], frozenset[int]]:
    if len(parts) != 2 or not parts[0].startswith("D=") or not parts[1].startswith("S="):
        raise FormatError("expected 'D=<list> S=<list>'", lineno)
    d = _parse_distance_list(parts[0][2:], lineno)
    s = _parse_distance_list(parts[1][2:], lineno)
    return d, s


def parse_ruleset_text(text: str) -> Ruleset:
    """Parse the bare textual ruleset form 'D=1,2 S=' (distance variant)."""
    d, s = _parse_ruleset_tokens(text.split(), None)
    return Ruleset(d, s)


def format_ruleset(rs: Ruleset) -> str:
    d = ",".join(str(x) for x in sorted(rs.d))
    s = ",".join(str(x) for x in sorted(rs.s))
    return f"D={d} S={s}"


def parse_graph(text: str) -> tuple[Graph, Position, Ruleset]:
    """Parse a board file into its graph, stone position, and ruleset."""
    g = Graph()
    colours: dict[int, Colour] = {}
    owners: dict[int, Player] = {}
    first_owner_line: int | None = None
    sets: tuple[frozenset[int], frozenset[int]] | None = None
    variant: str | None = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        keyword = parts[0]
        if keyword == "ruleset":
            if sets is not None:
                raise FormatError("duplicate ruleset line", lineno)
            sets = _parse_ruleset_tokens(parts[1:], lineno)
        elif keyword == "variant":
            if variant is not None:
                raise FormatError("duplicate variant line", lineno)
            if len(parts) != 2 or parts[1] not in ("distance", "bigraph"):
                raise FormatError("variant must be 'distance' or 'bigraph'", lineno)
            variant = parts[1]
        elif keyword == "vertex":
            if len(parts) < 2:
                raise FormatError("vertex line needs a name", lineno)
            try:
                idx = g.add_vertex(parts[1])
            except DistanceGameError as exc:
                raise FormatError(str(exc), lineno) from None
            for attr in parts[2:]:
                key, eq, value = attr.partition("=")
                if not eq:
                    raise FormatError(f"bad attribute {attr!r}", lineno)
                if key == "colour":
                    if value not in _COLOURS:
                        raise FormatError(f"colour must be B or R, got {value!r}", lineno)
                    colours[idx] = _COLOURS[value]
                elif key == "owner":
                    if value not in _OWNERS:
                        raise FormatError(f"owner must be L or R, got {value!r}", lineno)
                    owners[idx] = _OWNERS[value]
                    if first_owner_line is None:
                        first_owner_line = lineno
                else:
                    raise FormatError(f"unknown attribute {key!r}", lineno)
        elif keyword == "edge":
            if len(parts) != 3:
                raise FormatError("edge line needs exactly two names", lineno)
            try:
                g.add_edge(parts[1], parts[2])
            except DistanceGameError as exc:
                raise FormatError(str(exc), lineno) from None
        else:
            raise FormatError(f"unknown directive {keyword!r}", lineno)

    variant = variant or "distance"
    if variant == "bigraph":
        missing = [g.name_of(i) for i in range(g.vertex_count) if i not in owners]
        if missing:
            raise FormatError(f"bigraph variant: vertices without owner: {missing}")
        d, s = sets if sets is not None else (frozenset({1}), frozenset({1}))
        ownership = Ownership(
            frozenset(i for i, p in owners.items() if p is Player.LEFT),
            frozenset(i for i, p in owners.items() if p is Player.RIGHT),
        )
        try:
            rs = Ruleset(d, s, ownership)
        except DistanceGameError as exc:
            raise FormatError(str(exc)) from None
    else:
        if owners:
            raise FormatError(
                "owner attributes require 'variant bigraph'", first_owner_line
            )
        d, s = sets if sets is not None else (frozenset({1}), frozenset())
        rs = Ruleset(d, s)

    pos = Position()
    for idx, colour in colours.items():
        pos = pos.place(idx, colour)
    return g.freeze(), pos, rs


def serialize(g: Graph, pos: Position = Position(), rs: Ruleset | None = None) -> str:
    """Canonical text form: ruleset, variant, vertices in index order, sorted edges."""
    if rs is None:
        rs = Ruleset(frozenset({1}), frozenset())
    for name in g.names:
        if any(c.isspace() for c in name) or "#" in name:
            raise FormatError(f"vertex name {name!r} is not serializable")
    lines = [f"ruleset {format_ruleset(rs)}", f"variant {rs.variant}"]
    for i, name in enumerate(g.names):
        attrs = []
        colour = pos.colour_at(i)
        if colour is not None:
            attrs.append(f"colour={colour.value}")
        if rs.ownership is not None:
            if i in rs.ownership.left:
                attrs.append("owner=L")
            elif i in rs.ownership.right:
                attrs.append("owner=R")
            else:
                raise FormatError(f"vertex {name!r} has no owner in a bigraph ruleset")
        lines.append(" ".join(["vertex", name] + attrs))
    for i, j in g.edges():
        lines.append(f"edge {g.name_of(i)} {g.name_of(j)}")
    return "\n".join(lines) + "\n"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, pos: Position = Position(), highlight=()) -> str:
    """Undirected DOT text; stones filled blue/red, highlighted vertices dashed."""
    marked = {g.index_of(v) for v in highlight}
    lines = ["graph {"]
    for i, name in enumerate(g.names):
        styles = []
        attrs = []
        colour = pos.colour_at(i)
        if colour is not None:
            styles.append("filled")
            attrs.append(f"fillcolor={'blue' if colour is Colour.BLUE else 'red'}")
            attrs.append("fontcolor=white")
        if i in marked:
            styles.append("dashed")
        if styles:
            attrs.insert(0, f'style="{",".join(styles)}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(name)}{suffix};")
    for i, j in g.edges():
        lines.append(f"  {_quote(g.name_of(i))} -- {_quote(g.name_of(j))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
