import pytest

from distance_games import (
    Colour,
    FormatError,
    Position,
    bigraph_node_kayles,
    gen_complete_bipartite,
    gen_gnp,
    gen_path,
    node_kayles,
    parse_graph,
    parse_ruleset_text,
    serialize,
    snort,
    to_dot,
)


class TestParse:
    def test_minimal(self):
        g, pos, rs = parse_graph("vertex a\nvertex b\nedge a b\n")
        assert g.vertex_count == 2 and g.edge_count == 1
        assert pos.stone_count == 0
        assert rs == snort()  # default when no ruleset line

    def test_ruleset_and_colours(self):
        text = "ruleset D=1,2 S=\nvertex a colour=B\nvertex b colour=R\n"
        g, pos, rs = parse_graph(text)
        assert rs.d == {1, 2} and rs.s == frozenset()
        assert pos.colour_at(0) is Colour.BLUE
        assert pos.colour_at(1) is Colour.RED

    def test_comments_and_blanks(self):
        g, _, _ = parse_graph("# header\n\nvertex a  # trailing\n")
        assert g.names == ("a",)

    def test_bigraph_owners(self):
        text = (
            "ruleset D=1 S=1\nvariant bigraph\n"
            "vertex a owner=L\nvertex b owner=R\nedge a b\n"
        )
        _, _, rs = parse_graph(text)
        assert rs == bigraph_node_kayles([0], [1])

    def test_bigraph_defaults_to_node_kayles_sets(self):
        text = "variant bigraph\nvertex a owner=L\n"
        _, _, rs = parse_graph(text)
        assert rs.d == {1} and rs.s == {1}

    def test_unknown_vertex_in_edge_has_line_number(self):
        with pytest.raises(FormatError) as err:
            parse_graph("vertex a\nedge a b\n")
        assert err.value.line == 2

    def test_invalid_colour_token(self):
        with pytest.raises(FormatError) as err:
            parse_graph("vertex a colour=G\n")
        assert err.value.line == 1

    def test_owner_without_bigraph_rejected(self):
        with pytest.raises(FormatError) as err:
            parse_graph("vertex a owner=L\n")
        assert err.value.line == 1

    def test_bigraph_missing_owner_rejected(self):
        with pytest.raises(FormatError):
            parse_graph("variant bigraph\nvertex a owner=L\nvertex b\n")

    def test_bigraph_with_wrong_sets_rejected(self):
        with pytest.raises(FormatError):
            parse_graph("ruleset D=1,2 S=\nvariant bigraph\nvertex a owner=L\n")

    def test_unknown_directive(self):
        with pytest.raises(FormatError) as err:
            parse_graph("vertices a b\n")
        assert err.value.line == 1

    def test_duplicate_ruleset_line(self):
        with pytest.raises(FormatError):
            parse_graph("ruleset D=1 S=\nruleset D=1 S=\n")


class TestRoundTrip:
    def test_fixpoint(self):
        text = "vertex b\nvertex a colour=B\nedge b a\nruleset D=2,1 S=\n"
        once = serialize(*parse_graph(text))
        twice = serialize(*parse_graph(once))
        assert once == twice

    def test_canonical_order(self):
        g, pos, rs = parse_graph("ruleset D=1 S=\nvertex a\nvertex b\nedge a b\n")
        assert serialize(g, pos, rs).splitlines() == [
            "ruleset D=1 S=",
            "variant distance",
            "vertex a",
            "vertex b",
            "edge a b",
        ]

    def test_bigraph_round_trip(self):
        g, bip = gen_complete_bipartite(2, 1)
        rs = bigraph_node_kayles(*bip)
        text = serialize(g, Position(), rs)
        assert serialize(*parse_graph(text)) == text

    def test_generated_graphs_round_trip(self):
        for seed in range(5):
            text = serialize(gen_gnp(6, 0.5, seed))
            assert serialize(*parse_graph(text)) == text


class TestRulesetText:
    def test_parse_and_format(self):
        rs = parse_ruleset_text("D=1,3 S=")
        assert rs.d == {1, 3} and rs.s == frozenset()
        assert parse_ruleset_text("D=1 S=1") == node_kayles()

    def test_bad_text(self):
        with pytest.raises(FormatError):
            parse_ruleset_text("D=1")
        with pytest.raises(FormatError):
            parse_ruleset_text("D=x S=")


class TestDot:
    def test_empty_graph(self):
        from distance_games import Graph

        assert to_dot(Graph()) == "graph {\n}\n"

    def test_blue_stone_fill(self):
        g = gen_path(1)
        out = to_dot(g, Position().place(0, Colour.BLUE))
        assert "fillcolor=blue" in out and "filled" in out

    def test_edge_line(self):
        out = to_dot(gen_path(2))
        assert '"v0" -- "v1";' in out

    def test_highlight_dashed(self):
        out = to_dot(gen_path(1), highlight=["v0"])
        assert "dashed" in out
