"""Tests for diagram files, admissibility and spanning structures."""

import pytest
from pydantic import ValidationError

from ctgroups.core.errors import DiagramParseError, InadmissibleDiagramError
from ctgroups.models.coords import DirectedEdge
from ctgroups.models.diagram import Diagram
from ctgroups.services.diagram_service import (
    check_admissible,
    cycle_diagram,
    cycle_space_dimension,
    describe_spanning,
    diagram_hash,
    is_cycle_diagram,
    is_path_diagram,
    parse_diagram,
    path_diagram,
    require_admissible,
    serialize_diagram,
    spanning_structure,
    theta_diagram,
)


class TestParsing:
    def test_parse_file(self, data_dir):
        d = parse_diagram((data_dir / "c4.txt").read_text())
        assert d == cycle_diagram(4)
        assert d.edges[-1] == ("4", "1")

    def test_serialize_round_trip(self, theta):
        assert parse_diagram(serialize_diagram(theta)) == theta

    def test_hash_is_stable(self, c4):
        assert diagram_hash(c4) == diagram_hash(cycle_diagram(4))
        assert diagram_hash(c4) != diagram_hash(cycle_diagram(5))
        assert len(diagram_hash(c4)) == 64

    @pytest.mark.parametrize(
        "text, line",
        [
            ("vertex a\nvertex a\n", 2),
            ("vertex a\nedge a a\n", 2),
            ("vertex a\nedge a b\n", 2),
            ("vertex a\nvertex b\nedge a b\nedge b a\n", 4),
            ("vertex a\nnode b\n", 2),
            ("vertex a b\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(DiagramParseError) as exc:
            parse_diagram(text)
        assert exc.value.line_no == line
        assert f"line {line}" in str(exc.value)

    def test_empty_file(self):
        with pytest.raises(DiagramParseError):
            parse_diagram("# nothing here\n")

    def test_comments_and_blank_lines(self):
        d = parse_diagram("# header\nvertex a  # first\n\nvertex b\nedge a b\n")
        assert d.vertices == ("a", "b")

    def test_model_validates_directly(self):
        with pytest.raises(ValidationError):
            Diagram(vertices=("a", "b"), edges=(("a", "c"),))


class TestShape:
    def test_neighbors_and_orientation(self, c4):
        assert c4.neighbors("1") == ["2", "4"]
        assert c4.oriented("1", "4") == ("4", "1")
        assert c4.degree("3") == 2
        assert c4.non_edges() == [("1", "3"), ("2", "4")]
        with pytest.raises(KeyError):
            c4.oriented("1", "3")

    def test_directed_edges_cover_both_directions(self, a3):
        assert a3.directed_edges() == sorted(
            [DirectedEdge("1", "2"), DirectedEdge("2", "1"), DirectedEdge("2", "3"), DirectedEdge("3", "2")]
        )

    def test_path_and_cycle_recognition(self, a4, c5, theta):
        assert is_path_diagram(a4) and not is_cycle_diagram(a4)
        assert is_cycle_diagram(c5) and not is_path_diagram(c5)
        assert not is_path_diagram(theta) and not is_cycle_diagram(theta)

    def test_cycle_space_dimension(self, a4, c4, c6, theta):
        assert cycle_space_dimension(a4) == 0
        assert cycle_space_dimension(c4) == 1
        assert cycle_space_dimension(c6) == 1
        assert cycle_space_dimension(theta) == 2
        assert cycle_space_dimension(theta_diagram()) == len(theta.edges) - len(theta.vertices) + 1


class TestAdmissibility:
    def test_triangle_rejected(self, triangle, data_dir):
        report = check_admissible(triangle)
        assert not report.ok
        assert report.triangle == ("x", "y", "z")
        with pytest.raises(InadmissibleDiagramError):
            require_admissible(parse_diagram((data_dir / "triangle.txt").read_text()))

    def test_disconnected_rejected(self):
        d = Diagram(vertices=("a", "b", "c"), edges=(("a", "b"),))
        report = check_admissible(d)
        assert not report.ok
        assert report.components == [["a", "b"], ["c"]]

    def test_standard_diagrams_admissible(self, a2, c4, c5, theta):
        for d in (a2, c4, c5, theta, path_diagram(1)):
            assert check_admissible(d).ok


class TestSpanning:
    def test_c4_from_vertex_1(self, c4):
        sd = spanning_structure(c4)
        assert sd.base == "1"
        assert sd.order == ("1", "2", "4", "3")
        assert sd.tree == (DirectedEdge("1", "2"), DirectedEdge("1", "4"), DirectedEdge("2", "3"))
        assert sd.extra == (DirectedEdge("4", "3"),)
        assert sd.cycles[0] == (
            DirectedEdge("1", "4"),
            DirectedEdge("4", "3"),
            DirectedEdge("3", "2"),
            DirectedEdge("2", "1"),
        )

    def test_rank_matches_betti_number(self, theta, c6, a4):
        for d in (theta, c6, a4):
            assert spanning_structure(d).rank == cycle_space_dimension(d)

    def test_cycles_are_closed_at_base(self, theta):
        sd = spanning_structure(theta, "v")
        for cycle in sd.cycles:
            assert cycle[0].source == "v"
            assert cycle[-1].target == "v"
            for e, f in zip(cycle, cycle[1:]):
                assert e.target == f.source

    def test_unknown_base(self, c4):
        with pytest.raises(KeyError):
            spanning_structure(c4, "9")

    def test_describe(self, c4):
        info = describe_spanning(spanning_structure(c4))
        assert info["base"] == "1"
        assert info["extra"] == ["4->3"]
        assert info["tree"] == ["1->2", "1->4", "2->3"]
