"""Tests for transport, path normal forms, homotopy witnesses and the invariant Phi."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctgroups.core.errors import PointingParseError
from ctgroups.models.coords import ACoord, DirectedEdge, GroupPath, Pointing, all_coords
from ctgroups.services.diagram_service import cycle_diagram, spanning_structure, theta_diagram
from ctgroups.services.path_service import (
    alpha_matrix_check,
    beta,
    homotopy_witness,
    normal_form,
    normal_form_stepwise,
    parse_pointing,
    phi_by_summation,
    phi_of_pointing,
    phi_of_word,
    pointed_path,
    random_closed_path,
    random_path,
    random_pointing,
    random_walk_between,
    reduce_returns,
    serialize_pointing,
    shortest_edge_path,
    transform_pointing,
)

from .conftest import twisted_c4

THETA = theta_diagram()
C5 = cycle_diagram(5)


def _edges(*pairs):
    return [DirectedEdge(a, b) for a, b in pairs]


class TestNormalForms:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_closed_form_matches_stepwise(self, m):
        rng = random.Random(11)
        for _ in range(1000):
            p = random_path(THETA, m, rng, rng.randint(0, 8))
            assert normal_form(p) == normal_form_stepwise(p)

    def test_empty_path(self):
        a = ACoord(1, 1, 2)
        p = GroupPath("u", (), (a,))
        assert normal_form(p).g == a
        assert normal_form(p).edges == ()

    def test_reduce_returns_keeps_the_element(self):
        m = 2
        a, b, c = ACoord(1, 0, m), ACoord(0, 1, m), ACoord(1, 1, m)
        p = GroupPath("1", tuple(_edges(("1", "2"), ("2", "1"))), (a, b, c))
        reduced, trace = reduce_returns(p)
        assert reduced.edges == ()
        assert reduced.letters == (a + b + c,)
        assert len(trace) == 1
        assert normal_form(reduced).g == normal_form(p).g

    def test_reduce_returns_cascades(self):
        rng = random.Random(5)
        edges = _edges(("u", "a"), ("a", "v"), ("v", "a"), ("a", "u"))
        letters = tuple(rng.choice(all_coords(2)) for _ in range(5))
        reduced, trace = reduce_returns(GroupPath("u", tuple(edges), letters))
        assert reduced.edges == ()
        assert len(trace) == 2

    def test_concatenation_adds_normal_forms(self):
        rng = random.Random(2)
        for _ in range(100):
            p = random_path(C5, 2, rng, 4, start="1")
            q = random_path(C5, 2, rng, 3, start=p.end)
            assert normal_form(p * q).g == normal_form(p).g + normal_form(q).g
            assert (p * q).edges == p.edges + q.edges

    def test_concatenation_needs_matching_ends(self):
        p = GroupPath.from_edges("1", _edges(("1", "2")), 1)
        with pytest.raises(ValueError):
            p * p


class TestHomotopyWitness:
    def test_witness_exists_exactly_when_normal_forms_agree(self):
        rng = random.Random(17)
        coords = all_coords(2)
        agreed = 0
        for _ in range(500):
            p = random_path(THETA, 2, rng, rng.randint(0, 6))
            letters = tuple(rng.choice(coords) for _ in p.letters)
            q = GroupPath(p.start, p.edges, letters)
            hs = homotopy_witness(p, q)
            same = normal_form(p) == normal_form(q)
            assert (hs is not None) == same
            if hs is not None:
                agreed += 1
                assert len(hs) == len(p.edges)
        assert agreed > 0

    def test_witness_rewrites_letters(self):
        m = 3
        p = GroupPath("1", tuple(_edges(("1", "2"), ("2", "3"))), (ACoord(1, 2, m), ACoord(0, 1, m), ACoord.zero(m)))
        q = GroupPath("1", p.edges, (ACoord.zero(m), ACoord.zero(m), ACoord(1, 0, m)))
        hs = homotopy_witness(p, q)
        assert hs is not None
        g, g2 = p.letters, q.letters
        assert g2[0] == g[0] - hs[0]
        assert g2[1] == hs[0] + g[1] - hs[1]
        assert g2[2] == hs[1] + g[2]

    def test_different_edges_rejected(self):
        p = GroupPath.from_edges("1", _edges(("1", "2")), 1)
        q = GroupPath.from_edges("1", _edges(("1", "5")), 1)
        with pytest.raises(ValueError):
            homotopy_witness(p, q)


class TestTransport:
    def test_beta_is_path_independent(self):
        a = ACoord(1, 2, 3)
        short = shortest_edge_path(C5, "1", "3")
        long = _edges(("1", "5"), ("5", "4"), ("4", "3"))
        assert beta("1", "3", a, C5) == a
        assert beta("1", "3", a, C5, path=short) == beta("1", "3", a, C5, path=long)

    @pytest.mark.parametrize("d", [C5, cycle_diagram(6), THETA], ids=["c5", "c6", "theta"])
    def test_beta_ignores_the_route(self, d):
        rng = random.Random(11)
        for _ in range(1000):
            l, mvert = rng.choice(d.vertices), rng.choice(d.vertices)
            a = rng.choice(all_coords(3))
            p1 = random_walk_between(d, rng, l, mvert, rng.randrange(0, 4))
            p2 = random_walk_between(d, rng, l, mvert, rng.randrange(4, 9))
            assert beta(l, mvert, a, d, path=p1) == beta(l, mvert, a, d, path=p2)

    def test_beta_rejects_broken_paths(self):
        a = ACoord(0, 1, 3)
        with pytest.raises(ValueError):
            beta("1", "3", a, C5, path=_edges(("1", "2")))
        with pytest.raises(ValueError):
            beta("1", "3", a, C5, path=_edges(("1", "3")))

    @pytest.mark.parametrize("convention", ["forward", "reversed"])
    def test_alpha_is_identity_on_matrices(self, gf4, gf8, convention):
        assert alpha_matrix_check(gf4, convention)
        assert alpha_matrix_check(gf8, convention)


class TestPhi:
    def test_twisted_c4_cycle(self, c4):
        sd = spanning_structure(c4)
        delta = twisted_c4(2)
        phi = phi_of_pointing(delta, sd)
        assert phi == {DirectedEdge("4", "3"): ACoord(1, 0, 2)}
        assert phi_by_summation(delta, sd.cycles[0]) == ACoord(1, 0, 2)

    def test_trivial_pointing(self, theta):
        sd = spanning_structure(theta)
        assert all(v.is_zero() for v in phi_of_pointing(Pointing.trivial(3), sd).values())

    def test_pointed_path_letters(self):
        delta = Pointing.from_mapping(2, {DirectedEdge("1", "2"): ACoord(1, 0, 2), DirectedEdge("2", "1"): ACoord(0, 1, 2)})
        p = pointed_path(delta, "1", _edges(("1", "2")))
        assert p.letters == (ACoord(1, 0, 2), ACoord(0, 1, 2))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 3))
    def test_word_and_summation_agree(self, seed, m):
        rng = random.Random(seed)
        delta = random_pointing(THETA, m, rng)
        p = random_closed_path(THETA, m, rng, rng.randint(0, 6))
        assert p.is_closed
        assert phi_of_word(delta, p.start, p.edges) == phi_by_summation(delta, p.edges)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 3))
    def test_phi_is_a_homomorphism_on_loops(self, seed, m):
        rng = random.Random(seed)
        delta = random_pointing(THETA, m, rng)
        p = random_closed_path(THETA, m, rng, 4, start="u")
        q = random_closed_path(THETA, m, rng, 5, start="u")
        both = list(p.edges) + list(q.edges)
        assert phi_by_summation(delta, both) == phi_by_summation(delta, p.edges) + phi_by_summation(delta, q.edges)
        back = [e.reverse for e in reversed(p.edges)]
        assert phi_by_summation(delta, back) == -phi_by_summation(delta, p.edges)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_transformed_pointing_keeps_phi(self, seed):
        rng = random.Random(seed)
        m = 2
        coords = all_coords(m)
        sd = spanning_structure(THETA)
        delta = random_pointing(THETA, m, rng)
        vertex = {v: rng.choice(coords) for v in THETA.vertices}
        edge = {tuple(sorted(e)): rng.choice(coords) for e in THETA.edges}
        moved = transform_pointing(delta, vertex, edge, THETA)
        assert phi_of_pointing(moved, sd) == phi_of_pointing(delta, sd)


class TestPointingFiles:
    def test_parse_data_file(self, data_dir, c4):
        delta = parse_pointing((data_dir / "c4_twisted.txt").read_text(), c4, 2)
        assert delta == twisted_c4(2)

    def test_serialize_round_trip(self, theta):
        delta = random_pointing(theta, 3, random.Random(4))
        assert parse_pointing(serialize_pointing(delta), theta, 3) == delta

    def test_zero_values_are_not_stored(self, c4):
        delta = parse_pointing("delta 1 2 0 0\n", c4, 2)
        assert delta.is_trivial()

    def test_frobenius_part_reduced_mod_m(self, c4):
        delta = parse_pointing("delta 1 2 0 5\n", c4, 2)
        assert delta[DirectedEdge("1", "2")] == ACoord(0, 1, 2)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("delta 1 3 0 0\n", 1),
            ("# ok\ndelta 1 2 2 0\n", 2),
            ("delta 1 2 x 0\n", 1),
            ("delta 1 2 1 0\ndelta 1 2 0 1\n", 2),
            ("delta 1 2 1\n", 1),
            ("pointing 1 2 1 0\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, c4, text, line):
        with pytest.raises(PointingParseError) as exc:
            parse_pointing(text, c4, 2)
        assert exc.value.line_no == line
