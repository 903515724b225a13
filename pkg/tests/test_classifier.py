"""Tests for the Phi classification and the brute-force isomorphism oracles."""

import random

import pytest

from ctgroups.core.config import settings
from ctgroups.core.errors import FieldTooSmallError, SearchBudgetExceeded
from ctgroups.core.field import make_field
from ctgroups.models.coords import ACoord, DirectedEdge, Pointing
from ctgroups.services.amalgam_service import build_amalgam
from ctgroups.services.classifier_service import (
    classify_with_base,
    enumerate_classes,
    is_orientable_phi,
    oracle_matrix_iso,
    oracle_pointing_iso,
    phi_key,
    pointings_isomorphic,
    sample_oracle_pairs,
    verify_iso_witness,
    verify_matrix_witness,
)
from ctgroups.services.diagram_service import spanning_structure
from ctgroups.services.path_service import random_pointing, transform_pointing

from .conftest import twisted_c4


class TestEnumerateClasses:
    @pytest.mark.parametrize(
        "diagram, pm, total, orientable",
        [
            ("c4", (2, 2), 4, 2),
            ("c5", (2, 2), 4, 2),
            ("c4", (2, 3), 6, 3),
            ("theta", (2, 2), 16, 4),
            ("theta", (2, 3), 36, 9),
            ("a4", (2, 2), 1, 1),
            ("c4", (5, 1), 2, 1),
        ],
    )
    def test_counts(self, request, diagram, pm, total, orientable):
        d = request.getfixturevalue(diagram)
        classes = enumerate_classes(d, make_field(*pm))
        assert len(classes) == total
        assert sum(c.orientable for c in classes) == orientable
        assert len({c.key for c in classes}) == total

    def test_canonical_pointings_realize_their_class(self, theta, gf4):
        sd = spanning_structure(theta)
        for c in enumerate_classes(theta, gf4):
            assert phi_key(c.canonical, sd) == c.key
            assert is_orientable_phi(c) == c.orientable
            assert set(c.canonical.support()) <= set(sd.extra)

    def test_tree_has_only_the_trivial_class(self, a4, gf8):
        (only,) = enumerate_classes(a4, gf8)
        assert only.phi == ()
        assert only.canonical.is_trivial()

    @pytest.mark.parametrize("pm", [(2, 1), (3, 1)])
    def test_small_fields_rejected(self, c4, pm):
        with pytest.raises(FieldTooSmallError):
            enumerate_classes(c4, make_field(*pm))

    def test_classification_does_not_depend_on_base(self, c4, theta):
        rng = random.Random(9)
        for d, base in ((c4, "3"), (theta, "c2")):
            pointings = [random_pointing(d, 2, rng) for _ in range(300)]
            assert classify_with_base(d, make_field(2, 2), base, pointings)


class TestPointingOracle:
    def test_agrees_with_phi_on_sampled_pairs(self, c4):
        sd = spanning_structure(c4)
        pairs = sample_oracle_pairs(c4, 2, sd, random.Random(0))
        assert len(pairs) == settings.ORACLE_SAME_PAIRS + settings.ORACLE_CROSS_PAIRS
        mismatches = 0
        for delta1, delta2, same in pairs:
            w = oracle_pointing_iso(delta1, delta2, c4)
            if (w is not None) != same:
                mismatches += 1
            if w is not None:
                assert verify_iso_witness(delta1, delta2, w, c4)
        assert mismatches == 0

    def test_transformed_pointing_is_isomorphic(self, theta):
        rng = random.Random(1)
        delta = random_pointing(theta, 2, rng)
        vertex = {v: ACoord(1, 1, 2) for v in theta.vertices}
        moved = transform_pointing(delta, vertex, {}, theta)
        assert pointings_isomorphic(delta, moved, spanning_structure(theta))
        assert oracle_pointing_iso(delta, moved, theta) is not None

    def test_twisted_is_not_trivial(self, c4):
        assert oracle_pointing_iso(Pointing.trivial(2), twisted_c4(2), c4) is None
        assert not pointings_isomorphic(Pointing.trivial(2), twisted_c4(2), spanning_structure(c4))

    def test_bad_witness_rejected(self, c4):
        w = oracle_pointing_iso(Pointing.trivial(2), Pointing.trivial(2), c4)
        assert w is not None
        broken = dict(w.vertex)
        broken["1"] = broken["1"] + ACoord(1, 0, 2)
        assert not verify_iso_witness(Pointing.trivial(2), Pointing.trivial(2), type(w)(broken, w.edge), c4)

    def test_budget(self, c4, monkeypatch):
        monkeypatch.setattr(settings, "POINTING_ORACLE_MAX_VERTICES", 3)
        with pytest.raises(SearchBudgetExceeded):
            oracle_pointing_iso(Pointing.trivial(2), Pointing.trivial(2), c4)

    def test_small_universe_gives_all_pairs(self, a2):
        sd = spanning_structure(a2)
        pairs = sample_oracle_pairs(a2, 1, sd, random.Random(0))
        # two directed edges, two coordinates each
        assert len(pairs) == 16
        assert all(same for _, _, same in pairs)


class TestMatrixOracle:
    def test_agrees_with_phi(self, c4, gf4):
        sd = spanning_structure(c4)
        pairs = sample_oracle_pairs(c4, gf4.m, sd, random.Random(3))
        half = settings.MATRIX_ORACLE_PAIRS // 2
        chosen = [p for p in pairs if p[2]][:half] + [p for p in pairs if not p[2]][:half]
        assert len(chosen) == settings.MATRIX_ORACLE_PAIRS
        for delta1, delta2, same in chosen:
            A1 = build_amalgam(c4, delta1, gf4)
            A2 = build_amalgam(c4, delta2, gf4)
            w = oracle_matrix_iso(A1, A2)
            assert (w is not None) == same
            if w is not None:
                assert verify_matrix_witness(A1, A2, w)
                assert verify_iso_witness(delta1, delta2, w.project(), c4)

    def test_frobenius_twist_over_gf8(self, c4, gf8):
        delta = Pointing.from_mapping(3, {DirectedEdge("4", "1"): ACoord(0, 1, 3)})
        A1 = build_amalgam(c4, Pointing.trivial(3), gf8)
        A2 = build_amalgam(c4, delta, gf8)
        assert oracle_matrix_iso(A1, A2) is None
        assert oracle_matrix_iso(A2, A2) is not None

    def test_mismatched_amalgams(self, c4, a4, gf4):
        with pytest.raises(ValueError):
            oracle_matrix_iso(build_amalgam(c4, Pointing.trivial(2), gf4), build_amalgam(a4, Pointing.trivial(2), gf4))

    def test_budget(self, trivial_c4_gf4, monkeypatch):
        monkeypatch.setattr(settings, "MATRIX_ORACLE_MAX_VERTICES", 3)
        with pytest.raises(SearchBudgetExceeded):
            oracle_matrix_iso(trivial_c4_gf4, trivial_c4_gf4)
