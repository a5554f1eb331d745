import cmath
import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import both_letter_words, swap_letters
from wpbounds.mapping_class import NotPseudoAnosovError, word_matrix
from wpbounds.solver import log_parameters
from wpbounds.triangulation import EDGE_LABEL, build_layered, gluing_equations

words = st.text(alphabet="LR", min_size=2, max_size=16).filter(lambda w: "L" in w and "R" in w)


def parity(perm):
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def row_set(rows):
    return sorted(tuple(int(x) for x in r) for r in rows)


class TestStructure:
    @settings(max_examples=60)
    @given(words)
    def test_invariants(self, w):
        tri = build_layered(w)
        tri.check()
        k = len(w)
        assert tri.size == k
        assert tri.monodromy == word_matrix(w)
        corners = [(c.tet, c.edge) for cls in tri.edge_classes for c in cls]
        assert sorted(corners) == sorted((t, e) for t in range(k) for e in EDGE_LABEL)
        assert all(v >= 4 for v in tri.valences)

    @settings(max_examples=60)
    @given(words)
    def test_face_gluings_reverse_orientation(self, w):
        # consistently oriented tetrahedra meet through odd face maps
        tri = build_layered(w)
        for tet in tri.tetrahedra:
            for f in range(4):
                perm = tet.gluings[f]
                assert sorted(perm) == [0, 1, 2, 3]
                assert parity(perm) == -1

    def test_known_valences(self):
        assert sorted(build_layered("LR").valences) == [6, 6]
        assert sorted(build_layered("LLRR").valences) == [4, 4, 8, 8]

    def test_json_dump(self):
        data = json.loads(build_layered("LLR").to_json())
        assert data["word"] == "LLR"
        assert len(data["tetrahedra"]) == 3
        assert sum(e["valence"] for e in data["edges"]) == 18

    def test_rejects_non_pa_words(self):
        for w in ("L", "RRR", ""):
            with pytest.raises((NotPseudoAnosovError, ValueError)):
                build_layered(w)
        with pytest.raises(ValueError):
            build_layered("LXR")


class TestGluingEquations:
    @settings(max_examples=60)
    @given(words)
    def test_edge_rows(self, w):
        sys = gluing_equations(build_layered(w))
        k = len(w)
        assert sys.edge_rows.shape == (k, 3 * k)
        # every shape label sits on two opposite edges
        assert np.all(sys.edge_rows.sum(axis=0) == 2)
        # valence of each edge
        assert sorted(sys.edge_rows.sum(axis=1)) == sorted(build_layered(w).valences)

    @settings(max_examples=60)
    @given(words)
    def test_cusp_cycles(self, w):
        sys = gluing_equations(build_layered(w))
        k = len(w)
        assert sys.all_cusp_cycles.shape == (2 * k + 1, 3 * k)
        assert sys.cusp_rows.shape == (2, 3 * k)
        assert sys.essential.sum() >= 2

    def test_figure_eight_regular_solution(self):
        sys = gluing_equations(build_layered("LR"))
        logs = log_parameters(np.full(2, cmath.exp(1j * math.pi / 3)))
        assert np.allclose(sys.edge_rows @ logs, 2j * math.pi)
        assert np.allclose(sys.cusp_rows @ logs, 0)

    def test_rotation_isomorphism_exhaustive(self):
        for w in both_letter_words(6):
            k = len(w)
            base = gluing_equations(build_layered(w))
            for r in range(1, k):
                other = gluing_equations(build_layered(w[r:] + w[:r]))
                order = [(i + r) % k for i in range(k)]
                assert row_set(base.permuted(order).edge_rows) == row_set(other.edge_rows)
                assert sorted(build_layered(w[r:] + w[:r]).valences) == sorted(build_layered(w).valences)

    def test_letter_swap_is_mirror_exhaustive(self):
        # the swap reverses orientation: same tetrahedra with z and z'' exchanged
        for w in both_letter_words(6):
            k = len(w)
            base = gluing_equations(build_layered(w))
            other = gluing_equations(build_layered(swap_letters(w)))
            cols = [3 * i + s for i in range(k) for s in (2, 1, 0)]
            assert row_set(base.edge_rows[:, cols]) == row_set(other.edge_rows)
