"""Layered ideal triangulations of once-punctured torus bundles.

The fibre is the punctured torus R^2 / Z^2 with its puncture at the lattice
points.  Its ideal triangulations correspond to Farey triangles: three
primitive slopes ``{a, b, a + b}``, cut into the lattice triangles
``(0, a, a + b)`` and ``(0, b, a + b)``.  A diagonal flip replaces one slope
and is realised by a tetrahedron whose bottom faces are the two old triangles
and whose top faces are the two new ones.

For a word ``w1 ... wk`` with product ``M`` the triangulations are
``tau_j = P_j tau_0`` with ``P_j = W1 ... Wj``.  Tetrahedron ``j`` sits over
the flip from ``tau_j`` to ``tau_{j+1}``; in the frame ``P_j^-1`` it is one of
two fixed tetrahedra (one per letter).  The top of the last tetrahedron is
carried back to ``tau_0`` by ``M^-1``.  Gluing the top of tetrahedron ``k``
to the bottom of tetrahedron ``1`` with ``M^-1`` rather than ``M`` changes
only the orientation of the result, so the volume is the same either way.

Vertices of each tetrahedron are labelled so that the embedding in
``R^2 x R`` (old diagonal at height 0, new diagonal at height 1) is
positively oriented.  With that labelling the shape ``z`` sits on edges
01 and 23, ``z' = 1 / (1 - z)`` on 02 and 13, and ``z'' = 1 - 1/z`` on 03 and 12.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .mapping_class import L, R, NotPseudoAnosovError, Matrix, matmul, parse_word

__all__ = [
    "EDGE_LABEL",
    "Corner",
    "Tetrahedron",
    "IdealTriangulation",
    "GluingSystem",
    "build_layered",
    "gluing_equations",
]

# shape label of each tetrahedron edge: 0 -> z, 1 -> z', 2 -> z''
EDGE_LABEL = {
    (0, 1): 0, (2, 3): 0,
    (0, 2): 1, (1, 3): 1,
    (0, 3): 2, (1, 2): 2,
}
EDGES = tuple(sorted(EDGE_LABEL))

Point = tuple[int, int]
Perm = tuple[int, int, int, int]


@dataclass(frozen=True)
class Corner:
    """One tetrahedron edge, as it appears around an edge of the manifold."""

    tet: int
    edge: tuple[int, int]

    @property
    def label(self) -> int:
        return EDGE_LABEL[self.edge]


@dataclass
class Tetrahedron:
    index: int
    letter: str
    # planar positions of the ideal vertices in the global lattice frame
    positions: tuple[Point, Point, Point, Point]
    # face f (opposite vertex f) -> (neighbour tetrahedron, vertex map)
    neighbors: list[int] = field(default_factory=lambda: [-1] * 4)
    gluings: list[Perm] = field(default_factory=lambda: [(0, 1, 2, 3)] * 4)


def _apply(m: Matrix, p: Point) -> Point:
    a, b, c, d = m
    return (a * p[0] + b * p[1], c * p[0] + d * p[1])


def _inverse(m: Matrix) -> Matrix:
    a, b, c, d = m
    return (d, -b, -c, a)


def _local_tetrahedron(letter: str) -> tuple[tuple[Point, ...], tuple[int, ...]]:
    """Vertex positions and heights of the flip tetrahedron over tau_0 -> W tau_0."""
    e1, e2, e12 = (1, 0), (0, 1), (1, 1)
    w = R if letter == "R" else L
    old = {e1, e2, e12} - {_apply(w, v) for v in (e1, e2, e12)}
    (old,) = old
    a, b = sorted({e1, e2, e12} - {old})
    # orient a, b so that the old slope is the diagonal b - a
    if (b[0] - a[0], b[1] - a[1]) not in (old, (-old[0], -old[1])):
        a = (-a[0], -a[1])
    pts = ((0, 0), a, (a[0] + b[0], a[1] + b[1]), b)
    heights = (1, 0, 1, 0)
    # positive orientation of the simplex in R^2 x R
    p3 = [np.array((*p, h), dtype=float) for p, h in zip(pts, heights)]
    det = np.linalg.det(np.array([p3[1] - p3[0], p3[2] - p3[0], p3[3] - p3[0]]))
    if det < 0:
        pts = (pts[0], pts[3], pts[2], pts[1])
        heights = (heights[0], heights[3], heights[2], heights[1])
    return pts, heights


_LOCAL = {letter: _local_tetrahedron(letter) for letter in "LR"}


def _match_triangle(face: dict[int, Point], other: dict[int, Point]) -> dict[int, int] | None:
    """Vertex map from ``face`` to ``other`` if they agree up to translation."""
    targets = {pos: v for v, pos in other.items()}
    (v0, p0), *_ = face.items()
    for q in other.values():
        t = (q[0] - p0[0], q[1] - p0[1])
        mapping = {}
        for v, p in face.items():
            image = targets.get((p[0] + t[0], p[1] + t[1]))
            if image is None:
                break
            mapping[v] = image
        else:
            return mapping
    return None


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass
class IdealTriangulation:
    word: str
    monodromy: Matrix
    tetrahedra: list[Tetrahedron]
    edge_classes: list[list[Corner]]
    heights: list[tuple[int, int, int, int]]

    @property
    def size(self) -> int:
        return len(self.tetrahedra)

    @property
    def valences(self) -> list[int]:
        return [len(c) for c in self.edge_classes]

    def edge_class_of(self) -> dict[tuple[int, tuple[int, int]], int]:
        return {
            (c.tet, c.edge): i for i, corners in enumerate(self.edge_classes) for c in corners
        }

    def check(self) -> None:
        """Assert the structural invariants of a one-cusped layered triangulation."""
        k = self.size
        for tet in self.tetrahedra:
            for f in range(4):
                n, perm = tet.neighbors[f], tet.gluings[f]
                g = perm[f]
                back = self.tetrahedra[n]
                assert back.neighbors[g] == tet.index, "face pairing is not an involution"
                inv = back.gluings[g]
                assert all(inv[perm[v]] == v for v in range(4)), "gluing maps do not invert"
                assert (n, g) != (tet.index, f), "face glued to itself"
        assert len(self.edge_classes) == k, f"{len(self.edge_classes)} edge classes for {k} tetrahedra"
        assert sum(self.valences) == 6 * k

    def to_json(self) -> str:
        """Debug dump: face pairings per tetrahedron and corner lists per edge."""
        data = {
            "word": self.word,
            "tetrahedra": [
                {
                    "index": t.index,
                    "letter": t.letter,
                    "positions": [list(p) for p in t.positions],
                    "neighbors": list(t.neighbors),
                    "gluings": ["".join(map(str, g)) for g in t.gluings],
                }
                for t in self.tetrahedra
            ],
            "edges": [
                {"valence": len(c), "corners": [[x.tet, "".join(map(str, x.edge))] for x in c]}
                for c in self.edge_classes
            ],
        }
        return json.dumps(data, indent=2)

    # cusp cross-section ---------------------------------------------------

    def link_triangles(self) -> list[tuple[int, int]]:
        return [(t, v) for t in range(self.size) for v in range(4)]

    def link_neighbor(self, t: int, v: int, side: int) -> tuple[int, int, int]:
        """Link triangle across ``side`` (a face index) of the link of vertex ``v`` of ``t``."""
        tet = self.tetrahedra[t]
        perm = tet.gluings[side]
        return tet.neighbors[side], perm[v], perm[side]

    def peripheral_cycles(self) -> list[np.ndarray]:
        """Signed exponent rows (A | B | C) of the fundamental cycles of the cusp.

        Each row encodes ``sum +-log(shape)`` over the corners a closed dual
        curve in the cusp torus turns around (``+`` for corners on its left).
        The complete structure makes every one of these vanish.
        """
        k = self.size
        nodes = self.link_triangles()
        parent: dict[tuple[int, int], tuple] = {nodes[0]: None}
        depth = {nodes[0]: 0}
        order = deque([nodes[0]])
        tree_edges = set()
        while order:
            t, v = order.popleft()
            for side in range(4):
                if side == v:
                    continue
                t2, v2, side2 = self.link_neighbor(t, v, side)
                if (t2, v2) not in parent:
                    parent[(t2, v2)] = ((t, v), side, side2)
                    depth[(t2, v2)] = depth[(t, v)] + 1
                    tree_edges.add(((t, v), side))
                    tree_edges.add(((t2, v2), side2))
                    order.append((t2, v2))
        assert len(parent) == 4 * k, "cusp cross-section is not connected"

        rows = []
        seen = set()
        for node in nodes:
            t, v = node
            for side in range(4):
                if side == v or (node, side) in tree_edges or (node, side) in seen:
                    continue
                t2, v2, side2 = self.link_neighbor(t, v, side)
                seen.add((node, side))
                seen.add(((t2, v2), side2))
                rows.append(self._cycle_row(parent, depth, node, side, (t2, v2), side2))
        # Euler characteristic 0: 6k sides, 4k triangles -> 2k + 1 cycles
        assert len(rows) == 2 * k + 1
        return rows

    def _cycle_row(self, parent, depth, x, sx, y, sy) -> np.ndarray:
        # transitions (out_side at current node, in_side at next node)
        def up_path(node, stop):
            chain = []
            while node != stop:
                prev, pside, cside = parent[node]
                chain.append((prev, node, pside, cside))
                node = prev
            return chain

        a, b = x, y
        while depth[a] > depth[b]:
            a = parent[a][0]
        while depth[b] > depth[a]:
            b = parent[b][0]
        while a != b:
            a, b = parent[a][0], parent[b][0]
        lca = a
        down_x = list(reversed(up_path(x, lca)))  # lca -> x
        up_y = up_path(y, lca)  # y -> lca
        cycle_nodes = [lca] + [c for _, c, _, _ in down_x]
        transitions = [(ps, cs) for _, _, ps, cs in down_x]
        transitions.append((sx, sy))
        cycle_nodes += [y] if y != lca else []
        for prev, child, ps, cs in up_y:
            transitions.append((cs, ps))
            if prev != lca:
                cycle_nodes.append(prev)
        assert len(transitions) == len(cycle_nodes)

        k = self.size
        row = np.zeros(3 * k, dtype=int)
        n = len(cycle_nodes)
        for i, (t, v) in enumerate(cycle_nodes):
            in_side = transitions[i - 1][1]
            out_side = transitions[i][0]
            (corner,) = {0, 1, 2, 3} - {v, in_side, out_side}
            row[3 * t + EDGE_LABEL[tuple(sorted((v, corner)))]] += self._turn_sign(
                v, corner, in_side, out_side
            )
        return row

    @staticmethod
    def _turn_sign(v: int, corner: int, in_side: int, out_side: int) -> int:
        # counterclockwise corner order in the link of v: (v, u1, u2, u3) even
        others = [u for u in range(4) if u != v]
        if _parity((v, *others)):
            others[1], others[2] = others[2], others[1]
        i = others.index(corner)
        # entering opposite the next corner and leaving opposite the one
        # after it keeps the corner on the right
        if others[(i + 1) % 3] == in_side:
            return -1
        return 1


def _parity(perm) -> int:
    perm = list(perm)
    odd = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            odd ^= perm[i] > perm[j]
    return odd


def build_layered(word: str) -> IdealTriangulation:
    """Layered triangulation of the mapping torus with monodromy ``word``.

    Raises
    ------
    NotPseudoAnosovError
        If the word does not contain both letters.
    """
    word = parse_word(word)
    if "L" not in word or "R" not in word:
        raise NotPseudoAnosovError(f"word {word!r} is not pseudo-Anosov; it needs both L and R")
    k = len(word)
    frames: list[Matrix] = [(1, 0, 0, 1)]
    for letter in word:
        frames.append(matmul(frames[-1], R if letter == "R" else L))
    monodromy = frames[-1]
    back = _inverse(monodromy)

    tets, heights = [], []
    for j, letter in enumerate(word):
        local, h = _LOCAL[letter]
        tets.append(Tetrahedron(j, letter, tuple(_apply(frames[j], p) for p in local)))
        heights.append(h)

    def faces(j: int, top: bool) -> list[tuple[int, dict[int, Point]]]:
        # top faces are opposite an old-diagonal vertex (height 0)
        out = []
        for f in range(4):
            if (heights[j][f] == 0) == top:
                out.append((f, {v: tets[j].positions[v] for v in range(4) if v != f}))
        return out

    for j in range(k):
        nxt = (j + 1) % k
        for f, face in faces(j, top=True):
            if nxt == 0:
                face = {v: _apply(back, p) for v, p in face.items()}
            for g, other in faces(nxt, top=False):
                mapping = _match_triangle(face, other)
                if mapping is not None:
                    break
            else:
                raise AssertionError(f"top face {f} of tetrahedron {j} has no partner")
            perm = [0] * 4
            perm[f] = g
            for v, w in mapping.items():
                perm[v] = w
            inv = [0] * 4
            for v in range(4):
                inv[perm[v]] = v
            tets[j].neighbors[f], tets[j].gluings[f] = nxt, tuple(perm)
            tets[nxt].neighbors[g], tets[nxt].gluings[g] = j, tuple(inv)

    uf = _UnionFind()
    for t in tets:
        for f in range(4):
            perm = t.gluings[f]
            for e in itertools.combinations([v for v in range(4) if v != f], 2):
                image = tuple(sorted((perm[e[0]], perm[e[1]])))
                uf.union((t.index, e), (t.neighbors[f], image))
    classes: dict = {}
    for t in tets:
        for e in EDGES:
            classes.setdefault(uf.find((t.index, e)), []).append(Corner(t.index, e))
    edge_classes = sorted(classes.values(), key=lambda cs: (cs[0].tet, cs[0].edge))

    tri = IdealTriangulation(word, monodromy, tets, edge_classes, heights)
    tri.check()
    return tri


@dataclass
class GluingSystem:
    """Edge equations ``prod z^A (1/(1-z))^B (1-1/z)^C = 1`` with angle sum 2 pi.

    ``edge_rows`` has shape ``(k, 3k)``: columns ``3i, 3i+1, 3i+2`` are the
    exponents ``A_i, B_i, C_i`` of tetrahedron ``i``.  ``cusp_rows`` holds
    two independent peripheral curves (target log-holonomy 0) and
    ``all_cusp_cycles`` every fundamental cycle of the cusp torus.  Cycles
    that bound a disc in the cusp (``essential`` false) turn once, so their
    log-holonomy is ``+-2 pi i`` rather than 0.
    """

    edge_rows: np.ndarray
    cusp_rows: np.ndarray
    all_cusp_cycles: np.ndarray
    essential: np.ndarray
    word: str = ""

    @property
    def size(self) -> int:
        return self.edge_rows.shape[0]

    @property
    def A(self) -> np.ndarray:
        return self.edge_rows[:, 0::3]

    @property
    def B(self) -> np.ndarray:
        return self.edge_rows[:, 1::3]

    @property
    def C(self) -> np.ndarray:
        return self.edge_rows[:, 2::3]

    def permuted(self, order) -> "GluingSystem":
        """Same system with tetrahedron ``order[i]`` renamed to ``i``."""
        cols = np.array([3 * j + s for j in order for s in range(3)])
        return GluingSystem(
            self.edge_rows[:, cols],
            self.cusp_rows[:, cols],
            self.all_cusp_cycles[:, cols],
            self.essential,
            self.word,
        )


def _reduced(rows: np.ndarray) -> np.ndarray:
    # eliminate log z'' = i pi - log z - log z'
    a, b, c = rows[:, 0::3], rows[:, 1::3], rows[:, 2::3]
    return np.hstack([a - c, b - c]).astype(float)


def gluing_equations(tri: IdealTriangulation) -> GluingSystem:
    k = tri.size
    edge_rows = np.zeros((k, 3 * k), dtype=int)
    for r, corners in enumerate(tri.edge_classes):
        for c in corners:
            edge_rows[r, 3 * c.tet + c.label] += 1
    cycles = np.array(tri.peripheral_cycles())

    # pick two cycles that are independent of the edge equations and of each
    # other, i.e. a homology basis of the cusp torus
    basis = _reduced(edge_rows)
    rank = np.linalg.matrix_rank(basis)
    assert rank == k - 1, f"edge equations have rank {rank}, expected {k - 1}"
    chosen = []
    for row in cycles:
        trial = np.vstack([basis, _reduced(row[None, :])])
        if np.linalg.matrix_rank(trial) > rank:
            basis, rank = trial, rank + 1
            chosen.append(row)
            if len(chosen) == 2:
                break
    assert len(chosen) == 2, "could not find two independent peripheral curves"
    edges_only = _reduced(edge_rows)
    essential = np.array(
        [
            np.linalg.matrix_rank(np.vstack([edges_only, _reduced(row[None, :])])) == k
            for row in cycles
        ]
    )
    return GluingSystem(edge_rows, np.array(chosen), cycles, essential, tri.word)
