"""The orbihedral universal cover of a presentation 2-complex, for finite groups.

Vertices are group elements (cosets of the trivial subgroup), edge ``(c, j)``
runs from ``c`` to ``c * x_j``, and relator ``i`` contributes one disc per
cycle of right multiplication by ``u_i``.  A stack of ``m_i`` lifted discs
sharing a boundary is collapsed to a single disc whose stabiliser is the
cyclic group generated by ``u_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certify import chi_orb
from .coset_enum import CosetTable, column, word_permutation
from .exact_linalg import SparseIntMatrix, rank_gf2, rank_rational
from .presentation import Presentation

__all__ = [
    "DEFAULT_MAX_CELLS",
    "OrderMismatch",
    "ComplexTooLarge",
    "CayleyGraph",
    "Face",
    "TwoComplex",
    "EulerReport",
    "build_cayley_graph",
    "build_orbihedral_cover",
    "betti_numbers",
    "euler_identity_check",
    "cycle_space_dim",
    "incidence_matrix",
]

DEFAULT_MAX_CELLS = 200_000


class OrderMismatch(Exception):
    """Right multiplication by ``u_i`` has a cycle whose length is not ``m_i``."""

    def __init__(self, relator: int, claimed: int, actual: int):
        self.relator = relator
        self.claimed = claimed
        self.actual = actual
        super().__init__(f"relator {relator}: declared exponent {claimed}, but its base has order {actual}")


class ComplexTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CayleyGraph:
    """Directed Cayley graph; edge ``c * d + j`` is ``(c, j, c * x_j)``."""

    vertex_count: int
    generator_count: int
    edges: tuple[tuple[int, int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, c: int, j: int) -> int:
        return c * self.generator_count + j


@dataclass(frozen=True)
class Face:
    relator: int
    base: int
    boundary: dict[int, int]


@dataclass(frozen=True)
class TwoComplex:
    graph: CayleyGraph
    faces: tuple[Face, ...]
    boundary1: SparseIntMatrix
    boundary2: SparseIntMatrix

    @property
    def cell_counts(self) -> tuple[int, int, int]:
        return self.graph.vertex_count, self.graph.edge_count, len(self.faces)


@dataclass(frozen=True)
class EulerReport:
    betti: tuple[int, int, int]
    group_order: int
    chi_orb: Fraction
    lhs: Fraction
    identity_holds: bool
    b2_predicted: int

    @property
    def b1_vanishes(self) -> bool:
        return self.betti[1] == 0

    @property
    def b2_matches(self) -> bool:
        return self.betti[2] == self.b2_predicted


def build_cayley_graph(t: CosetTable, p: Presentation) -> CayleyGraph:
    d = p.d
    if t.generator_count != d:
        raise ValueError("coset table and presentation disagree on the generator count")
    edges = tuple((c, j, t.action[c][2 * j]) for c in range(t.size) for j in range(d))
    return CayleyGraph(t.size, d, edges)


def incidence_matrix(g: CayleyGraph) -> SparseIntMatrix:
    """Vertex-by-edge boundary map: edge ``e: s -> t`` maps to ``t - s`` (loops map to 0)."""
    entries: dict[tuple[int, int], int] = {}
    for e, (src, _, dst) in enumerate(g.edges):
        if src != dst:
            entries[(dst, e)] = 1
            entries[(src, e)] = -1
    return SparseIntMatrix(g.vertex_count, g.edge_count, entries)


def _face_boundary(t: CosetTable, g: CayleyGraph, start: int, word) -> dict[int, int]:
    chain: dict[int, int] = {}
    c = start
    for letter in word:
        nxt = t.action[c][column(letter)]
        if letter > 0:
            e = g.edge_index(c, letter - 1)
            chain[e] = chain.get(e, 0) + 1
        else:
            # traversing x_j backwards from c means walking the edge nxt -> c
            e = g.edge_index(nxt, -letter - 1)
            chain[e] = chain.get(e, 0) - 1
        c = nxt
    if c != start:
        raise ValueError("relator path does not close")
    return {e: v for e, v in chain.items() if v}


def build_orbihedral_cover(
    t: CosetTable, p: Presentation, max_cells: int = DEFAULT_MAX_CELLS
) -> TwoComplex:
    """Cayley graph plus one disc per cycle of each relator base's permutation.

    Raises :class:`OrderMismatch` if some cycle of ``u_i`` has length other
    than ``m_i``, i.e. the order hypothesis fails for relator ``i``.
    """
    n, d = t.size, p.d
    planned = n + d * n + sum(n // rel.exponent for rel in p.relators)
    if planned > max_cells:
        raise ComplexTooLarge(f"complex would have about {planned} cells (cap {max_cells})")
    g = build_cayley_graph(t, p)

    faces = []
    for i, rel in enumerate(p.relators):
        perm = word_permutation(t, rel.base)
        seen = [False] * n
        for c in range(n):
            if seen[c]:
                continue
            length = 0
            x = c
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            if length != rel.exponent:
                raise OrderMismatch(i, rel.exponent, length)
            # cosets are visited in increasing order, so c is the minimum of its cycle
            faces.append(Face(i, c, _face_boundary(t, g, c, rel.word)))

    d1 = incidence_matrix(g)
    d2 = SparseIntMatrix(
        g.edge_count,
        len(faces),
        {(e, k): v for k, face in enumerate(faces) for e, v in face.boundary.items()},
    )
    if not (d1 @ d2).is_zero():
        raise RuntimeError("boundary maps do not compose to zero")
    return TwoComplex(g, tuple(faces), d1, d2)


def betti_numbers(x: TwoComplex) -> tuple[int, int, int]:
    v, e, f = x.cell_counts
    r1 = rank_rational(x.boundary1)
    r2 = rank_rational(x.boundary2)
    return v - r1, e - r1 - r2, f - r2


def euler_identity_check(
    p: Presentation, t: CosetTable, max_cells: int = DEFAULT_MAX_CELLS
) -> EulerReport:
    """Compare ``(b0 - b1 + b2) / |G|`` with ``1 - d + sum 1/m_i`` exactly.

    For a finite group the l2-Betti numbers of the cover are its ordinary
    rational Betti numbers divided by ``|G|``, so both sides are exact
    rationals.  Also predicts ``b2 = |G| * chi - 1`` from ``b0 = 1, b1 = 0``.
    """
    x = build_orbihedral_cover(t, p, max_cells)
    b = betti_numbers(x)
    n = t.size
    chi = chi_orb(p)
    lhs = Fraction(b[0] - b[1] + b[2], n)
    predicted = n * chi - 1
    if predicted.denominator != 1:
        raise RuntimeError("n * chi_orb is not an integer although every order was verified")
    return EulerReport(b, n, chi, lhs, lhs == chi, int(predicted))


def cycle_space_dim(g: CayleyGraph) -> int:
    """Dimension of the GF(2) cycle space, ``E - V + 1``, checked against an explicit rank."""
    expected = g.edge_count - g.vertex_count + 1
    by_rank = g.edge_count - rank_gf2(incidence_matrix(g))
    if by_rank != expected:
        raise RuntimeError(f"cycle space rank {by_rank} != E - V + 1 = {expected}; graph not connected?")
    return expected
