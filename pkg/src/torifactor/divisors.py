"""Free-part generators, Picard lattice, and Cartier bases.

All coordinates refer to the basis of torus-invariant prime divisors
D_0 .. D_{n+r-1} given by the columns of the fan matrix, and to the free-part
basis fixed by the HNF transform of the transposed weight matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Optional

from .intmat import IntMatrix, PreconditionError, ShapeError, det
from .fans import PicardIndexFamily
from .gale import require_W
from .lattices import Lattice, lattice_intersection
from .normal_forms import hnf, unimodular_inverse


@dataclass(frozen=True)
class ClassGroupData:
    """Divisor class group presentation: free rank, torsion, generator rows."""

    rank: int
    torsion: tuple[int, ...]
    free_generators: IntMatrix
    torsion_generator_rows: Optional[IntMatrix]


@dataclass(frozen=True)
class PicardData:
    """Basis of the Picard lattice inside the free part of the class group."""

    B: IntMatrix
    index: int
    delta_sigma: int

    def __post_init__(self):
        if self.index == 0:
            raise PreconditionError("Picard basis must be nonsingular")
        if self.index % self.delta_sigma != 0:
            raise PreconditionError("delta_sigma must divide the Picard index")


def weight_transform(q: IntMatrix) -> IntMatrix:
    """Unimodular U with ``U @ q^T`` in HNF; requires the HNF to be [I; 0]."""
    res = hnf(q.transpose())
    expected = IntMatrix.identity(q.rows).vstack(
        IntMatrix.zeros(q.cols - q.rows, q.rows)
    )
    if res.H != expected:
        raise PreconditionError("row lattice of the weight matrix is not saturated")
    return res.U


def free_part_generators(q: IntMatrix) -> ClassGroupData:
    """Rows expressing a basis of the free part of the class group.

    The upper block of the HNF transform of ``q^T``; satisfies
    ``q @ rows^T == identity``.
    """
    require_W(q)
    r = q.rows
    u_q = weight_transform(q)
    gens = u_q.top_rows(r)
    if q @ gens.transpose() != IntMatrix.identity(r):
        raise PreconditionError("generator identity failed")
    return ClassGroupData(rank=r, torsion=(), free_generators=gens, torsion_generator_rows=None)


def picard_basis(q: IntMatrix, index_family: PicardIndexFamily) -> PicardData:
    """Canonical basis of the Picard lattice for one fan.

    Intersects the column lattices of the square weight blocks indexed by the
    complements of the maximal cones; also reports the lcm of their
    determinants, which divides the index of the Picard lattice.
    """
    r = q.rows
    if not index_family.sets:
        raise PreconditionError("empty index family")
    current = Lattice.full(r)
    delta = 1
    for idx in index_family.sets:
        if len(idx) != r:
            raise ShapeError("index set size must equal the weight-matrix rank")
        block = q.select_cols(idx)
        d = det(block)
        if d == 0:
            raise PreconditionError(f"singular weight block at columns {idx}")
        delta = lcm(delta, abs(d))
        current = lattice_intersection(current, Lattice.from_matrix(block.transpose()))
    if current.rank != r:
        raise PreconditionError("Picard lattice is degenerate")
    basis = current.basis_matrix()
    return PicardData(B=basis, index=abs(det(basis)), delta_sigma=delta)


def cartier_basis(b: IntMatrix, u_q: IntMatrix, beta: IntMatrix) -> IntMatrix:
    """Basis of the locally principal divisors inside the Weil group.

    ``blockdiag(b, beta) @ u_q``: the top block expresses the Picard basis in
    the prime-divisor coordinates, the bottom block reproduces the fan matrix.
    With ``beta`` the identity this is the Cartier basis of the covering.
    """
    if not b.is_square() or not beta.is_square():
        raise ShapeError("b and beta must be square")
    if not u_q.is_square() or u_q.rows != b.rows + beta.rows:
        raise ShapeError("transform size must equal rank + dimension")
    return IntMatrix.block_diagonal([b, beta]) @ u_q


def weil_inclusion(u_q: IntMatrix, beta: IntMatrix) -> IntMatrix:
    """Matrix of the pullback of Weil divisors along the covering map.

    ``A = u_q^T @ blockdiag(I, beta^T) @ (u_q^T)^{-1}``; integral because the
    transform is unimodular, and it carries the covering Cartier basis onto
    the Cartier basis downstairs.
    """
    if not beta.is_square():
        raise ShapeError("beta must be square")
    if not u_q.is_square() or u_q.rows <= beta.rows:
        raise ShapeError("transform must be square and larger than beta")
    r = u_q.rows - beta.rows
    ut = u_q.transpose()
    middle = IntMatrix.block_diagonal([IntMatrix.identity(r), beta.transpose()])
    return ut @ middle @ unimodular_inverse(ut)
