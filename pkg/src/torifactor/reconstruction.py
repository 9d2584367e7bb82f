"""Recovering a fan matrix from quotient data, and fan-matrix equivalence.

A quotient presentation (weight matrix plus torsion residue matrix)
determines the covering fan matrix by Gale duality; the integer factor
carrying it onto a fan matrix of the quotient is rebuilt from the HNF of a
small relation system.  Equivalence of fan matrices (simultaneous unimodular
row action and column permutation) is decided by brute-force permutation
search with HNF canonicalization.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .intmat import IntMatrix, PreconditionError, ShapeError, det, vector_content
from .covering import TorsionMatrix
from .gale import gale_dual, require_W
from .lattices import Lattice
from .normal_forms import hnf, unimodular_inverse

MAX_PERM_ENV = "TORIFACTOR_MAX_PERM"


@dataclass(frozen=True)
class QuotientPresentation:
    """Weight matrix and torsion matrix presenting a variety as a quotient."""

    Q: IntMatrix
    gamma: TorsionMatrix

    def __post_init__(self):
        require_W(self.Q)
        if self.gamma.cols != self.Q.cols:
            raise ShapeError("torsion matrix width must match the weight matrix")


class SearchLimitExceeded(RuntimeError):
    """The equivalence search hit the configured permutation cap."""


def _covering_matrix(p: QuotientPresentation, v_hat: Optional[IntMatrix]) -> IntMatrix:
    if v_hat is None:
        return gale_dual(p.Q)
    if Lattice.from_matrix(v_hat) != Lattice.from_matrix(gale_dual(p.Q)):
        raise PreconditionError("supplied covering matrix is not a Gale dual of Q")
    return v_hat


def reconstruction_system(
    p: QuotientPresentation, v_hat: Optional[IntMatrix] = None
) -> Optional[IntMatrix]:
    """The relation system ``K``: pairing block stacked over diag(moduli).

    Integer solutions of ``z @ K == 0`` encode the rows of the factor matrix.
    ``None`` when there is no torsion.  ``v_hat`` may supply a specific Gale
    dual of the weight matrix; entries of ``K`` depend on that choice.
    """
    if p.gamma.rows == 0:
        return None
    vh = _covering_matrix(p, v_hat)
    pairing = vh @ p.gamma.to_int_matrix().transpose()
    return pairing.vstack(IntMatrix.diagonal(list(p.gamma.moduli)))


def reconstruct_beta(
    p: QuotientPresentation, v_hat: Optional[IntMatrix] = None
) -> IntMatrix:
    """A factor matrix whose rows span all solutions of the torsion relations.

    Determined only up to left unimodular action; its absolute determinant
    equals the order of the subgroup generated by the residue pairing.
    """
    vh = _covering_matrix(p, v_hat)
    n = vh.rows
    k = reconstruction_system(p, v_hat=vh)
    if k is None:
        return IntMatrix.identity(n)
    res = hnf(k)
    beta = res.U.bottom_rows(n).select_cols(range(n))
    if det(beta) == 0:
        raise PreconditionError("degenerate torsion data produced a singular factor")
    return beta


def reconstruct_fan_matrix(
    p: QuotientPresentation, v_hat: Optional[IntMatrix] = None
) -> IntMatrix:
    """A fan matrix of the quotient: factor times covering fan matrix.

    Verifies the defining relations: orthogonality to the weights, the
    torsion congruences, and that the factor determinant equals the order of
    the subgroup generated by the residue pairing columns.
    """
    vh = _covering_matrix(p, v_hat)
    beta = reconstruct_beta(p, v_hat=vh)
    v = beta @ vh
    if not (v @ p.Q.transpose()).is_zero():
        raise PreconditionError("reconstructed matrix is not orthogonal to the weights")
    if p.gamma.rows:
        rel = v @ p.gamma.to_int_matrix().transpose()
        for k, tau in enumerate(p.gamma.moduli):
            if any(rel[i, k] % tau != 0 for i in range(rel.rows)):
                raise PreconditionError("torsion congruences fail on the reconstruction")
        order = 1
        for tau in p.gamma.moduli:
            order *= tau
        sys = reconstruction_system(p, v_hat=vh)
        top = hnf(sys).H.top_rows(p.gamma.rows)
        subgroup_order = order // abs(det(top))
        if abs(det(beta)) != subgroup_order:
            raise PreconditionError("factor determinant disagrees with the subgroup order")
    return v


def _column_invariant(m: IntMatrix, j: int) -> int:
    return vector_content(m.col(j))


def fan_matrix_equivalence(
    v1: IntMatrix,
    v2: IntMatrix,
    max_permutations: Optional[int] = None,
) -> Optional[tuple[IntMatrix, IntMatrix]]:
    """Witness (R, S) with ``R @ v1 @ S == v2``, or ``None`` if inequivalent.

    S ranges over column permutation matrices in lexicographic order (the
    identity first); for each candidate the row HNFs are compared and R is
    recovered from the two transforms.  Column contents prune the search.
    The environment variable TORIFACTOR_MAX_PERM caps the number of
    permutations tried; exceeding it raises ``SearchLimitExceeded``.
    """
    if v1.shape != v2.shape:
        raise ShapeError("fan matrices must have equal shape")
    if max_permutations is None:
        env = os.environ.get(MAX_PERM_ENV)
        max_permutations = int(env) if env else None
    m = v1.cols
    contents1 = [_column_invariant(v1, j) for j in range(m)]
    contents2 = [_column_invariant(v2, j) for j in range(m)]
    if sorted(contents1) != sorted(contents2):
        return None
    res2 = hnf(v2)
    if not any(res2.H.row(v1.rows - 1)):
        raise PreconditionError("fan matrices must have full row rank")
    u2_inv = unimodular_inverse(res2.U)
    tried = 0
    for perm in permutations(range(m)):
        if any(contents1[perm[j]] != contents2[j] for j in range(m)):
            continue
        tried += 1
        if max_permutations is not None and tried > max_permutations:
            raise SearchLimitExceeded(
                f"equivalence search exceeded {max_permutations} permutations"
            )
        permuted = v1.select_cols(perm)
        res1 = hnf(permuted)
        if res1.H != res2.H:
            continue
        r = u2_inv @ res1.U
        s = IntMatrix.permutation(perm)
        if r @ v1 @ s == v2:
            return (r, s)
    return None
