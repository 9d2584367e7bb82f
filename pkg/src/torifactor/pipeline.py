"""End-to-end analysis of a fan matrix: weights, covering, torsion, divisors.

Chains the individual operations with one consistent choice of
representatives: the covering fan matrix is taken from the lower block of
the weight transform, so the Cartier basis reproduces the input fan matrix
in its bottom rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .intmat import IntMatrix, PreconditionError, det
from .covering import (
    CoveringData,
    TorsionMatrix,
    covering_decomposition,
    torsion_generators,
    torsion_matrix,
)
from .divisors import (
    ClassGroupData,
    PicardData,
    cartier_basis,
    free_part_generators,
    picard_basis,
    weight_transform,
)
from .fans import Fan, PicardIndexFamily, enumerate_fans, picard_index_sets
from .gale import gale_dual, require_F
from .lattices import Lattice


@dataclass(frozen=True)
class FanAnalysis:
    """Per-fan divisor data."""

    fan: Fan
    index_sets: PicardIndexFamily
    picard: PicardData
    cartier: IntMatrix


@dataclass(frozen=True)
class PipelineResult:
    V: IntMatrix
    Q: IntMatrix
    U_Q: IntMatrix
    covering: CoveringData
    gamma: TorsionMatrix
    class_group: ClassGroupData
    fans: tuple[FanAnalysis, ...]


def analyze(v: IntMatrix, fan_index: Optional[int] = None, verify: bool = True) -> PipelineResult:
    """Run the whole pipeline on a reduced fan matrix.

    ``fan_index`` restricts the per-fan stage to one fan of the deterministic
    enumeration; by default every fan is processed.
    """
    require_F(v, reduced=True)
    q = gale_dual(v)
    u_q = weight_transform(q)
    r = q.rows
    n = v.rows
    v_hat = u_q.bottom_rows(n)
    cg = free_part_generators(q)
    cd = covering_decomposition(v, v_hat=v_hat)
    gamma = torsion_matrix(cd)
    gens = torsion_generators(cd)
    class_group = ClassGroupData(
        rank=r,
        torsion=cd.torsion_invariants,
        free_generators=cg.free_generators,
        torsion_generator_rows=gens,
    )
    all_fans = enumerate_fans(v)
    if fan_index is not None:
        if not 0 <= fan_index < len(all_fans):
            raise PreconditionError(
                f"fan index {fan_index} out of range (found {len(all_fans)} fans)"
            )
        selected = (all_fans[fan_index],)
    else:
        selected = all_fans
    analyses = []
    for fan in selected:
        family = picard_index_sets(fan)
        pd = picard_basis(q, family)
        cx = cartier_basis(pd.B, u_q, cd.beta)
        analyses.append(FanAnalysis(fan=fan, index_sets=family, picard=pd, cartier=cx))
    result = PipelineResult(
        V=v,
        Q=q,
        U_Q=u_q,
        covering=cd,
        gamma=gamma,
        class_group=class_group,
        fans=tuple(analyses),
    )
    if verify:
        verify_result(result)
    return result


def verify_result(res: PipelineResult) -> None:
    """Re-check every cross-module identity of a pipeline result."""
    v, q = res.V, res.Q
    if not (q @ v.transpose()).is_zero():
        raise PreconditionError("weights are not orthogonal to the fan matrix")
    cd = res.covering
    if cd.beta @ cd.V_hat != v:
        raise PreconditionError("covering factorization failed")
    if cd.mu @ cd.beta @ cd.nu != cd.Delta:
        raise PreconditionError("diagonal form identity failed")
    if cd.V_aligned != cd.Delta @ cd.V_hat_aligned:
        raise PreconditionError("alignment identity failed")
    order = 1
    for t in cd.torsion_invariants:
        order *= t
    if abs(det(cd.beta)) != order:
        raise PreconditionError("factor determinant disagrees with the torsion order")
    if q @ res.class_group.free_generators.transpose() != IntMatrix.identity(q.rows):
        raise PreconditionError("free-part generator identity failed")
    gens = res.class_group.torsion_generator_rows
    if res.gamma.rows:
        g = res.gamma.to_int_matrix()
        against_fan = g @ v.transpose()
        against_gens = g @ gens.transpose()
        for k, tau in enumerate(res.gamma.moduli):
            if any(x % tau != 0 for x in against_fan.row(k)):
                raise PreconditionError("torsion matrix does not annihilate the fan rows")
            for j in range(res.gamma.rows):
                if (against_gens[k, j] - (1 if j == k else 0)) % tau != 0:
                    raise PreconditionError("torsion matrix does not normalize the generators")
    det_beta = abs(det(cd.beta))
    for fa in res.fans:
        pd = fa.picard
        if pd.index % pd.delta_sigma != 0:
            raise PreconditionError("divisibility of delta_sigma failed")
        if abs(det(fa.cartier)) != pd.index * det_beta:
            raise PreconditionError("Cartier determinant factorization failed")
        if fa.cartier.bottom_rows(v.rows) != v:
            raise PreconditionError("Cartier basis does not end in the fan matrix")
        pic = Lattice.from_matrix(pd.B)
        for idx in fa.index_sets.sets:
            block_cols = Lattice.from_matrix(q.select_cols(idx).transpose())
            if not pic.is_sublattice_of(block_cols):
                raise PreconditionError("Picard basis escapes a weight block lattice")
