"""Universal 1-coverings, class-group torsion, and the torsion matrix.

Every complete simplicial fan matrix ``V`` factors as ``V = beta @ V_hat``
through the double Gale dual ``V_hat``, whose variety carries no torsion in
its divisor class group.  The Smith normal form of ``beta`` aligns the two
matrices row by row; the diagonal entries exceeding 1 are the torsion
invariants and the aligned rows yield explicit torsion generators and a
residue matrix describing the torsion part of the divisor class map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .intmat import IntMatrix, PreconditionError, ShapeError, det, rank
from .gale import gale_dual, require_F
from .lattices import Lattice
from .normal_forms import hnf, hnf_pivot_columns, snf, unimodular_inverse


@dataclass(frozen=True)
class CoveringData:
    """Aligned covering decomposition of a reduced fan matrix.

    Invariants: ``beta @ V_hat == V``; ``Delta == mu @ beta @ nu`` diagonal
    with a divisor chain; ``V_aligned == mu @ V``; ``V_hat_aligned`` equals
    ``nu^{-1} @ V_hat``; ``V_aligned == Delta @ V_hat_aligned``; the torsion
    invariants are the diagonal entries of ``Delta`` exceeding 1.
    """

    V_hat: IntMatrix
    beta: IntMatrix
    Delta: IntMatrix
    mu: IntMatrix
    nu: IntMatrix
    V_aligned: IntMatrix
    V_hat_aligned: IntMatrix
    torsion_invariants: tuple[int, ...]


class TorsionMatrix:
    """Matrix of residue classes, one modulus per row.

    Entry (k, j) lives in Z/moduli[k] and is stored reduced into
    [0, moduli[k]).  Zero rows of moduli are allowed to be absent entirely
    (s == 0), in which case only the width is kept.
    """

    __slots__ = ("_moduli", "_entries", "_width")

    def __init__(
        self,
        moduli: Sequence[int],
        entries: Sequence[Sequence[int]],
        width: Optional[int] = None,
    ):
        moduli = tuple(int(t) for t in moduli)
        rows = [tuple(int(x) for x in row) for row in entries]
        if len(rows) != len(moduli):
            raise ShapeError("one modulus per row required")
        for t, u in zip(moduli, moduli[1:]):
            if u % t != 0:
                raise PreconditionError("moduli must form a divisor chain")
        if any(t <= 1 for t in moduli):
            raise PreconditionError("moduli must exceed 1")
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ShapeError("ragged rows")
            if width is not None and width != w:
                raise ShapeError("width disagrees with entries")
            width = w
        elif width is None:
            raise ShapeError("width required for an empty torsion matrix")
        reduced = tuple(
            tuple(x % t for x in row) for t, row in zip(moduli, rows)
        )
        self._moduli = moduli
        self._entries = reduced
        self._width = width

    @property
    def moduli(self) -> tuple[int, ...]:
        return self._moduli

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._entries

    @property
    def rows(self) -> int:
        return len(self._moduli)

    @property
    def cols(self) -> int:
        return self._width

    def row(self, k: int) -> tuple[int, ...]:
        return self._entries[k]

    def to_int_matrix(self) -> IntMatrix:
        if not self._entries:
            raise ValueError("empty torsion matrix has no integer matrix form")
        return IntMatrix(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorsionMatrix):
            return NotImplemented
        return (
            self._moduli == other._moduli
            and self._entries == other._entries
            and self._width == other._width
        )

    def __hash__(self) -> int:
        return hash((self._moduli, self._entries, self._width))

    def __repr__(self) -> str:
        return (
            f"TorsionMatrix(moduli={list(self._moduli)}, "
            f"entries={[list(r) for r in self._entries]}, width={self._width})"
        )


def universal_covering(v: IntMatrix) -> IntMatrix:
    """Fan matrix of the universal 1-covering: the double Gale dual of ``v``.

    Returned in canonical HNF; its row lattice is the saturation of the row
    lattice of ``v`` and its column lattice is all of Z^n.
    """
    require_F(v, reduced=True)
    return gale_dual(gale_dual(v))


def beta_factor(v: IntMatrix, v_hat: IntMatrix) -> IntMatrix:
    """The unique integer matrix with ``beta @ v_hat == v``.

    Both matrices are brought to HNF after moving the common pivot columns to
    the front; the factor linking the two triangular forms is rebuilt by back
    substitution and conjugated back through the (unique) HNF transforms.
    """
    if v.shape != v_hat.shape:
        raise ShapeError("fan matrices must have equal shape")
    n = v.rows
    if rank(v_hat) != n or rank(v) != n:
        raise PreconditionError("both matrices must have full row rank")

    hat_res = hnf(v_hat)
    pivots = hnf_pivot_columns(hat_res.H)
    order = list(pivots) + [j for j in range(v.cols) if j not in pivots]
    vp = v.select_cols(order)
    vhp = v_hat.select_cols(order)
    res = hnf(vp)
    hat_res = hnf(vhp)
    h, u = res.H, res.U
    hh, uh = hat_res.H, hat_res.U
    if hnf_pivot_columns(h) != tuple(range(n)) or hnf_pivot_columns(hh) != tuple(range(n)):
        raise PreconditionError("row lattices are not aligned (pivot columns differ)")

    b = [[0] * n for _ in range(n)]
    for i in range(n):
        if h[i, i] % hh[i, i] != 0:
            raise PreconditionError("row lattice of v is not contained in that of v_hat")
        b[i][i] = h[i, i] // hh[i, i]
        for j in range(i + 1, n):
            num = h[i, j] - sum(b[i][k] * hh[k, j] for k in range(i, j))
            if num % hh[j, j] != 0:
                raise PreconditionError("row lattice of v is not contained in that of v_hat")
            b[i][j] = num // hh[j, j]

    beta = unimodular_inverse(u) @ IntMatrix(b) @ uh
    if beta @ v_hat != v:
        raise PreconditionError("no integer factor maps v_hat onto v")
    return beta


def covering_decomposition(v: IntMatrix, v_hat: Optional[IntMatrix] = None) -> CoveringData:
    """Full aligned decomposition ``V = beta @ V_hat`` with SNF data.

    ``v_hat`` may be any fan matrix of the covering (a basis of the saturated
    row lattice); by default the canonical one from ``universal_covering``.
    The rows of the aligned covering matrix that correspond to nontrivial
    invariants are sign-normalized to lead with a positive entry.
    """
    require_F(v, reduced=True)
    if v_hat is None:
        v_hat = universal_covering(v)
    else:
        if Lattice.from_matrix(v_hat) != Lattice.from_matrix(gale_dual(gale_dual(v))):
            raise PreconditionError("v_hat does not span the saturated row lattice of v")
    beta = beta_factor(v, v_hat)
    res = snf(beta)
    delta, mu, nu = res.D, res.U_left, res.U_right
    v_aligned = mu @ v
    v_hat_aligned = unimodular_inverse(nu) @ v_hat

    n = v.rows
    diag = [delta[i, i] for i in range(n)]
    s = sum(1 for c in diag if c > 1)
    if s and any(c != 1 for c in diag[: n - s]):
        raise PreconditionError("unexpected invariant order in the diagonal form")

    # sign-normalize the generator rows: flipping row i of both aligned
    # matrices together with row i of mu and column i of nu keeps every
    # stated identity intact.
    va = v_aligned.tolist()
    vha = v_hat_aligned.tolist()
    mu_rows = mu.tolist()
    nu_cols = nu.transpose().tolist()
    for i in range(n - s, n):
        lead = next((x for x in vha[i] if x != 0), 0)
        if lead < 0:
            vha[i] = [-x for x in vha[i]]
            va[i] = [-x for x in va[i]]
            mu_rows[i] = [-x for x in mu_rows[i]]
            nu_cols[i] = [-x for x in nu_cols[i]]
    v_aligned = IntMatrix(va)
    v_hat_aligned = IntMatrix(vha)
    mu = IntMatrix(mu_rows)
    nu = IntMatrix(nu_cols).transpose()

    if v_aligned != delta @ v_hat_aligned:
        raise PreconditionError("alignment identity failed")
    return CoveringData(
        V_hat=v_hat,
        beta=beta,
        Delta=delta,
        mu=mu,
        nu=nu,
        V_aligned=v_aligned,
        V_hat_aligned=v_hat_aligned,
        torsion_invariants=tuple(c for c in diag if c > 1),
    )


def torsion_order(cd: CoveringData) -> int:
    order = 1
    for t in cd.torsion_invariants:
        order *= t
    return order


def torsion_generators(cd: CoveringData) -> Optional[IntMatrix]:
    """Rows generating the torsion subgroup of the divisor class group.

    Row k is the corresponding aligned row of the fan matrix divided exactly
    by its invariant; ``None`` when the class group is torsion free.
    """
    s = len(cd.torsion_invariants)
    if s == 0:
        return None
    n = cd.V_aligned.rows
    gens = cd.V_hat_aligned.bottom_rows(s)
    for k, tau in enumerate(cd.torsion_invariants):
        aligned_row = cd.V_aligned.row(n - s + k)
        if tuple(tau * x for x in gens.row(k)) != aligned_row:
            raise PreconditionError("aligned rows are not exact multiples")
    return gens


def torsion_matrix(cd: CoveringData) -> TorsionMatrix:
    """Residue matrix representing the torsion part of the class map.

    Built from the HNF transform of the torsion-free aligned rows and from
    the pairing with the generator rows; satisfies, modulo the invariants,
    ``G @ V_aligned^T == 0`` and ``G @ generators^T == identity``.
    """
    n, m = cd.V_aligned.shape
    s = len(cd.torsion_invariants)
    if s == 0:
        return TorsionMatrix((), (), width=m)
    free_rows = cd.V_aligned.top_rows(n - s)
    w_res = hnf(free_rows.transpose())
    expected = IntMatrix.identity(n - s).vstack(IntMatrix.zeros(m - (n - s), n - s))
    if w_res.H != expected:
        raise PreconditionError("torsion-free rows are not a saturated block")
    w_low = w_res.U.bottom_rows(m - (n - s))
    gens = cd.V_hat_aligned.bottom_rows(s)
    pairing = gens @ w_low.transpose()
    g_res = hnf(pairing.transpose())
    expected = IntMatrix.identity(s).vstack(IntMatrix.zeros(m - (n - s) - s, s))
    if g_res.H != expected:
        raise PreconditionError("generator pairing is not unimodular")
    gamma = g_res.U.top_rows(s) @ w_low
    result = TorsionMatrix(cd.torsion_invariants, gamma.tolist())
    _check_torsion_congruences(result, cd)
    return result


def _check_torsion_congruences(gamma: TorsionMatrix, cd: CoveringData) -> None:
    gens = cd.V_hat_aligned.bottom_rows(gamma.rows)
    g = gamma.to_int_matrix()
    against_fan = g @ cd.V_aligned.transpose()
    for k, tau in enumerate(gamma.moduli):
        if any(x % tau != 0 for x in against_fan.row(k)):
            raise PreconditionError("torsion matrix does not annihilate the fan rows")
    against_gens = g @ gens.transpose()
    for k, tau in enumerate(gamma.moduli):
        for j in range(gamma.rows):
            want = 1 if j == k else 0
            if (against_gens[k, j] - want) % tau != 0:
                raise PreconditionError("torsion matrix does not normalize the generators")


def is_divisor_of_beta(eta: IntMatrix, beta: IntMatrix) -> bool:
    """Whether ``eta`` divides ``beta``: ``beta @ eta^{-1}`` is integral.

    Both matrices must be square nonsingular of the same size.
    """
    if not (eta.is_square() and beta.is_square()) or eta.shape != beta.shape:
        raise ShapeError("both matrices must be square of equal size")
    d = det(eta)
    if d == 0 or det(beta) == 0:
        raise PreconditionError("matrices must be nonsingular")
    adj = _adjugate(eta)
    prod = beta @ adj
    return all(prod[i, j] % d == 0 for i in range(prod.rows) for j in range(prod.cols))


def _adjugate(m: IntMatrix) -> IntMatrix:
    n = m.rows
    if n == 1:
        return IntMatrix([[1]])
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = IntMatrix(
                [
                    [m[r, c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
            )
            row.append((-1) ** (i + j) * det(minor))
        rows.append(row)
    return IntMatrix(rows)
