"""Consimilarity machinery.

The coneigen structure of ``A`` (the Jordan data of ``A conj(A)``) is read
from the double-size matrix ``hat = [[0, conj(A)], [A, 0]]``.  If ``A`` is
consimilar to a quasi-Jordan form then ``hat`` is similar to the direct sum
of that form and its negative, so:

* a Jordan block of ``hat`` at ``lam > 0`` is an ``H`` block with parameter ``lam``;
* two Jordan blocks of ``hat`` at ``i mu`` (``mu > 0``) make one ``K`` block;
* a Jordan block at ``xi`` with ``Re xi > 0``, ``Im xi < 0`` is an ``L`` block;
* two Jordan blocks at ``0`` make one nilpotent ``H`` block.

Working with ``hat`` keeps eigenvalues linear in the block parameters, which
separates small parameters far better than the squared eigenvalues of
``A conj(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from .blocks import block_H, block_K, block_L, jordan_block, quasi_jordan_P
from .matlin import (
    DEFAULT_TOL,
    Singular,
    Tolerances,
    ToleranceBreakdown,
    as_complex_matrix,
    direct_sum,
    numerical_rank,
)

__all__ = [
    "NONNEG_REAL",
    "NEG_REAL",
    "COMPLEX_PAIR",
    "ConeigenBlock",
    "ConeigenStructure",
    "QuasiJordan",
    "coneigen_structure",
    "alternating_rank_sequence",
    "quasi_jordan_form",
    "hermitian_canonical_h1",
    "double_size_embed",
    "double_block_eigenvectors",
    "consimilarity_solutions",
    "find_orthogonal_consimilarity",
    "canonical_xi",
]

NONNEG_REAL = "NONNEG_REAL"
NEG_REAL = "NEG_REAL"
COMPLEX_PAIR = "COMPLEX_PAIR"

_KIND_LETTER = {NONNEG_REAL: "H", NEG_REAL: "K", COMPLEX_PAIR: "L"}


@dataclass(frozen=True)
class ConeigenBlock:
    """One block of the coneigen structure.

    ``param`` is ``lambda >= 0`` for ``NONNEG_REAL``, ``mu > 0`` for
    ``NEG_REAL`` and the canonical ``xi`` for ``COMPLEX_PAIR``.
    """

    kind: str
    param: complex
    size: int

    @property
    def letter(self) -> str:
        return _KIND_LETTER[self.kind]

    @property
    def dim(self) -> int:
        return self.size if self.kind == NONNEG_REAL else 2 * self.size


@dataclass
class ConeigenStructure:
    blocks: List[ConeigenBlock]
    alt_ranks: List[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return sum(b.dim for b in self.blocks)

    def nilpotent_sizes(self) -> List[int]:
        return sorted(b.size for b in self.blocks if b.kind == NONNEG_REAL and b.param == 0)


@dataclass
class QuasiJordan:
    blocks: List[ConeigenBlock]
    matrix: np.ndarray


def canonical_xi(xi: complex) -> complex:
    """Representative of ``{xi, -xi, conj(xi), -conj(xi)}``.

    ``Re > 0`` and ``Im < 0``; on the imaginary axis ``-i|xi|``.
    """
    xi = complex(xi)
    return complex(abs(xi.real), -abs(xi.imag))


def _sort_key(b: ConeigenBlock):
    order = {NONNEG_REAL: 0, NEG_REAL: 1, COMPLEX_PAIR: 2}[b.kind]
    p = complex(b.param)
    if b.kind == COMPLEX_PAIR:
        return (order, abs(p), np.angle(p), b.size)
    return (order, p.real, b.size, 0.0)


def sort_blocks(blocks: Sequence[ConeigenBlock]) -> List[ConeigenBlock]:
    return sorted(blocks, key=_sort_key)


def double_size_embed(A) -> Tuple[np.ndarray, np.ndarray]:
    """``hat = [[0, conj A], [A, 0]]`` and the real ``[[A1, A2], [A2, -A1]]``."""
    A = as_complex_matrix(A, "A")
    n = A.shape[0]
    Z = np.zeros((n, n), dtype=complex)
    hat = np.block([[Z, A.conj()], [A, Z]])
    A1, A2 = A.real, A.imag
    tilde = np.block([[A1, A2], [A2, -A1]])
    return hat, tilde


def alternating_rank_sequence(A, tol: Tolerances = DEFAULT_TOL, length: Optional[int] = None) -> List[int]:
    """Ranks of ``A``, ``A conj(A)``, ``A conj(A) A``, ... (``2n`` terms).

    ``A`` is scaled to unit norm.  An orthonormal basis ``R`` of the row
    space of the current product is carried along and the next rank is that
    of ``R X`` with ``X`` the next factor, so each step costs the
    conditioning of one factor only.
    """
    A = as_complex_matrix(A, "A")
    n = A.shape[0]
    length = 2 * n if length is None else length
    nrm = float(np.linalg.norm(A, 2)) if n else 0.0
    if nrm == 0:
        return [0] * length
    A = A / nrm
    ranks = []
    R = np.eye(n, dtype=complex)
    for k in range(length):
        if R.shape[0] == 0:
            ranks.append(0)
            continue
        _, s, Vh = np.linalg.svd(R @ (A if k % 2 == 0 else A.conj()))
        r = int(np.sum(s > _stair_tol(tol)))
        ranks.append(r)
        R = Vh[:r]
    return ranks


def _stair_tol(tol: Tolerances) -> float:
    # rank cutoff for the normalized staircase matrices
    return 0.1 * tol.eig_cluster_tol


def _merge_radius(k: int, tol: Tolerances) -> float:
    # spread of a perturbed size-k Jordan block is about eta**(1/k)
    eta = tol.eig_cluster_tol ** 2
    return 2.0 * eta ** (1.0 / k) if k > 1 else 0.0


def _components(vals: np.ndarray, members: List[int], radius: float) -> List[List[int]]:
    """Single-linkage components of ``vals[members]`` at ``radius``."""
    left = list(members)
    comps = []
    while left:
        comp = [left.pop(0)]
        grew = True
        while grew:
            grew = False
            for j in list(left):
                if any(abs(vals[j] - vals[i]) <= radius for i in comp):
                    comp.append(j)
                    left.remove(j)
                    grew = True
        comps.append(comp)
    return comps


def _weyr_sizes(N: np.ndarray, tol: Tolerances) -> Optional[List[int]]:
    """Jordan sizes of a nearly nilpotent ``N`` from the rank staircase."""
    k = N.shape[0]
    ranks = [k]
    P = np.eye(k, dtype=complex)
    for _ in range(k):
        P = P @ N
        s = np.linalg.svd(P, compute_uv=False) if k else np.zeros(0)
        ranks.append(int(np.sum(s > _stair_tol(tol))))
    if ranks[-1] != 0:
        return None
    weyr = [ranks[j - 1] - ranks[j] for j in range(1, k + 1)]
    if any(weyr[j] < weyr[j + 1] for j in range(len(weyr) - 1)):
        return None
    sizes = []
    for j in range(len(weyr)):
        nxt = weyr[j + 1] if j + 1 < len(weyr) else 0
        sizes += [j + 1] * (weyr[j] - nxt)
    return sorted(sizes)


def _cluster_jordan(M: np.ndarray, idx: List[int], vals: np.ndarray, tol: Tolerances, center=None):
    """Validate a cluster and return ``(center, sizes)`` or ``None``."""
    k = len(idx)
    c = np.mean(vals[idx]) if center is None else center
    n = M.shape[0]
    S = np.linalg.matrix_power(M - c * np.eye(n), k)
    _, s, Vh = np.linalg.svd(S)
    if s[n - k] > _stair_tol(tol) and not (k == n):
        return None
    V = Vh[n - k:].conj().T
    N = V.conj().T @ (M - c * np.eye(n)) @ V
    sizes = _weyr_sizes(N, tol)
    if sizes is None:
        return None
    return c, sizes


def _snap_center(c: complex, k: int, tol: Tolerances) -> complex:
    r = max(_merge_radius(k, tol), tol.eig_cluster_tol)
    if abs(c) <= r:
        return 0.0
    if abs(c.imag) <= r:
        return c.real
    if abs(c.real) <= r:
        return 1j * c.imag
    return c


def _hat_clusters(hat: np.ndarray, tol: Tolerances):
    """Cluster the spectrum of ``hat / scale``; returns (scale, [(center, sizes)]).

    A group of ``k`` eigenvalues is formed by single linkage at the radius
    expected for a perturbed Jordan block of size ``k``, then checked by the
    rank staircase of the restriction to its generalized eigenspace.  Groups
    failing the check are split at the next smaller radius.
    """
    scale = float(np.linalg.norm(hat, 2))
    if scale == 0:
        return 0.0, [(0.0, [1] * hat.shape[0])]
    M = hat / scale
    vals = np.linalg.eigvals(M)
    out = []
    pending = [(list(range(len(vals))), len(vals))]
    while pending:
        members, j = pending.pop()
        for comp in _components(vals, members, _merge_radius(j, tol)):
            k = len(comp)
            if k < j and k > 1:
                pending.append((comp, k))
                continue
            c = _snap_center(complex(np.mean(vals[comp])), k, tol)
            res = _cluster_jordan(M, comp, vals, tol, center=c)
            if res is None:
                if k == 1:
                    res = (c, [1])
                elif j <= 2:
                    raise ToleranceBreakdown("eigenvalue cluster of the double-size matrix fails the staircase check")
                else:
                    pending.append((comp, min(k, j) - 1))
                    continue
            out.append(res)
    return scale, out


def coneigen_structure(A, tol: Tolerances = DEFAULT_TOL) -> ConeigenStructure:
    """Coneigen structure of a square matrix.

    Examples
    --------
    >>> s = coneigen_structure(np.eye(3))
    >>> [(b.kind, round(b.param, 8), b.size) for b in s.blocks]
    [('NONNEG_REAL', 1.0, 1), ('NONNEG_REAL', 1.0, 1), ('NONNEG_REAL', 1.0, 1)]
    """
    A = as_complex_matrix(A, "A")
    n = A.shape[0]
    hat, _ = double_size_embed(A)
    scale, clusters = _hat_clusters(hat, tol)
    blocks: List[ConeigenBlock] = []
    for c, sizes in clusters:
        c = complex(c)
        if c == 0:
            if len(sizes) % 2:
                raise ToleranceBreakdown("odd number of nilpotent Jordan blocks in the double-size matrix")
            for s in sizes[::2]:
                blocks.append(ConeigenBlock(NONNEG_REAL, 0.0, s))
        elif c.imag == 0 and c.real > 0:
            for s in sizes:
                blocks.append(ConeigenBlock(NONNEG_REAL, c.real * scale, s))
        elif c.real == 0 and c.imag > 0:
            if len(sizes) % 2:
                raise ToleranceBreakdown("unpaired Jordan blocks on the imaginary axis")
            for s in sizes[::2]:
                blocks.append(ConeigenBlock(NEG_REAL, c.imag * scale, s))
        elif c.real > 0 and c.imag < 0:
            for s in sizes:
                blocks.append(ConeigenBlock(COMPLEX_PAIR, canonical_xi(c * scale), s))
    st = ConeigenStructure(sort_blocks(blocks), alternating_rank_sequence(A, tol))
    if st.n != n:
        raise ToleranceBreakdown(f"coneigen blocks cover {st.n} dimensions, expected {n}")
    _check_alt_ranks(st, n)
    return st


def _expected_alt_ranks(st: ConeigenStructure, n: int) -> List[int]:
    nil = st.nilpotent_sizes()
    base = n - sum(nil)
    return [base + sum(max(s - k, 0) for s in nil) for k in range(1, 2 * n + 1)]


def _check_alt_ranks(st: ConeigenStructure, n: int) -> None:
    # cross-check of the nilpotent sizes; skipped when nonzero parameters span
    # several orders of magnitude, since their products then fall below the cutoff
    nonzero = [abs(complex(b.param)) for b in st.blocks if b.param != 0]
    if not st.nilpotent_sizes():
        return
    if nonzero and min(nonzero) < 1e-2 * max(nonzero):
        return
    upto = max(st.nilpotent_sizes()) + 1
    if st.alt_ranks[:upto] != _expected_alt_ranks(st, n)[:upto]:
        raise ToleranceBreakdown(
            f"alternating ranks {st.alt_ranks} disagree with nilpotent sizes {st.nilpotent_sizes()}"
        )


def quasi_jordan_form(A, tol: Tolerances = DEFAULT_TOL, structure: Optional[ConeigenStructure] = None) -> QuasiJordan:
    """Assemble the quasi-Jordan form from the coneigen structure."""
    st = structure if structure is not None else coneigen_structure(A, tol)
    mats = []
    for b in st.blocks:
        m = b.size
        Z = np.zeros((m, m), dtype=complex)
        if b.kind == NONNEG_REAL:
            mats.append(jordan_block(m, complex(b.param).real))
        elif b.kind == NEG_REAL:
            J = jordan_block(m, complex(b.param).real)
            mats.append(np.block([[Z, J], [-J, Z]]))
        else:
            J = jordan_block(m, b.param)
            mats.append(np.block([[Z, J], [J.conj(), Z]]))
    return QuasiJordan(list(st.blocks), direct_sum(*mats))


def block_matrix(b: ConeigenBlock, sign: int = 1) -> np.ndarray:
    """Elementary Hermitian block for a coneigen block."""
    if b.kind == NONNEG_REAL:
        return sign * block_H(b.size, complex(b.param).real)
    if b.kind == NEG_REAL:
        return block_K(b.size, complex(b.param).real)
    return block_L(b.size, b.param)


def h1_from_structure(st: ConeigenStructure) -> np.ndarray:
    return direct_sum(*[block_matrix(b) for b in st.blocks])


def quasi_jordan_to_h1(st: ConeigenStructure) -> np.ndarray:
    """The ``P`` with ``H1 = P^{-1} J_q conj(P)``."""
    mats = []
    for b in st.blocks:
        Pm = quasi_jordan_P(b.size)
        if b.kind == NONNEG_REAL:
            mats.append(Pm)
        elif b.kind == NEG_REAL:
            mats.append(np.exp(1j * np.pi / 4) * direct_sum(Pm, Pm))
        else:
            mats.append(direct_sum(Pm, Pm))
    return direct_sum(*mats)


def _real_system(A: np.ndarray, H: np.ndarray) -> np.ndarray:
    """Real matrix of ``X -> A X - conj(X) H`` acting on ``[Re X; Im X]``."""
    n, d = A.shape[0], H.shape[0]
    K1 = np.kron(np.eye(d), A)
    K2 = np.kron(H.T, np.eye(n))
    D, S = K1 - K2, K1 + K2
    return np.block([[D.real, -S.imag], [D.imag, S.real]])


def _null_basis(A: np.ndarray, H: np.ndarray, dim: int, tol: Tolerances) -> List[np.ndarray]:
    n, d = A.shape[0], H.shape[0]
    M = _real_system(A, H)
    _, s, Vh = np.linalg.svd(M)
    nvar = 2 * n * d
    scale = max(1.0, float(np.linalg.norm(A, 2)), float(np.linalg.norm(H, 2)))
    if dim < nvar:
        if dim > 0 and s[nvar - dim] > 1e-6 * scale:
            raise ToleranceBreakdown("consimilarity solution space not found at this tolerance")
        if s[nvar - dim - 1] < 1e-9 * scale:
            raise ToleranceBreakdown("consimilarity solution space larger than expected")
    basis = []
    for v in Vh[nvar - dim:]:
        X = (v[: n * d] + 1j * v[n * d:]).reshape((d, n)).T
        basis.append(X)
    return basis


def solution_dimension(A: np.ndarray, H: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> int:
    """Real dimension of ``{X : A X = conj(X) H}`` for exactly known matrices."""
    M = _real_system(A, H)
    s = np.linalg.svd(M, compute_uv=False)
    scale = max(1.0, s[0] if s.size else 1.0)
    return int(np.sum(s <= 1e-9 * scale)) + max(0, M.shape[1] - M.shape[0])


def consimilarity_solutions(A, H, tol: Tolerances = DEFAULT_TOL, dim: Optional[int] = None, H_ref=None):
    """Real basis of ``{X : A X = conj(X) H}``.

    ``dim`` defaults to the dimension of the same space with ``H_ref`` (or
    ``H``) in place of ``A``, which is exact when ``A`` is consimilar to
    ``H_ref``.
    """
    A = as_complex_matrix(A, "A")
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    if dim is None:
        ref = H if H_ref is None else H_ref
        dim = solution_dimension(ref, H, tol)
    return _null_basis(A, H, dim, tol)


def hermitian_canonical_h1(A, tol: Tolerances = DEFAULT_TOL, seed: int = 0):
    """Hong's form with all signs ``+1`` and a consimilarity witness.

    Returns ``(H1, X)`` with ``conj(X)^{-1} A X = H1``.
    """
    A = as_complex_matrix(A, "A")
    st = coneigen_structure(A, tol)
    H1 = h1_from_structure(st)
    basis = consimilarity_solutions(A, H1, tol, H_ref=H1)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        coef = rng.standard_normal(len(basis))
        X = sum(c * B for c, B in zip(coef, basis))
        if numerical_rank(X, tol) == A.shape[0]:
            resid = np.linalg.norm(A @ X - X.conj() @ H1) / max(1.0, np.linalg.norm(X))
            if resid <= tol.residual_tol * max(1.0, np.linalg.norm(A)):
                return H1, X
    raise ToleranceBreakdown("no nonsingular consimilarity witness found")


def _orthogonalize(X: np.ndarray) -> Optional[np.ndarray]:
    """``X (X^T X)^{-1/2}`` when the principal square root exists."""
    W = X.T @ X
    W = (W + W.T) / 2
    ev = np.linalg.eigvals(W)
    if np.any(np.abs(ev) < 1e-10) or np.any((np.abs(ev.imag) < 1e-10 * np.abs(ev)) & (ev.real < 0)):
        return None
    try:
        R = sla.sqrtm(W)
        D = np.linalg.inv(R)
    except (np.linalg.LinAlgError, ValueError):
        return None
    if not np.all(np.isfinite(D)):
        return None
    D = (D + D.T) / 2
    return X @ D


def find_orthogonal_consimilarity(A, H, tol: Tolerances = DEFAULT_TOL, seed: int = 0, tries: int = 12):
    """Complex orthogonal ``Q`` with ``Q^* A Q = H``, or ``None``.

    Works for Hermitian ``A`` and ``H``: a nonsingular solution ``X`` of
    ``A X = conj(X) H`` has ``W = X^T X`` commuting with the structure of
    ``H``, and ``X W^{-1/2}`` is orthogonal and still a solution.
    """
    A = as_complex_matrix(A, "A")
    H = as_complex_matrix(H, "H")
    n = A.shape[0]
    dim_ref = solution_dimension(H, H, tol)
    try:
        basis = _null_basis(A, H, dim_ref, tol)
    except ToleranceBreakdown:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        coef = rng.standard_normal(len(basis))
        X = sum(c * B for c, B in zip(coef, basis))
        if numerical_rank(X, tol) < n:
            continue
        Q = _orthogonalize(X)
        if Q is None:
            continue
        if _orth_residual(A, H, Q) <= tol.residual_tol:
            return Q
    return _lsq_orthogonal(A, H, basis, tol, rng)


def _orth_residual(A, H, Q) -> float:
    n = Q.shape[0]
    r1 = np.linalg.norm(Q.conj().T @ A @ Q - H) / (1 + np.linalg.norm(H))
    r2 = np.linalg.norm(Q.T @ Q - np.eye(n))
    return max(r1, r2)


def _lsq_orthogonal(A, H, basis, tol, rng, tries: int = 6):
    """Least-squares fallback: pick coefficients so that ``X^T X = I``."""
    from scipy.optimize import least_squares

    n = A.shape[0]
    if not basis:
        return None
    stack = np.array(basis)
    iu = np.triu_indices(n)

    def resid(c):
        X = np.tensordot(c, stack, axes=1)
        R = (X.T @ X - np.eye(n))[iu]
        return np.concatenate([R.real, R.imag])

    for _ in range(tries):
        c0 = rng.standard_normal(len(basis))
        sol = least_squares(resid, c0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000)
        Q = np.tensordot(sol.x, stack, axes=1)
        if _orth_residual(A, H, Q) <= tol.residual_tol:
            return Q
    return None


def double_block_eigenvectors(A, tol: Tolerances = DEFAULT_TOL):
    """Eigenpairs of ``[[0, A], [A*, 0]]`` built from those of ``A A*``.

    For each eigenpair ``(l, u)`` of ``A A*`` the vectors
    ``[u; +-A* u / sqrt(l)]`` belong to ``+-sqrt(l)``.

    Raises
    ------
    Singular
        If ``A`` is numerically singular.
    """
    A = as_complex_matrix(A, "A")
    n = A.shape[0]
    if numerical_rank(A, tol) < n:
        raise Singular("A is singular")
    lam, U = np.linalg.eigh(A @ A.conj().T)
    out = []
    for j in range(n):
        r = np.sqrt(lam[j])
        u = U[:, j]
        w = A.conj().T @ u / r
        out.append((r, np.concatenate([u, w])))
        out.append((-r, np.concatenate([u, -w])))
    return out
