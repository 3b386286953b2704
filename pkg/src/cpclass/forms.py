"""The three normal forms of a pair ``(A, I)`` with ``A`` Hermitian.

FORM 1 is ``(H^eps(A), I)``, a direct sum of signed ``H`` blocks and
``K``/``L`` blocks reached by complex orthogonal ``*``-congruence.  FORM 2
is ``(J_E^eps(A), E(A))`` with backward identities ``E``.  FORM 3 is
``(I(A), N_I(A))`` with ``I(A)`` the inertia matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .blocks import block_H, block_K, block_L, jordan_block
from .consim import (
    COMPLEX_PAIR,
    NEG_REAL,
    NONNEG_REAL,
    ConeigenBlock,
    _lsq_orthogonal,
    _null_basis,
    _orth_residual,
    _orthogonalize,
    coneigen_structure,
    solution_dimension,
)
from .matlin import (
    DEFAULT_TOL,
    InertiaTriple,
    NotHermitian,
    Tolerances,
    ToleranceBreakdown,
    Unsupported,
    as_complex_matrix,
    backward_identity,
    direct_sum,
    is_hermitian,
    sylvester_inertia,
    takagi_factorization,
)

__all__ = [
    "block_H",
    "block_K",
    "block_L",
    "FormBlock",
    "Form1",
    "Form2Block",
    "Form2",
    "Form3",
    "form1",
    "form2",
    "form2_to_form1",
    "form3",
    "polynomial_discriminant",
    "generic_forms",
    "small_block_reference",
    "assemble_form1",
    "flip_form1",
]


@dataclass(frozen=True)
class FormBlock:
    """A FORM 1 block ``sign * H_size(param)``, ``K_size(param)`` or ``L_size(param)``."""

    kind: str
    size: int
    param: complex
    sign: int = 1

    @property
    def dim(self) -> int:
        return self.size if self.kind == "H" else 2 * self.size

    def matrix(self) -> np.ndarray:
        if self.kind == "H":
            return self.sign * block_H(self.size, complex(self.param).real)
        if self.kind == "K":
            return block_K(self.size, complex(self.param).real)
        return block_L(self.size, self.param)

    @property
    def odd_nilpotent(self) -> bool:
        return self.kind == "H" and self.param == 0 and self.size % 2 == 1

    def label(self) -> str:
        p = complex(self.param)
        ptxt = f"{p.real:.6g}" if self.kind != "L" else f"{p.real:.6g}{p.imag:+.6g}i"
        s = "" if self.kind != "H" else ("+" if self.sign > 0 else "-")
        return f"{s}{self.kind}{self.size}({ptxt})"


def _block_key(b: FormBlock):
    order = {"H": 0, "K": 1, "L": 2}[b.kind]
    p = complex(b.param)
    if b.kind == "L":
        return (order, round(abs(p), 9), round(float(np.angle(p)), 9), b.size, 0)
    return (order, round(p.real, 9), b.size, -b.sign)


@dataclass
class Form1:
    blocks: List[FormBlock]
    assembled: np.ndarray
    witness: np.ndarray
    global_sign: int = 1

    def residuals(self, A) -> Tuple[float, float]:
        Q = self.witness
        n = Q.shape[0]
        r_form = np.linalg.norm(self.global_sign * Q.conj().T @ A @ Q - self.assembled)
        r_orth = np.linalg.norm(Q.T @ Q - np.eye(n))
        return float(r_form), float(r_orth)

    def signature(self) -> List[Tuple]:
        return [_block_key(b) for b in self.blocks]


def assemble_form1(blocks: Sequence[FormBlock]) -> np.ndarray:
    return direct_sum(*[b.matrix() for b in blocks])


def _flip_matrix(b: FormBlock) -> np.ndarray:
    """Orthogonal ``G`` with ``G^* (-B) G`` equal to the block with flipped sign."""
    if b.kind == "H":
        if b.odd_nilpotent:
            return np.diag([(-1.0) ** (j + 1) for j in range(b.size)]).astype(complex)
        return np.eye(b.size, dtype=complex)
    return direct_sum(np.eye(b.size), -np.eye(b.size))


def flip_form1(f: Form1) -> Form1:
    """FORM 1 of ``-A`` from that of ``A``: H-signs flip, K and L are kept."""
    blocks = []
    G = []
    for b in f.blocks:
        nb = FormBlock(b.kind, b.size, b.param, b.sign if b.odd_nilpotent or b.kind != "H" else -b.sign)
        blocks.append(nb)
        G.append(_flip_matrix(b))
    Q = f.witness @ direct_sum(*G)
    return _sorted_form1(blocks, Q, f.global_sign)


def _sorted_form1(blocks: List[FormBlock], Q: np.ndarray, eps0: int) -> Form1:
    offsets = np.cumsum([0] + [b.dim for b in blocks])
    order = sorted(range(len(blocks)), key=lambda i: _block_key(blocks[i]))
    cols = np.concatenate([np.arange(offsets[i], offsets[i + 1]) for i in order]) if blocks else np.zeros(0, int)
    new_blocks = [blocks[i] for i in order]
    return Form1(new_blocks, assemble_form1(new_blocks), Q[:, cols], eps0)


def _structure_blocks(st) -> List[FormBlock]:
    out = []
    for b in st.blocks:
        if b.kind == NONNEG_REAL:
            out.append(FormBlock("H", b.size, float(complex(b.param).real), 1))
        elif b.kind == NEG_REAL:
            out.append(FormBlock("K", b.size, float(complex(b.param).real), 1))
        else:
            out.append(FormBlock("L", b.size, complex(b.param), 1))
    return out


def _clusters(blocks: List[FormBlock]) -> List[List[int]]:
    groups: Dict[Tuple, List[int]] = {}
    for i, b in enumerate(blocks):
        key = (b.kind, complex(b.param))
        groups.setdefault(key, []).append(i)
    return list(groups.values())


def _sign_candidates(blocks: List[FormBlock]):
    """Sign vectors ordered by number of minus signs; one per multiset."""
    flippable = [i for i, b in enumerate(blocks) if b.kind == "H" and not b.odd_nilpotent]
    seen = set()
    cands = []
    for mask in itertools.product([1, -1], repeat=len(flippable)):
        signs = [1] * len(blocks)
        for i, s in zip(flippable, mask):
            signs[i] = s
        key = tuple(sorted((blocks[i].size, signs[i]) for i in range(len(blocks))))
        if key in seen:
            continue
        seen.add(key)
        cands.append(signs)
    cands.sort(key=lambda s: sum(1 for x in s if x < 0))
    return cands


def form1(A, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Form1:
    """FORM 1 of a Hermitian matrix with a complex orthogonal witness.

    The block data come from :func:`~cpclass.consim.coneigen_structure`.
    For each group of blocks sharing a coneigenvalue, a random solution
    ``X`` of ``A X = conj(X) H_c`` is drawn.  ``W = X^T X`` commutes with
    the block structure; flipping the sign of an ``H`` block multiplies its
    columns by ``i``.  For the right signs ``W`` admits a principal inverse
    square root and ``Q_c = X F W_eps^{-1/2}`` is complex orthogonal with
    ``A Q_c = conj(Q_c) H_c^eps``.

    Raises
    ------
    ToleranceBreakdown
        If no sign assignment yields a verified witness.
    """
    A = as_complex_matrix(A, "A")
    if not is_hermitian(A, tol):
        raise NotHermitian("A is not Hermitian")
    A = (A + A.conj().T) / 2
    n = A.shape[0]
    if n == 0:
        return Form1([], np.zeros((0, 0), complex), np.zeros((0, 0), complex), 1)
    st = coneigen_structure(A, tol)
    blocks = _structure_blocks(st)
    H1 = assemble_form1(blocks)
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.linalg.norm(A)))
    out_blocks: List[FormBlock] = []
    cols = []
    for idx in _clusters(blocks):
        cb = [blocks[i] for i in idx]
        Hc = direct_sum(*[b.matrix() for b in cb])
        dim = solution_dimension(H1, Hc, tol)
        basis = _null_basis(A, Hc, dim, tol)
        signs, Qc = _solve_cluster(A, cb, basis, tol, rng, scale)
        out_blocks += [FormBlock(b.kind, b.size, b.param, s) for b, s in zip(cb, signs)]
        cols.append(Qc)
    Q = np.hstack(cols)
    f = _sorted_form1(out_blocks, Q, 1)
    r_form, r_orth = f.residuals(A)
    if r_form > tol.residual_tol * scale or r_orth > tol.residual_tol:
        raise ToleranceBreakdown(f"FORM 1 witness residuals {r_form:.2e}, {r_orth:.2e}")
    _check_inertia(A, f, tol)
    return f


def _block_diag_F(blocks: List[FormBlock], signs: Sequence[int]) -> np.ndarray:
    d = []
    for b, s in zip(blocks, signs):
        d += [1j if s < 0 else 1.0] * b.dim
    return np.diag(np.array(d, dtype=complex))


def _solve_cluster(A, cb, basis, tol, rng, scale, tries: int = 10):
    n = A.shape[0]
    cands = _sign_candidates(cb)
    k = sum(b.dim for b in cb)

    def accept(signs, Qc):
        Hs = direct_sum(*[FormBlock(b.kind, b.size, b.param, s).matrix() for b, s in zip(cb, signs)])
        r1 = np.linalg.norm(Qc.conj().T @ A @ Qc - Hs)
        r2 = np.linalg.norm(Qc.T @ Qc - np.eye(k))
        return r1 <= 0.1 * tol.residual_tol * scale and r2 <= 0.1 * tol.residual_tol

    for _ in range(tries):
        coef = rng.standard_normal(len(basis))
        X = np.tensordot(coef, np.array(basis), axes=1)
        if np.linalg.matrix_rank(X) < k:
            continue
        for signs in cands:
            Qc = _orthogonalize(X @ _block_diag_F(cb, signs))
            if Qc is not None and accept(signs, Qc):
                return signs, Qc
    stack = np.array(basis)
    from scipy.optimize import least_squares

    iu = np.triu_indices(k)
    for signs in cands:
        F = _block_diag_F(cb, signs)

        def resid(c):
            X = np.tensordot(c, stack, axes=1) @ F
            R = (X.T @ X - np.eye(k))[iu]
            return np.concatenate([R.real, R.imag])

        for _ in range(4):
            sol = least_squares(resid, rng.standard_normal(len(basis)), method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
            Qc = np.tensordot(sol.x, stack, axes=1) @ F
            if accept(signs, Qc):
                return signs, Qc
    raise ToleranceBreakdown("no sign assignment gives an orthogonal FORM 1 witness")


def _check_inertia(A, f: Form1, tol: Tolerances) -> None:
    a = sylvester_inertia(A, tol).signature
    b = sylvester_inertia(f.assembled, tol).signature
    if a != b:
        raise ToleranceBreakdown(f"inertia {a} of A differs from inertia {b} of its FORM 1")


# FORM 2 ---------------------------------------------------------------------


@dataclass(frozen=True)
class Form2Block:
    """One FORM 2 block ``(sign * E J, E)``.

    ``param`` is ``lambda`` for ``H`` blocks and the pair ``(a, b)`` of
    ``Lambda = [[a, -b], [b, a]]`` for ``K`` and ``L`` blocks.
    """

    kind: str
    size: int
    param: object
    sign: int = 1

    def J(self) -> np.ndarray:
        if self.kind == "H":
            return jordan_block(self.size, self.param)
        a, b = self.param
        Lam = np.array([[a, -b], [b, a]], dtype=complex)
        m = self.size
        J = np.kron(np.eye(m), Lam) + np.kron(np.eye(m, k=1), np.eye(2))
        return J.astype(complex)

    def E(self) -> np.ndarray:
        return backward_identity(self.size if self.kind == "H" else 2 * self.size)

    def matrix(self) -> np.ndarray:
        return self.sign * self.E() @ self.J()


@dataclass
class Form2:
    blocks: List[Form2Block]
    J: np.ndarray
    E: np.ndarray


def _form2_from_form1(f1: Form1) -> Form2:
    blocks = []
    for b in f1.blocks:
        if b.kind == "H":
            blocks.append(Form2Block("H", b.size, float(complex(b.param).real), b.sign))
        elif b.kind == "K":
            blocks.append(Form2Block("K", b.size, (0.0, float(complex(b.param).real)), 1))
        else:
            xi = complex(b.param)
            blocks.append(Form2Block("L", b.size, (xi.real, -xi.imag), 1))
    J = direct_sum(*[b.matrix() for b in blocks])
    E = direct_sum(*[b.E() for b in blocks])
    return Form2(blocks, J, E)


def form2(A, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Form2:
    """FORM 2: block data from the double-size matrix, signs from FORM 1."""
    return _form2_from_form1(form1(A, tol, seed))


def form2_to_form1(f: Form2, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> Form1:
    """Convert FORM 2 to FORM 1 blockwise.

    Each ``E`` is Takagi factored as ``U^T E U = I``; then
    ``(J, E) ~ (U^* J U, I)`` and FORM 1 of ``U^* J U`` is taken.
    The returned witness maps ``(J_E, E)`` to FORM 1: ``P^* J_E P`` is the
    assembled matrix and ``P^T E P = I``.
    """
    out_blocks = []
    Ps = []
    for b in f.blocks:
        U, s, m = takagi_factorization(b.E(), tol)
        M = U.conj().T @ b.matrix() @ U
        M = (M + M.conj().T) / 2
        fb = form1(M, tol, seed)
        out_blocks += fb.blocks
        Ps.append(U @ fb.witness)
    P = direct_sum(*Ps)
    return _sorted_form1(out_blocks, P, 1)


# FORM 3 ---------------------------------------------------------------------


@dataclass
class Form3:
    inertia: InertiaTriple
    N: np.ndarray
    certificate: np.ndarray
    form1: Optional[Form1] = None


def _phase_normalize(N: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Diagonal unit phases ``D`` making ``D N D`` real positive where it can."""
    n = N.shape[0]
    theta = [None] * n
    for j in range(n):
        if abs(N[j, j]) > tol:
            theta[j] = -np.angle(N[j, j]) / 2
    changed = True
    while changed:
        changed = False
        for j in range(n):
            if theta[j] is not None:
                continue
            for k in range(n):
                if k != j and theta[k] is not None and abs(N[j, k]) > tol:
                    theta[j] = -np.angle(N[j, k]) - theta[k]
                    changed = True
                    break
            if theta[j] is None and not changed and all(t is None for t in theta):
                theta[j] = 0.0
                changed = True
        if not changed:
            for j in range(n):
                if theta[j] is None:
                    theta[j] = 0.0
                    changed = True
                    break
    return np.diag(np.exp(1j * np.array(theta, dtype=float)))


def _last_phase(v: np.ndarray) -> complex:
    big = np.nonzero(np.abs(v) > 1e-8 * np.max(np.abs(v)))[0]
    if not big.size:
        return 1.0
    x = v[big[-1]]
    return np.conj(x) / abs(x)


def inertia_normal_form(M: np.ndarray, B: np.ndarray, tol: Tolerances = DEFAULT_TOL, blocks=None,
                        orient: bool = False):
    """``(I(M), Q^T B Q)`` for Hermitian ``M`` with ``Q`` from Sylvester inertia.

    With ``blocks`` (a list of sizes), ``M`` is treated blockwise and the
    columns are regrouped as negatives, positives, kernel.  With ``orient``
    each column is first rotated so that its last significant entry is real
    positive, which makes the result independent of the eigensolver's phases.
    """
    if blocks is None:
        blocks = [M.shape[0]]
    offs = np.cumsum([0] + list(blocks))
    neg, pos, ker = [], [], []
    Qfull = np.zeros_like(M, dtype=complex)
    for a, b in zip(offs[:-1], offs[1:]):
        it = sylvester_inertia(M[a:b, a:b], tol)
        Tb = it.transform
        if orient:
            Tb = Tb * np.array([_last_phase(Tb[:, j]) for j in range(Tb.shape[1])])
        Qfull[a:b, a:b] = Tb
        neg += list(range(a, a + it.n_neg))
        pos += list(range(a + it.n_neg, a + it.n_neg + it.n_pos))
        ker += list(range(a + it.n_neg + it.n_pos, b))
    order = neg + pos + ker
    Q = Qfull[:, order]
    N = Q.T @ B @ Q
    D = _phase_normalize(N)
    Q = Q @ D
    N = Q.T @ B @ Q
    N = (N + N.T) / 2
    return InertiaTriple(len(neg), len(pos), len(ker), Q), N


def form3(A, tol: Tolerances = DEFAULT_TOL, seed: int = 0, f1: Optional[Form1] = None) -> Form3:
    """FORM 3 ``(I(A), N_I(A))`` computed blockwise on FORM 1.

    The certificate ``P`` satisfies ``eps0 * P^* A P = I(A)`` and
    ``P^T P = N``.
    """
    A = as_complex_matrix(A, "A")
    f1 = form1(A, tol, seed) if f1 is None else f1
    it, N = inertia_normal_form(f1.assembled, np.eye(A.shape[0]), tol, [b.dim for b in f1.blocks])
    P = f1.witness @ it.transform
    return Form3(InertiaTriple(it.n_neg, it.n_pos, it.n_zero, it.transform), N, P, f1)


# generic fast path ------------------------------------------------------------


def _resultant_test(A: np.ndarray, tol: Tolerances) -> bool:
    M = A @ A.conj()
    n = A.shape[0]
    rho = max(float(np.linalg.norm(M, 2)), 1e-300)
    coeffs = np.poly(M / rho)
    p = np.poly1d(coeffs)
    dp = p.deriv()
    res = _sylvester_resultant(p.coeffs, dp.coeffs)
    cutoff = tol.rank_cutoff(n) * (1 + np.linalg.norm(coeffs)) ** (2 * n - 1)
    return abs(res) > cutoff


def _sylvester_resultant(f, g) -> complex:
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    m, n = len(f) - 1, len(g) - 1
    if m + n == 0:
        return 1.0
    S = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        S[i, i:i + m + 1] = f
    for i in range(m):
        S[n + i, i:i + n + 1] = g
    return complex(np.linalg.det(S))


def polynomial_discriminant(coeffs) -> complex:
    """Discriminant ``(-1)^(d(d-1)/2) Res(p, p') / a_d`` of ``p`` (highest degree first)."""
    p = np.trim_zeros(np.asarray(coeffs, dtype=complex), "f")
    d = len(p) - 1
    if d < 1:
        raise ValueError("need a polynomial of degree >= 1")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * _sylvester_resultant(p, np.polyder(p)) / p[0]


def generic_forms(A, tol: Tolerances = DEFAULT_TOL):
    """Closed-form FORM 1/2/3 when ``A conj(A)`` has simple spectrum.

    Returns ``None`` when the resultant of the characteristic polynomial of
    ``A conj(A)`` and its derivative vanishes numerically.  Otherwise the
    forms are built from eigenvectors: for ``lam^2 > 0`` an eigenvector
    ``y`` of ``A conj(A)`` gives ``x`` with ``A x = lam conj(x)``, and the
    sign is that of ``x^T x``.
    """
    A = as_complex_matrix(A, "A")
    if not is_hermitian(A, tol):
        raise NotHermitian("A is not Hermitian")
    A = (A + A.conj().T) / 2
    n = A.shape[0]
    if not _resultant_test(A, tol):
        return None
    M = A @ A.conj()
    nu, V = np.linalg.eig(M)
    scale = max(1.0, float(np.linalg.norm(M, 2)))
    blocks: List[FormBlock] = []
    cols: List[np.ndarray] = []
    done = set()
    for j in np.argsort(nu.real):
        if j in done:
            continue
        v = nu[j]
        if abs(v.imag) <= 1e-9 * scale and v.real >= -1e-9 * scale:
            lam = float(np.sqrt(max(v.real, 0.0)))
            if lam <= 1e-9 * np.sqrt(scale):
                q = V[:, j] / np.linalg.norm(V[:, j])
                q = q / np.sqrt(q @ q)
                blocks.append(FormBlock("H", 1, 0.0, 1))
                cols.append(q[:, None])
                done.add(j)
                continue
            y = V[:, j]
            kappa = (y.conj() @ A @ y.conj()) / (y.conj() @ y)
            x = np.sqrt(lam / kappa) * y.conj()
            w = x @ x
            sign = 1 if w.real > 0 else -1
            q = x / np.sqrt(sign * w) * (1 if sign > 0 else 1j)
            blocks.append(FormBlock("H", 1, lam, sign))
            cols.append(q[:, None])
            done.add(j)
        else:
            xi = np.sqrt(complex(v))
            xi = complex(abs(xi.real), -abs(xi.imag))
            partner = min((i for i in range(n) if i != j and i not in done), key=lambda i: abs(nu[i] - np.conj(v)))
            done.update({j, partner})
            b = FormBlock("L", 1, xi, 1)
            basis = _null_basis(A, b.matrix(), 2, tol)
            rng = np.random.default_rng(0)
            Qc = None
            for _ in range(10):
                X = np.tensordot(rng.standard_normal(2), np.array(basis), axes=1)
                Qc = _orthogonalize(X)
                if Qc is not None:
                    break
            if Qc is None:
                Qc = _lsq_orthogonal(A, b.matrix(), basis, tol, rng)
            if Qc is None:
                raise ToleranceBreakdown("generic L block witness not found")
            blocks.append(b)
            cols.append(Qc)
    f1 = _sorted_form1(blocks, np.hstack(cols), 1)
    f2 = _form2_from_form1(f1)
    inertia_blocks, N_blocks = [], []
    for b in f1.blocks:
        if b.kind == "H":
            x = complex(b.param).real
            inertia_blocks.append([b.sign if x != 0 else 0])
            N_blocks.append(np.array([[1.0 / x if x != 0 else 1.0]]))
        else:
            xi = complex(b.param)
            inertia_blocks.append([-1, 1])
            c = 1 / (2 * np.conj(xi) * abs(xi))
            N_blocks.append(c * np.array([[xi + np.conj(xi), np.conj(xi) - xi], [np.conj(xi) - xi, xi + np.conj(xi)]]))
    d = np.concatenate(inertia_blocks) if inertia_blocks else np.zeros(0)
    N = direct_sum(*N_blocks)
    order = list(np.where(d < 0)[0]) + list(np.where(d > 0)[0]) + list(np.where(d == 0)[0])
    N = N[np.ix_(order, order)]
    it = InertiaTriple(int(np.sum(d < 0)), int(np.sum(d > 0)), int(np.sum(d == 0)), np.eye(n, dtype=complex)[:, order])
    f3 = Form3(it, N, None, f1)
    return f1, f2, f3


# closed-form reference data ----------------------------------------------------


def small_block_reference(kind: str, m: int, param) -> dict:
    """Closed-form data for the small blocks ``H_1..H_4``, ``K_1, K_2``, ``L_1, L_2``.

    Returns a dict with ``char_poly`` (coefficients in ``lambda``, highest
    degree first), ``eigenvalues`` (when known in closed form, ascending),
    ``N`` (the tabulated ``N_I`` matrix, if any) and, for ``H_3``/``H_4``,
    ``discriminant``.  For ``K_2`` the tabulated ``N`` is not congruent to
    ``(K_2(y), I)`` unless ``y = 1``; ``N_corrected`` holds the fixed matrix.
    """
    key = (kind, m)
    out: dict = {"N": None, "eigenvalues": None}
    if key == ("H", 1):
        x = float(param)
        out["char_poly"] = [1.0, -x]
        out["eigenvalues"] = [x]
        out["N"] = np.array([[1.0 / abs(x) if x != 0 else 1.0]], dtype=complex)
    elif key == ("H", 2):
        x = float(param)
        r = np.sqrt(1 + 4 * x * x)
        out["char_poly"] = [1.0, -1.0, -x * x]
        out["eigenvalues"] = [(1 - r) / 2, (1 + r) / 2]
        if x > 0:
            out["N"] = (1 / (2 * x - 1j)) * np.array([[4 * x / (r - 1), -1j / x], [-1j / x, 4 * x / (r + 1)]])
        else:
            out["N"] = np.array([[0, 1], [1, 0]], dtype=complex)
    elif key == ("H", 3):
        x = float(param)
        out["char_poly"] = [-1.0, x, x * x + 1, -(x ** 3)]
        out["discriminant"] = 32 * x ** 4 + 13 * x ** 2 + 4
        if x == 0:
            out["eigenvalues"] = [-1.0, 0.0, 1.0]
            s2 = np.sqrt(2)
            out["N"] = 0.5 * np.array([[1j, -1j, s2], [-1j, 1j, s2], [s2, s2, 0]])
        else:
            lam = np.sort(np.roots([-1.0, x, x * x + 1, -(x ** 3)]).real)
            out["eigenvalues"] = list(lam)

            def r(l, u):
                return l * l * u * u - x * x * (l * l + u * u) + x * (l + u) + x ** 4

            def s(l):
                return np.sqrt(l * l + x * x) / ((x - 1j * l) * np.sqrt(abs(l) * (l ** 4 + l * l * (1 - 2 * x * x) + x * x + x ** 4)))

            out["N"] = -1j * np.array([[r(a, b) * s(a) * s(b) for b in lam] for a in lam])
    elif key == ("H", 4):
        x = float(param)
        out["char_poly"] = [1.0, -1.0, -(2 * x * x + 1), x * x + 1, x ** 4]
        out["discriminant"] = 400 * x ** 8 + 204 * x ** 6 + 93 * x ** 4 + 32 * x ** 2
    elif key == ("K", 1):
        y = float(param)
        out["char_poly"] = [1.0, 0.0, -y * y]
        out["eigenvalues"] = [-y, y]
        out["N"] = (1 / y) * np.array([[0, 1], [1, 0]], dtype=complex)
    elif key == ("K", 2):
        y = float(param)
        c = y * y
        r = np.sqrt(1 + 4 * y * y)
        out["char_poly"] = [1.0, 0.0, -(2 * c + 1), 0.0, c * c]
        out["eigenvalues"] = sorted([(s1 + s2 * r) / 2 for s1 in (1, -1) for s2 in (1, -1)])
        out["N"] = (1 / (y * (2 * y - 1j))) * np.array(
            [
                [0, -1j, 0, 4 * y / (1 + r)],
                [-1j, 0, 4 * y / (r - 1), 0],
                [0, 4 * y / (r - 1), 0, -1j],
                [4 * y / (1 + r), 0, -1j, 0],
            ]
        )
        # the tabulated corner entries miss a factor y; 4y^2/(1 +- r) = r -+ 1
        out["N_corrected"] = (1 / (y * (2 * y - 1j))) * np.array(
            [[0, -1j, 0, r - 1], [-1j, 0, r + 1, 0], [0, r + 1, 0, -1j], [r - 1, 0, -1j, 0]]
        )
    elif key == ("L", 1):
        z = complex(param)
        out["char_poly"] = [1.0, 0.0, -abs(z) ** 2]
        out["eigenvalues"] = [-abs(z), abs(z)]
        zc = np.conj(z)
        out["N"] = (1 / (2 * zc * abs(z))) * np.array([[z + zc, zc - z], [zc - z, z + zc]])
    elif key == ("L", 2):
        z = complex(param)
        c = abs(z) ** 2
        r = np.sqrt(1 + 4 * c)
        out["char_poly"] = [1.0, 0.0, -(2 * c + 1), 0.0, c * c]
        out["eigenvalues"] = sorted([(s1 + s2 * r) / 2 for s1 in (1, -1) for s2 in (1, -1)])
    else:
        raise Unsupported(f"no closed-form data for {kind}{m}")
    return out
