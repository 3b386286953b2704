"""Normalization of ``B``, the block reduction for singular ``B`` and the
classification of pairs of size 2, 3 and 4.

Every transformation is a ``~``-congruence ``(A, B) -> (c T* A T, conj(c) T^T B T)``
with ``c = +-1`` and is accumulated, so each result carries a certificate
back to the input pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg as sla

from .forms import Form1, FormBlock, _block_key, assemble_form1, flip_form1, form1, inertia_normal_form
from .matlin import (
    DEFAULT_TOL,
    Tolerances,
    ToleranceBreakdown,
    Unsupported,
    direct_sum,
    numerical_rank,
    sylvester_inertia,
    takagi_factorization,
)
from .pairs import CongruenceCertificate, MatrixPair, verify_certificate
from .rows import ROWS, representative, row_id

__all__ = [
    "ReducedPair",
    "ClassLabel",
    "normalize_B",
    "prepare_reduction",
    "is_nondegenerate_point",
    "classify_pair_low_dim",
    "classify_pair_diag_A",
]


class _Tracker:
    """Accumulates ``T`` and ``c`` and recomputes the transformed pair."""

    def __init__(self, A: np.ndarray, B: np.ndarray):
        self.A0, self.B0 = A, B
        n = A.shape[0]
        self.T = np.eye(n, dtype=complex)
        self.c = 1

    def step(self, T: Optional[np.ndarray] = None, sign: int = 1) -> None:
        if T is not None:
            self.T = self.T @ T
        self.c *= sign

    @property
    def A(self) -> np.ndarray:
        A = self.c * self.T.conj().T @ self.A0 @ self.T
        return (A + A.conj().T) / 2

    @property
    def B(self) -> np.ndarray:
        return np.conj(self.c) * self.T.T @ self.B0 @ self.T

    @property
    def certificate(self) -> CongruenceCertificate:
        return CongruenceCertificate(self.T.copy(), self.c)


def _embed(n: int, sl: slice, M: np.ndarray) -> np.ndarray:
    T = np.eye(n, dtype=complex)
    T[sl, sl] = M
    return T


def _shear(n: int, rows: slice, cols: slice, R: np.ndarray) -> np.ndarray:
    T = np.eye(n, dtype=complex)
    T[rows, cols] = R
    return T


def _B_pattern(n: int, m: int) -> np.ndarray:
    return direct_sum(np.eye(m), np.zeros((n - m, n - m))) if m else np.zeros((n, n), dtype=complex)


def normalize_B(p: MatrixPair, tol: Tolerances = DEFAULT_TOL) -> Tuple[MatrixPair, CongruenceCertificate, int]:
    """Bring ``B`` to ``I_m (+) 0``.

    ``U^T B U = diag(s) (+) 0`` by Takagi, then ``P = U (diag(s)^{-1/2} (+) I)``.

    Returns
    -------
    pair : MatrixPair
        ``(P* A P, I_m (+) 0)``; the ``B`` part is stored exactly.
    certificate : CongruenceCertificate
        ``(P, 1)``.
    m : int
        Rank of ``B``.
    """
    n = p.n
    U, s, m = takagi_factorization(p.B, tol)
    d = np.ones(n)
    d[:m] = 1 / np.sqrt(s)
    P = U * d
    A = P.conj().T @ p.A @ P
    return MatrixPair((A + A.conj().T) / 2, _B_pattern(n, m), tol), CongruenceCertificate(P, 1), m


def is_nondegenerate_point(p: MatrixPair, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Nonsingularity of ``[[A, conj(B)], [B, conj(A)]]``."""
    M = np.block([[p.A, p.B.conj()], [p.B, p.A.conj()]])
    return numerical_rank(M, tol) == 2 * p.n


def _is_normalized(B: np.ndarray, tol: Tolerances) -> Optional[int]:
    n = B.shape[0]
    d = np.real(np.diag(B))
    m = int(np.sum(np.abs(d - 1) <= tol.residual_tol))
    if np.linalg.norm(B - _B_pattern(n, m)) <= tol.residual_tol:
        return m
    return None


@dataclass
class ReducedPair:
    """Output of :func:`prepare_reduction`.

    Coordinates are ``[H (m), I (s), Y (k)]``.  In stage 2 the ``H``
    coordinates split as ``[k, m - k]``, ``Y = [I_k; L]`` and the ``H``
    corner is ``0_k (+) H_eps``.
    """

    m: int
    k: int
    H_eps: Form1
    script_I: np.ndarray
    Y: np.ndarray
    stage: int
    L: Optional[np.ndarray]
    A: np.ndarray
    B: np.ndarray
    witness: CongruenceCertificate

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def ideal(self) -> np.ndarray:
        """The exact block pattern the reduced matrix should equal."""
        n, m, k = self.n, self.m, self.k
        s = len(self.script_I)
        A = np.zeros((n, n), dtype=complex)
        if self.stage == 1:
            A[:m, :m] = self.H_eps.assembled
            Y = self.Y
        else:
            A[k:m, k:m] = self.H_eps.assembled
            Y = np.zeros((m, k), dtype=complex)
            Y[:k] = np.eye(k)
            if self.L is not None:
                Y[k:] = self.L
        A[m:m + s, m:m + s] = np.diag(self.script_I)
        A[:m, m + s:] = Y
        A[m + s:, :m] = Y.conj().T
        return A

    def pattern_residual(self) -> float:
        """Largest entrywise deviation from :meth:`ideal`."""
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self.A - self.ideal())))


def _form1_corner(H: np.ndarray, tol: Tolerances, seed: int, scale: float) -> Form1:
    """FORM 1 of a corner; a corner at rounding level counts as zero."""
    m = H.shape[0]
    if m == 0 or np.linalg.norm(H) <= 0.1 * tol.residual_tol * scale:
        blocks = [FormBlock("H", 1, 0.0, 1) for _ in range(m)]
        return Form1(blocks, np.zeros((m, m), dtype=complex), np.eye(m, dtype=complex), 1)
    return form1(H, tol, seed)


def _reduce_E(tr: _Tracker, m: int, tol: Tolerances):
    """Inertia of the ``E`` corner with trace >= 0, then kill ``X_I``."""
    n = tr.A0.shape[0]
    e = slice(m, n)
    it = sylvester_inertia(tr.A[e, e], tol)
    if it.n_neg > it.n_pos:
        # c = -1 keeps B only together with i on the range of B
        tr.step(_embed(n, slice(0, m), 1j * np.eye(m)), sign=-1)
        it = sylvester_inertia(tr.A[e, e], tol)
    tr.step(_embed(n, e, it.transform))
    s = it.n_neg + it.n_pos
    Iv = np.array([-1.0] * it.n_neg + [1.0] * it.n_pos)
    if s and m:
        X_I = tr.A[:m, m:m + s]
        R1 = -(Iv[:, None] * X_I.conj().T)
        tr.step(_shear(n, slice(m, m + s), slice(0, m), R1))
    return Iv


def prepare_reduction(p: MatrixPair, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> ReducedPair:
    """Reduce a pair with ``B = I_m (+) 0`` to the block pattern.

    Stage 1 puts the lower corner in inertia form (trace >= 0), removes the
    coupling to its nonsingular part and puts the ``m x m`` corner in FORM 1.
    Stage 2 runs when ``rank Y = k``: a column selection and ``Y -> Y S``
    give ``Y = [I_k; L]``; ``L`` is removed when ``I + L^T L`` and
    ``I + L L^T`` are nonsingular; the corner is cleaned to ``0_k (+) H_eps``.

    If ``B`` is not already normalized, :func:`normalize_B` is applied first
    and the witness covers both steps.
    """
    n = p.n
    m = _is_normalized(p.B, tol)
    pre = CongruenceCertificate(np.eye(n, dtype=complex), 1)
    if m is None:
        p, pre, m = normalize_B(p, tol)
    tr = _Tracker(p.A, _B_pattern(n, m))
    Iv = _reduce_E(tr, m, tol)
    s = len(Iv)
    k = n - m - s
    h = slice(0, m)
    y = slice(m + s, n)
    scale = max(1.0, float(np.linalg.norm(tr.A)))
    f = _form1_corner(tr.A[h, h], tol, seed, scale)
    if m:
        tr.step(_embed(n, h, f.witness))
    Y = tr.A[h, y]
    full = k >= 1 and m >= k and _full_rank(Y, k, tol, scale)
    stage, L = 1, None
    if full:
        stage = 2
        L, f = _stage_two(tr, m, s, k, tol, seed)
    A = tr.A
    cert = pre.then(tr.certificate)
    return ReducedPair(m, k, f, Iv, A[h, y].copy(), stage, L, A, _B_pattern(n, m), cert)


def _full_rank(Y: np.ndarray, k: int, tol: Tolerances, scale: float) -> bool:
    if Y.size == 0:
        return False
    sv = np.linalg.svd(Y, compute_uv=False)
    return bool(sv[k - 1] > tol.eig_cluster_tol * scale and numerical_rank(Y, tol) == k)


def _takagi_inv_sqrt(M: np.ndarray, tol: Tolerances) -> Optional[np.ndarray]:
    """``P`` with ``P^T M P = I`` for nonsingular symmetric ``M``."""
    U, sv, r = takagi_factorization(M, tol)
    if r < M.shape[0] or sv[-1] < tol.eig_cluster_tol * max(1.0, sv[0]):
        return None
    return U / np.sqrt(sv)


def _stage_two(tr: _Tracker, m: int, s: int, k: int, tol: Tolerances, seed: int):
    n = tr.A0.shape[0]
    h = slice(0, m)
    y = slice(m + s, n)
    Y = tr.A[h, y]
    _, _, piv = sla.qr(Y.T, pivoting=True)
    Pm = np.eye(m)[:, list(piv)]
    tr.step(_embed(n, h, Pm))
    Y = tr.A[h, y]
    tr.step(_embed(n, y, np.linalg.inv(Y[:k])))
    L = tr.A[k:m, y]
    if m > k:
        P1 = _takagi_inv_sqrt((np.eye(k) + L.T @ L).conj(), tol)
        P4 = _takagi_inv_sqrt((np.eye(m - k) + L @ L.T).conj(), tol)
        if P1 is not None and P4 is not None:
            P = np.block([[P1, -L.conj().T @ P4], [L.conj() @ P1, P4]])
            tr.step(_embed(n, h, P))
            top = tr.A[:k, y]
            tr.step(_embed(n, y, np.linalg.inv(top)))
            L = None
    else:
        L = None
    A = tr.A
    H = A[h, h]
    Lc = A[k:m, y] if L is not None else np.zeros((m - k, k), dtype=complex)
    R21 = -H[:k, :k] / 2
    R22 = -H[:k, k:] - R21.conj().T @ Lc.conj().T
    tr.step(_shear(n, y, h, np.hstack([R21, R22])))
    G = tr.A[k:m, k:m]
    g = _form1_corner(G, tol, seed, max(1.0, float(np.linalg.norm(A))))
    if m > k:
        tr.step(_embed(n, slice(k, m), g.witness))
    if L is not None:
        L = tr.A[k:m, y].copy()
    return L, g


# classification ---------------------------------------------------------------


@dataclass
class ClassLabel:
    """A row of the normal-form tables with its parameters and certificate.

    ``representative`` is the row's pair for ``parameters``, and
    ``certificate`` maps the input pair onto it.
    """

    table_row: str
    parameters: dict
    certificate: CongruenceCertificate
    representative: MatrixPair
    residuals: Tuple[float, float] = (0.0, 0.0)
    notes: List[str] = field(default_factory=list)


def _canonical_choice(f: Form1) -> Tuple[bool, Form1]:
    """``(flip, form)`` choosing between ``f`` and the form of ``-A``."""
    g = flip_form1(f)
    kf = sorted(_block_key(b) for b in f.blocks)
    kg = sorted(_block_key(b) for b in g.blocks)
    if kg < kf:
        return True, g
    return False, f


def _flip_step(tr: _Tracker, m: int, Iv: np.ndarray, rho: int) -> None:
    """Global sign change keeping ``B``, ``I`` (trace zero) and ``Y``."""
    n = tr.A0.shape[0]
    s = len(Iv)
    half = s // 2
    perm = list(range(half, s)) + list(range(half))
    T = np.eye(n, dtype=complex)
    T[:m, :m] = 1j * np.eye(m)
    T[m:m + s, m:m + s] = np.eye(s)[:, perm]
    T[m + s:m + s + rho, m + s:m + s + rho] = -1j * np.eye(rho)
    tr.step(T, sign=-1)


def _clean_H(tr: _Tracker, m: int, s: int, H_target: np.ndarray, y: np.ndarray) -> None:
    """Least-squares shear ``H + y r + r* y* -> H_target`` on the ``Y`` row."""
    n = tr.A0.shape[0]
    H = tr.A[:m, :m]
    cols = []
    for j in range(2 * m):
        r = np.zeros(m, dtype=complex)
        r[j % m] = 1 if j < m else 1j
        D = np.outer(y, r) + np.outer(r.conj(), y.conj())
        cols.append(np.concatenate([D.real.ravel(), D.imag.ravel()]))
    M = np.array(cols).T
    rhs = H_target - H
    x, *_ = np.linalg.lstsq(M, np.concatenate([rhs.real.ravel(), rhs.imag.ravel()]), rcond=None)
    r = x[:m] + 1j * x[m:]
    tr.step(_shear(n, slice(m + s, m + s + 1), slice(0, m), r[None, :]))


def _complex_orth_with_column(p1: np.ndarray) -> np.ndarray:
    """Complex orthogonal matrix with first column ``p1`` (``p1^T p1 = 1``)."""
    m = len(p1)
    e1 = np.zeros(m, dtype=complex)
    e1[0] = 1
    if abs(1 - p1[0]) >= abs(1 + p1[0]):
        w = e1 - p1
        return np.eye(m) - 2 * np.outer(w, w) / (w @ w)
    w = e1 + p1
    return -(np.eye(m) - 2 * np.outer(w, w) / (w @ w))


class _Reject(Exception):
    pass


def _finish(p: MatrixPair, tr: _Tracker, pre: CongruenceCertificate, rid: str, params: dict, tol: Tolerances,
            notes=None) -> ClassLabel:
    rep = representative(rid, params)
    cert = pre.then(tr.certificate)
    res = verify_certificate(p, rep, cert, tol)
    if max(res) > tol.residual_tol:
        raise _Reject(f"row {rid}: certificate residuals {res[0]:.2e}, {res[1]:.2e}")
    return ClassLabel(rid, params, cert, rep, res, list(notes or []))


def classify_pair_low_dim(p: MatrixPair, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> ClassLabel:
    """Normal-form row of a pair of size 2, 3 or 4 with a verified certificate.

    Dispatch is on ``rank B``, the inertia of the lower corner and the rank
    of ``Y`` (and whether its column is isotropic); the remaining freedom
    is used to reach the representative, and the composed certificate is
    checked against it.  Near the isotropic branch both branches are tried
    and the one with the smaller residual wins.

    Raises
    ------
    Unsupported
        If ``n`` is not 2, 3 or 4.
    ToleranceBreakdown
        If no row verifies.
    """
    n = p.n
    if n not in (2, 3, 4):
        raise Unsupported(f"classification tables cover n = 2, 3, 4, got n = {n}")
    q, pre, m = normalize_B(p, tol)
    base = _Tracker(q.A, q.B)
    Iv = _reduce_E(base, m, tol)
    s = len(Iv)
    k = n - m - s
    free = float(np.sum(Iv)) == 0
    scale = max(1.0, float(np.linalg.norm(base.A)))
    Y = base.A[:m, m + s:]
    rho = 0
    if m and k:
        U, sv, Vh = np.linalg.svd(Y)
        rho = int(np.sum(sv > tol.eig_cluster_tol * scale))
        base.step(_embed(n, slice(m + s, n), Vh.conj().T))
    inertia = (int(np.sum(Iv < 0)), int(np.sum(Iv > 0)))
    ctx = dict(p=p, pre=pre, m=m, s=s, k=k, Iv=Iv, free=free, inertia=inertia, tol=tol, seed=seed, scale=scale)
    if rho == 0:
        attempts = [_classify_H]
    elif rho == 1 and m == 1:
        attempts = [_classify_Y1]
    elif rho == 1:
        yv = base.A[:m, m + s]
        ratio = abs(yv @ yv) / max(np.vdot(yv, yv).real, 1e-300)
        attempts = [_classify_iso, _classify_noniso] if ratio < 1e-3 else [_classify_noniso]
    elif rho == 2 and m == 2:
        attempts = [_classify_YY]
    else:
        raise ToleranceBreakdown(f"rank of Y is {rho}, not covered for m = {m}")
    results = []
    errors = []
    for fn in attempts:
        tr = _Tracker(q.A, q.B)
        tr.T, tr.c = base.T.copy(), base.c
        try:
            results.append(fn(tr, ctx))
        except (_Reject, ToleranceBreakdown, np.linalg.LinAlgError) as exc:
            errors.append(str(exc))
    if not results:
        raise ToleranceBreakdown("no table row verified: " + "; ".join(errors))
    return min(results, key=lambda lab: max(lab.residuals))


def _rid(ctx, kind: str, rho: int) -> str:
    n = ctx["m"] + ctx["s"] + ctx["k"]
    return row_id(n, ctx["m"], ctx["s"], ctx["k"] - rho, kind)


def _base_params(ctx) -> dict:
    return {"inertia": ctx["inertia"]} if ctx["s"] else {}


def _classify_H(tr: _Tracker, ctx) -> ClassLabel:
    m, Iv, tol = ctx["m"], ctx["Iv"], ctx["tol"]
    n = tr.A0.shape[0]
    params = _base_params(ctx)
    if m == 0:
        return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "I", 0), params, tol)
    if m == 1:
        b = float(tr.A[0, 0].real)
        if ctx["free"] and b < 0:
            _flip_step(tr, m, Iv, 0)
            b = -b
        params["a" if ctx["free"] else "b"] = _snap(b, tol)
        return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "H", 0), params, tol)
    f = _form1_corner(tr.A[:m, :m], tol, ctx["seed"], ctx["scale"])
    if ctx["free"]:
        flip, f = _canonical_choice(f)
        if flip:
            _flip_step(tr, m, Iv, 0)
    tr.step(_embed(n, slice(0, m), f.witness))
    params["blocks"] = list(f.blocks)
    return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "H", 0), params, tol)


def _snap(x: float, tol: Tolerances) -> float:
    return 0.0 if abs(x) <= tol.eig_cluster_tol else x


def _scale_y(tr: _Tracker, ctx, sfac: complex) -> None:
    n = tr.A0.shape[0]
    j = ctx["m"] + ctx["s"]
    T = np.eye(n, dtype=complex)
    T[j, j] = sfac
    tr.step(T)


def _classify_Y1(tr: _Tracker, ctx) -> ClassLabel:
    m, s = ctx["m"], ctx["s"]
    yv = tr.A[0, m + s]
    _scale_y(tr, ctx, 1 / yv)
    _clean_H(tr, m, s, np.zeros((1, 1)), np.ones(1, dtype=complex))
    return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "Y", 1), _base_params(ctx), ctx["tol"])


def _classify_noniso(tr: _Tracker, ctx) -> ClassLabel:
    m, s, Iv, tol = ctx["m"], ctx["s"], ctx["Iv"], ctx["tol"]
    n = tr.A0.shape[0]
    yv = tr.A[:m, m + s]
    t = np.sqrt(complex(yv @ yv))
    if abs(t) == 0:
        raise _Reject("isotropic column")
    u = yv / t
    P = _complex_orth_with_column(u.conj())
    tr.step(_embed(n, slice(0, m), P))
    _scale_y(tr, ctx, 1 / tr.A[0, m + s])
    e1 = np.zeros(m, dtype=complex)
    e1[0] = 1
    H = tr.A[:m, :m].copy()
    H[0, :] = 0
    H[:, 0] = 0
    _clean_H(tr, m, s, H, e1)
    params = _base_params(ctx)
    if m == 2:
        b = float(tr.A[1, 1].real)
        if ctx["free"] and b < 0:
            _flip_step(tr, m, Iv, 1)
            b = -b
        params["a" if ctx["free"] else "b"] = _snap(b, tol)
    else:
        f = _form1_corner(tr.A[1:m, 1:m], tol, ctx["seed"], ctx["scale"])
        if ctx["free"]:
            flip, f = _canonical_choice(f)
            if flip:
                _flip_step(tr, m, Iv, 1)
        tr.step(_embed(n, slice(1, m), f.witness))
        params["blocks"] = list(f.blocks)
    return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "Y", 1), params, tol)


def _real_frame(yv: np.ndarray) -> np.ndarray:
    """Real orthogonal ``R`` with ``R^T y`` close to a multiple of ``(1, i, 0)``."""
    m = len(yv)
    u, w = yv.real, yv.imag
    f1 = u / np.linalg.norm(u)
    w2 = w - (w @ f1) * f1
    f2 = w2 / np.linalg.norm(w2)
    cols = [f1, f2]
    if m == 3:
        cols.append(np.cross(f1, f2))
    return np.array(cols).T.astype(complex)


def _classify_iso(tr: _Tracker, ctx) -> ClassLabel:
    m, s, Iv, tol = ctx["m"], ctx["s"], ctx["Iv"], ctx["tol"]
    n = tr.A0.shape[0]
    yv = tr.A[:m, m + s]
    if np.linalg.norm(yv.real) == 0 or np.linalg.norm(yv.imag) == 0:
        raise _Reject("column not isotropic")
    tr.step(_embed(n, slice(0, m), _real_frame(yv)))
    _scale_y(tr, ctx, 1 / tr.A[0, m + s])
    y0 = np.zeros(m, dtype=complex)
    y0[0], y0[1] = 1, 1j
    w0 = y0.conj()
    params = _base_params(ctx)
    if m == 2:
        g = float(np.real(w0.conj() @ tr.A[:2, :2] @ w0))
        if ctx["free"] and g < 0:
            _flip_step(tr, m, Iv, 1)
            g = -g
        if abs(g) > tol.eig_cluster_tol:
            # complex rotation R(-i t) scales w0 by e^t and y0 by e^-t
            t = -0.5 * np.log(abs(g))
            c, sn = np.cosh(t), -1j * np.sinh(t)
            tr.step(_embed(n, slice(0, 2), np.array([[c, -sn], [sn, c]])))
            _scale_y(tr, ctx, np.exp(t))
            g = float(np.sign(g))
        else:
            g = 0.0
        target = np.diag([0.0, g]).astype(complex)
        _clean_H(tr, m, s, target, y0)
        params["g"] = g
        return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "Yiso", 1), params, tol)
    e3 = np.array([0, 0, 1], dtype=complex)
    V = np.array([w0, e3]).T
    G = V.conj().T @ tr.A[:3, :3] @ V
    G = (G + G.conj().T) / 2
    gs = max(1.0, float(np.linalg.norm(G)))
    thr = tol.eig_cluster_tol * gs
    g11, g12, g22 = G[0, 0].real, G[0, 1], G[1, 1].real
    if abs(g11) > thr:
        if ctx["free"] and g11 < 0:
            _flip_step(tr, m, Iv, 1)
            g11, g12, g22 = -g11, -g12, -g22
        if g11 < 0:
            raise _Reject("negative leading entry with fixed sign")
        sigma, beta = 1 / np.sqrt(g11), -g12 / g11
        c = g22 - abs(g12) ** 2 / g11
        params.update(variant="diag", c=_snap(float(c), tol))
        b_, al, c_ = 1.0, 0.0, params["c"]
    elif abs(g12) > thr:
        sigma = 1 / np.conj(g12)
        beta = -g22 / (2 * np.conj(g12))
        params.update(variant="hyp")
        b_, al, c_ = 0.0, -1j, 0.0
    else:
        if ctx["free"] and g22 < 0:
            _flip_step(tr, m, Iv, 1)
            g22 = -g22
        sigma, beta = 1.0, 0.0
        params.update(variant="zero", a=_snap(float(g22), tol))
        b_, al, c_ = 0.0, 0.0, params["a"]
    kappa = 1 / sigma
    delta = -2 * kappa * beta
    gamma = -delta ** 2 / (4 * kappa)
    Mf = np.array([[sigma, beta, gamma], [0, 1, delta], [0, 0, kappa]], dtype=complex)
    F = np.array([w0, e3, y0]).T
    P = F @ Mf @ np.linalg.inv(F)
    tr.step(_embed(n, slice(0, 3), P))
    _scale_y(tr, ctx, np.conj(sigma))
    target = np.zeros((3, 3), dtype=complex)
    target[1:, 1:] = [[b_, al], [np.conj(al), c_]]
    _clean_H(tr, m, s, target, y0)
    return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "Yiso", 1), params, tol)


def _classify_YY(tr: _Tracker, ctx) -> ClassLabel:
    m, s = ctx["m"], ctx["s"]
    n = tr.A0.shape[0]
    y = slice(m + s, m + s + 2)
    Y = tr.A[:2, y]
    tr.step(_embed(n, y, np.linalg.inv(Y)))
    H = tr.A[:2, :2]
    tr.step(_shear(n, y, slice(0, 2), -H / 2))
    return _finish(ctx["p"], tr, ctx["pre"], _rid(ctx, "YY", 2), {}, ctx["tol"])


def _components(A: np.ndarray, thr: float) -> List[List[int]]:
    n = A.shape[0]
    left = list(range(n))
    out = []
    while left:
        comp = [left.pop(0)]
        grew = True
        while grew:
            grew = False
            for j in list(left):
                if any(abs(A[i, j]) > thr for i in comp):
                    comp.append(j)
                    left.remove(j)
                    grew = True
        out.append(sorted(comp))
    return out


def classify_pair_diag_A(p: MatrixPair, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> ClassLabel:
    """Normal form with ``A`` an inertia matrix, for ``n = 2, 3``.

    The table representative from :func:`classify_pair_low_dim` is brought
    to ``(I(A), N)`` blockwise over the connected components of ``A``.
    Eigenvectors are fixed by making their last significant entry real
    positive, then phases make the diagonal of ``N`` real positive, so
    ``N`` is reproducible.  The representative is one of several congruent
    choices; its row is the ``A:`` prefixed row of the underlying label.
    """
    if p.n not in (2, 3):
        raise Unsupported(f"diagonal-A tables cover n = 2, 3, got n = {p.n}")
    lab = classify_pair_low_dim(p, tol, seed)
    A, B = lab.representative.A, lab.representative.B
    comps = _components(A, 1e-12)
    order = [i for c in comps for i in c]
    Pp = np.eye(p.n, dtype=complex)[:, order]
    Ap = Pp.T @ A @ Pp
    Bp = Pp.T @ B @ Pp
    it, N = inertia_normal_form(Ap, Bp, tol, [len(c) for c in comps], orient=True)
    Q = Pp @ it.transform
    cert = lab.certificate.then(CongruenceCertificate(Q, 1))
    rep = MatrixPair(it.matrix, N)
    res = verify_certificate(p, rep, cert, tol)
    if max(res) > tol.residual_tol:
        raise ToleranceBreakdown(f"diagonal-A certificate residuals {res[0]:.2e}, {res[1]:.2e}")
    params = dict(lab.parameters)
    params["signature"] = (it.n_neg, it.n_pos, it.n_zero)
    return ClassLabel("A:" + lab.table_row, params, cert, rep, res)
