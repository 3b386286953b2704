"""Decisions, certificates and invariants for ``~``-congruence of pairs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .consim import coneigen_structure, find_orthogonal_consimilarity
from .forms import Form1, flip_form1, form1
from .matlin import (
    DEFAULT_TOL,
    SizeMismatch,
    Tolerances,
    ToleranceBreakdown,
    as_complex_matrix,
    numerical_rank,
    sylvester_inertia,
)
from .pairs import CongruenceCertificate, MatrixPair, apply_certificate, verify_certificate
from .reduce import _canonical_choice, classify_pair_low_dim, is_nondegenerate_point, normalize_B
from .rows import params_close

__all__ = [
    "CongruenceCertificate",
    "PairInvariants",
    "canonical_invariants",
    "are_sim_congruent",
    "verify_certificate",
    "random_orbit_sample",
    "detect_quadratic_flatness",
]


@dataclass(frozen=True)
class PairInvariants:
    """Quantities unchanged along a ``~``-congruence orbit.

    ``inertia`` is ``(min(p, r), max(p, r), z)`` since ``c = -1`` swaps the
    counts.  ``structure``, ``eps`` and ``alt_ranks`` refer to the
    normalized ``A`` and are only filled in when ``B`` is nonsingular;
    ``eps`` lists the FORM 1 blocks with the global sign fixed.
    """

    n: int
    rank_B: int
    inertia: Tuple[int, int, int]
    structure: Optional[Tuple]
    eps: Optional[Tuple]
    alt_ranks: Optional[Tuple[int, ...]]
    nondegenerate: bool
    row: Optional[str]


def _rounded(x: complex, digits: int = 6):
    x = complex(x)
    return (round(x.real, digits) + 0.0, round(x.imag, digits) + 0.0)


def canonical_invariants(p: MatrixPair, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> PairInvariants:
    """Collect the invariants of a pair.

    Continuous parameters are rounded to 6 decimals so that equality of
    records is meaningful for numerically computed values.
    """
    n = p.n
    q, _, m = normalize_B(p, tol)
    it = sylvester_inertia(p.A, tol)
    inertia = (min(it.n_neg, it.n_pos), max(it.n_neg, it.n_pos), it.n_zero)
    structure = eps = alt = None
    if m == n:
        st = coneigen_structure(q.A, tol)
        structure = tuple((b.kind, b.size, _rounded(b.param)) for b in st.blocks)
        alt = tuple(st.alt_ranks)
        _, f = _canonical_choice(form1(q.A, tol, seed))
        eps = tuple((b.kind, b.size, _rounded(b.param), b.sign) for b in f.blocks)
    row = None
    if n in (2, 3, 4):
        row = classify_pair_low_dim(p, tol, seed).table_row
    return PairInvariants(n, m, inertia, structure, eps, alt, is_nondegenerate_point(p, tol), row)


def _verified(p1, p2, cert, tol) -> Optional[CongruenceCertificate]:
    return cert if max(verify_certificate(p1, p2, cert, tol)) <= tol.residual_tol else None


def _same_form(f: Form1, g: Form1, atol: float) -> bool:
    if len(f.blocks) != len(g.blocks):
        return False
    for a, b in zip(f.blocks, g.blocks):
        if (a.kind, a.size, a.sign) != (b.kind, b.size, b.sign) or abs(complex(a.param) - complex(b.param)) > atol:
            return False
    return True


def are_sim_congruent(p1: MatrixPair, p2: MatrixPair, tol: Tolerances = DEFAULT_TOL, seed: int = 0):
    """Decide ``p1 ~ p2``.

    Returns ``(flag, certificate)``.  ``flag`` is ``True`` only together
    with a certificate that passed :func:`verify_certificate`, ``False`` when
    the normal forms (or invariants) differ, and ``None`` when the answer is
    not conclusive (``n >= 5`` with singular ``B`` and equal invariants).

    Raises
    ------
    SizeMismatch
        If the pairs have different sizes.
    """
    if p1.n != p2.n:
        raise SizeMismatch(f"pair sizes {p1.n} and {p2.n} differ")
    n = p1.n
    atol = tol.eig_cluster_tol * max(1.0, float(np.linalg.norm(p1.A)), float(np.linalg.norm(p2.A)))
    ident = CongruenceCertificate(np.eye(n, dtype=complex), 1)
    if _verified(p1, p2, ident, tol):
        return True, ident
    if n <= _DIAG_SEARCH_MAX:
        cert = _signed_diagonal(p1, p2, tol)
        if cert is not None:
            return True, cert
    q1, c1, m1 = normalize_B(p1, tol)
    q2, c2, m2 = normalize_B(p2, tol)
    if m1 != m2:
        return False, None
    if m1 == 0:
        return _decide_B_zero(p1, p2, tol)
    if m1 == n:
        return _decide_nonsingular(p1, p2, q1, q2, c1, c2, tol, seed, atol)
    if n <= 4:
        l1 = classify_pair_low_dim(p1, tol, seed)
        l2 = classify_pair_low_dim(p2, tol, seed)
        if l1.table_row != l2.table_row or not params_close(l1.parameters, l2.parameters, atol):
            return False, None
        cert = l1.certificate.then(l2.certificate.inverse())
        if _verified(p1, p2, cert, tol):
            return True, cert
        raise ToleranceBreakdown("equal normal forms but the composed certificate fails")
    if canonical_invariants(p1, tol, seed) != canonical_invariants(p2, tol, seed):
        return False, None
    return None, None


_DIAG_SEARCH_MAX = 6


def _signed_diagonal(p1, p2, tol) -> Optional[CongruenceCertificate]:
    """Try ``P = diag(+-1)`` with ``c = 1`` and ``P = i diag(+-1)`` with ``c = -1``."""
    n = p1.n
    for c, unit in ((1, 1.0), (-1, 1j)):
        for signs in itertools.product((1.0, -1.0), repeat=n - 1):
            P = unit * np.diag((1.0,) + signs)
            cert = _verified(p1, p2, CongruenceCertificate(P, c), tol)
            if cert is not None:
                return cert
    return None


def _decide_B_zero(p1, p2, tol):
    # (A, 0) ~ (+-P* A P, 0): the inertia up to swapping decides
    i1 = sylvester_inertia(p1.A, tol)
    i2 = sylvester_inertia(p2.A, tol)
    if i1.signature == i2.signature:
        c = 1
    elif (i1.n_neg, i1.n_pos, i1.n_zero) == (i2.n_pos, i2.n_neg, i2.n_zero):
        c = -1
    else:
        return False, None
    T1 = i1.transform
    if c == -1:
        # reorder so that -I(A1) lines up with I(A2)
        a, b = i1.n_neg, i1.n_pos
        T1 = T1[:, list(range(a, a + b)) + list(range(a)) + list(range(a + b, p1.n))]
    cert = CongruenceCertificate(T1 @ np.linalg.inv(i2.transform), c)
    out = _verified(p1, p2, cert, tol)
    if out is None:
        raise ToleranceBreakdown("inertia certificate fails")
    return True, out


def _decide_nonsingular(p1, p2, q1, q2, c1, c2, tol, seed, atol):
    f1 = form1(q1.A, tol, seed)
    f2 = form1(q2.A, tol, seed)
    g1 = flip_form1(f1)
    back = c2.then(CongruenceCertificate(f2.witness, 1)).inverse()
    # with c = -1 the factor i keeps B = I
    for step, form in ((CongruenceCertificate(f1.witness, 1), f1), (CongruenceCertificate(1j * g1.witness, -1), g1)):
        if _same_form(form, f2, atol):
            cert = _verified(p1, p2, c1.then(step).then(back), tol)
            if cert is not None:
                return True, cert
    for s in (1, -1):
        Q = find_orthogonal_consimilarity(q1.A, s * q2.A, tol, seed)
        if Q is not None:
            step = CongruenceCertificate(Q if s == 1 else 1j * Q, s)
            cert = _verified(p1, p2, c1.then(step).then(c2.inverse()), tol)
            if cert is not None:
                return True, cert
    st1 = coneigen_structure(q1.A, tol)
    st2 = coneigen_structure(q2.A, tol)
    same_structure = len(st1.blocks) == len(st2.blocks) and all(
        a.kind == b.kind and a.size == b.size and abs(complex(a.param) - complex(b.param)) <= atol
        for a, b in zip(st1.blocks, st2.blocks)
    )
    if not same_structure or p1.n <= 4:
        return False, None
    return None, None


def random_orbit_sample(p: MatrixPair, seed=None, phase: str = "sign", cond_max: float = 100.0):
    """Random ``~``-congruent copy of ``p`` with its certificate.

    ``P = U diag(d) V*`` with Haar-like unitaries and ``d`` log-uniform in
    ``[cond_max^{-1/2}, cond_max^{1/2}]``, so ``cond(P) <= cond_max``.  With
    ``phase="sign"`` the scalar ``c`` is ``+-1`` and the result is again a
    Hermitian-symmetric pair.  ``phase="unit"`` draws ``c`` on the unit
    circle; the result is then returned as a plain ``(A, B)`` tuple since
    ``c A`` is no longer Hermitian.
    """
    rng = np.random.default_rng(seed)
    n = p.n
    G1 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    G2 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    U, _ = np.linalg.qr(G1)
    V, _ = np.linalg.qr(G2)
    half = 0.5 * np.log(cond_max)
    d = np.exp(rng.uniform(-half, half, n))
    P = (U * d) @ V.conj().T
    if phase == "sign":
        c = complex(rng.choice([-1.0, 1.0]))
    elif phase == "unit":
        c = complex(np.exp(1j * rng.uniform(-np.pi, np.pi)))
    else:
        raise ValueError("phase must be 'sign' or 'unit'")
    cert = CongruenceCertificate(P, c)
    A, B = apply_certificate(p.A, p.B, cert)
    if phase == "sign":
        return MatrixPair(A, B), cert
    return (A, B), cert


def detect_quadratic_flatness(A_raw, tol: Tolerances = DEFAULT_TOL) -> Optional[complex]:
    """Unit ``c`` with ``c A`` Hermitian, or ``None``.

    From ``A* = c^2 A`` the square ``c^2`` is read off the largest entry and
    checked on the whole matrix.  Of the two roots the one with argument in
    ``[-pi/2, pi/2)`` is returned, so ``i H`` gives ``-i``.

    Examples
    --------
    >>> detect_quadratic_flatness(np.eye(2))
    (1+0j)
    >>> detect_quadratic_flatness(1j * np.eye(2))
    -1j
    >>> detect_quadratic_flatness([[1, 1], [0, 1]]) is None
    True
    """
    A = as_complex_matrix(A_raw, "A")
    nrm = float(np.linalg.norm(A))
    if nrm == 0:
        return complex(1.0)
    i, j = np.unravel_index(np.argmax(np.abs(A)), A.shape)
    c2 = np.conj(A[j, i]) / A[i, j]
    if abs(abs(c2) - 1) > tol.residual_tol * 10:
        return None
    c2 = c2 / abs(c2)
    c = np.sqrt(c2)
    # of the two roots keep the one with argument in [-pi/2, pi/2)
    if c.real < 0 or (c.real == 0 and c.imag > 0):
        c = -c
    cA = c * A
    if np.linalg.norm(cA - cA.conj().T) > tol.residual_tol * max(1.0, nrm):
        return None
    return complex(c.real + 0.0, c.imag + 0.0)
