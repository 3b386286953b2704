"""Enumeration of the normal-form rows for pairs of size 2, 3 and 4.

A row is identified by ``n{n}.m{m}.s{s}.z{z}.{kind}`` where ``m = rank B``,
``s`` is the size of the inertia part ``I`` (entries -1 then +1, trace >= 0)
and ``z`` the number of trailing zero coordinates.  Coordinates are ordered
``[H-part (m), I (s), Y (rank of Y), zeros (z)]`` and ``B = I_m (+) 0``.

Kinds
-----
``I``
    ``m = 0``: ``A = I (+) 0``.
``H``
    ``Y = 0``: ``A = H (+) I (+) 0`` with ``H`` scalar (``b``, or ``a >= 0``
    when the sign is free) for ``m = 1`` and a FORM 1 matrix otherwise.
``Y``
    rank one ``Y = e_1`` with non-isotropic column; ``H = 0`` (``m = 1``),
    ``diag(0, b)`` (``m = 2``) or ``0 (+) G`` with ``G`` in FORM 1 (``m = 3``).
``Yiso``
    rank one ``Y`` along the isotropic vector ``(1, i, 0)``.  For ``m = 2``,
    ``H = diag(0, g)`` with ``g`` in ``{-1, 0, 1}`` (``{0, 1}`` when the sign is
    free).  For ``m = 3``, ``H = [[0,0,0],[0,b,alpha],[0,conj(alpha),c]]`` with
    ``(b, alpha, c)`` one of ``(1, 0, c)``, ``(0, -i, 0)`` or ``(0, 0, a)``.
``YY``
    ``n = 4``, ``m = 2``: ``A = [[0, I_2], [I_2, 0]]``.

The overall sign of ``A`` is free exactly when ``trace I = 0``; it is then
fixed by the conventions above (``a >= 0``, larger FORM 1 sign vector).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from .forms import FormBlock, _block_key, assemble_form1
from .matlin import direct_sum
from .pairs import MatrixPair

__all__ = [
    "RowSpec",
    "ROWS",
    "row_id",
    "representative",
    "row_parameter_grid",
    "canonical_blocks",
    "params_close",
    "sign_free",
]


@dataclass(frozen=True)
class RowSpec:
    row_id: str
    n: int
    m: int
    s: int
    z: int
    kind: str

    @property
    def rho(self) -> int:
        return {"I": 0, "H": 0, "Y": 1, "Yiso": 1, "YY": 2}[self.kind]

    def describe(self) -> str:
        m, s, z = self.m, self.s, self.z
        tail = "".join([f" (+) I_{s}" if s else "", f" (+) 0_{z}" if z else ""])
        B = f"I_{m} (+) 0_{self.n - m}" if 0 < m < self.n else (f"I_{m}" if m else f"0_{self.n}")
        if self.kind == "I":
            A = " (+) ".join([t for t in (f"I_{s}" if s else "", f"0_{z}" if z else "") if t])
        elif self.kind == "H":
            A = ("b" if m == 1 else f"H^eps_{m}") + tail
        elif self.kind == "YY":
            A = "[[0_2, I_2], [I_2, 0_2]]"
        else:
            core = {
                ("Y", 1): "[[0, y], [y*, 0]], y = 1",
                ("Y", 2): "H = diag(0, b), y = e1",
                ("Y", 3): "H = 0 (+) H^eps_2, y = e1",
                ("Yiso", 2): "H = diag(0, g), y = (1, i)",
                ("Yiso", 3): "H = [[0,0,0],[0,b,alpha],[0,conj(alpha),c]], y = (1, i, 0)",
            }[(self.kind, m)]
            A = core + tail
        return f"{A} / {B}"


def row_id(n: int, m: int, s: int, z: int, kind: str) -> str:
    return f"n{n}.m{m}.s{s}.z{z}.{kind}"


def _enumerate() -> Dict[str, RowSpec]:
    rows: Dict[str, RowSpec] = {}
    for n in (2, 3, 4):
        for m in range(n + 1):
            rest = n - m
            for s in range(rest, -1, -1):
                zt = rest - s
                kinds = [("I" if m == 0 else "H", zt)]
                if m >= 1 and zt >= 1:
                    kinds.append(("Y", zt - 1))
                    if m >= 2:
                        kinds.append(("Yiso", zt - 1))
                if m == 2 and zt >= 2 and s == 0 and n == 4:
                    kinds.append(("YY", zt - 2))
                for kind, z in kinds:
                    if kind in ("Y", "Yiso") and m > 3:
                        continue
                    rid = row_id(n, m, s, z, kind)
                    rows[rid] = RowSpec(rid, n, m, s, z, kind)
    return rows


ROWS: Dict[str, RowSpec] = _enumerate()


def sign_free(params: dict) -> bool:
    p, r = params.get("inertia", (0, 0))
    return p == r


def _flip_blocks(blocks: Sequence[FormBlock]) -> List[FormBlock]:
    return [
        FormBlock(b.kind, b.size, b.param, -b.sign if b.kind == "H" and not b.odd_nilpotent else b.sign)
        for b in blocks
    ]


def _key(blocks: Sequence[FormBlock]):
    return sorted(_block_key(b) for b in blocks)


def canonical_blocks(blocks: Sequence[FormBlock], free: bool = True) -> List[FormBlock]:
    """Sorted FORM 1 blocks; with ``free`` the global sign is fixed too."""
    blocks = sorted(blocks, key=_block_key)
    if free:
        flipped = sorted(_flip_blocks(blocks), key=_block_key)
        if _key(flipped) < _key(blocks):
            return flipped
    return list(blocks)


def _iso_m3(params: dict):
    v = params["variant"]
    if v == "diag":
        return 1.0, 0.0, float(params["c"])
    if v == "hyp":
        return 0.0, -1j, 0.0
    if v == "zero":
        return 0.0, 0.0, float(params["a"])
    raise ValueError(f"unknown variant {v!r}")


def _scalar(params: dict) -> float:
    return float(params["a"] if "a" in params else params["b"])


def representative(rid: str, params: dict) -> MatrixPair:
    """The representative pair of a row for the given parameters."""
    spec = ROWS[rid]
    n, m, s, z = spec.n, spec.m, spec.s, spec.z
    rho = spec.rho
    p, r = params.get("inertia", (0, 0))
    if p + r != s or p > r:
        raise ValueError(f"inertia {p, r} does not fit row {rid}")
    H = np.zeros((m, m), dtype=complex)
    Y = np.zeros((m, rho), dtype=complex)
    kind = spec.kind
    if kind == "H":
        H = np.array([[_scalar(params)]], dtype=complex) if m == 1 else assemble_form1(params["blocks"])
    elif kind == "Y":
        Y[0, 0] = 1
        if m == 2:
            H[1, 1] = _scalar(params)
        elif m == 3:
            H = direct_sum(np.zeros((1, 1)), assemble_form1(params["blocks"]))
    elif kind == "Yiso":
        Y[0, 0], Y[1, 0] = 1, 1j
        if m == 2:
            H[1, 1] = float(params["g"])
        else:
            b, al, c = _iso_m3(params)
            H[1:, 1:] = [[b, al], [np.conj(al), c]]
    elif kind == "YY":
        Y = np.eye(2, dtype=complex)
    A = np.zeros((n, n), dtype=complex)
    A[:m, :m] = H
    A[m:m + s, m:m + s] = np.diag([-1.0] * p + [1.0] * r)
    A[:m, m + s:m + s + rho] = Y
    A[m + s:m + s + rho, :m] = Y.conj().T
    B = direct_sum(np.eye(m), np.zeros((n - m, n - m))) if m else np.zeros((n, n), dtype=complex)
    return MatrixPair(A, B)


def _inertias(s: int):
    return [(p, s - p) for p in range(0, s // 2 + 1)]


_FORM_GRID = {
    2: [
        [("H", 1, 1.0, 1), ("H", 1, 1.0, 1)],
        [("H", 1, 0.5, 1), ("H", 1, 1.5, -1)],
        [("H", 1, 0.0, 1), ("H", 1, 2.0, 1)],
        [("H", 1, 0.0, 1), ("H", 1, 0.0, 1)],
        [("H", 2, 0.0, 1)],
        [("H", 2, 0.6, 1)],
        [("H", 2, 0.6, -1)],
        [("K", 1, 0.8, 1)],
        [("L", 1, 0.6 - 0.9j, 1)],
    ],
    3: [
        [("H", 3, 0.0, 1)],
        [("H", 3, 0.4, 1)],
        [("H", 3, 0.4, -1)],
        [("H", 2, 0.5, 1), ("H", 1, 1.0, -1)],
        [("H", 2, 0.0, 1), ("H", 1, 0.0, 1)],
        [("H", 1, 1.0, 1), ("H", 1, 1.0, 1), ("H", 1, 1.0, -1)],
        [("H", 1, 0.3, 1), ("H", 1, 1.0, 1), ("H", 1, 2.0, 1)],
        [("H", 1, 0.2, 1), ("K", 1, 0.7, 1)],
        [("H", 1, 1.0, -1), ("L", 1, 0.5 - 1.0j, 1)],
    ],
    4: [
        [("H", 4, 0.0, 1)],
        [("H", 4, 0.3, -1)],
        [("H", 3, 0.0, 1), ("H", 1, 0.5, 1)],
        [("H", 2, 0.0, 1), ("H", 2, 0.0, -1)],
        [("H", 2, 1.0, 1), ("H", 2, 1.0, 1)],
        [("H", 1, 1.0, 1), ("H", 1, 1.0, 1), ("H", 1, 1.0, -1), ("H", 1, 1.0, -1)],
        [("H", 2, 0.5, 1), ("K", 1, 1.0, 1)],
        [("K", 2, 0.6, 1)],
        [("L", 2, 1.0 - 0.5j, 1)],
        [("K", 1, 1.0, 1), ("L", 1, 0.4 - 0.3j, 1)],
    ],
}


def form_grid(m: int, free: bool) -> List[List[FormBlock]]:
    out = []
    seen = set()
    for cfg in _FORM_GRID[m]:
        blocks = canonical_blocks([FormBlock(*c) for c in cfg], free)
        key = tuple(_key(blocks))
        if key not in seen:
            seen.add(key)
            out.append(blocks)
    return out


def row_parameter_grid(rid: str) -> List[dict]:
    """A list of parameter sets covering the row."""
    spec = ROWS[rid]
    out = []
    for p, r in _inertias(spec.s):
        base = {"inertia": (p, r)} if spec.s else {}
        free = p == r
        name = "a" if free else "b"
        scalars = [0.0, 0.7, 2.0] if free else [-1.5, 0.0, 0.7]
        kind, m = spec.kind, spec.m
        if kind in ("I", "YY") or (kind == "Y" and m == 1):
            out.append(dict(base))
        elif (kind == "H" and m == 1) or (kind == "Y" and m == 2):
            out += [dict(base, **{name: v}) for v in scalars]
        elif kind in ("H", "Y"):
            size = m if kind == "H" else 2
            out += [dict(base, blocks=b) for b in form_grid(size, free)]
        elif kind == "Yiso" and m == 2:
            out += [dict(base, g=g) for g in ((0.0, 1.0) if free else (-1.0, 0.0, 1.0))]
        elif kind == "Yiso":
            out += [dict(base, variant="diag", c=c) for c in (-1.0, 0.0, 0.5)]
            out.append(dict(base, variant="hyp"))
            out += [dict(base, variant="zero", a=a) for a in (0.0, 0.7)]
    return out


def params_close(p1: dict, p2: dict, atol: float) -> bool:
    """Compare two parameter dictionaries up to ``atol``."""
    if set(p1) != set(p2):
        return False
    for key in p1:
        a, b = p1[key], p2[key]
        if key == "blocks":
            if len(a) != len(b):
                return False
            for x, y in zip(a, b):
                if (x.kind, x.size, x.sign) != (y.kind, y.size, y.sign):
                    return False
                if abs(complex(x.param) - complex(y.param)) > atol:
                    return False
        elif isinstance(a, str) or isinstance(b, str):
            if a != b:
                return False
        elif isinstance(a, tuple) or isinstance(a, list):
            if tuple(a) != tuple(b):
                return False
        elif abs(complex(a) - complex(b)) > atol:
            return False
    return True
