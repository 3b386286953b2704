"""Pair documents and deterministic JSON output.

A document is a JSON object with fields ``n``, ``A``, ``B`` and an optional
``meta`` object.  Matrix entries are ``[re, im]`` pairs; plain real numbers
are accepted as well.  Output floats use 17 significant digits and ``-0``
is written as ``0``.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Any, Tuple

import numpy as np

from .forms import FormBlock

__all__ = ["DocumentError", "load_document", "parse_document", "dumps", "write_atomic", "matrix_to_json",
           "block_to_json", "block_from_json", "parse_block_label", "params_to_json", "params_from_json"]


class DocumentError(ValueError):
    """Malformed input document; the message carries the location."""


def _entry(x, where: str) -> complex:
    if isinstance(x, bool):
        raise DocumentError(f"{where}: expected a number or [re, im]")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise DocumentError(f"{where}: expected a number or [re, im], got {json.dumps(x)[:40]}")


def _matrix(obj, n: int, name: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != n:
        raise DocumentError(f"{name}: expected {n} rows")
    M = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"{name}[{i}]: expected {n} entries")
        for j, x in enumerate(row):
            M[i, j] = _entry(x, f"{name}[{i}][{j}]")
    if not np.all(np.isfinite(M)):
        raise DocumentError(f"{name}: non-finite entry")
    return M


def parse_document(text: str, source: str = "<input>") -> Tuple[np.ndarray, np.ndarray, dict]:
    """Return ``(A, B, meta)`` without checking Hermitian or symmetric structure."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    for key in ("n", "A", "B"):
        if key not in doc:
            raise DocumentError(f"{source}: missing field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"{source}: n must be a positive integer")
    A = _matrix(doc["A"], n, f"{source}: A")
    B = _matrix(doc["B"], n, f"{source}: B")
    meta = doc.get("meta", {}) or {}
    if not isinstance(meta, dict):
        raise DocumentError(f"{source}: meta must be an object")
    return A, B, meta


def load_document(path: str):
    if path == "-":
        import sys

        return parse_document(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return parse_document(text, path)


def _fmt(x: float) -> str:
    x = float(x) + 0.0
    if not math.isfinite(x):
        raise ValueError("non-finite number in report")
    if x == 0:
        return "0"
    return "%.17g" % x


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON with fixed float formatting."""
    return _dump(obj, 0, indent) + "\n"


def _dump(obj, level: int, indent: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _dump([obj.real, obj.imag], level, indent)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, level + 1, indent)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in seq):
            return "[" + ", ".join(_dump(v, level + 1, indent) for v in seq) + "]"
        if all(isinstance(v, (list, tuple)) and all(not isinstance(w, (list, tuple, dict)) for w in v) for v in seq):
            # rows of [re, im] pairs stay on one line
            return "[" + ", ".join(_dump(v, level + 1, indent) for v in seq) + "]"
        items = [pad + _dump(v, level + 1, indent) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def block_to_json(b: FormBlock) -> dict:
    p = complex(b.param)
    param: Any = [p.real, p.imag] if b.kind == "L" else p.real
    return {"kind": b.kind, "size": int(b.size), "param": param, "sign": int(b.sign), "label": b.label()}


def block_from_json(d: dict) -> FormBlock:
    p = d["param"]
    param = complex(p[0], p[1]) if isinstance(p, list) else float(p)
    return FormBlock(d["kind"], int(d["size"]), param, int(d.get("sign", 1)))


def parse_block_label(text: str) -> FormBlock:
    """Parse ``+H2(0.5)``, ``-H3(0)``, ``K1(0.7)`` or ``L1(0.3-0.8i)``."""
    t = text.strip()
    sign = 1
    if t[:1] in "+-":
        sign = -1 if t[0] == "-" else 1
        t = t[1:]
    try:
        kind = t[0]
        size_txt, rest = t[1:].split("(", 1)
        arg = rest.rstrip(")")
        size = int(size_txt)
        if kind not in "HKL" or size < 1:
            raise ValueError
        param = complex(arg.replace("i", "j")) if kind == "L" else float(arg)
    except (ValueError, IndexError):
        raise DocumentError(f"cannot parse block {text!r}") from None
    return FormBlock(kind, size, param, sign if kind == "H" else 1)


def params_to_json(params: dict) -> dict:
    out = {}
    for k in sorted(params):
        v = params[k]
        if k == "blocks":
            out[k] = [block_to_json(b) for b in v]
        elif isinstance(v, tuple):
            out[k] = list(v)
        else:
            out[k] = v
    return out


def params_from_json(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if k == "blocks":
            out[k] = [block_from_json(b) if isinstance(b, dict) else parse_block_label(b) for b in v]
        elif k in ("inertia", "signature"):
            out[k] = tuple(int(x) for x in v)
        else:
            out[k] = v
    return out
