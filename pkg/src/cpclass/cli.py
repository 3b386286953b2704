"""Command line front end.

Exit codes: 0 success, 1 input or size error, 2 not quadratically flat,
3 tolerance breakdown.  ``congruent`` uses 0 (congruent), 4 (not
congruent) and 5 (not conclusive).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from . import __version__
from .congruence import are_sim_congruent, canonical_invariants, detect_quadratic_flatness, random_orbit_sample
from .forms import FormBlock, assemble_form1, form1, form2, form3, generic_forms
from .io import (
    DocumentError,
    block_to_json,
    dumps,
    load_document,
    matrix_to_json,
    params_from_json,
    params_to_json,
    parse_block_label,
    write_atomic,
)
from .matlin import MatrixError, Tolerances, ToleranceBreakdown, Unsupported
from .pairs import CongruenceCertificate, MatrixPair, verify_certificate
from .reduce import classify_pair_low_dim, is_nondegenerate_point, normalize_B, prepare_reduction
from .rows import ROWS, representative

EXIT_OK, EXIT_INPUT, EXIT_NOT_FLAT, EXIT_BREAKDOWN = 0, 1, 2, 3
EXIT_NOT_CONGRUENT, EXIT_INCONCLUSIVE = 4, 5


class _NotFlat(Exception):
    pass


def _tolerances(args, meta: dict) -> Tolerances:
    kw = {}
    over = meta.get("tol", {}) if isinstance(meta, dict) else {}
    for key in ("rank_tol", "eig_cluster_tol", "residual_tol"):
        if key in over:
            kw[key] = float(over[key])
    if getattr(args, "tol_rank", None) is not None:
        kw["rank_tol"] = args.tol_rank
    if getattr(args, "tol_cluster", None) is not None:
        kw["eig_cluster_tol"] = args.tol_cluster
    if getattr(args, "tol_residual", None) is not None:
        kw["residual_tol"] = args.tol_residual
    return Tolerances(**kw)


def _cert_json(p, q, cert: CongruenceCertificate, tol: Tolerances) -> dict:
    rA, rB = verify_certificate(p, q, cert, tol)
    return {"P": matrix_to_json(cert.P), "c": [cert.c.real, cert.c.imag], "residuals": [rA, rB]}


def _flat_pair(A, B, tol: Tolerances):
    c = detect_quadratic_flatness(A, tol)
    if c is None:
        raise _NotFlat()
    p = MatrixPair(c * A, np.conj(c) * B, tol)
    return c, p


def _form1_json(f) -> dict:
    return {"blocks": [block_to_json(b) for b in f.blocks], "matrix": matrix_to_json(f.assembled),
            "witness": matrix_to_json(f.witness)}


def _forms_json(A: np.ndarray, which: str, tol: Tolerances, seed: int) -> dict:
    out = {}
    f1 = form1(A, tol, seed)
    if which in ("1", "all"):
        out["form1"] = _form1_json(f1)
    if which in ("2", "all"):
        f2 = form2(A, tol, seed)
        out["form2"] = {
            "blocks": [{"kind": b.kind, "size": b.size, "param": list(b.param) if isinstance(b.param, tuple) else b.param,
                        "sign": b.sign} for b in f2.blocks],
            "J": matrix_to_json(f2.J), "E": matrix_to_json(f2.E)}
    if which in ("3", "all"):
        f3 = form3(A, tol, seed, f1)
        out["form3"] = {"inertia": [f3.inertia.n_neg, f3.inertia.n_pos, f3.inertia.n_zero],
                        "N": matrix_to_json(f3.N), "certificate": matrix_to_json(f3.certificate)}
    out["generic"] = generic_forms(A, tol) is not None
    return out


def _reduction_json(p: MatrixPair, tol: Tolerances, seed: int) -> dict:
    rp = prepare_reduction(p, tol, seed)
    return {
        "stage": rp.stage, "m": rp.m, "k": rp.k,
        "script_I": [float(x) for x in rp.script_I],
        "H_eps": [block_to_json(b) for b in rp.H_eps.blocks],
        "L": None if rp.L is None else matrix_to_json(rp.L),
        "A": matrix_to_json(rp.A),
        "pattern_residual": rp.pattern_residual(),
        "certificate": _cert_json(p, (rp.ideal(), rp.B), rp.witness, tol),
    }


def _invariants_json(p: MatrixPair, tol: Tolerances, seed: int) -> dict:
    inv = canonical_invariants(p, tol, seed)
    return {"n": inv.n, "rank_B": inv.rank_B, "inertia": list(inv.inertia),
            "alt_ranks": list(inv.alt_ranks) if inv.alt_ranks is not None else None,
            "nondegenerate": inv.nondegenerate, "row": inv.row}


def classify_report(A, B, tol: Tolerances, seed: int = 0, form: str = "all") -> dict:
    """The full classification report for a raw pair."""
    c, p = _flat_pair(A, B, tol)
    raw = (A, B)
    flat_cert = CongruenceCertificate(np.eye(p.n), c)
    q, ncert, m = normalize_B(p, tol)
    report = {"n": p.n, "flatness": {"c": [c.real, c.imag]}}
    report["normalized"] = {"rank_B": m, "A": matrix_to_json(q.A), "B": matrix_to_json(q.B),
                            "certificate": _cert_json(raw, q, flat_cert.then(ncert), tol)}
    report["nondegenerate"] = is_nondegenerate_point(p, tol)
    if m == p.n:
        report["forms"] = _forms_json(q.A, form, tol, seed)
    else:
        rp = prepare_reduction(q, tol, seed)
        report["forms"] = None
        report["corner_form1"] = [block_to_json(b) for b in rp.H_eps.blocks]
    report["reduction"] = _reduction_json(p, tol, seed)
    if p.n in (2, 3, 4):
        lab = classify_pair_low_dim(p, tol, seed)
        rep = lab.representative
        report["classification"] = {
            "row": lab.table_row,
            "description": ROWS[lab.table_row].describe(),
            "parameters": params_to_json(lab.parameters),
            "representative": {"A": matrix_to_json(rep.A), "B": matrix_to_json(rep.B)},
            "certificate": _cert_json(raw, rep, flat_cert.then(lab.certificate), tol),
        }
    else:
        report["classification"] = None
    report["invariants"] = _invariants_json(p, tol, seed)
    return report


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _err(msg: str) -> None:
    sys.stderr.write(f"cpclass: {msg}\n")


def _run_pipeline(fn, args):
    """Map library exceptions onto exit codes."""
    try:
        return fn()
    except DocumentError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except _NotFlat:
        _err("A is not Hermitian up to a unit scalar (not quadratically flat)")
        return EXIT_NOT_FLAT
    except ToleranceBreakdown as exc:
        _err(f"tolerance breakdown: {exc}")
        return EXIT_BREAKDOWN
    except (MatrixError, Unsupported, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT


def cmd_classify(args) -> int:
    if os.path.isdir(args.input):
        return _classify_batch(args)

    def run():
        A, B, meta = load_document(args.input)
        tol = _tolerances(args, meta)
        t0 = time.perf_counter()
        if detect_quadratic_flatness(A, tol) is None:
            _emit(dumps({"n": A.shape[0], "flatness": None}), args.json_out)
            raise _NotFlat()
        rep = classify_report(A, B, tol, args.seed, args.form)
        if args.timing:
            rep["timing"] = {"seconds": time.perf_counter() - t0}
        _emit(dumps(rep), args.json_out)
        return EXIT_OK

    return _run_pipeline(run, args)


def _classify_one(args, path: str, target: str):
    sub = argparse.Namespace(**vars(args))
    sub.input, sub.json_out = path, target
    code = cmd_classify(sub)
    row = "-"
    if code == EXIT_OK:
        with open(target, encoding="utf-8") as fh:
            cl = json.load(fh).get("classification")
        row = cl["row"] if cl else "-"
    return code, row


def _classify_batch(args) -> int:
    files = sorted(f for f in os.listdir(args.input) if f.endswith(".json") and not f.endswith(".report.json"))
    outdir = args.json_out or args.input
    os.makedirs(outdir, exist_ok=True)
    jobs = [(os.path.join(args.input, f), os.path.join(outdir, f[:-5] + ".report.json")) for f in files]
    # files are independent and every report is written atomically
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda job: _classify_one(args, *job), jobs))
    lines = ["file\texit\trow"] + [f"{f}\t{code}\t{row}" for f, (code, row) in zip(files, results)]
    sys.stdout.write("\n".join(lines) + "\n")
    return max((code for code, _ in results), default=EXIT_OK)


def cmd_congruent(args) -> int:
    def run():
        A1, B1, meta1 = load_document(args.input1)
        A2, B2, _ = load_document(args.input2)
        tol = _tolerances(args, meta1)
        if A1.shape != A2.shape:
            raise DocumentError(f"sizes {A1.shape[0]} and {A2.shape[0]} differ")
        c1, p1 = _flat_pair(A1, B1, tol)
        c2, p2 = _flat_pair(A2, B2, tol)
        flag, cert = are_sim_congruent(p1, p2, tol, args.seed)
        verdict = {True: "true", False: "false", None: "non-conclusive"}[flag]
        out = {"verdict": verdict}
        if flag:
            full = CongruenceCertificate(np.eye(p1.n), c1).then(cert).then(
                CongruenceCertificate(np.eye(p1.n), np.conj(c2)))
            out["certificate"] = _cert_json((A1, B1), (A2, B2), full, tol)
        _emit(dumps(out), args.json_out)
        return {True: EXIT_OK, False: EXIT_NOT_CONGRUENT, None: EXIT_INCONCLUSIVE}[flag]

    return _run_pipeline(run, args)


_SHORTHAND = re.compile(r"^([HKL])(\d+)$")


def _parse_params(items: List[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise DocumentError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        if k == "inertia":
            out[k] = tuple(int(x) for x in v.split(","))
        elif k == "blocks":
            out[k] = [parse_block_label(x) for x in re.findall(r"[+-]?[HKL]\d+\([^)]*\)", v)]
        elif k == "variant":
            out[k] = v
        else:
            try:
                out[k] = complex(v.replace("i", "j")) if "i" in v else float(v)
            except ValueError:
                raise DocumentError(f"bad value for {k}: {v!r}") from None
    return out


def gen_pair(spec: str, params: dict) -> MatrixPair:
    """Representative for a row id, or ``(block, I)`` for a shorthand like ``K1``."""
    m = _SHORTHAND.match(spec)
    if m:
        kind, size = m.group(1), int(m.group(2))
        val = None
        for key in ("x", "mu", "z", "xi", "param"):
            if key in params:
                val = params[key]
        if val is None:
            raise DocumentError(f"block {spec} needs a parameter, e.g. {'mu' if kind == 'K' else 'x'}=1")
        sign = int(params.get("sign", 1).real if isinstance(params.get("sign", 1), complex) else params.get("sign", 1))
        b = FormBlock(kind, size, complex(val) if kind == "L" else float(np.real(val)), sign if kind == "H" else 1)
        A = assemble_form1([b])
        return MatrixPair(A, np.eye(A.shape[0]))
    if spec not in ROWS:
        raise DocumentError(f"unknown row {spec!r}")
    prm = dict(params)
    row = ROWS[spec]
    if row.s and "inertia" not in prm:
        prm["inertia"] = (0, row.s)
    for key in ("a", "b", "c", "g"):
        if key in prm:
            prm[key] = float(np.real(prm[key]))
    return representative(spec, prm)


def cmd_gen(args) -> int:
    def run():
        params = _parse_params(args.params)
        p = gen_pair(args.row, params)
        meta = {"row": args.row, "params": params_to_json(params)}
        if args.seed is not None:
            p, _ = random_orbit_sample(p, seed=args.seed)
            meta["seed"] = args.seed
        doc = {"n": p.n, "A": matrix_to_json(p.A), "B": matrix_to_json(p.B), "meta": meta}
        _emit(dumps(doc), args.json_out)
        return EXIT_OK

    return _run_pipeline(run, args)


def cmd_reduce(args) -> int:
    def run():
        A, B, meta = load_document(args.input)
        tol = _tolerances(args, meta)
        _, p = _flat_pair(A, B, tol)
        _emit(dumps(_reduction_json(p, tol, args.seed)), args.json_out)
        return EXIT_OK

    return _run_pipeline(run, args)


def cmd_forms(args) -> int:
    def run():
        A, B, meta = load_document(args.input)
        tol = _tolerances(args, meta)
        _, p = _flat_pair(A, B, tol)
        q, _, m = normalize_B(p, tol)
        if m < p.n:
            raise Unsupported("FORM 1/2/3 need a nonsingular B; use 'reduce' for singular B")
        _emit(dumps(_forms_json(q.A, args.form, tol, args.seed)), args.json_out)
        return EXIT_OK

    return _run_pipeline(run, args)


def cmd_flatness(args) -> int:
    def run():
        A, _, meta = load_document(args.input)
        tol = _tolerances(args, meta)
        c = detect_quadratic_flatness(A, tol)
        _emit(dumps({"flat": c is not None, "c": None if c is None else [c.real, c.imag]}), args.json_out)
        return EXIT_OK if c is not None else EXIT_NOT_FLAT

    return _run_pipeline(run, args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cpclass", description="Normal forms of Hermitian-symmetric matrix pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=None, help="relative singular value cutoff")
    common.add_argument("--tol-residual", type=float, default=None, help="certificate acceptance threshold")
    common.add_argument("--tol-cluster", type=float, default=None, help="eigenvalue grouping gap")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized steps (default 0; gen: no orbit sample)")
    common.add_argument("--json-out", default=None, metavar="PATH", help="write the report here")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="full pipeline on a pair document or a directory")
    p.add_argument("input")
    p.add_argument("--form", choices=["1", "2", "3", "all"], default="all")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for a directory input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("congruent", parents=[common], help="decide congruence of two pairs")
    p.add_argument("input1")
    p.add_argument("input2")
    p.set_defaults(func=cmd_congruent)

    p = sub.add_parser("gen", parents=[common], help="emit a table representative")
    p.add_argument("row", help="row id (see README) or a block such as K1")
    p.add_argument("params", nargs="*", help="key=value, e.g. inertia=0,1 b=0.5 blocks=+H2(0.5) mu=1")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", parents=[common], help="block reduction for singular B")
    p.add_argument("input")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("forms", parents=[common], help="FORM 1/2/3 of the normalized A")
    p.add_argument("input")
    p.add_argument("--form", choices=["1", "2", "3", "all"], default="all")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("flatness", parents=[common], help="unit scalar making A Hermitian")
    p.add_argument("input")
    p.set_defaults(func=cmd_flatness)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    # parent-parser actions are shared, so the per-command default lives here
    if args.seed is None and args.command != "gen":
        args.seed = 0
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
