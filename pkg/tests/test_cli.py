import io
import json
import os
from contextlib import redirect_stderr, redirect_stdout

import numpy as np
import pytest

from cpclass.cli import (
    EXIT_BREAKDOWN,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_NOT_CONGRUENT,
    EXIT_NOT_FLAT,
    EXIT_OK,
    main,
)
from cpclass.io import dumps, matrix_to_json

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


def write_pair(path, A, B, meta=None):
    doc = {"n": len(A), "A": matrix_to_json(np.asarray(A, dtype=complex)), "B": matrix_to_json(np.asarray(B, dtype=complex))}
    if meta is not None:
        doc["meta"] = meta
    path.write_text(dumps(doc))
    return path


class TestGen:
    def test_golden_k1(self):
        code, out, _ = run("gen", "K1", "mu=1")
        assert code == EXIT_OK
        with open(os.path.join(GOLDEN, "gen_k1_mu1.json")) as fh:
            assert out == fh.read()

    def test_golden_identity_zero(self):
        code, out, _ = run("gen", "n2.m0.s2.z0.I")
        with open(os.path.join(GOLDEN, "gen_i2.json")) as fh:
            assert out == fh.read()

    def test_seeded_orbit(self):
        _, a, _ = run("gen", "n3.m2.s0.z0.Y", "b=0.5", "--seed", 7)
        _, b, _ = run("gen", "n3.m2.s0.z0.Y", "b=0.5", "--seed", 7)
        assert a == b
        assert json.loads(a)["meta"]["seed"] == 7

    def test_unknown_row(self):
        code, _, err = run("gen", "n9.bogus")
        assert code == EXIT_INPUT and err


class TestClassify:
    def test_identity_over_zero(self, tmp_path):
        f = tmp_path / "i2.json"
        f.write_text(run("gen", "n2.m0.s2.z0.I")[1])
        code, out, _ = run("classify", f)
        rep = json.loads(out)
        assert code == EXIT_OK
        assert rep["classification"]["row"] == "n2.m0.s2.z0.I"
        assert rep["classification"]["description"] == "I_2 / 0_2"
        assert rep["forms"] is None

    def test_form3_of_h2_zero(self, tmp_path):
        f = tmp_path / "h2.json"
        f.write_text(run("gen", "H2", "x=0")[1])
        code, out, _ = run("classify", f, "--form", "3")
        rep = json.loads(out)
        assert code == EXIT_OK
        f3 = rep["forms"]["form3"]
        assert f3["inertia"] == [0, 1, 1]
        N = np.array([[complex(*z) for z in row] for row in f3["N"]])
        assert np.allclose(N, [[0, 1], [1, 0]], atol=1e-8)
        assert rep["classification"]["row"] == "n2.m2.s0.z0.H"
        assert max(rep["classification"]["certificate"]["residuals"]) <= 1e-8

    def test_deterministic(self, tmp_path):
        f = write_pair(tmp_path / "p.json", [[1, 1j, 0], [-1j, 0, 2], [0, 2, -1]], np.diag([1.0, 2.0, 0.0]))
        outs = {run("classify", f, "--form", "all")[1] for _ in range(3)}
        assert len(outs) == 1

    def test_not_flat(self, tmp_path):
        f = write_pair(tmp_path / "nf.json", [[1, 1], [0, 1]], np.eye(2))
        code, out, err = run("classify", f)
        assert code == EXIT_NOT_FLAT
        assert json.loads(out)["flatness"] is None and "flat" in err

    def test_phase_is_removed(self, tmp_path):
        f = write_pair(tmp_path / "ph.json", 1j * np.eye(2), np.eye(2))
        code, out, _ = run("classify", f)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["flatness"]["c"] == [0, -1]

    def test_parse_error_position(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text('{"n": 2,\n "A": [[1, 2]\n}')
        code, _, err = run("classify", f)
        assert code == EXIT_INPUT
        assert "bad.json:3:1" in err

    def test_size_mismatch(self, tmp_path):
        f = tmp_path / "sz.json"
        f.write_text('{"n": 2, "A": [[1, 0], [0, 1]], "B": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}')
        assert run("classify", f)[0] == EXIT_INPUT

    def test_missing_file(self, tmp_path):
        assert run("classify", tmp_path / "nope.json")[0] == EXIT_INPUT

    def test_timing_optional(self, tmp_path):
        f = write_pair(tmp_path / "p.json", np.eye(2), np.eye(2))
        assert "timing" not in json.loads(run("classify", f)[1])
        assert json.loads(run("classify", f, "--timing")[1])["timing"]["seconds"] >= 0

    def test_json_out(self, tmp_path):
        f = write_pair(tmp_path / "p.json", np.eye(2), np.eye(2))
        target = tmp_path / "r.json"
        code, out, _ = run("classify", f, "--json-out", target)
        assert code == EXIT_OK
        assert json.loads(target.read_text())["classification"]["row"] == "n2.m2.s0.z0.H"

    def test_meta_tol_and_flag_precedence(self, tmp_path):
        B = np.diag([1.0, 1e-4])
        loose = write_pair(tmp_path / "loose.json", np.eye(2), B, meta={"tol": {"rank_tol": 1e-3, "residual_tol": 1e-3}})
        assert json.loads(run("classify", loose)[1])["normalized"]["rank_B"] == 1
        assert json.loads(run("classify", loose, "--tol-rank", 1e-12)[1])["normalized"]["rank_B"] == 2

    def test_large_n_breakdown_or_partial(self, tmp_path):
        rng = np.random.default_rng(0)
        G = rng.standard_normal((5, 5))
        f = write_pair(tmp_path / "big.json", G + G.T, np.diag([1.0, 1, 0, 0, 0]))
        code, out, _ = run("classify", f)
        # no table beyond n = 4; the report still carries the reduction
        assert code in (EXIT_OK, EXIT_BREAKDOWN)
        assert json.loads(out)["reduction"]["m"] == 2


class TestBatch:
    def test_directory(self, tmp_path):
        d = tmp_path / "batch"
        d.mkdir()
        write_pair(d / "a.json", np.eye(2), np.eye(2))
        write_pair(d / "b.json", [[1, 1], [0, 1]], np.eye(2))
        write_pair(d / "c.json", np.eye(3), np.zeros((3, 3)))
        code, out, _ = run("classify", d, "--jobs", 2)
        head, *lines = out.strip().splitlines()
        assert head.split("\t") == ["file", "exit", "row"]
        assert len(lines) == 3
        assert lines[0].startswith("a.json\t0\tn2.m2.s0.z0.H")
        assert lines[1].startswith("b.json\t2")
        assert lines[2].startswith("c.json\t0\tn3.m0.s3.z0.I")
        assert code != EXIT_OK
        assert json.loads((d / "a.report.json").read_text())["n"] == 2


class TestCongruent:
    def _gen(self, tmp_path, name, *args):
        f = tmp_path / name
        f.write_text(run("gen", *args)[1])
        return f

    def test_sign_exception_true(self, tmp_path):
        a = self._gen(tmp_path, "a.json", "n3.m3.s0.z0.H", "blocks=+H3(0)")
        b = self._gen(tmp_path, "b.json", "n3.m3.s0.z0.H", "blocks=-H3(0)")
        code, out, _ = run("congruent", a, b)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["verdict"] == "true"
        assert max(rep["certificate"]["residuals"]) <= 1e-8

    def test_false(self, tmp_path):
        a = self._gen(tmp_path, "a.json", "K1", "mu=1")
        b = self._gen(tmp_path, "b.json", "K1", "mu=2")
        code, out, _ = run("congruent", a, b)
        assert code == EXIT_NOT_CONGRUENT and json.loads(out)["verdict"] == "false"

    def test_non_conclusive(self, tmp_path):
        rng = np.random.default_rng(12345)
        G = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        A = (G + G.conj().T) / 2
        B = np.diag([1.0, 1, 0, 0, 0])
        a = write_pair(tmp_path / "a.json", A, B)
        P = np.eye(5) + 0.1 * rng.standard_normal((5, 5))
        b = write_pair(tmp_path / "b.json", P.conj().T @ A @ P, P.T @ B @ P)
        code, out, _ = run("congruent", a, b)
        assert code == EXIT_INCONCLUSIVE and json.loads(out)["verdict"] == "non-conclusive"

    def test_size_mismatch(self, tmp_path):
        a = write_pair(tmp_path / "a.json", np.eye(2), np.eye(2))
        b = write_pair(tmp_path / "b.json", np.eye(3), np.eye(3))
        assert run("congruent", a, b)[0] in (EXIT_INPUT, EXIT_NOT_CONGRUENT)


class TestOtherCommands:
    def test_flatness(self, tmp_path):
        # the phase is taken with argument in [-pi/2, pi/2)
        f = write_pair(tmp_path / "p.json", -1j * np.eye(2), np.eye(2))
        code, out, _ = run("flatness", f)
        assert code == EXIT_OK and json.loads(out)["c"] == [0, -1]
        g = write_pair(tmp_path / "q.json", [[1, 1], [0, 1]], np.eye(2))
        assert run("flatness", g)[0] == EXIT_NOT_FLAT

    def test_forms_needs_nonsingular_b(self, tmp_path):
        f = write_pair(tmp_path / "p.json", np.eye(2), np.diag([1.0, 0.0]))
        assert run("forms", f)[0] != EXIT_OK
        g = write_pair(tmp_path / "q.json", np.eye(2), np.eye(2))
        code, out, _ = run("forms", g, "--form", "1")
        assert code == EXIT_OK and "form1" in json.loads(out)

    def test_reduce(self, tmp_path):
        f = write_pair(tmp_path / "p.json", [[2.0, 0, 1], [0, 1, 0], [1, 0, 0]], np.diag([1.0, 0, 0]))
        code, out, _ = run("reduce", f)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["m"] == 1 and rep["pattern_residual"] <= 1e-10

    def test_version(self):
        with pytest.raises(SystemExit) as exc:
            run("--version")
        assert exc.value.code == 0
