"""End-to-end tests of the command line front end."""

import json
import random

import pytest

from dqkin.cli import main
from dqkin.jsonio import (dq_to_json, matrix_to_json, parse_dq, parse_point,
                          parse_scalar_at, point_to_json)
from dqkin.motions import darboux, darboux_invariants
from dqkin.projgeom import ProjPoint, span
from dqkin.transforms import build_transform, conjugation_matrix
from helpers import dq, pt8, quat, random_study_dq


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, doc):
    target = tmp_path / name
    target.write_text(json.dumps(doc))
    return str(target)


def rr_fixture_doc():
    h1 = dq(quat(0, 0, 0, 1))
    h2 = dq(quat(0, 1, 0, 0), quat(0, 0, 0, 1))
    pts = [dq(quat(1)), h1, h2, h1 * h2]
    return [dq_to_json(q) for q in pts]


class TestClassify:
    def test_two_r_fixture(self, capsys, tmp_path):
        path = write_json(tmp_path, "rr.json", rr_fixture_doc())
        code, out, _ = run_cli(capsys, "classify", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "TwoR"
        quad = doc["evidence"]["quadrilateral"]
        assert len(quad["lines"]) == 4 and len(quad["vertices"]) == 4

    def test_witness_points_reparse_into_span(self, capsys, tmp_path):
        fixture = rr_fixture_doc()
        path = write_json(tmp_path, "rr.json", fixture)
        code, out, _ = run_cli(capsys, "classify", path)
        assert code == 0
        doc = json.loads(out)
        space = span([parse_point(p, "$", "gaussian", 1e-9) for p in fixture])
        for vertex in doc["evidence"]["quadrilateral"]["vertices"]:
            assert space.contains(parse_point(vertex, "$", "gaussian", 1e-9))

    def test_degenerate_span_is_domain_error(self, capsys, tmp_path):
        one = dq_to_json(dq(quat(1)))
        path = write_json(tmp_path, "deg.json", [one, one, one, one])
        code, out, err = run_cli(capsys, "classify", path)
        assert code == 1
        assert "three-space" in err

    def test_zero_point_is_parse_error(self, capsys, tmp_path):
        zero = {"primal": ["0", "0", "0", "0"], "dual": ["0", "0", "0", "0"]}
        path = write_json(tmp_path, "zero.json", [zero] * 4)
        code, _, err = run_cli(capsys, "classify", path)
        assert code == 2
        assert "$[0]" in err


class TestExitCodes:
    def test_malformed_json(self, capsys, tmp_path):
        target = tmp_path / "broken.json"
        target.write_text('{"h1": [,]}')
        code, _, err = run_cli(capsys, "classify", str(target))
        assert code == 2
        assert "malformed JSON" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "classify", "/nonexistent/input.json")
        assert code == 2

    def test_missing_field_carries_pointer(self, capsys, tmp_path):
        path = write_json(tmp_path, "dyad.json", {"h1": dq_to_json(dq(quat(1)))})
        code, _, err = run_cli(capsys, "dyad", "--kind", "RR", path)
        assert code == 2
        assert "h2" in err

    def test_bad_scalar_carries_pointer(self, capsys, tmp_path):
        doc = rr_fixture_doc()
        doc[2]["primal"][1] = "one half"
        path = write_json(tmp_path, "bad.json", doc)
        code, _, err = run_cli(capsys, "classify", path)
        assert code == 2
        assert "$[2].primal[1]" in err

    def test_domain_error_verbatim(self, capsys, tmp_path):
        path = write_json(tmp_path, "chi.json",
                          matrix_to_json(conjugation_matrix()))
        code, _, err = run_cli(capsys, "factor-transform", path)
        assert code == 1
        assert err.strip() != ""

    def test_unknown_kind_exits_two(self, capsys, tmp_path):
        path = write_json(tmp_path, "dyad.json", {})
        with pytest.raises(SystemExit) as info:
            main(["dyad", "--kind", "XX", path])
        assert info.value.code == 2


class TestScalarModes:
    def test_rational_mode_rejects_complex(self, capsys, tmp_path):
        doc = rr_fixture_doc()
        doc[0]["primal"][0] = "1/2+1/3*i"
        path = write_json(tmp_path, "cx.json", doc)
        code, _, err = run_cli(capsys, "classify", path)
        assert code == 2
        assert "rational mode" in err

    def test_gaussian_mode_accepts_complex(self, capsys, tmp_path):
        doc = rr_fixture_doc()
        doc[3] = {"primal": ["0", "0", "1", "0"],
                  "dual": ["0/1+1/1*i", "0", "0", "0"]}
        path = write_json(tmp_path, "cx.json", doc)
        code, _, err = run_cli(capsys, "classify", "--scalar", "gaussian", path)
        # parsing succeeds; the genuinely complex span is then rejected
        assert code == 1
        assert "real three-space" in err

    def test_float_mode_verifies_transform(self, capsys, tmp_path):
        rng = random.Random(7)
        t = build_transform(random_study_dq(rng), random_study_dq(rng))
        floats = [[c.to_complex().real for c in row] for row in t.matrix.rows]
        path = write_json(tmp_path, "t.json", floats)
        code, out, _ = run_cli(capsys, "verify-transform", "--scalar", "float",
                               path)
        assert code == 0
        doc = json.loads(out)
        assert doc == {"pencil_fixed": True, "shape_ok": True,
                       "rulings_preserved": True, "overall": True}

    def test_float_mode_reports_exactness_errors(self, capsys, tmp_path):
        path = write_json(tmp_path, "rr.json", rr_fixture_doc())
        code, _, err = run_cli(capsys, "classify", "--scalar", "float", path)
        assert code == 1
        assert "exact" in err


class TestTransforms:
    def test_factor_recovers_pair(self, capsys, tmp_path):
        rng = random.Random(11)
        l, r = random_study_dq(rng), random_study_dq(rng)
        t = build_transform(l, r)
        path = write_json(tmp_path, "t.json", matrix_to_json(t.matrix))
        code, out, _ = run_cli(capsys, "factor-transform", path)
        assert code == 0
        doc = json.loads(out)
        left = parse_dq(doc["left"], "$", "rational", 1e-9)
        right = parse_dq(doc["right"], "$", "rational", 1e-9)
        assert ProjPoint(left) == ProjPoint(l)
        assert ProjPoint(right) == ProjPoint(r)

    def test_verify_flags_conjugation(self, capsys, tmp_path):
        path = write_json(tmp_path, "chi.json",
                          matrix_to_json(conjugation_matrix()))
        code, out, _ = run_cli(capsys, "verify-transform", path)
        assert code == 0
        doc = json.loads(out)
        assert doc["pencil_fixed"] and doc["shape_ok"]
        assert not doc["rulings_preserved"] and not doc["overall"]


class TestTrace:
    def trace_doc(self):
        m = darboux(1, 2, 3)
        return {"coefficients": [dq_to_json(c) for c in m.coefficients],
                "point": ["1", "0", "0", "0"]}

    def test_csv_shape_and_degree(self, capsys, tmp_path):
        path = write_json(tmp_path, "m.json", self.trace_doc())
        code, out, err = run_cli(capsys, "trace", path, "--samples", "4")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,x0,x1,x2,x3"
        assert len(lines) == 5
        assert "degree: 2" in err

    def test_rows_are_exact_scalars(self, capsys, tmp_path):
        path = write_json(tmp_path, "m.json", self.trace_doc())
        code, out, _ = run_cli(capsys, "trace", path, "--samples", "3")
        assert code == 0
        for row in out.strip().split("\n")[1:]:
            cells = row.split(",")
            assert len(cells) == 5
            for cell in cells[1:]:
                assert parse_scalar_at(cell, "$", "rational", 1e-9).is_exact

    def test_bad_sample_count(self, capsys, tmp_path):
        path = write_json(tmp_path, "m.json", self.trace_doc())
        code, _, err = run_cli(capsys, "trace", path, "--samples", "0")
        assert code == 2


class TestDarboux:
    def test_vertical_flag(self, capsys):
        code, out, _ = run_cli(capsys, "darboux", "--a", "0", "--b", "1",
                               "--c", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["vertical"] is True
        assert doc["handedness"] is None

    def test_generic_report_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "darboux", "--a", "1", "--b", "2",
                               "--c", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["vertical"] is False
        assert doc["handedness"] == "LeftRuling"
        report = darboux_invariants(1, 2, 3)
        assert doc["p"] == ["-2/1", "1/1", "0/1", "3/1"]
        for got, expected in zip(doc["d"], report.d):
            assert parse_point(got, "$", "gaussian", 1e-9) == expected
        for got, expected in zip(doc["f"], report.f):
            assert parse_point(got, "$", "gaussian", 1e-9) == expected

    def test_fraction_and_negative_args(self, capsys):
        code, out, _ = run_cli(capsys, "darboux", "--a", "1/2", "--b", "-2",
                               "--c", "3")
        assert code == 0
        assert json.loads(out)["vertical"] is False

    def test_all_zero_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "darboux", "--a", "0", "--b", "0",
                               "--c", "0")
        assert code == 1
        assert "nonzero" in err


class TestReconstruct:
    def problem_doc(self):
        e = [point_to_json(pt8(*([0] * (4 + k) + [1] + [0] * (3 - k))))
             for k in range(4)]
        f = [point_to_json(pt8(*([0] * k + [1] + [0] * (7 - k))))
             for k in range(4)]
        centers = [point_to_json(pt8(1, 1, 0, 0, 0, 0, 0, 0)),
                   point_to_json(pt8(0, 1, 1, 0, 0, 0, 0, 0)),
                   point_to_json(pt8(0, 0, 1, 1, 0, 0, 0, 0)),
                   point_to_json(pt8(1, 0, 0, 1, 0, 0, 0, 0))]
        a = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
        gram = []
        for k in range(4):
            gram.append([str(a[k][j]) for j in range(4)]
                        + [str(int(j == k)) for j in range(4)])
        for k in range(4):
            gram.append([str(int(j == k)) for j in range(4)] + ["0"] * 4)
        return {"quadric": gram, "e": e, "f_points": f, "centers": centers}

    def test_identity_configuration(self, capsys, tmp_path):
        path = write_json(tmp_path, "p.json", self.problem_doc())
        code, out, _ = run_cli(capsys, "reconstruct", path)
        assert code == 0
        doc = json.loads(out)
        got = [parse_point(v, "$", "rational", 1e-9)
               for v in doc["vertices"]]
        expected = [pt8(*([0] * k + [1] + [0] * (7 - k))) for k in range(4)]
        assert got == expected

    def test_named_quadric_label(self, capsys, tmp_path):
        doc = self.problem_doc()
        doc["quadric"] = "S"
        path = write_json(tmp_path, "p.json", doc)
        code, out, _ = run_cli(capsys, "reconstruct", path)
        # purely primal centers lie on the Study quadric, so this runs
        assert code == 0
        got = [parse_point(v, "$", "rational", 1e-9)
               for v in json.loads(out)["vertices"]]
        expected = [pt8(*([0] * k + [1] + [0] * (7 - k))) for k in range(4)]
        assert got == expected

    def test_unknown_label(self, capsys, tmp_path):
        doc = self.problem_doc()
        doc["quadric"] = "Q"
        path = write_json(tmp_path, "p.json", doc)
        code, _, err = run_cli(capsys, "reconstruct", path)
        assert code == 2
        assert "unknown quadric label" in err

    def test_four_by_four_label_rejected(self, capsys, tmp_path):
        doc = self.problem_doc()
        doc["quadric"] = "pencil(1,1)"
        path = write_json(tmp_path, "p.json", doc)
        code, _, err = run_cli(capsys, "reconstruct", path)
        assert code == 1  # regular pencil member, but centers off it
        doc["quadric"] = [["1"] * 3] * 3
        path = write_json(tmp_path, "q.json", doc)
        code, _, err = run_cli(capsys, "reconstruct", path)
        assert code == 2


class TestDyadAndExample:
    def test_dyad_output(self, capsys, tmp_path):
        doc = {"h1": dq_to_json(dq(quat(0, 0, 0, 1))),
               "h2": dq_to_json(dq(quat(0, 1, 0, 0), quat(0, 0, 0, 1)))}
        path = write_json(tmp_path, "dyad.json", doc)
        code, out, _ = run_cli(capsys, "dyad", "--kind", "RR", path)
        assert code == 0
        parsed = json.loads(out)
        assert parsed["kind"] == "RR"
        space = span([parse_point(p, "$", "rational", 1e-9)
                      for p in parsed["space"]])
        assert space.dim == 3
        for name in ("h1", "h2", "h1h2"):
            w = parse_point(parsed["witnesses"][name], "$", "rational", 1e-9)
            assert space.contains(w)

    def test_example2_all_true(self, capsys):
        code, out, _ = run_cli(capsys, "example2")
        assert code == 0
        doc = json.loads(out)
        assert len(doc) == 5
        assert all(doc.values())


class TestDeterminismAndOut:
    def test_byte_identical_runs(self, capsys, tmp_path):
        path = write_json(tmp_path, "rr.json", rr_fixture_doc())
        _, first, _ = run_cli(capsys, "classify", path)
        _, second, _ = run_cli(capsys, "classify", path)
        assert first == second
        _, third, _ = run_cli(capsys, "darboux", "--a", "1", "--b", "2",
                              "--c", "3")
        _, fourth, _ = run_cli(capsys, "darboux", "--a", "1", "--b", "2",
                               "--c", "3")
        assert third == fourth

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "example2", "--out", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())