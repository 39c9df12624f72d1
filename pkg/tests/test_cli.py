"""End-to-end command-line checks against the shipped data files."""

from __future__ import annotations

import json
from pathlib import Path

from pfdual.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv) -> tuple[int, str]:
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


class TestCheckAxioms:
    def test_passes_on_swap_const(self, capsys):
        code, out = run(capsys, "check-axioms", DATA / "swap_const.alg.json")
        assert code == 0
        assert "passed: True" in out

    def test_json_format(self, capsys):
        code, out = run(capsys, "check-axioms", DATA / "swap_const.alg.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True and len(report["axioms"]) == 10

    def test_failure_exit_code_and_witness(self, capsys, tmp_path):
        data = json.loads((DATA / "swap_const.alg.json").read_text())
        from pfdual import formats as fmt
        from pfdual.algebra import FinAlgebra

        alg = fmt.load_algebra(DATA / "swap_const.alg.json")
        table = list(alg.range_t)
        table[alg.index_of("s")] = alg.index_of("0")
        broken = FinAlgebra.from_tables(alg.compose_t, alg.anti_t, table, alg.pref_t, alg.names)
        path = tmp_path / "broken.json"
        path.write_text(fmt.write_algebra(broken))
        code, out = run(capsys, "check-axioms", path, "--format", "json")
        assert code == 1
        report = json.loads(out)
        bad = [e for e in report["axioms"] if not e["passed"]]
        assert any(e["axiom"] == 7 and e["witness"] == ["s"] for e in bad)

    def test_parse_error_exit_code(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code = main(["check-axioms", str(path)])
        assert code == 2

    def test_deterministic_output(self, capsys):
        _, first = run(capsys, "check-axioms", DATA / "swap_const.alg.json", "--format", "json")
        _, second = run(capsys, "check-axioms", DATA / "swap_const.alg.json", "--format", "json")
        assert first == second


class TestDualize:
    def test_shape_and_files(self, capsys, tmp_path):
        out_file = tmp_path / "dual.json"
        dot_file = tmp_path / "dual.dot"
        code, out = run(
            capsys, "dualize", DATA / "swap_const.alg.json",
            "--out", out_file, "--dot", dot_file, "--format", "json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["objects"] == 2 and report["arrows"] == 4 and report["identities"] == 2
        dot = dot_file.read_text()
        assert dot.count("black:invis:black") == 2
        # the emitted category file feeds back into the sections command
        code, out = run(capsys, "sections", out_file, "--format", "json")
        assert code == 0
        assert json.loads(out)["sections"] == 8

    def test_category_file_canonical(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "dualize", DATA / "swap_const.alg.json", "--out", out1)
        run(capsys, "dualize", DATA / "swap_const.alg.json", "--out", out2)
        assert out1.read_bytes() == out2.read_bytes()

    def test_sections_rejects_invalid_category(self, capsys, tmp_path):
        from conftest import build_nonepi_category
        from pfdual import formats as fmt

        path = tmp_path / "nonepi.json"
        path.write_text(fmt.write_category(build_nonepi_category()))
        code = main(["sections", str(path)])
        assert code == 2


class TestBidual:
    def test_isomorphism_line(self, capsys):
        code, out = run(capsys, "bidual", DATA / "swap_const.alg.json")
        assert code == 0
        assert "theta: isomorphism (8 <-> 8)" in out


class TestHomCheck:
    def test_inclusion(self, capsys):
        code, out = run(capsys, "hom-check", DATA / "swap_inclusion.hom.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["valid"] is True
        assert report["locally_proper"] is False
        assert report["locally_proper_witness"] == ["c", "c3"]
        dual = report["dual"]
        assert dual["star_coherent"] is True and dual["plain_functor"] is False

    def test_invalid_hom_exit_code(self, capsys, tmp_path):
        data = json.loads((DATA / "swap_inclusion.hom.json").read_text())
        data["map"]["s"] = "c"
        data["source"] = str(DATA / "swap_only.alg.json")
        data["target"] = str(DATA / "swap_const.alg.json")
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, out = run(capsys, "hom-check", path, "--format", "json")
        assert code == 1
        assert json.loads(out)["valid"] is False


class TestNaturality:
    def test_hom_square(self, capsys):
        code, out = run(capsys, "naturality", DATA / "swap_inclusion.hom.json", "--format", "json")
        assert code == 0
        assert json.loads(out)["commutes"] is True


class TestFunctorCheck:
    def test_dual_of_inclusion(self, capsys, tmp_path):
        from pfdual import formats as fmt
        from pfdual.dualize import pf_morphism

        incl = fmt.load_homomorphism(DATA / "swap_inclusion.hom.json")
        fun = pf_morphism(incl)
        (tmp_path / "src.json").write_text(fmt.write_category(fun.source))
        (tmp_path / "tgt.json").write_text(fmt.write_category(fun.target))
        path = tmp_path / "fun.json"
        path.write_text(json.dumps(fmt.functor_to_dict(fun, "src.json", "tgt.json")))
        code, out = run(capsys, "functor-check", path, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["star_coherent"] is True and report["plain_functor"] is False
        code, out = run(capsys, "naturality", path, "--format", "json")
        assert code == 0
        assert json.loads(out)["commutes"] is True


class TestTransducerCommands:
    def test_eval(self, capsys):
        code, out = run(capsys, "transducer", "eval", DATA / "as_to_bs.td.json", "aab", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["output"] == "bb" and report["defined"] is True

    def test_eval_undefined(self, capsys):
        code, out = run(capsys, "transducer", "eval", DATA / "as_to_bs.td.json", "ba", "--format", "json")
        assert code == 1
        assert json.loads(out)["defined"] is False

    def test_compose_and_eval(self, capsys, tmp_path):
        out_file = tmp_path / "c.json"
        code, _ = run(capsys, "transducer", "compose",
                      DATA / "as_to_bs.td.json", DATA / "id_on_as.td.json", "--out", out_file)
        assert code == 0
        code, out = run(capsys, "transducer", "eval", out_file, "b", "--format", "json")
        assert code == 0 and json.loads(out)["output"] == ""

    def test_dom_range(self, capsys, tmp_path):
        code, out = run(capsys, "transducer", "dom", DATA / "as_to_bs.td.json",
                        "--out", tmp_path / "d.json", "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert "b" in report["accepted_sample"] and "" not in report["accepted_sample"]
        code, out = run(capsys, "transducer", "range", DATA / "as_to_bs.td.json", "--format", "json")
        assert code == 0
        assert "" in json.loads(out)["accepted_sample"]

    def test_pref(self, capsys, tmp_path):
        out_file = tmp_path / "p.json"
        code, _ = run(capsys, "transducer", "pref",
                      DATA / "id_on_as.td.json", DATA / "as_to_bs.td.json", "--out", out_file)
        assert code == 0
        code, out = run(capsys, "transducer", "eval", out_file, "aab", "--format", "json")
        assert json.loads(out)["output"] == "bb"

    def test_axioms(self, capsys):
        code, out = run(capsys, "transducer", "axioms",
                        DATA / "id_on_as.td.json", DATA / "as_to_bs.td.json",
                        "--max-len", "5", "--format", "json")
        assert code == 0
        assert json.loads(out)["passed"] is True
