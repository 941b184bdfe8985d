import json
import random

import pytest

from causaltop import io
from causaltop.cli import main
from causaltop.framework import Framework
from causaltop.generators import random_causal_site, random_framework, random_region, random_topology
from causaltop.region import Block, Region
from causaltop.site import CausalSite, reflexive_transitive_closure
from causaltop.topology import FiniteTopology, discrete


def square_site():
    elems = ["0", "a", "b", "ab"]
    leq = reflexive_transitive_closure(elems, [("0", "a"), ("0", "b"), ("a", "ab"), ("b", "ab")])
    return CausalSite(elems, leq, [], "0")


def write(tmp_path, name, doc):
    path = tmp_path / name
    io.save(doc, str(path))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestRoundTrip:
    @pytest.mark.parametrize("seed", range(20))
    def test_all_kinds(self, seed):
        rng = random.Random(seed)
        docs = [
            io.Document("framework", random_framework(rng)),
            io.Document("topology", random_topology(rng)),
            io.Document("causal_site", random_causal_site(rng)),
            io.Document("region_set", [random_region(rng) for _ in range(3)]),
        ]
        for doc in docs:
            back = io.loads(io.dumps(doc))
            assert back == doc
            assert io.dumps(back) == io.dumps(doc)

    def test_frozenset_identifiers(self):
        fw = Framework([frozenset({1, 2}), frozenset()], [[frozenset({1, 2})]])
        assert io.loads(io.dumps(io.Document("framework", fw))).value == fw

    def test_rationals_are_strings(self):
        doc = io.Document("region_set", [Region([Block("1/3", 1, 0, "1/2")])])
        text = io.dumps(doc)
        assert "1/3" in text or "1/6" in text
        assert io.loads(text) == doc

    def test_leq_stored_reduced(self):
        payload = io.to_json(io.Document("causal_site", square_site()))["payload"]
        assert len(payload["leq"]) == 4

    def test_bare_payload(self):
        doc = io.from_json({"places": [1, 2], "framology": [[1]]})
        assert doc.kind == "framework"


class TestMalformed:
    @pytest.mark.parametrize("text", [
        "not json",
        "[]",
        '{"kind": "nope", "version": "1", "payload": {}}',
        '{"kind": "framework", "version": "9", "payload": {"places": [], "framology": []}}',
        '{"kind": "framework", "version": "1", "payload": {"places": [1]}}',
        '{"places": [1], "framology": [[2]]}',
        '{"dim": 2, "diamonds": [{"p": [0.5, "0/1"], "q": ["1/1", "0/1"]}]}',
        '{"dim": 2, "diamonds": [{"p": ["0/1", "0/1"], "q": ["0/1", "1/1"]}]}',
    ])
    def test_rejected(self, text):
        with pytest.raises(io.ValidationError):
            io.loads(text)


class TestDot:
    def test_sierpinski(self):
        t = FiniteTopology([0, 1], [[], [0], [0, 1]])
        dot = io.export_dot(io.Document("topology", t))
        assert dot.count("->") == 1
        assert dot.count(";") == 3

    def test_discrete(self):
        dot = io.export_dot(io.Document("topology", discrete([1, 2])))
        assert "->" not in dot and dot.count(";") == 2

    def test_site(self):
        dot = io.export_dot(io.Document("causal_site", square_site()))
        assert dot.count("[style=solid]") == 4
        assert "dashed" not in dot
        assert sum(1 for line in dot.splitlines() if line.strip().endswith(";") and "->" not in line) == 4

    def test_unsupported(self):
        with pytest.raises(io.ValidationError):
            io.export_dot(io.Document("framework", Framework([], [])))


class TestCli:
    def test_framework_dual(self, tmp_path, capsys):
        src = write(tmp_path, "f.json", io.Document("framework", Framework([1, 2], [[1], [1, 2]])))
        out = str(tmp_path / "fd.json")
        code, rep = run(capsys, "framework", "dual", "--in", src, "--out", out)
        assert code == 0
        assert rep["findings"][0] == {"name": "dual-is-T0", "pass": True, "witness": None}
        assert io.load(out).value.places == {frozenset({1}), frozenset({1, 2})}

    def test_framework_quotient_and_dd(self, tmp_path, capsys):
        src = write(tmp_path, "f.json", io.Document("framework", Framework([1, 2, 3], [[1, 2]])))
        code, rep = run(capsys, "framework", "quotient", "--in", src, "--partition", "[[1, 2], [3]]")
        assert code == 0 and len(rep["output"]["places"]) == 2
        code, rep = run(capsys, "framework", "dd-iso", "--in", src)
        assert code == 0

    def test_t0_failure_exit_2(self, tmp_path, capsys):
        src = write(tmp_path, "f.json", io.Document("framework", Framework([1, 2], [[1, 2]])))
        code, rep = run(capsys, "framework", "t0", "--in", src)
        assert code == 2 and rep["exit_code"] == 2

    def test_site_topology(self, tmp_path, capsys):
        src = write(tmp_path, "s.json", io.Document("causal_site", square_site()))
        out = str(tmp_path / "t.json")
        code, rep = run(capsys, "site", "topology", "--in", src, "--out", out)
        assert code == 0
        assert {f["name"]: f["pass"] for f in rep["findings"]} == {"T1": True, "fip-compact": True}
        assert len(io.load(out).value.points) == 2

    def test_site_cut(self, tmp_path, capsys):
        src = write(tmp_path, "s.json", io.Document("causal_site", square_site()))
        code, rep = run(capsys, "site", "cut", "--in", src, "--a", "a", "--b", "b")
        assert code == 0 and rep["findings"][0]["witness"] == "0"
        code, _ = run(capsys, "site", "cut", "--in", src, "--a", "a", "--b", "b", "--strict")
        assert code == 2

    def test_site_validate_random(self, capsys):
        code, rep = run(capsys, "site", "validate", "--cases", "20", "--seed", "4")
        assert code == 0

    def test_mink_cut(self, tmp_path, capsys):
        b = write(tmp_path, "b.json", io.Document("region_set", [Region([Block(0, 3, 0, 3)])]))
        a = write(tmp_path, "a.json", io.Document("region_set", [Region([Block(2, 3, 2, 3)])]))
        code, rep = run(capsys, "mink", "cut", "--b", b, "--a", a)
        assert code == 0
        assert rep["output"]["blocks_uv"] == ["[0/1,2/1]x[0/1,2/1]"]

    def test_mink_relate_classify(self, capsys):
        code, rep = run(capsys, "mink", "classify", "--v", "2,1")
        assert code == 0 and rep["output"]["causality"] == "timelike"
        code, rep = run(capsys, "mink", "relate", "--p", "0,0", "--q", "1,1")
        assert rep["output"]["p<=q"] and not rep["output"]["p<<q"]

    def test_mink_separate(self, tmp_path, capsys):
        path = tmp_path / "pts.json"
        path.write_text(json.dumps({"dim": 2, "points": [["0/1", "0/1"], ["2/1", "0/1"]], "x": ["1/1", "0/1"]}))
        code, rep = run(capsys, "mink", "separate", "--in", str(path))
        assert code == 0

    def test_mink_refine(self, capsys):
        code, rep = run(capsys, "mink", "refine", "--level", "2", "--cases", "20")
        assert code == 0

    def test_topo_commands(self, tmp_path, capsys):
        src = write(tmp_path, "t.json", io.Document("topology", FiniteTopology([0, 1], [[], [0], [0, 1]])))
        assert run(capsys, "topo", "iterate", "--in", src)[0] == 0
        assert run(capsys, "topo", "t1", "--in", src)[0] == 2
        assert run(capsys, "topo", "superconnected", "--in", src)[0] == 0
        code, rep = run(capsys, "topo", "restrict", "--in", src, "--subset", "[1]")
        assert code == 0 and rep["output"]["ground"] == [1]

    def test_topo_generate_from_subbase(self, tmp_path, capsys):
        path = tmp_path / "sb.json"
        path.write_text(json.dumps({"ground": [1, 2, 3], "subbase": [[1, 2], [2, 3]]}))
        code, rep = run(capsys, "topo", "generate", "--in", str(path))
        assert code == 0 and [2] in rep["output"]["closed"]

    def test_export(self, tmp_path, capsys):
        src = write(tmp_path, "s.json", io.Document("causal_site", square_site()))
        code, rep = run(capsys, "export", "dot", "--in", src)
        assert code == 0 and rep["output"].startswith("digraph")

    def test_unknown_subcommand(self, capsys):
        assert main(["nope"]) == 1
        assert main(["framework", "bogus"]) == 1

    def test_missing_input(self, capsys):
        assert main(["framework", "dual"]) == 1

    def test_malformed_exit_3(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{")
        assert main(["framework", "dual", "--in", str(path)]) == 3
        assert main(["framework", "dual", "--in", str(tmp_path / "missing.json")]) == 3

    def test_wrong_kind_exit_3(self, tmp_path, capsys):
        src = write(tmp_path, "t.json", io.Document("topology", discrete([1])))
        assert main(["framework", "dual", "--in", src]) == 3

    def test_resource_exit_4(self, capsys):
        assert main(["mink", "refine", "--level", "9", "--cases", "0"]) == 4

    def test_deterministic(self, capsys):
        argv = ["site", "validate", "--cases", "15", "--seed", "7"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first
