"""Command-line front end.

Every command prints a JSON report (command, input digest, findings, exit
code) to stdout. Exit codes: 0 all findings pass, 1 usage error, 2 a finding
failed, 3 malformed input, 4 size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import io
from ._order import canonical_sorted
from .errors import CuttingError, ResourceError, ValidationError
from .framework import double_dual_isomorphism, dualize, is_T0, quotient
from .generators import (
    random_causal_site,
    random_diamond_sample,
    random_dyadic_point,
    random_topology,
)
from .minkowski import Cone, MinkVec, causal_le, chron_lt, classify, eta, in_cone, rat_str
from .region import Block, region_cutting, region_precedes, region_subset
from .region_site import point_family, refine_and_enumerate, separate, validate_region_site
from .site import closed_subbase, find_cutting, maximal_centered_families, validate_causal_site
from .topology import (
    check_fip_compactness,
    de_groot_dual,
    dual_iteration,
    generate_from_closed_subbase,
    is_superconnected,
    is_T1,
    restrict,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_MALFORMED, EXIT_RESOURCE = 0, 1, 2, 3, 4


@dataclass
class Finding:
    name: str
    passed: bool
    witness: object = None


@dataclass
class Report:
    command: str
    inputs: str = ""
    findings: list = field(default_factory=list)
    output: object = None

    def add(self, name, passed, witness=None):
        self.findings.append(Finding(name, bool(passed), witness))

    @property
    def exit_code(self) -> int:
        return EXIT_OK if all(f.passed for f in self.findings) else EXIT_FAIL

    def render(self) -> str:
        body = {
            "command": self.command,
            "inputs": self.inputs,
            "findings": [{"name": f.name, "pass": f.passed, "witness": f.witness} for f in self.findings],
            "exit_code": self.exit_code,
        }
        if self.output is not None:
            body["output"] = self.output
        return json.dumps(body, sort_keys=True, indent=2, default=str)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path, kind=None):
    if not path:
        raise UsageError("--in is required")
    doc = io.load(path)
    if kind and doc.kind != kind:
        raise io.MalformedDocument(f"expected a {kind} document, got {doc.kind}")
    return doc


def _write(args, doc):
    if getattr(args, "out", None):
        io.save(doc, args.out)


def _parse_id(text):
    try:
        return io.decode_id(json.loads(text))
    except (json.JSONDecodeError, io.MalformedDocument):
        return text


def _parse_vec(text) -> MinkVec:
    try:
        return MinkVec(tuple(Fraction(c.strip()) for c in text.split(",")))
    except (ValueError, ZeroDivisionError) as exc:
        raise io.MalformedDocument(f"bad vector {text!r}") from exc


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise io.MalformedDocument(f"bad JSON argument {text!r}") from exc


# framework -------------------------------------------------------------

def cmd_framework(args, rep):
    doc = _load(args.infile, "framework")
    rep.inputs = io.digest(doc)
    fw = doc.value
    if args.action == "dual":
        out = io.Document("framework", dualize(fw))
        _write(args, out)
        rep.add("dual-is-T0", is_T0(out.value))
        rep.output = io.to_json(out)["payload"]
    elif args.action == "quotient":
        if not args.partition:
            raise UsageError("--partition is required")
        part = [[io.decode_id(x) for x in cls] for cls in _json_arg(args.partition)]
        out = io.Document("framework", quotient(fw, part))
        _write(args, out)
        rep.add("quotient", True)
        rep.output = io.to_json(out)["payload"]
    elif args.action == "t0":
        rep.add("T0", is_T0(fw))
    elif args.action == "dd-iso":
        w = double_dual_isomorphism(fw)
        rep.add("witness-verifies", w.verify())
        t0 = is_T0(fw)
        rep.add("T0-source-is-input", not t0 or w.forward.source == fw, "T0" if t0 else "quotient by star kernel")
        rep.output = [[io.encode_id(x), io.encode_id(w.forward(x))] for x in canonical_sorted(w.forward.mapping)]


# topology --------------------------------------------------------------

def cmd_topo(args, rep):
    if args.action == "generate":
        if args.infile:
            with open(args.infile) as fh:
                try:
                    data = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise io.MalformedDocument(str(exc)) from exc
            try:
                ground = [io.decode_id(x) for x in data["ground"]]
                subbase = [[io.decode_id(x) for x in s] for s in data["subbase"]]
            except (KeyError, TypeError) as exc:
                raise io.MalformedDocument(f"subbase document needs 'ground' and 'subbase': {exc}") from exc
            t = generate_from_closed_subbase(ground, subbase)
            rep.inputs = io.digest(io.Document("topology", t))
        else:
            t = random_topology(random.Random(args.seed))
            rep.inputs = f"seed={args.seed}"
        out = io.Document("topology", t)
        _write(args, out)
        rep.add("generated", True, len(t.masks))
        rep.output = io.to_json(out)["payload"]
        return
    doc = _load(args.infile, "topology")
    rep.inputs = io.digest(doc)
    t = doc.value
    if args.action == "dual":
        out = io.Document("topology", de_groot_dual(t))
        _write(args, out)
        rep.add("dual", True)
        rep.output = io.to_json(out)["payload"]
    elif args.action == "iterate":
        seq = dual_iteration(t, max_steps=max(4, args.steps))
        g = de_groot_dual(t)
        ggg = de_groot_dual(de_groot_dual(g))
        rep.add("at-most-4-distinct", len(seq) <= 4, len(seq))
        rep.add("G-equals-GGG", g == ggg)
        rep.output = [io.to_json(io.Document("topology", s))["payload"] for s in seq]
    elif args.action == "t1":
        rep.add("T1", is_T1(t))
    elif args.action == "superconnected":
        rep.add("superconnected", is_superconnected(t))
    elif args.action == "restrict":
        if args.subset is None:
            raise UsageError("--subset is required")
        sub = [io.decode_id(x) for x in _json_arg(args.subset)]
        out = io.Document("topology", restrict(t, sub))
        _write(args, out)
        rep.add("restrict", True)
        rep.output = io.to_json(out)["payload"]


# causal sites ----------------------------------------------------------

def _violations(report):
    return [{"rule": v.rule, "witness": [io.encode_id(x) if not hasattr(x, "slabs") else repr(x) for x in v.witness]}
            for v in report]


def cmd_site(args, rep):
    if args.action == "validate" and not args.infile:
        rng = random.Random(args.seed)
        bad = 0
        for i in range(args.cases):
            violations = validate_causal_site(random_causal_site(rng))
            if violations:
                bad += 1
                rep.add(f"case-{i}", False, _violations(violations))
        rep.inputs = f"seed={args.seed},cases={args.cases}"
        rep.add("random-sites-valid", bad == 0, f"{args.cases - bad}/{args.cases}")
        return
    doc = _load(args.infile, "causal_site")
    rep.inputs = io.digest(doc)
    cs = doc.value
    if args.action == "validate":
        violations = validate_causal_site(cs, strict=args.strict)
        rep.add("causal-site", not violations, _violations(violations))
    elif args.action == "topology":
        violations = validate_causal_site(cs)
        if violations:
            rep.add("causal-site", False, _violations(violations))
            return
        ground = maximal_centered_families(cs)
        subbase = closed_subbase(cs, ground)
        t = generate_from_closed_subbase(ground, subbase)
        out = io.Document("topology", t)
        _write(args, out)
        rep.add("T1", is_T1(t))
        rep.add("fip-compact", check_fip_compactness(t, subbase))
        rep.output = io.to_json(out)["payload"]
    elif args.action == "cut":
        if args.a is None or args.b is None:
            raise UsageError("--a and --b are required")
        a, b = _parse_id(args.a), _parse_id(args.b)
        try:
            cut = find_cutting(cs, a, b, strict=args.strict)
            rep.add("cutting", True, io.encode_id(cut))
        except CuttingError as exc:
            rep.add("cutting", False, [io.encode_id(x) for x in exc.witness])


# Minkowski / regions ---------------------------------------------------

def _one_region(path):
    doc = _load(path, "region_set")
    if len(doc.value) != 1:
        raise io.MalformedDocument(f"{path}: expected exactly one region")
    return doc, doc.value[0]


def _window(text) -> Block:
    parts = [Fraction(c.strip()) for c in text.split(",")]
    if len(parts) != 4:
        raise io.MalformedDocument("--window takes u_lo,u_hi,v_lo,v_hi")
    return Block(*parts)


def cmd_mink(args, rep):
    if args.action == "relate":
        p, q = _parse_vec(args.p), _parse_vec(args.q)
        rep.inputs = f"p={p.to_json()},q={q.to_json()}"
        d = q - p
        kind, orient = classify(d)
        rep.output = {
            "eta(q-p,q-p)": rat_str(eta(d, d)),
            "class(q-p)": [kind.value, orient.value],
            "p<<q": chron_lt(p, q),
            "p<=q": causal_le(p, q),
            "q in J+(p)": in_cone(q, p, Cone.FUTURE),
            "q in J-(p)": in_cone(q, p, Cone.PAST),
            "q in J(p)": in_cone(q, p, Cone.BOTH),
        }
        rep.add("evaluated", True)
    elif args.action == "classify":
        v = _parse_vec(args.v)
        rep.inputs = f"v={v.to_json()}"
        kind, orient = classify(v)
        rep.output = {"eta(v,v)": rat_str(eta(v, v)), "causality": kind.value, "orientation": orient.value}
        rep.add("evaluated", True)
    elif args.action == "cut":
        if not args.a or not args.b:
            raise UsageError("--a and --b are required")
        da, a = _one_region(args.a)
        db, b = _one_region(args.b)
        rep.inputs = io.digest(db, da)
        cut = region_cutting(b, a)
        out = io.Document("region_set", [cut])
        _write(args, out)
        rep.add("cut-within-b", region_subset(cut, b))
        rep.add("cut-precedes-a", not cut or region_precedes(cut, a))
        rep.output = {"blocks_uv": io.block_strings(cut)}
    elif args.action == "separate":
        with open(_require(args.infile)) as fh:
            data = _json_arg(fh.read())
        try:
            pts = [io.decode_point(c) for c in data["points"]]
            x = io.decode_point(data["x"])
        except (KeyError, TypeError) as exc:
            raise io.MalformedDocument(f"separate needs 'points' and 'x': {exc}") from exc
        rep.inputs = json.dumps(data, sort_keys=True)
        region = separate(pts, x)
        out = io.Document("region_set", [region])
        _write(args, out)
        rep.add("covers-points", all(region.contains(p) for p in pts))
        rep.add("excludes-x", not region.contains(x))
        rep.output = {"blocks_uv": io.block_strings(region)}
    elif args.action == "refine":
        window = _window(args.window)
        rep.inputs = f"window={args.window},level={args.level},seed={args.seed},cases={args.cases}"
        res = refine_and_enumerate(window, args.level)
        rep.add("families-nonempty-intersection", all(w for w in res.witnesses.values()),
                {"site": len(res.site), "families": len(res.families)})
        if args.cases > 0:
            rng = random.Random(args.seed)
            levels = [refine_and_enumerate(window, k, enumerate_families=False).site for k in range(args.level + 1)]
            bad = []
            for _ in range(args.cases):
                p = random_dyadic_point(rng, window, args.level)
                q = random_dyadic_point(rng, window, args.level)
                while q == p:
                    q = random_dyadic_point(rng, window, args.level)
                if all(point_family(s, p) == point_family(s, q) for s in levels):
                    bad.append([repr(p), repr(q)])
            rep.add("points-separated", not bad, bad[:5])
    elif args.action == "validate-site":
        if args.infile:
            doc = _load(args.infile, "region_set")
            rep.inputs = io.digest(doc)
            samples = [doc.value]
        else:
            rng = random.Random(args.seed)
            rep.inputs = f"seed={args.seed},cases={args.cases}"
            samples = [random_diamond_sample(rng) for _ in range(args.cases)]
        failures = 0
        for i, s in enumerate(samples):
            violations = validate_region_site(s, depth=args.depth)
            if violations:
                failures += 1
                rep.add(f"sample-{i}", False, _violations(violations)[:5])
        rep.add("region-site-valid", failures == 0, f"{len(samples) - failures}/{len(samples)}")


def _require(path):
    if not path:
        raise UsageError("--in is required")
    return path


def cmd_export(args, rep):
    doc = _load(args.infile)
    rep.inputs = io.digest(doc)
    text = io.export_dot(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    rep.add("dot", True)
    rep.output = text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="causaltop", description="Causal sites, frameworks and co-compact topology.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--in", dest="infile")
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cases", type=int, default=500)
        p.add_argument("--level", type=int, default=3)
        p.add_argument("--depth", type=int, default=2)

    fw = groups.add_parser("framework")
    fw.add_argument("action", choices=["dual", "quotient", "t0", "dd-iso"])
    fw.add_argument("--partition", help="JSON array of classes")
    common(fw)
    fw.set_defaults(func=cmd_framework)

    tp = groups.add_parser("topo")
    tp.add_argument("action", choices=["generate", "dual", "iterate", "t1", "superconnected", "restrict"])
    tp.add_argument("--subset", help="JSON array of points")
    tp.add_argument("--steps", type=int, default=8)
    common(tp)
    tp.set_defaults(func=cmd_topo)

    st = groups.add_parser("site")
    st.add_argument("action", choices=["validate", "topology", "cut"])
    st.add_argument("--a")
    st.add_argument("--b")
    st.add_argument("--strict", action="store_true")
    common(st)
    st.set_defaults(func=cmd_site)

    mk = groups.add_parser("mink")
    mk.add_argument("action", choices=["relate", "classify", "cut", "separate", "refine", "validate-site"])
    mk.add_argument("--p")
    mk.add_argument("--q")
    mk.add_argument("--v")
    mk.add_argument("--a")
    mk.add_argument("--b")
    mk.add_argument("--window", default="0,1,0,1")
    common(mk)
    mk.set_defaults(func=cmd_mink)

    ex = groups.add_parser("export")
    ex.add_argument("action", choices=["dot"])
    common(ex)
    ex.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = Report(command=" ".join([args.group, args.action]))
    try:
        args.func(args, rep)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, OSError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    print(rep.render())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
