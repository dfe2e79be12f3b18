"""
Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bernstein, tadic, weyl
from .coeff import parse_mode, parse_rat
from .errors import HeckeError
from .hecke import HeckeConfig, relation_check
from .iso import verify_isomorphism
from .parser import evaluate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _config(args) -> HeckeConfig:
    return HeckeConfig.from_mode(args.rank, parse_mode(args.param))


# -- algebra ------------------------------------------------------------------

def cmd_algebra_eval(args) -> int:
    config = _config(args)
    e = evaluate(args.expr, config)
    if args.json:
        print(_dump({"config": str(config), "expr": args.expr, "result": str(e), "terms": e.to_json()}))
    else:
        print(e)
    return EXIT_OK


def cmd_relcheck(args) -> int:
    if args.rank > weyl.MAX_RANK:
        raise InputError(f"relation check supports rank <= {weyl.MAX_RANK}")
    report = relation_check(_config(args))
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(f"relation check for {report.config}")
        for res in report.results:
            status = "pass" if res.passed else "FAIL"
            print(f"  {res.name}  {res.statement:<40} {len(res.instances):>3} instance(s)  {status}")
        for note in report.notes:
            print(f"  note: {note}")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_iso(args) -> int:
    weyl.check_guard(2, args.max_length)
    report = verify_isomorphism(parse_mode(args.param), args.max_length)
    if args.json:
        print(_dump(report.to_json()))
    else:
        print(report.to_json()["header"])
        print(f"param {report.param}, max length {report.max_len}, ball size {report.ball_size}")
        print(f"checked {report.checked_pairs} pairs, {len(report.failures)} failure(s)")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- bernstein ----------------------------------------------------------------

def _descriptors(path: str, allow: bool) -> list:
    data = _load_json(path)
    items = data if isinstance(data, list) else [data]
    return [bernstein.descriptor_from_json(d, allow) for d in items]


def _emit_many(reports: list, as_json: bool, render) -> None:
    if as_json:
        print(_dump(reports[0] if len(reports) == 1 else reports))
    else:
        for k, rep in enumerate(reports):
            if k:
                print()
            render(rep)


def _render_decompose(rep: dict) -> None:
    if rep["trichotomy"]:
        print(f"trichotomy:   {rep['trichotomy']}")
    print(f"tensor:       {rep['tensor']['algebra']}")
    pres = rep["presentation"]
    extra = f"  ({pres['note']})" if "note" in pres else ""
    print(f"presentation: {pres['kind']}  {pres['algebra']}{extra}")
    print(f"morita tag:   {{{', '.join(rep['morita_tag'])}}}")
    print(f"multiplicity: {rep['multiplicity']}")


def cmd_bernstein_decompose(args) -> int:
    reports = [bernstein.decompose_report(d) for d in _descriptors(args.file, args.allow_nonintegral_f)]
    _emit_many(reports, args.json, _render_decompose)
    return EXIT_OK


def cmd_bernstein_fingerprint(args) -> int:
    reports = [{"morita_tag": bernstein.morita_tag(d).to_json(), "multiplicity": bernstein.MULTIPLICITY}
               for d in _descriptors(args.file, args.allow_nonintegral_f)]
    _emit_many(reports, args.json,
               lambda r: print(f"{{{', '.join(r['morita_tag'])}}}  multiplicity {r['multiplicity']}"))
    return EXIT_OK


def _algebra_arg(text: str) -> bernstein.DivisionAlgebra:
    try:
        q, d = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected q,d (e.g. 3,2), got {text!r}") from exc
    try:
        return bernstein.DivisionAlgebra(q, d)
    except HeckeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


SHAPES_SCHEMA = {
    "type": "object",
    "required": ["shapes"],
    "properties": {"shapes": {"type": "array", "items": {
        "type": "object",
        "required": ["name", "levi", "labels", "invariants"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string"},
            "levi": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}},
            "labels": {"type": "array", "minItems": 1, "items": {"type": "string"}},
            "invariants": {"type": "array", "items": {
                "type": "object", "required": ["label", "torsion", "reducibility"],
                "additionalProperties": False,
                "properties": {"label": {"type": "string"},
                               "torsion": {"type": "integer", "minimum": 1},
                               "reducibility": {"type": ["string", "integer"]}}}},
        }}}},
}


def _shapes_from_file(path: str) -> list[bernstein.ClassShape]:
    import jsonschema

    data = _load_json(path)
    try:
        jsonschema.validate(data, SHAPES_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InputError(f"{path}: schema violation: {exc.message}") from exc
    out = []
    for s in data["shapes"]:
        if len(s["levi"]) != len(s["labels"]):
            raise InputError(f"shape {s['name']!r}: levi and labels differ in length")
        inv = tuple((i["label"], i["torsion"], parse_rat(str(i["reducibility"]))) for i in s["invariants"])
        missing = set(s["labels"]) - {label for label, _, _ in inv}
        if missing:
            raise InputError(f"shape {s['name']!r}: no invariants for {sorted(missing)}")
        out.append(bernstein.ClassShape(s["name"], tuple(s["levi"]), tuple(s["labels"]), inv))
    return out


def cmd_bernstein_compare(args) -> int:
    shapes = []
    if args.shapes:
        shapes.extend(_shapes_from_file(args.shapes))
    if args.grid is not None or not args.shapes:
        shapes.extend(bernstein.gl2_shape_grid(args.grid or [1, 2, 3]))
    if args.cuspidal_n:
        shapes.extend(bernstein.cuspidal_shapes(args.cuspidal_n, args.grid or [1, 2, 3]))
    report = bernstein.census_compare(shapes, args.algebra_a, args.algebra_b, args.allow_nonintegral_f)
    for name in report.unsupported:
        print(f"warning: UnsupportedShape: {name} (non-cuspidal, N >= 3) excluded from comparison",
              file=sys.stderr)
    if args.json:
        print(_dump(report.to_json()))
    else:
        a, b = args.algebra_a, args.algebra_b
        print(f"compare (q={a.q}, d={a.d}) vs (q={b.q}, d={b.d}): {len(report.rows)} shape(s)")
        for row in report.rows:
            mark = "=" if row["equal"] else "!="
            print(f"  {row['shape']:<28} {row['tag_a']} {mark} {row['tag_b']}")
        for name in report.unsupported:
            print(f"  {name:<28} UnsupportedShape")
        print(f"multiplicity: {bernstein.MULTIPLICITY}")
        print("verdict: " + ("PASS" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- tadic --------------------------------------------------------------------

def cmd_tadic_classify(args) -> int:
    rep, constituent = tadic.rep_from_json(_load_json(args.file))
    out = tadic.classify_report(rep, args.constituent or constituent)
    if args.json:
        print(_dump(out))
    else:
        print(f"reducible: {str(out['reducible']).lower()}")
        print(f"kind: {out['kind']}")
        if "constituents" in out:
            c = out["constituents"]
            mid = c["St"]["sigma0"]
            print(f"constituents: St(sigma0), Sp(sigma0) with sigma0 = {mid['label']} "
                  f"twist r={mid['r']} theta={mid['theta']} (branch {c['branch']})")
    return EXIT_OK


# -- oracle -------------------------------------------------------------------

def cmd_oracle(args) -> int:
    from . import _kernels

    ball = weyl.bfs_ball(args.rank, args.max_length)
    order = sorted(ball)
    formulas = _kernels.lengths(order).tolist()
    rows = []
    for w, formula in zip(order, formulas):
        rows.append({"window": list(w), "bfs": ball[w], "formula": formula, "agree": formula == ball[w]})
    ok = all(r["agree"] for r in rows)
    if args.json:
        print(_dump({"rank": args.rank, "max_len": args.max_length, "count": len(rows),
                     "all_agree": ok, "rows": rows}))
    else:
        for r in rows:
            print(f"{str(tuple(r['window'])):<24} {r['bfs']:>3} {r['formula']:>3}  {'ok' if r['agree'] else 'MISMATCH'}")
        print(f"{len(rows)} element(s); " + ("all agree" if ok else "DISAGREEMENT"))
    return EXIT_OK if ok else EXIT_FAIL


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affinehecke", description="Exact affine Hecke algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, rank=True, param=True):
        if rank:
            sp.add_argument("-r", "--rank", type=int, required=True)
        if param:
            sp.add_argument("-p", "--param", default="v", help="'v' (symbolic) or a nonzero rational")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    alg = sub.add_parser("algebra", help="element arithmetic and relation checks")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    ev = alg_sub.add_parser("eval", help="evaluate an expression to T-basis normal form")
    common(ev)
    ev.add_argument("-e", "--expr", required=True)
    ev.set_defaults(func=cmd_algebra_eval)
    rc = alg_sub.add_parser("relcheck", help="check the defining relations")
    common(rc)
    rc.set_defaults(func=cmd_relcheck)

    iso = sub.add_parser("iso", help="verify the rank-two isomorphism H(2,z) ~ H(2,1)")
    common(iso, rank=False)
    iso.add_argument("-L", "--max-length", type=int, default=4)
    iso.set_defaults(func=cmd_iso)

    bern = sub.add_parser("bernstein", help="descriptor-level Bernstein decomposition")
    bern_sub = bern.add_subparsers(dest="action", required=True)
    for name, func in (("decompose", cmd_bernstein_decompose), ("fingerprint", cmd_bernstein_fingerprint)):
        sp = bern_sub.add_parser(name)
        sp.add_argument("file", help="JSON descriptor (object or list of objects)")
        sp.add_argument("--allow-nonintegral-f", action="store_true")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=func)
    cmp_ = bern_sub.add_parser("compare", help="compare Morita tags across two division algebras")
    cmp_.add_argument("--algebra-a", type=_algebra_arg, required=True, metavar="Q,D")
    cmp_.add_argument("--algebra-b", type=_algebra_arg, required=True, metavar="Q,D")
    cmp_.add_argument("--shapes", help="JSON file of class shapes")
    cmp_.add_argument("--grid", type=_int_list, help="torsion/reducibility values for the GL2 grid")
    cmp_.add_argument("--cuspidal-n", type=_int_list, help="also compare cuspidal shapes for these N")
    cmp_.add_argument("--allow-nonintegral-f", action="store_true")
    cmp_.add_argument("--json", action="store_true")
    cmp_.set_defaults(func=cmd_bernstein_compare)

    tad = sub.add_parser("tadic", help="GL2(D) reducibility and kinds")
    tad_sub = tad.add_subparsers(dest="action", required=True)
    cl = tad_sub.add_parser("classify")
    cl.add_argument("file")
    cl.add_argument("--constituent", choices=["quotient", "sub"])
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_tadic_classify)

    orc = sub.add_parser("oracle", help="brute-force cross-checks")
    orc_sub = orc.add_subparsers(dest="action", required=True)
    bfs = orc_sub.add_parser("weyl-bfs", help="BFS word length against the closed formula")
    common(bfs, param=False)
    bfs.add_argument("-L", "--max-length", type=int, default=4)
    bfs.set_defaults(func=cmd_oracle)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, HeckeError, ValueError, SyntaxError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
