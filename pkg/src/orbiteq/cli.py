"""Command line front-end.

    orbiteq verify KIND FILE... [--depth 6] [--degree-bound 3] [--period-bound 4] [--out REPORT]
    orbiteq convert KIND FILE... --out DOC [--no-preverify]
    orbiteq inspect FILE

Exit codes: 0 verified, 1 refuted, 2 invalid input, 3 undetermined.
"""

from __future__ import annotations

import argparse
import sys

from orbiteq import parallel
from orbiteq.action import essentially_free, verify_action_axioms
from orbiteq.equivalence.coe import (
    coe_from_groupoid_iso,
    coe_to_groupoid_iso,
    csoe_to_coe,
    verify_coe,
)
from orbiteq.equivalence.csoe import check_derived_identities, verify_csoe
from orbiteq.equivalence.group import group_to_semigroup, semigroup_to_group, verify_group_cocycle
from orbiteq.equivalence.shift_coe import from_semigroup, to_semigroup, verify_shift_coe
from orbiteq.errors import InvalidInput, Refuted, Undetermined
from orbiteq.groupoid import sample_elements, verify_axioms
from orbiteq.io import dumps, envelope, export, kind_of, load_paths, read_json, write_json
from orbiteq.report import EXIT_CODES, EXIT_INVALID, REFUTED, UNDETERMINED, Report

VERIFY_KINDS = ("action", "csoe", "coe", "shift_coe", "freeness", "groupoid_axioms", "group_cocycle")
CONVERT_KINDS = ("csoe_to_coe", "shift_to_semigroup", "semigroup_to_shift", "coe_to_groupoid_iso",
                 "groupoid_iso_to_coe", "semigroup_to_group", "group_to_semigroup")


def _config(args) -> dict:
    # parallelism is left out so reports do not depend on it
    return {"depth": args.depth, "degree_bound": args.degree_bound, "period_bound": args.period_bound}


def _elements(ws, args):
    if ws.names("groupoid_elements"):
        return ws.pick("groupoid_elements", args.name)[1]
    _, act = ws.pick("action", args.name)
    return act, sample_elements(act, 20, min(args.degree_bound, 3), 0)


def run_verify(kind: str, ws, args) -> tuple[str, Report]:
    """Name of the checked document and its report."""
    d, bound, pb = args.depth, args.degree_bound, args.period_bound
    if kind == "action":
        name, act = ws.pick("action", args.name)
        return name, verify_action_axioms(act, d)
    if kind == "freeness":
        name, act = ws.pick("action", args.name)
        return name, essentially_free(act, bound, d, pb)
    if kind == "groupoid_axioms":
        act, elements = _elements(ws, args)
        return act.name, verify_axioms(act, elements)
    if kind == "csoe":
        name, data = ws.pick("csoe", args.name)
        rep = verify_csoe(data, d)
        rep.extend(check_derived_identities(data, d), "identities.")
        return name, rep
    if kind == "coe":
        name, data = ws.pick("coe", args.name)
        return name, verify_coe(data, d, pb)
    if kind == "shift_coe":
        name, data = ws.pick("shift_coe", args.name)
        return name, verify_shift_coe(data, d)
    if kind == "group_cocycle":
        name, data = ws.pick("group_cocycle", args.name)
        return name, verify_group_cocycle(data, d)
    raise InvalidInput(f"unknown verify kind {kind!r}")


def _iso_report(iso, args) -> Report:
    """An iso is checked by reading pair tables back off it and verifying those."""
    coe = coe_from_groupoid_iso(iso, period_bound=args.period_bound, check=False)
    rep = Report("groupoid_iso")
    rep.extend(verify_coe(coe, args.depth, args.period_bound), "recovered.")
    return rep


# source document kind, converter, verifier of the result
def _convert_table():
    return {
        "csoe_to_coe": ("csoe", lambda x, a: csoe_to_coe(x, period_bound=a.period_bound),
                        lambda y, a: verify_coe(y, a.depth, a.period_bound)),
        "shift_to_semigroup": ("shift_coe",
                               lambda x, a: to_semigroup(x, a.degree_bound, check=False, period_bound=a.period_bound),
                               lambda y, a: verify_coe(y, a.depth, a.period_bound)),
        "semigroup_to_shift": ("coe", lambda x, a: from_semigroup(x, check=False),
                               lambda y, a: verify_shift_coe(y, a.depth)),
        "coe_to_groupoid_iso": ("coe", lambda x, a: coe_to_groupoid_iso(x, a.period_bound), _iso_report),
        "groupoid_iso_to_coe": ("groupoid_iso",
                                lambda x, a: coe_from_groupoid_iso(x, period_bound=a.period_bound, check=False),
                                lambda y, a: verify_coe(y, a.depth, a.period_bound)),
        "semigroup_to_group": ("coe", lambda x, a: semigroup_to_group(x, min(a.depth, 4), check=False)[1],
                               lambda y, a: verify_group_cocycle(y, a.depth)),
        "group_to_semigroup": ("group_cocycle", lambda x, a: group_to_semigroup(x, period_bound=a.period_bound),
                               lambda y, a: verify_coe(y, a.depth, a.period_bound)),
    }


def _preverify(kind: str, name: str, data, ws, args) -> Report:
    if kind == "groupoid_iso":
        return _iso_report(data, args)
    ns = argparse.Namespace(**{**vars(args), "name": name})
    return run_verify(kind, ws, ns)[1]


def run_convert(kind: str, ws, args) -> tuple[dict, Report]:
    table = _convert_table()
    if kind not in table:
        raise InvalidInput(f"unknown convert kind {kind!r}")
    src_kind, convert, verify = table[kind]
    name, data = ws.pick(src_kind, args.name)
    reports = {}
    if not args.no_preverify:
        pre = _preverify(src_kind, name, data, ws, args)
        reports["source"] = pre.to_dict()
        if not pre.ok:
            return {}, pre
    result = convert(data, args)
    if hasattr(result, "name"):
        result.name = args.output_name or name
    post = verify(result, args)
    reports["target"] = post.to_dict()
    doc = export(result, args.output_name or name)
    doc["report"] = envelope("report", {"name": f"{kind}:{name}", "command": f"convert {kind}",
                                        "config": _config(args), "reports": reports})
    return doc, post


def _report_doc(command: str, name: str, rep: Report, args) -> dict:
    body = rep.to_dict()
    body["config"] = {**body["config"], **_config(args)}
    return envelope("report", {"name": name, "command": command, **body})


def _print_report(rep: Report, out=sys.stdout) -> None:
    print(rep.summary(), file=out)
    for note in rep.notes:
        print(f"  note: {note}", file=out)


def cmd_verify(args) -> int:
    ws = load_paths(args.files)
    ws.resolve_all()
    name, rep = run_verify(args.kind, ws, args)
    _print_report(rep)
    if args.out:
        write_json(args.out, _report_doc(f"verify {args.kind}", name, rep, args))
    return rep.exit_code()


def cmd_convert(args) -> int:
    ws = load_paths(args.files)
    ws.resolve_all()
    doc, rep = run_convert(args.kind, ws, args)
    _print_report(rep)
    if not doc:
        print("source document failed verification; nothing written", file=sys.stderr)
        return rep.exit_code()
    if args.out:
        write_json(args.out, doc)
    else:
        sys.stdout.write(dumps(doc))
    return rep.exit_code()


def cmd_inspect(args) -> int:
    doc = read_json(args.file)
    kind = kind_of(doc)
    if kind == "bundle":
        for sub in doc["payload"].get("documents", []):
            print(f"{kind_of(sub):<18} {sub['payload'].get('name', '')}")
    else:
        print(f"{kind:<18} {doc['payload'].get('name', '')}")
    if "report" in doc:
        print(f"report: {doc['report']['payload'].get('name', '')}")
        for which, r in doc["report"]["payload"].get("reports", {}).items():
            print(f"  {which}: {r['kind']} {r['status']}")
    if not args.brief:
        sys.stdout.write(dumps(doc))
    return 0


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _threads(s: str):
    return s if s == "auto" else _positive(s)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbiteq", description="verify and convert orbit equivalences of SFT actions")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("files", nargs="+")
        p.add_argument("--name", help="document to use when several of the right kind are loaded")
        p.add_argument("--depth", type=_positive, default=6)
        p.add_argument("--degree-bound", type=_positive, default=3)
        p.add_argument("--period-bound", type=_positive, default=4)
        p.add_argument("--parallelism", type=_threads, default=None,
                       help="worker threads or 'auto' (ORBITEQ_THREADS overrides)")

    v = sub.add_parser("verify", help="run a verifier and report")
    v.add_argument("kind", choices=VERIFY_KINDS)
    common(v)
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("convert", help="convert between equivalence forms")
    c.add_argument("kind", choices=CONVERT_KINDS)
    common(c)
    c.add_argument("--out", help="write the converted document here (default: standard output)")
    c.add_argument("--output-name", help="name of the converted document (default: the source name)")
    c.add_argument("--no-preverify", action="store_true", help="skip verifying the source document")
    c.set_defaults(func=cmd_convert)

    i = sub.add_parser("inspect", help="pretty-print a document")
    i.add_argument("file")
    i.add_argument("--brief", action="store_true", help="list the documents only")
    i.set_defaults(func=cmd_inspect)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    parallel.set_threads(getattr(args, "parallelism", None))
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Undetermined as exc:
        print(f"undetermined: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CODES[UNDETERMINED]
    except Refuted as exc:
        wit = getattr(exc, "witness", None)
        print(f"refuted: {type(exc).__name__}: {exc}" + (f" witness={wit}" if wit is not None else ""),
              file=sys.stderr)
        return EXIT_CODES[REFUTED]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        parallel.set_threads(None)


if __name__ == "__main__":
    raise SystemExit(main())
