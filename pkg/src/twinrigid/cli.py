"""Command-line front end.

Usage: ``twinrigid VERB QUIVER.json [options]``. Output goes to stdout as JSON
unless ``--format`` says otherwise; diagnostics go to stderr.

Exit codes: 0 success, 1 usage error, 2 quiver is not a Dynkin orientation,
3 an internal verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable, Sequence

from .catalog import Catalog
from .errors import TwinRigidError, UsageError, VerificationError
from .linalg import F2, QQ, Field
from .oracle import Oracle, check_against
from .quiver import load_quiver
from .representation import euler_form, hom_dim
from .subcat import Classified, classification_json, classify_ie
from .twin_rigid import (
    MutationQuiver,
    TwinRigidPair,
    enumerate_rigid,
    enumerate_twin_rigid,
    is_rigid,
    is_twin_rigid,
    mutation_quiver,
    mutation_step,
    tilting_hasse,
    twin_rigid_coideals,
)

log = logging.getLogger("twinrigid")

VERBS = ("indec", "hom-table", "rigid", "tilting", "twin-rigid", "mutate", "mutation-quiver", "classify-ie", "oracle", "check")
DOT_VERBS = ("tilting", "mutation-quiver")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twinrigid", description="IE-closed subcategories of Dynkin path algebras via twin rigid modules.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("quiver", help='quiver JSON file: {"vertices": n, "arrows": [[s, t], ...]}')
    p.add_argument("--format", choices=("json", "table", "dot"), default="json")
    p.add_argument("--field", default=None,
                   help="q, f2 or f<p>: field for hom-table and the oracle; elsewhere the field of the startup Hom cross-check")
    p.add_argument("--pivot", help="rigid module P as dimension vectors joined by '+'")
    p.add_argument("--coideal", help="module I of the pair (P, I)")
    p.add_argument("--at", help="summand of I to mutate at")
    p.add_argument("--check", action="store_true", help="oracle: also diff against classify-ie")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-subset-bits", type=int, default=24)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


# rendering ------------------------------------------------------------------


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _grid(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max([len(h)] + [len(r[k]) for r in rows]) for k, h in enumerate(header)]
    fmt = lambda r: "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()  # noqa: E731
    lines = [fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]
    return "\n".join(lines) + "\n"


def _plus(c: Catalog, ids) -> str:
    return c.label(ids) or "0"


def render_table(c: Catalog, rows: list[Classified]) -> str:
    """One line per IE-closed subcategory: members, Ext-progenerator, Ext-injective cogenerator."""
    body = [[" ".join(c.label_list(e.subcat.members)) or "0", _plus(c, e.pair.p), _plus(c, e.pair.i)] for e in rows]
    return _grid(["C", "P(C)", "I(C)"], body)


def _dot_quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def render_dot(c: Catalog, mq: MutationQuiver, name: str) -> str:
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    for k, v in enumerate(mq.vertices):
        lines.append(f"  n{k} [label={_dot_quote(_plus(c, v.i))}];")
    for a in mq.arrows:
        lab = f"{c.labels[a.x]} -> {c.labels[a.y]}"
        lines.append(f"  n{a.source} -> n{a.target} [label={_dot_quote(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def mutation_quiver_json(c: Catalog, mq: MutationQuiver) -> dict:
    return {
        "pivot": c.label_list(mq.pivot),
        "vertices": [{"id": k, "coideal": c.label_list(v.i)} for k, v in enumerate(mq.vertices)],
        "arrows": [
            {
                "source": a.source,
                "target": a.target,
                "at": c.labels[a.x],
                "new": c.labels[a.y],
                "middle": [c.labels[m] for m in a.middle],
            }
            for a in mq.arrows
        ],
    }


# verbs ----------------------------------------------------------------------


def _need(args, name: str) -> str:
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"{args.verb} needs --{name}")
    return val


def _pivot(c: Catalog, args, default=None):
    if args.pivot is None:
        if default is None:
            raise UsageError(f"{args.verb} needs --pivot")
        return default
    p = c.parse_ids(args.pivot)
    if not is_rigid(c, p):
        raise UsageError(f"pivot {c.label(p)} is not rigid")
    return p


def _verb_indec(c: Catalog, args) -> str:
    if args.format == "table":
        data = c.to_json()["indecomposables"]
        rows = [[str(d["id"]), d["dim_vector"], str(d["projective_at"] or "-"), str(d["injective_at"] or "-")] for d in data]
        return _grid(["id", "dim", "P(v)", "I(v)"], rows)
    return _dump(c.to_json())


def _verb_hom_table(c: Catalog, args) -> str:
    field = Field.parse(args.field) if args.field else QQ
    reps = c.reps(field)
    hom = [[hom_dim(a, b) for b in reps] for a in reps]
    ext = [[hom[i][j] - euler_form(c.quiver, c.dims[i], c.dims[j]) for j in c.ids] for i in c.ids]
    if args.format == "table":
        out = "Hom\n" + _grid([""] + list(c.labels), [[c.labels[i]] + [str(x) for x in hom[i]] for i in c.ids])
        out += "\nExt1\n" + _grid([""] + list(c.labels), [[c.labels[i]] + [str(x) for x in ext[i]] for i in c.ids])
        return out
    return _dump({"field": field.name, "labels": list(c.labels), "hom": hom, "ext": ext})


def _verb_rigid(c: Catalog, args) -> str:
    sets = enumerate_rigid(c)
    if args.format == "table":
        return "".join(_plus(c, s) + "\n" for s in sets)
    return _dump({"count": len(sets), "rigid": [c.label_list(s) for s in sets]})


def _verb_tilting(c: Catalog, args) -> str:
    mq = tilting_hasse(c)
    if args.format == "dot":
        return render_dot(c, mq, "tilting")
    order = sorted(range(len(mq.vertices)), key=lambda k: mq.vertices[k].key())
    if args.format == "table":
        return "".join(_plus(c, mq.vertices[k].i) + "\n" for k in order)
    data = mutation_quiver_json(c, mq)
    return _dump({"count": len(mq.vertices), "tilting": [c.label_list(mq.vertices[k].i) for k in order], "hasse": data})


def _verb_twin_rigid(c: Catalog, args) -> str:
    if args.pivot is not None:
        p = _pivot(c, args)
        pairs = [TwinRigidPair(p, i) for i in twin_rigid_coideals(c, p)]
    else:
        pairs = enumerate_twin_rigid(c)
    if args.format == "table":
        return _grid(["P", "I"], [[_plus(c, t.p), _plus(c, t.i)] for t in pairs])
    return _dump({"count": len(pairs), "pairs": [{"p": c.label_list(t.p), "i": c.label_list(t.i)} for t in pairs]})


def _verb_mutate(c: Catalog, args) -> str:
    p = _pivot(c, args)
    i = c.parse_ids(_need(args, "coideal"))
    at = c.parse_ids(_need(args, "at"))
    if len(at) != 1:
        raise UsageError("--at takes one indecomposable")
    if not is_twin_rigid(c, p, i):
        raise UsageError(f"({_plus(c, p)}, {_plus(c, i)}) is not twin rigid")
    (x,) = at
    new, y, middle = mutation_step(c, TwinRigidPair(p, i), x)
    out = {
        "pivot": c.label_list(p),
        "coideal": c.label_list(i),
        "at": c.labels[x],
        "result": c.label_list(new.i),
        "exchange": {"x": c.labels[x], "middle": [c.labels[m] for m in middle], "y": c.labels[y]},
    }
    if args.format == "table":
        mid = "+".join(c.labels[m] for m in middle) or "0"
        return f"{_plus(c, new.i)}\n0 -> {c.labels[x]} -> {mid} -> {c.labels[y]} -> 0\n"
    return _dump(out)


def _verb_mutation_quiver(c: Catalog, args) -> str:
    mq = mutation_quiver(c, _pivot(c, args))
    if args.format == "dot":
        return render_dot(c, mq, "K_P")
    if args.format == "table":
        rows = [[str(a.source), str(a.target), c.labels[a.x], c.labels[a.y], "+".join(c.labels[m] for m in a.middle) or "0"] for a in mq.arrows]
        verts = "".join(f"{k}: {_plus(c, v.i)}\n" for k, v in enumerate(mq.vertices))
        return verts + "\n" + _grid(["from", "to", "at", "new", "middle"], rows)
    return _dump(mutation_quiver_json(c, mq))


def _verb_classify_ie(c: Catalog, args) -> str:
    rows = classify_ie(c)
    if args.format == "table":
        return render_table(c, rows)
    return _dump(classification_json(c, rows))


def _oracle(c: Catalog, args) -> Oracle:
    field = Field.parse(args.field) if args.field else F2
    if field.is_rational:
        raise UsageError("the oracle needs a finite field (f2 or f<p>)")
    return Oracle(c, field, max_subset_bits=args.max_subset_bits)


def _diff(c: Catalog, o: Oracle, threads: int) -> dict:
    d = check_against(o.enumerate_ie(threads), [e.subcat for e in classify_ie(c)])
    return {
        "identical": not d["only_oracle"] and not d["only_classified"],
        "only_oracle": [c.label_list(s.members) for s in d["only_oracle"]],
        "only_classified": [c.label_list(s.members) for s in d["only_classified"]],
    }


def _verb_oracle(c: Catalog, args) -> tuple[str, int]:
    o = _oracle(c, args)
    rep = o.report(args.threads)
    code = 0
    if args.check:
        rep["check"] = _diff(c, o, args.threads)
        code = 0 if rep["check"]["identical"] else VerificationError.exit_code
    if args.format == "table":
        lines = "".join(f"{k}: {v}\n" for k, v in rep["counts"].items())
        if args.check:
            lines += f"identical: {str(rep['check']['identical']).lower()}\n"
        return lines, code
    return _dump(rep), code


def _verb_check(c: Catalog, args) -> tuple[str, int]:
    o = _oracle(c, args)
    d = _diff(c, o, args.threads)
    out = {"quiver": c.quiver.to_json(), "classified": len(classify_ie(c)), "brute_force": len(o.enumerate_ie(args.threads))}
    out.update(d)
    code = 0 if d["identical"] else VerificationError.exit_code
    if args.format == "table":
        return f"classified {out['classified']}  brute force {out['brute_force']}  identical {str(d['identical']).lower()}\n", code
    return _dump(out), code


HANDLERS: dict[str, Callable] = {
    "indec": _verb_indec,
    "hom-table": _verb_hom_table,
    "rigid": _verb_rigid,
    "tilting": _verb_tilting,
    "twin-rigid": _verb_twin_rigid,
    "mutate": _verb_mutate,
    "mutation-quiver": _verb_mutation_quiver,
    "classify-ie": _verb_classify_ie,
    "oracle": _verb_oracle,
    "check": _verb_check,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Execute one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=err,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.format == "dot" and args.verb not in DOT_VERBS:
            raise UsageError(f"--format=dot is only available for {', '.join(DOT_VERBS)}")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        q = load_quiver(args.quiver)
        verify = F2
        if args.field and args.verb not in ("hom-table", "oracle", "check"):
            verify = Field.parse(args.field)
            verify = None if verify.is_rational else verify
        c = Catalog(q, verify_field=verify)
        result = HANDLERS[args.verb](c, args)
        text, code = result if isinstance(result, tuple) else (result, 0)
        out.write(text)
        if code:
            print(f"error: {args.verb}: classification and brute force disagree", file=err)
        return code
    except TwinRigidError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
