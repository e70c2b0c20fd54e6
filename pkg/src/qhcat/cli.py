"""Command line: ``qhcat {validate,analyze,certify,standard} INPUT``.

Exit codes: 0 pass, 1 mathematical failure (with witness), 2 usage or
parse error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import heredity, modrep
from .category import CategoryError, is_split, validate
from .cocycle import validate_cocycle
from .generators import ParseError, resolve
from .green import GreenError, j_decompose, local_data

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qhcat", description="Quasi-heredity of twisted category algebras, checked exactly.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("validate", "check category and cocycle axioms"),
                        ("analyze", "J-classes, order, maximal subgroups, ε sizes"),
                        ("certify", "heredity chain certificate"),
                        ("standard", "standard, simple and projective modules")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="category file or builtin:<family>[:<n>][:<p>/<q>]")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--seed", type=int, default=modrep.DEFAULT_SEED, help="seed for randomized searches")
        sp.add_argument("--max-dim", type=int, default=None, help="refuse inputs with more morphisms")
        sp.add_argument("--stage", choices=heredity.STAGES, default=None, help="stop after this stage")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    return p


def _max_dim(arg) -> int:
    if arg is not None:
        return arg
    try:
        return int(os.environ.get("QHCAT_MAX_DIM", "512"))
    except ValueError:
        raise _Usage("QHCAT_MAX_DIM must be an integer") from None


def _frac(x) -> str:
    return str(Fraction(x))


def _analyze(c) -> dict:
    jdec = j_decompose(c)
    local = local_data(c, jdec)
    layers = []
    for i, (cl, data) in enumerate(zip(jdec.classes, local), start=1):
        layers.append({
            "layer": i,
            "size": len(cl),
            "morphisms": [c.name(s) for s in cl],
            "representative": c.name(data.rep),
            "idempotents": [c.name(s) for s in data.idempotent_class],
            "gamma_order": len(data.gamma),
            "gamma": [c.name(s) for s in data.gamma],
            "corner_j_size": len(data.jset),
            "epsilon": [c.name(s) for s in data.epsilon],
            "epsilon_size": len(data.epsilon),
        })
    return {"classes": len(jdec.classes), "gamma_orders": [l["gamma_order"] for l in layers],
            "epsilon_sizes": [l["epsilon_size"] for l in layers],
            "hasse": [[a + 1, b + 1] for a, b in jdec.hasse()], "layers": layers}


def _standard(cert, seed) -> dict:
    fam = cert.family
    alg, jdec, local = cert.algebra, cert.jdec, cert.local
    covers = {lab: modrep.projective_cover(alg, jdec, local, lab, fam, seed) for lab in fam.labels}
    axioms = modrep.verify_standard_axioms(alg, jdec, fam, covers)
    audit = modrep.cover_audit(fam, covers)
    lemma = modrep.check_lemma44(alg, jdec, local, fam, cert.chain)
    weighted_ok = audit["sum_weighted"] == alg.dim
    unitri = all(
        (v == 1) if a == b else (v == 0 or fam.less(b, a))
        for ai, a in enumerate(fam.labels) for bi, b in enumerate(fam.labels)
        for v in [fam.decomposition_matrix[ai][bi]])
    return {
        "lambda": [list(l) for l in fam.labels],
        "delta_dims": [fam.delta[l].dim for l in fam.labels],
        "simple_dims": [fam.simple[l].dim for l in fam.labels],
        "simple_end_dims": [fam.end_dims[l] for l in fam.labels],
        "projective_dims": [covers[l].dim for l in fam.labels],
        "n": [fam.n[l] for l in fam.labels],
        "l": [fam.l[i] for i in sorted(fam.l)],
        "decomposition_matrix": fam.decomposition_matrix,
        "unitriangular": unitri,
        "layer_dimensions": lemma,
        "axioms": axioms,
        "cover_audit": {"sum_dim_D_dim_P": audit["sum_dim_D_dim_P"],
                        "sum_dim_D_over_end_dim_P": _frac(audit["sum_weighted"]),
                        "dim_A": alg.dim, "ok": weighted_ok},
        "ok": axioms["ok"] and lemma["ok"] and unitri and weighted_ok,
    }


def run(argv: list[str]) -> tuple[int, dict]:
    """Execute a command; returns (exit code, report)."""
    try:
        args = _parser().parse_args(argv)
    except _Usage as exc:
        return EXIT_USAGE, {"schema_version": SCHEMA_VERSION, "error": {"kind": "usage", "message": str(exc)}}
    report: dict = {"schema_version": SCHEMA_VERSION, "command": args.command,
                    "input": {"source": args.input}, "seed": args.seed, "stages": []}
    timings: dict = {}
    t0 = time.perf_counter()

    def finish(code: int) -> tuple[int, dict]:
        report["exit_code"] = code
        if args.timings:
            timings["total"] = round(time.perf_counter() - t0, 6)
            report["timings"] = timings
        return code, report

    try:
        limit = _max_dim(args.max_dim)
        c, a = resolve(args.input)
    except (ParseError, CategoryError, OSError, _Usage) as exc:
        info = {"kind": "parse", "message": str(exc)}
        if isinstance(exc, ParseError) and getattr(exc, "line", None) is not None:
            info.update(line=exc.line, col=exc.col)
        report["error"] = info
        return finish(EXIT_USAGE)
    except ValueError as exc:
        # constructor refusals such as a zero loop parameter
        report["stages"].append({"name": "validate", "pass": False,
                                 "witness": {"kind": "cocycle", "message": str(exc)}})
        return finish(EXIT_FAIL)
    report["input"].update(objects=len(c.objects), morphisms=c.size)
    if c.size > limit:
        report["error"] = {"kind": "resource", "message": f"{c.size} morphisms exceed the limit {limit}"}
        return finish(EXIT_RESOURCE)

    if args.command == "validate":
        rv = validate(c)
        if rv.ok:
            rv = validate_cocycle(c, a)
        st = {"name": "validate", "pass": rv.ok}
        if not rv.ok:
            st["witness"] = rv.first()
        report["stages"].append(st)
        return finish(EXIT_OK if rv.ok else EXIT_FAIL)

    if args.command == "analyze":
        rv = validate(c)
        if rv.ok:
            rv = validate_cocycle(c, a)
        report["stages"].append({"name": "validate", "pass": rv.ok, **({} if rv.ok else {"witness": rv.first()})})
        if not rv.ok:
            return finish(EXIT_FAIL)
        w, bad = is_split(c)
        if w is None:
            report["stages"].append({"name": "split", "pass": False,
                                     "witness": {"morphism": c.name(bad), "reason": "no pseudo-inverse"}})
            return finish(EXIT_FAIL)
        report["stages"].append({"name": "split", "pass": True})
        if args.stage in ("validate", "split"):
            return finish(EXIT_OK)
        try:
            report["analysis"] = _analyze(c)
        except GreenError as exc:
            report["stages"].append({"name": "green", "pass": False, "witness": {"message": str(exc)}})
            return finish(EXIT_FAIL)
        report["stages"].append({"name": "green", "pass": True})
        return finish(EXIT_OK)

    want_modules = args.command == "standard" or args.stage in (None, "modules")
    stop = args.stage
    try:
        t = time.perf_counter()
        cert = heredity.certify(c, a, modules=want_modules, stop_after=stop, seed=args.seed)
        timings["certify"] = round(time.perf_counter() - t, 6)
        body = cert.to_dict()
        report["stages"] = body.pop("stages")
        report["certificate"] = body
        if not cert.passed:
            return finish(EXIT_FAIL)
        if args.command == "standard" and cert.family is not None:
            t = time.perf_counter()
            std = _standard(cert, args.seed)
            timings["standard"] = round(time.perf_counter() - t, 6)
            report["standard"] = std
            if not std["ok"]:
                return finish(EXIT_FAIL)
    except modrep.InstanceTooLarge as exc:
        report["error"] = {"kind": "resource", "message": str(exc)}
        return finish(EXIT_RESOURCE)
    return finish(EXIT_OK)


def _human(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_human(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.extend(_human(v, indent + 1))
            else:
                out.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    else:
        out.append(f"{pad}{obj}")
    return out


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, dict) and (not isinstance(x, list) or _flat(x)) for x in v)
    return False


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    as_json = "--json" in argv
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=False, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(_human(report)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
