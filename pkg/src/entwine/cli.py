"""Command line interface: ``entwine <command> --input FILE ...``.

Exit codes: 0 when the overall verdict passes, 1 when some check fails,
2 for usage errors, 3 for unreadable or invalid input files and 4 when an
enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .entwining import PreconditionError, build_coring, check_coring, check_entwined, check_entwining
from .galois import BudgetExceeded, equivalence_battery, find_grouplikes, verify_grouplike
from .hopf import (
    CATALOG,
    catalog,
    check_bialgebra,
    check_comodule_algebra,
    check_hopf,
    fundamental_theorem_battery,
)
from .linalg import FieldSpec
from .monoidal import BraidingKind, MonoidalCtx
from .report import Report
from .session import Morphism, SessionError, SessionFile, parse_session_text, serialize
from .structures import check_algebra, check_coalgebra, check_comodule, check_module

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _load(path: str) -> tuple[SessionFile, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8") from None
    return parse_session_text(text), hashlib.sha256(raw).hexdigest()


def check_structure(s: SessionFile, name: str) -> Report:
    st = s.structure(name)
    v, ctx = st.value, s.ctx
    kind = st.kind
    if kind == "algebra":
        rep = check_algebra(v)
    elif kind == "coalgebra":
        rep = check_coalgebra(v)
    elif kind == "module":
        rep = check_module(v)
    elif kind == "comodule":
        rep = check_comodule(v)
    elif kind == "entwining":
        rep = check_entwining(v)
    elif kind == "bialgebra":
        rep = check_bialgebra(v, ctx)
    elif kind == "hopf":
        rep = check_hopf(v, ctx)
    elif kind == "comodule_algebra":
        rep = check_comodule_algebra(v, ctx)
    elif kind == "entwined_module":
        rep = check_entwined(v)
    else:
        rep = Report("group-like")
        rep.add("group-like", "ε∘g = 1 and δ∘g = g⊗g", verify_grouplike(v.coalg, v.vector))
    rep.title = f"{kind} {name}: {rep.title}"
    return rep


def cmd_check(s: SessionFile, name: str | None) -> Report:
    names = [name] if name else list(s.structures)
    if len(names) == 1:
        return check_structure(s, names[0])
    rep = Report(f"{len(names)} structures")
    for n in names:
        rep.section(check_structure(s, n))
    return rep


def _fmt_vector(k: FieldSpec, g) -> str:
    return "[" + ", ".join(k.format(x) for x in g.mat.entries) + "]"


def cmd_grouplikes(s: SessionFile, name: str, budget: int) -> Report:
    st = s.structure(name, "coalgebra", "bialgebra", "hopf")
    c = st.value if st.kind == "coalgebra" else st.value.coalg
    found = find_grouplikes(c, budget)
    rep = Report(f"group-likes of {name}")
    for g in found:
        rep.add(f"group-like {_fmt_vector(s.field, g.vector)}", "ε∘g = 1 and δ∘g = g⊗g", True)
    for n, other in s.structures.items():
        if other.kind == "grouplike" and other.value.coalg == c:
            ok = verify_grouplike(c, other.value.vector)
            listed = any(g.vector == other.value.vector for g in found)
            rep.add(f"declared {n} is group-like", "ε∘g = 1 and δ∘g = g⊗g", ok and listed)
    rep.data["count"] = len(found)
    return rep


def _coring_session(s: SessionFile, e, cor) -> SessionFile:
    out = SessionFile(s.field, s.braiding)
    A, C = e.alg.carrier, e.coalg.carrier
    out.objects["A"] = A
    out.objects["C"] = C
    out.objects["coring_tensor"] = cor.tensor.obj
    maps = {
        "left_action": (("A", "A", "C"), ("A", "C"), cor.carrier.left_action),
        "right_action": (("A", "C", "A"), ("A", "C"), cor.carrier.right_action),
        "counit": (("A", "C"), ("A",), cor.counit),
        "comult": (("A", "C"), ("coring_tensor",), cor.comult),
        "tensor_projection": (("A", "C", "A", "C"), ("coring_tensor",), cor.tensor.projection),
    }
    for n, (dom, cod, f) in maps.items():
        out.morphisms[n] = Morphism(dom, cod, f)
    return out


def cmd_coring(s: SessionFile, name: str) -> tuple[Report, str]:
    e = s.structure(name, "entwining").value
    rep = Report(f"coring of {name}")
    pre = check_entwining(e)
    if not pre.passed:
        rep.error("entwining fails its axioms")
        rep.section(pre)
        return rep, ""
    cor = build_coring(e)
    rep.section(check_coring(cor))
    rep.data["carrier"] = str(cor.carrier.carrier)
    rep.data["tensor over A"] = str(cor.tensor.obj)
    return rep, serialize(_coring_session(s, e, cor))


def cmd_galois(s: SessionFile, name: str, grouplike: str, samples: int, seed: int) -> Report:
    e = s.structure(name, "entwining").value
    g = s.structure(grouplike, "grouplike").value
    rep = Report(f"Galois criterion for {name} at {grouplike}")
    try:
        rep.section(equivalence_battery(e, g, samples, seed))
    except PreconditionError as exc:
        rep.error(str(exc))
    return rep


def cmd_hopf_suite(h, ctx: MonoidalCtx, samples: int, seed: int, label: str) -> Report:
    rep = Report(f"Hopf suite for {label}")
    rep.section(fundamental_theorem_battery(h, ctx, samples, seed))
    return rep


def _parse_params(items: list[str]) -> dict:
    out = {}
    for it in items:
        key, sep, val = it.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {it!r}")
        out[key] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="structure-constant file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--samples", type=int, default=10, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="S")
    common.add_argument("--budget", type=int, default=10**6, metavar="B")
    common.add_argument("--structure", metavar="NAME", help="structure to work on")

    p = argparse.ArgumentParser(prog="entwine", description="Exact checks for entwining structures.")
    p.add_argument("--version", action="version", version=f"entwine {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="check the axioms of one or all structures")
    sub.add_parser("grouplikes", parents=[common], help="enumerate group-like elements of a coalgebra")
    cp = sub.add_parser("coring", parents=[common], help="build the coring of an entwining")
    cp.add_argument("--emit", metavar="PATH", help="write the coring structure constants here")
    gp = sub.add_parser("galois", parents=[common], help="canonical map, flatness and equivalence battery")
    gp.add_argument("--grouplike", metavar="NAME", required=True)
    hp = sub.add_parser("hopf-suite", parents=[common], help="Hopf algebra checks and fundamental theorem battery")
    hp.add_argument("--catalog", choices=CATALOG)
    hp.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    hp.add_argument("--field", default="F2")
    hp.add_argument("--braiding", choices=("trivial", "super"), default="trivial")
    return p


def _emit(args, command: str, digest: str, rep: Report, out, extra: dict | None = None):
    if args.format == "json":
        doc = {
            "tool": "entwine",
            "version": __version__,
            "command": command,
            "input_sha256": digest,
            "verdict": "pass" if rep.passed else "fail",
            "report": rep.to_dict(),
        }
        doc.update(extra or {})
        out.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write(f"entwine {__version__}  {command}  input sha256:{digest}\n")
        out.write(rep.render() + "\n")
        for key, val in (extra or {}).items():
            out.write(f"--- {key}\n{val}")
        out.write(f"overall: {'PASS' if rep.passed else 'FAIL'}\n")


def run(args, out) -> int:
    cmd = args.command
    if cmd == "hopf-suite" and args.catalog:
        params = _parse_params(args.param)
        try:
            k = FieldSpec.parse(args.field)
            ctx = MonoidalCtx(k, BraidingKind(args.braiding))
            h = catalog(args.catalog, params, k, ctx)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        desc = f"catalog {args.catalog} {sorted(params.items())} {k} {ctx.braiding.value}"
        digest = hashlib.sha256(desc.encode()).hexdigest()
        rep = cmd_hopf_suite(h, ctx, args.samples, args.seed, f"{args.catalog} over {k}")
        _emit(args, cmd, digest, rep, out)
        return EXIT_PASS if rep.passed else EXIT_FAIL
    if not args.input:
        raise InputError("--input is required" + (" (or --catalog)" if cmd == "hopf-suite" else ""))
    s, digest = _load(args.input)
    extra = None
    if cmd == "check":
        rep = cmd_check(s, args.structure)
    else:
        if not args.structure:
            raise InputError(f"{cmd} needs --structure")
        if cmd == "grouplikes":
            rep = cmd_grouplikes(s, args.structure, args.budget)
        elif cmd == "coring":
            rep, text = cmd_coring(s, args.structure)
            if args.emit and text:
                Path(args.emit).write_text(text, encoding="utf-8")
            elif text:
                extra = {"coring": text}
        elif cmd == "galois":
            rep = cmd_galois(s, args.structure, args.grouplike, args.samples, args.seed)
        else:
            h = s.structure(args.structure, "hopf").value
            rep = cmd_hopf_suite(h, s.ctx, args.samples, args.seed, args.structure)
    _emit(args, cmd, digest, rep, out, extra)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    if args.samples < 0:
        print("entwine: --samples must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(args, out)
    except (SessionError, InputError) as exc:
        print(f"entwine: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"entwine: {exc}; use a larger --budget or check candidates individually", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
