"""Command-line front end.

Exit codes: 0 when every requested verification passes, 1 on a verification
failure (the report carries a witness), 2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import heisenberg as heis
from . import hopfcat, psh, twovect, wreath
from .partitions import Partition, parse_partition
from .symfunc import SymTensor, basis_element, coproduct, inner, lr_coefficient, multiply


class InputError(ValueError):
    """Malformed user input (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    max_degree: int
    seed: int = 0
    fmt: str = "text"
    verbose: int = 0


# -- input parsing ------------------------------------------------------------------------


def parse_element(text: str) -> SymTensor:
    """A partition (``"2,1"``, ``"0"``, ``"[2,1]"``) or SymTensor JSON of arity 1."""
    text = text.strip()
    try:
        if text.startswith("{"):
            t = SymTensor.from_json(json.loads(text))
            if t.arity != 1:
                raise InputError("expected an arity-1 tensor")
            return t
        return SymTensor.basis(parse_partition(text))
    except InputError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"cannot parse element {text!r}: {exc}") from None


def parse_heis(text: str) -> heis.HeisElement:
    """SymTensor JSON of arity 2, or ``"x|y"`` for ``s_x ⊗ s_y``."""
    text = text.strip()
    try:
        if text.startswith("{"):
            return heis.HeisElement(SymTensor.from_json(json.loads(text)))
        left, sep, right = text.partition("|")
        if not sep:
            raise InputError("Heisenberg element must be JSON or 'x|y'")
        return heis.HeisElement.basis(parse_partition(left), parse_partition(right))
    except InputError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"cannot parse Heisenberg element {text!r}: {exc}") from None


# -- rendering -----------------------------------------------------------------------------


def emit(cfg: RunConfig, report, text: str | None = None) -> None:
    if cfg.fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text if text is not None else render(report))


def verdict(ok) -> str:
    return "n/a" if ok is None else ("PASS" if ok else "FAIL")


def render(report, indent: int = 0) -> str:
    """Generic text form of a nested report."""
    pad = "  " * indent
    if isinstance(report, dict):
        head = report.get("check") or report.get("axiom")
        lines = []
        if head is not None and "ok" in report:
            lines.append(f"{pad}{verdict(report['ok'])} {head}")
        for k in sorted(report):
            if k in ("check", "axiom", "ok"):
                continue
            v = report[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}  {k}:")
                lines.append(render(v, indent + 2))
            else:
                lines.append(f"{pad}  {k}: {v}")
        return "\n".join(lines)
    if isinstance(report, list):
        return "\n".join(render(x, indent) if isinstance(x, (dict, list)) else f"{pad}- {x}" for x in report)
    return f"{pad}{report}"


def _scalar_of(text: str) -> str:
    # "k*() ⊗ ()" -> "k"
    if text == "0":
        return "0"
    if text == "() ⊗ ()":
        return "1"
    if text == "-() ⊗ ()":
        return "-1"
    if text.endswith("*() ⊗ ()") and " " not in text[: -len("*() ⊗ ()")].lstrip("-"):
        return text[: -len("*() ⊗ ()")].replace("- ", "-")
    return text


def render_commutators(report: dict) -> str:
    lines = []
    pres = report["presentation"]
    if pres == 2:
        ks = sorted({r["k"] for r in report["rows"]})
        table = {(r["k"], r["l"]): _scalar_of(r["computed"]) for r in report["rows"]}
        width = max(4, max(len(v) for v in table.values()) + 1)
        lines.append("[c_k, c_l]  (rows k, columns l)")
        lines.append(" " * 5 + "".join(f"{l:>{width}}" for l in ks))
        for k in ks:
            lines.append(f"{k:>5}" + "".join(f"{table[(k, l)]:>{width}}" for l in ks))
        lines.append(f"{verdict(report['ok'])} [c_k, c_l] = k·δ(k+l,0)")
        return "\n".join(lines)
    sections = report["sections"] if "sections" in report else [report]
    for sec in sections:
        name = "a_m, b_n" if pres == 3 else "p_m, q_n"
        tag = f" ({sec['variant']} assignment)" if "variant" in sec else ""
        lines.append(f"presentation {pres}{tag}")
        for r in sec["rows"]:
            mark = "ok" if r["match"] else "differs"
            lines.append(f"  [{name}] m={r['m']} n={r['n']}: {r['computed']}   expected {r['expected']}   {mark}")
        lines.append(f"{verdict(sec['ok'])} presentation {pres}{tag}")
    return "\n".join(lines)


# -- command handlers ---------------------------------------------------------------------


def cmd_symfunc(args, cfg: RunConfig) -> int:
    op = args.op
    if op == "mult":
        res = multiply(parse_element(args.a), parse_element(args.b))
    elif op == "coprod":
        res = coproduct(parse_element(args.a))
    elif op == "inner":
        val = inner(parse_element(args.a), parse_element(args.b))
        emit(cfg, {"inner": val}, str(val))
        return 0
    elif op == "basis":
        try:
            res = basis_element(args.kind, args.n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif op == "lr":
        val = lr_coefficient(parse_partition(args.lam), parse_partition(args.mu), parse_partition(args.nu))
        emit(cfg, {"lr": val}, str(val))
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(op)
    emit(cfg, res.to_json(), res.to_text())
    return 0


def _algebra(name: str, D: int) -> psh.PshAlgebra:
    if name == "lambda":
        return psh.symmetric_functions(D)
    if name == "lambda2":
        L = psh.symmetric_functions(D)
        return psh.tensor_psh(L, L)
    raise InputError(f"unknown algebra {name!r}")


def cmd_psh(args, cfg: RunConfig) -> int:
    A = _algebra(args.algebra, cfg.max_degree)
    if args.mutant:
        one, two = Partition((1,)), Partition((2,))
        A = psh.negate_constant(A, one, one, two) if args.algebra == "lambda" else \
            psh.negate_constant(A, (one, Partition()), (one, Partition()), (two, Partition()))
    rep = psh.check_psh_axioms(A, cfg.max_degree)
    if args.primitives:
        rep["primitive_ranks"] = [len(psh.primitives(A, n)) for n in range(1, cfg.max_degree + 1)]
    emit(cfg, rep)
    return 0 if rep["ok"] else 1


def cmd_heis(args, cfg: RunConfig) -> int:
    D = cfg.max_degree
    if args.op == "act":
        u = parse_heis(args.op_elem)
        z = parse_element(args.on)
        A = psh.symmetric_functions(max(D, z.max_degree(), 0) + max((sum(p.size for p in k) for k in u.t.keys()), default=0))
        res = heis.fock_apply(u, z, A, D)
        emit(cfg, res.to_json(), res.to_text())
        return 0
    if args.op == "verify":
        A = psh.symmetric_functions(D)
        phi = heis.verify_phi_algebra(A, D, args.max_bidegree)
        inj_D = args.inj_degree if args.inj_degree is not None else min(D, 5)
        inj = heis.verify_injectivity(psh.symmetric_functions(2 * inj_D), inj_D)
        rep = {"check": "heisenberg", "D": D, "ok": phi["ok"] and inj["ok"], "phi_algebra": _slim_phi(phi),
               "injectivity": inj}
        emit(cfg, rep)
        return 0 if rep["ok"] else 1
    if args.op == "commutators":
        if args.presentation == 3 and args.variant == "both":
            secs = [heis.commutator_table(3, args.max, variant=v) for v in ("literal", "swapped")]
            rep = {"presentation": 3, "ok": secs[1]["ok"], "sections": secs,
                   "note": "the literal assignment is reported; the verdict uses the swapped assignment"}
        else:
            variant = "literal" if args.variant == "both" else args.variant
            rep = heis.commutator_table(args.presentation, args.max, variant=variant)
        emit(cfg, rep, render_commutators(rep))
        return 0 if rep["ok"] in (True, None) else 1
    raise InputError(args.op)  # pragma: no cover


def _slim_phi(rep: dict) -> dict:
    out = dict(rep)
    out["relation"] = {k: v for k, v in rep["relation"].items() if k != "rows"}
    out["relation"]["elements"] = len(rep["relation"]["rows"])
    return out


def cmd_ssh(args, cfg: RunConfig) -> int:
    D = cfg.max_degree
    if args.op == "verify-hopf":
        model = hopfcat.perturbed_model(D) if args.perturb else hopfcat.SshModel(D)
        rep = hopfcat.verify_hopf_square(D, model, cubes=not args.no_cubes)
    elif args.op == "verify-deltam":
        try:
            F = parse_partition(args.F)
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad partition {args.F!r}: {exc}") from None
        if F.size > max(D - 1, 0) and F.size > 0:
            raise InputError(f"need |F| <= D - 1 (|F| = {F.size}, D = {D})")
        rep = hopfcat.verify_deltam(F, D)
    elif args.op == "verify-squares":
        rep = hopfcat.verify_cartesian_squares(D, args.max_size)
    elif args.op == "verify-all":
        rep = hopfcat.verify_all(D)
    else:  # pragma: no cover
        raise InputError(args.op)
    emit(cfg, rep)
    return 0 if rep["ok"] else 1


def cmd_wreath(args, cfg: RunConfig) -> int:
    src = args.table
    try:
        stem = Path(src).name.removesuffix(".json")
        if src in wreath.BUNDLED or (not Path(src).exists() and stem in wreath.BUNDLED):
            table = wreath.bundled_table(stem)
        else:
            table = wreath.load_character_table(src)
    except (OSError, json.JSONDecodeError, wreath.CharacterTableError) as exc:
        raise InputError(f"cannot load table {src!r}: {exc}") from None
    rep = wreath.verify_decomposition(table, cfg.max_degree)
    emit(cfg, rep)
    return 0 if rep["ok"] else 1


def selftest_reports(D: int, seed: int) -> list[dict]:
    """A compact run of the property suite at degree ``D``."""
    L = psh.symmetric_functions(D)
    reps = [psh.check_psh_axioms(L, D)]
    Lh = psh.symmetric_functions(min(D, 4))
    reps.append(psh.check_psh_axioms(psh.tensor_psh(Lh, Lh), min(D, 4)))
    prim = [len(psh.primitives(L, n)) for n in range(1, D + 1)]
    reps.append({"check": "primitive_ranks", "ok": prim == [1] * D, "ranks": prim})
    reps.append(_slim_phi(heis.verify_phi_algebra(L, D, min(2, D))))
    reps.append(heis.verify_injectivity(psh.symmetric_functions(2 * min(D, 4)), min(D, 4)))
    for pres, var in ((2, "literal"), (3, "swapped")):
        t = heis.commutator_table(pres, min(D, 3), variant=var)
        reps.append({"check": f"commutators_{pres}", "ok": t["ok"]})
    m = twovect.verify_mate_calculus(seed, 50)
    reps.append({k: v for k, v in m.items() if k != "rows"})
    model = hopfcat.SshModel(D)
    reps.append(hopfcat.verify_hopf_square(D, model, cubes=D <= 5, collect=False))
    reps.append(hopfcat.verify_k_level(D, 2, model))
    for F in ("0", "1", "2", "1,1"):
        if parse_partition(F).size <= D - 1:
            r = hopfcat.verify_deltam(F, D, model, collect=False)
            reps.append({k: v for k, v in r.items() if k != "mate"} | {"blocks": r["mate"]["blocks_checked"]})
    for name in ("trivial", "z2", "s3"):
        r = wreath.verify_decomposition(wreath.bundled_table(name), min(D, 3))
        reps.append({"check": f"wreath_{name}", "ok": r["ok"]})
    # seeded faults must be caught
    one, two = Partition((1,)), Partition((2,))
    neg = psh.check_psh_axioms(psh.negate_constant(L, one, one, two), min(D, 4))
    mis = heis.verify_phi_algebra(psh.symmetric_functions(min(D, 4)), min(D, 4), 1, mutant="misroute")
    pert = hopfcat.verify_hopf_square(min(D, 4), hopfcat.perturbed_model(min(D, 4)), cubes=False, collect=False)
    reps.append({"check": "fault_detection", "ok": not neg["ok"] and not mis["ok"] and not pert["ok"],
                 "negated_constant_caught": not neg["ok"], "misrouted_legs_caught": not mis["ok"],
                 "perturbed_entry_caught": not pert["ok"]})
    return reps


def cmd_selftest(args, cfg: RunConfig) -> int:
    reps = selftest_reports(cfg.max_degree, cfg.seed)
    ok = all(r["ok"] for r in reps)
    rep = {"check": "selftest", "D": cfg.max_degree, "seed": cfg.seed, "ok": ok, "reports": reps}
    def label(r):
        extra = r.get("algebra") or r.get("F")
        return f"{r.get('check')} {extra}" if extra is not None else str(r.get("check"))

    text = "\n".join(f"{verdict(r['ok'])} {label(r)}" for r in reps) + f"\n{verdict(ok)} selftest"
    emit(cfg, rep, text)
    return 0 if ok else 1


# -- argument parsing -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-D", "--max-degree", type=int, default=None, help="truncation degree")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--table", default=None, help="character table: bundled name or JSON path")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="pshkit", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("symfunc", parents=[common], help="symmetric function arithmetic")
    ss = s.add_subparsers(dest="op", required=True)
    x = ss.add_parser("mult", parents=[common])
    x.add_argument("--a", required=True)
    x.add_argument("--b", required=True)
    x = ss.add_parser("coprod", parents=[common])
    x.add_argument("--a", required=True)
    x = ss.add_parser("inner", parents=[common])
    x.add_argument("--a", required=True)
    x.add_argument("--b", required=True)
    x = ss.add_parser("basis", parents=[common])
    x.add_argument("--kind", required=True, choices=("elementary", "homogeneous", "powersum", "e", "h", "p"))
    x.add_argument("--n", type=int, required=True)
    x = ss.add_parser("lr", parents=[common])
    x.add_argument("--lam", required=True)
    x.add_argument("--mu", required=True)
    x.add_argument("--nu", required=True)

    s = sub.add_parser("psh", parents=[common], help="PSH axiom checks")
    ss = s.add_subparsers(dest="op", required=True)
    x = ss.add_parser("check", parents=[common])
    x.add_argument("--algebra", choices=("lambda", "lambda2"), default="lambda")
    x.add_argument("--mutant", action="store_true", help="negate one structure constant")
    x.add_argument("--primitives", action="store_true", help="also report primitive ranks")

    s = sub.add_parser("heis", parents=[common], help="Heisenberg double")
    ss = s.add_subparsers(dest="op", required=True)
    x = ss.add_parser("act", parents=[common])
    x.add_argument("--op", dest="op_elem", required=True, help="arity-2 JSON or 'x|y'")
    x.add_argument("--on", required=True)
    x = ss.add_parser("verify", parents=[common])
    x.add_argument("--all", action="store_true", help="accepted for compatibility; all checks always run")
    x.add_argument("--max-bidegree", type=int, default=3)
    x.add_argument("--inj-degree", type=int, default=None)
    x = ss.add_parser("commutators", parents=[common])
    x.add_argument("--presentation", type=int, choices=(1, 2, 3), required=True)
    x.add_argument("--max", type=int, default=3)
    x.add_argument("--variant", choices=("literal", "swapped", "both"), default="both")

    s = sub.add_parser("ssh", parents=[common], help="2-vector-space model checks")
    ss = s.add_subparsers(dest="op", required=True)
    x = ss.add_parser("verify-hopf", parents=[common])
    x.add_argument("--no-cubes", action="store_true")
    x.add_argument("--perturb", action="store_true", help="perturb one multiplicity (fault injection)")
    x = ss.add_parser("verify-deltam", parents=[common])
    x.add_argument("--F", required=True)
    x = ss.add_parser("verify-squares", parents=[common])
    x.add_argument("--max-size", type=int, default=3)
    ss.add_parser("verify-all", parents=[common])

    s = sub.add_parser("wreath", parents=[common], help="wreath-product decomposition")
    ss = s.add_subparsers(dest="op", required=True)
    ss.add_parser("verify", parents=[common])

    sub.add_parser("selftest", parents=[common], help="run the property suite")
    return p


_DEFAULT_D = {"symfunc": 8, "psh": 8, "heis": 6, "ssh": 5, "wreath": 4, "selftest": 5}
_HANDLERS = {"symfunc": cmd_symfunc, "psh": cmd_psh, "heis": cmd_heis, "ssh": cmd_ssh, "wreath": cmd_wreath,
             "selftest": cmd_selftest}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    D = args.max_degree if args.max_degree is not None else _DEFAULT_D[args.command]
    if D < 1:
        print("error: -D must be at least 1", file=sys.stderr)
        return 2
    if args.command == "wreath" and args.table is None:
        print("error: wreath verify needs --table", file=sys.stderr)
        return 2
    cfg = RunConfig(D, args.seed, args.format, args.verbose)
    try:
        return _HANDLERS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
