"""gtkit command line.

Exit codes: 0 success or verified, 1 FAILED (counterexample in the report),
2 budget exceeded or inconclusive, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from typing import List, Optional

from . import __version__
from .errors import BudgetExceeded, GtkitError, NotHomogeneousError
from .field import DEFAULT_PRIME, GF, QQ, _is_prime
from .groebner import (Budget, Ideal, groebner_basis, ideal_quotient, krull_dimension, membership,
                       radical_membership)
from .poly import DEGREVLEX, LEX, MonomialOrder

EXIT_OK, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
SCHEMA_VERSION = "1"
TIMING_KEYS = {"seconds", "wall_time"}
FAMILIES = ("gamma_bar", "chi", "sigma", "partial")
CLAIMS = ("ovsienko", "weak", "components", "zelobenko", "partial", "gl4")


class UsageError(GtkitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_schema() -> dict:
    return json.loads(resources.files("gtkit").joinpath("schema/report.schema.json").read_text())


def split_timing(obj, path: str = ""):
    """Move wall-clock values out of a result so the rest is reproducible."""
    timing = {}

    def walk(o, p):
        if isinstance(o, dict):
            out = {}
            for k, v in o.items():
                q = f"{p}.{k}" if p else k
                if k in TIMING_KEYS and isinstance(v, (int, float)):
                    timing[q] = v
                else:
                    out[k] = walk(v, q)
            return out
        if isinstance(o, list):
            return [walk(v, f"{p}[{i}]") for i, v in enumerate(o)]
        return o

    return walk(obj, path), timing


# -- configuration


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text}")
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text}")
        return v
    return conv


def _field(args, default=None):
    if args.field is None:
        return default
    if args.field == "q":
        return QQ
    if args.prime <= 2 or not _is_prime(args.prime):
        raise UsageError(f"--prime must be an odd prime, got {args.prime}")
    return GF(args.prime)


def _budget(args) -> Budget:
    return Budget(args.budget_pairs, args.budget_degree, args.budget_seconds)


def _order(args) -> MonomialOrder:
    return LEX if args.order == "lex" else DEGREVLEX


def _config(args) -> dict:
    f = _field(args)
    return {
        "field": f.to_json() if f is not None else None,
        "order": args.order,
        "budget": _budget(args).to_json(),
        "seed": args.seed,
        "jobs": args.jobs,
        "long": bool(getattr(args, "long", False)),
    }


# -- input loading


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _beta(args, n, k):
    if args.beta is None:
        return None
    data = _read_json(args.beta)
    if isinstance(data, dict):
        data = data.get("betas", data.get("beta"))
    if data and not isinstance(data[0], list):
        data = [data]
    return [[Fraction(str(b)) for b in row] for row in data]


def _make_system(args):
    from . import systems
    F = _field(args, QQ)
    fam = args.family
    if fam == "gamma_bar":
        return systems.gamma_bar(args.n, F)
    if fam == "chi":
        return systems.chi(args.n, F)
    if fam == "sigma":
        return systems.sigma(args.n, F)
    k = args.k if args.k is not None else args.n
    betas = _beta(args, args.n, k)
    beta = betas[0] if betas else [0] * systems.partial_count(args.n, k)
    return systems.partial_system(args.n, k, beta, family=args.partial_family, field=F)


def _load_system(args):
    """(ring, generators, order) from --system FILE or --family/--n."""
    from .systems import system_from_json
    if args.system:
        ring, gens, order = system_from_json(_read_json(args.system))
        F = _field(args)
        if F is not None and F != ring.field:
            R2 = ring.with_field(F)
            gens = [g.change_ring(R2) for g in gens]
            ring = R2
        if args.order != "degrevlex":
            order = _order(args)
        return ring, gens, order
    if args.family and args.n:
        S = _make_system(args)
        return S.ring, S.generators, _order(args)
    raise UsageError("give --system FILE or --family and --n")


# -- subcommands; each returns (status, result dict)


def cmd_gen(args):
    S = _make_system(args)
    return "ok", {"system": S.to_json(_order(args)), "count": len(S)}


def cmd_gb(args):
    ring, gens, order = _load_system(args)
    gb = groebner_basis(Ideal(gens, ring), order, _budget(args))
    return "ok", {"order": order.to_json(), "basis": gb.to_text(), "is_unit": gb.is_unit, "stats": gb.stats}


def cmd_dim(args):
    ring, gens, _ = _load_system(args)
    r = krull_dimension(Ideal(gens, ring), _budget(args))
    out = r.to_json()
    out["ambient"] = ring.nvars
    return "ok", out


def cmd_member(args):
    ring, gens, _ = _load_system(args)
    p = ring.parse(args.poly)
    I = Ideal(gens, ring)
    inside = radical_membership(p, I, _budget(args)) if args.radical else membership(p, I, _budget(args))
    return "ok", {"poly": p.to_text(), "radical": args.radical, "member": inside}


def cmd_quotient(args):
    ring, gens, _ = _load_system(args)
    f = ring.parse(args.poly)
    Q = ideal_quotient(Ideal(gens, ring), f, _budget(args))
    gb = Q.groebner(budget=_budget(args))
    return "ok", {"by": f.to_text(), "quotient_basis": gb.to_text()}


def cmd_regseq(args):
    from .regularity import is_regular_sequence
    ring, gens, _ = _load_system(args)
    cert = is_regular_sequence(gens, _budget(args), method=args.method, ring=ring)
    status = {"regular": "ok", "failed": "failed", "budget": "inconclusive"}[cert.verdict]
    return status, cert.to_json()


def cmd_equidim(args):
    from .regularity import equidimensional_by_ci
    ring, gens, _ = _load_system(args)
    cert = equidimensional_by_ci(gens, budget=_budget(args))
    if cert.issued:
        return "ok", cert.to_json()
    return ("inconclusive" if cert.regularity.verdict == "budget" else "failed"), cert.to_json()


def cmd_koszul(args):
    from .koszul import ci_oracle
    ring, gens, _ = _load_system(args)
    v = ci_oracle(gens, max_degree=args.max_degree)
    return ("failed" if v.homology_found else "ok"), v.to_json()


def cmd_phi(args):
    from .kostant_wallach import ConcreteMatrix, phi_k, strongly_nilpotent
    F = _field(args, QQ)
    X = ConcreteMatrix.from_json(_read_json(args.matrix), F)
    k = args.k if args.k is not None else X.n
    out = {"matrix": X.to_json(), "phi": phi_k(X, k).to_json(), "strongly_nilpotent": strongly_nilpotent(X)}
    if args.other:
        Y = ConcreteMatrix.from_json(_read_json(args.other), F)
        out["same_fiber"] = phi_k(X, k) == phi_k(Y, k)
    return "ok", out


def cmd_fiber_probe(args):
    from .kostant_wallach import jacobian_rank_probe
    F = _field(args, QQ)
    res = jacobian_rank_probe(args.n, args.k, args.trials, args.seed, F)
    status = "ok" if res["full_rank_fraction"] >= args.threshold else "inconclusive"
    return status, res


def cmd_verify(args):
    from . import lab
    F = _field(args)
    B = _budget(args)
    claim = args.claim
    n = args.n
    if claim != "gl4" and n is None:
        raise UsageError(f"--n is required for --claim {claim}")
    try:
        if claim == "ovsienko":
            rep = lab.verify_ovsienko(n, F, B)
        elif claim == "weak":
            rep = lab.verify_weak(n, F or QQ, B)
        elif claim == "components":
            rep = lab.enumerate_regular_components(n, F or QQ)
        elif claim == "zelobenko":
            rep = lab.verify_zelobenko(n, F, B)
        elif claim == "partial":
            k = args.k if args.k is not None else n
            rep = lab.verify_partial(n, k, _beta(args, n, k), trials=args.trials, seed=args.seed, field=F,
                                     family=args.partial_family, budget=B, jobs=args.jobs)
        else:
            rep = lab.verify_gl4_decomposition(F, B, long=args.long, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc))
    status = {lab.VERIFIED_EXACT: "ok", lab.VERIFIED_MODULAR: "ok", lab.INCONCLUSIVE: "inconclusive",
              lab.FAILED: "failed"}[rep.verdict]
    return status, rep.to_json()


COMMANDS = {
    "gen": cmd_gen, "gb": cmd_gb, "dim": cmd_dim, "member": cmd_member, "quotient": cmd_quotient,
    "regseq": cmd_regseq, "equidim": cmd_equidim, "koszul": cmd_koszul, "phi": cmd_phi,
    "fiber-probe": cmd_fiber_probe, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", choices=("q", "fp"), default=None,
                        help="coefficient field; default QQ, except verify --claim gl4 and the n=4 "
                             "ovsienko/zelobenko/partial runs, which default to F_p")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    common.add_argument("--budget-pairs", type=_positive(int), default=None)
    common.add_argument("--budget-degree", type=_positive(int), default=None)
    common.add_argument("--budget-seconds", type=_positive(float), default=None,
                        help="per Groebner computation; GTKIT_BUDGET_SECONDS overrides")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=_positive(int), default=os.cpu_count() or 1)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    system = _Parser(add_help=False)
    system.add_argument("--system", default=None, help="JSON system file ('-' for stdin)")
    system.add_argument("--family", choices=FAMILIES, default=None)
    system.add_argument("--n", type=int, default=None)
    system.add_argument("--k", type=int, default=None)
    system.add_argument("--beta", default=None, help="JSON list of beta values (or list of lists)")
    system.add_argument("--partial-family", choices=("gamma_bar", "chi"), default="gamma_bar")

    p = _Parser(prog="gtkit", description="Groebner and regular-sequence tools for Gelfand-Tsetlin varieties")
    p.add_argument("--version", action="version", version=f"gtkit {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common, system], help="emit a generator system as JSON")
    g.set_defaults(need_family=True)
    sub.add_parser("gb", parents=[common, system], help="reduced Groebner basis")
    sub.add_parser("dim", parents=[common, system], help="Krull dimension")
    m = sub.add_parser("member", parents=[common, system], help="ideal or radical membership")
    m.add_argument("--poly", required=True)
    m.add_argument("--radical", action="store_true")
    q = sub.add_parser("quotient", parents=[common, system], help="ideal quotient (I : f)")
    q.add_argument("--poly", required=True)
    r = sub.add_parser("regseq", parents=[common, system], help="regular-sequence certificate")
    r.add_argument("--method", choices=("auto", "hilbert", "quotient"), default="auto")
    sub.add_parser("equidim", parents=[common, system], help="equidimensionality via complete intersection")
    ks = sub.add_parser("koszul", parents=[common, system], help="degreewise Koszul homology screen")
    ks.add_argument("--max-degree", type=int, default=8)
    ph = sub.add_parser("phi", parents=[common], help="Kostant-Wallach map of a matrix")
    ph.add_argument("--matrix", required=True)
    ph.add_argument("--other", default=None, help="second matrix for a same-fiber test")
    ph.add_argument("--k", type=int, default=None)
    fp = sub.add_parser("fiber-probe", parents=[common], help="Jacobian rank probe of Phi_k")
    fp.add_argument("--n", type=int, required=True)
    fp.add_argument("--k", type=int, required=True)
    fp.add_argument("--trials", type=_positive(int), default=100)
    fp.add_argument("--threshold", type=float, default=0.95)
    v = sub.add_parser("verify", parents=[common], help="verify a named claim",
                       description="gl4 runs over F_32003 by default; other claims over QQ (n=4 over F_p)")
    v.add_argument("--claim", choices=CLAIMS, required=True)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--beta", default=None)
    v.add_argument("--trials", type=_positive(int), default=3)
    v.add_argument("--partial-family", choices=("gamma_bar", "chi"), default="gamma_bar")
    v.add_argument("--long", action="store_true", help="also run the long full-system checks")
    return p


_STATUS_EXIT = {"ok": EXIT_OK, "failed": EXIT_FAILED, "inconclusive": EXIT_INCONCLUSIVE,
                "usage_error": EXIT_USAGE}


def _envelope(command, argv, config, status, result, verdict=None, error=None) -> dict:
    result, timing = split_timing(result) if result is not None else (None, {})
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "gtkit", "version": __version__},
        "command": command,
        "argv": list(argv),
        "config": config,
        "status": status,
        "exit_code": _STATUS_EXIT[status],
        "result": result,
        "timing": timing,
    }
    if verdict is not None:
        out["verdict"] = verdict
    if error is not None:
        out["error"] = error
    return out


def _emit(report: dict, out_path: Optional[str]):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
        summary = report.get("verdict") or report["status"]
        print(f"gtkit {report['command']}: {summary} (exit {report['exit_code']}) -> {out_path}")
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"gtkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    if args.command == "gen" and (args.family is None or args.n is None):
        print("gtkit: usage error: gen needs --family and --n", file=sys.stderr)
        return EXIT_USAGE
    try:
        config = _config(args)
        status, result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gtkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, NotHomogeneousError, FileNotFoundError) as exc:
        print(f"gtkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        report = _envelope(args.command, argv, _config(args), "inconclusive", None, error=str(exc))
        _emit(report, args.out)
        return EXIT_INCONCLUSIVE
    verdict = result.get("verdict") if isinstance(result, dict) and args.command == "verify" else None
    report = _envelope(args.command, argv, config, status, result, verdict)
    _emit(report, args.out)
    return report["exit_code"]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
