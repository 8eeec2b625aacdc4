"""
Modul hlavní aplikace: příkazová řádka `rlak` nad restriktivními Lieovými algebrami.

Každý podpříkaz vypíše jeden kompaktní JSON dokument na stdout (pro `dims` volitelně CSV).
Návratové kódy: 0 úspěch, 1 chyba vstupu nebo použití, 2 ověřovaná vlastnost neplatí.
Diagnostika jde na stderr jako {"error": kód, "message": text}.
"""
import argparse
import json
import logging
import sys

from config import CHECK_ANCHORS, DEFAULT_FIELD, DEFAULT_GENERATORS, DEFAULT_OUTPUT_FORMAT
from errors import AlgebraError
from field.field import parse_field
from freerla.freerla import format_expr, graded_dims, parse_expr
from initialization import ENV_CONFIG, build_run_config, initialize_algebra
from log import setup_loggers
from orepoly.orepoly import OreMatrix, diagonalize, format_orepoly, ore_divide, parse_orepoly
from presentation.certificates import bp_certificate, check_free_rank_formula
from presentation.presentation import (
    Presentation,
    abelianize,
    normalize,
    relator_power_components,
)
from quotient.quotient import (
    check_power_ideal_inclusion,
    check_zp,
    complement_basis,
    derived_p_series,
    filtration_ideal,
    find_d_for_subspace,
    ideal_closure,
    is_nilpotent,
    nil_index,
    quotient_algebra,
    subalgebra_closure,
)
from quotient.subspace import FdSubspace
from reporting.reporting import write_dims_csv, write_error, write_report
from verification.verification import run_suites

cli_logger = logging.getLogger("cli_logger")

CHECK_FAILED = 2


class UsageError(Exception):
    code = "usage_error"


class RlakArgumentParser(argparse.ArgumentParser):
    """ArgumentParser, který chyby použití hlásí výjimkou místo ukončení s kódem 2."""

    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------------
# obsluha podpříkazů


def _exprs(algebra, texts):
    return [parse_expr(text, algebra) for text in texts or []]


def cmd_dims(args, run_config):
    field = parse_field(run_config.field)
    dims = graded_dims(len(run_config.generators), field.p, run_config.max_degree)
    if run_config.output_format == "csv":
        return dims, None
    return {"dims": dims}, None


def cmd_basis(args, run_config):
    _, A = initialize_algebra(run_config)
    basis = [
        {"label": A.basis_label(i), "weight": int(A.weights[i])} for i in range(A.dim)
    ]
    return {"dim": A.dim, "basis": basis}, None


def cmd_eval(args, run_config):
    _, A = initialize_algebra(run_config)
    value = parse_expr(args.expr, A)
    return {
        "value": format_expr(value),
        "min_weight": value.min_weight,
        "ordinary": value.is_ordinary(),
    }, None


def cmd_ore_div(args, run_config):
    field = parse_field(run_config.field)
    q, r = ore_divide(parse_orepoly(args.f, field), parse_orepoly(args.g, field), args.side)
    return {"side": args.side, "q": format_orepoly(q), "r": format_orepoly(r)}, None


def cmd_ore_diag(args, run_config):
    M = OreMatrix.load(args.matrix)
    D, row_ops, col_ops = diagonalize(M)
    return {
        "diagonal": D.to_json(),
        "rank": D.diagonal_rank(),
        "row_ops": [op.to_json(M.field) for op in row_ops],
        "col_ops": [op.to_json(M.field) for op in col_ops],
    }, None


def cmd_abelianize(args, run_config):
    P = Presentation.load(args.presentation)
    return {"matrix": abelianize(P).to_json()}, None


def cmd_normalize(args, run_config):
    P = Presentation.load(args.presentation)
    Q, omitted = normalize(P, run_config.cap)
    return {
        "presentation": Q.to_json(),
        "omitted": list(omitted),
        "power_components": relator_power_components(Q),
    }, None


def cmd_certify_large(args, run_config):
    P = Presentation.load(args.presentation)
    certificate = bp_certificate(P, args.q, args.truncation, run_config.cap)
    return certificate.to_json(), None


def cmd_ideal_closure(args, run_config):
    _, A = initialize_algebra(run_config)
    gens = _exprs(A, args.expr)
    closure = ideal_closure if args.mode == "ideal" else subalgebra_closure
    return closure(A, gens).report(), None


def cmd_zp_check(args, run_config):
    _, A = initialize_algebra(run_config)
    N_ideal = ideal_closure(A, _exprs(A, args.ideal))
    g = parse_expr(args.g, A)
    T = _exprs(A, args.t) if args.t else complement_basis(A, N_ideal)
    result = check_zp(A, N_ideal, g, T, drop_last=args.drop_last)
    return {
        "check": "zp-check",
        "anchor": CHECK_ANCHORS["zp-check"],
        "instance": {"g": format_expr(g), "ideal": args.ideal, "t_size": len(T)},
        "result": result,
    }, result


def cmd_power_check(args, run_config):
    _, A = initialize_algebra(run_config)
    H = ideal_closure(A, _exprs(A, args.ideal))
    g = parse_expr(args.g, A)
    result = check_power_ideal_inclusion(A, H, g, args.n)
    return {
        "check": "power-check",
        "anchor": CHECK_ANCHORS["power-check"],
        "instance": {"g": format_expr(g), "ideal": args.ideal, "codimension": H.codim, "n": args.n},
        "result": result,
    }, result


def cmd_filtration(args, run_config):
    _, A = initialize_algebra(run_config)
    I = filtration_ideal(A, args.f)
    Q = quotient_algebra(A, I)
    report = I.report()
    report["quotient_dim"] = Q.dim
    report["quotient_nilpotent"] = is_nilpotent(Q)
    return report, None


def cmd_derived_series(args, run_config):
    _, A = initialize_algebra(run_config)
    series = derived_p_series(A, args.depth)
    quotients = [quotient_algebra(A, D) for D in series]
    return {
        "dims": [D.dim for D in series],
        "quotient_dims": [Q.dim for Q in quotients],
        "nilpotent": [is_nilpotent(Q) for Q in quotients],
    }, None


def cmd_nil_index(args, run_config):
    _, A = initialize_algebra(run_config)
    g = parse_expr(args.g, A)
    if args.ideal:
        Q = quotient_algebra(A, ideal_closure(A, _exprs(A, args.ideal)))
        return {"nil_index": nil_index(Q, Q.project(g.vector)), "quotient_dim": Q.dim}, None
    return {"nil_index": nil_index(A, g)}, None


def cmd_find_d(args, run_config):
    _, A = initialize_algebra(run_config)
    V = FdSubspace.span(A, [v.vector for v in _exprs(A, args.v)])
    return {"d": find_d_for_subspace(A, V), "subspace_dim": V.dim}, None


def cmd_kukin_check(args, run_config):
    field = parse_field(run_config.field)
    report = check_free_rank_formula(args.r, field.p, args.k, run_config.max_degree, field, run_config.cap)
    report["check"] = "kukin-check"
    report["anchor"] = CHECK_ANCHORS["kukin-check"]
    return report, report["passed"]


def cmd_verify(args, run_config):
    suites = args.suite or ["all"]
    jobs = args.jobs if args.jobs is not None else ENV_CONFIG["jobs"]
    results = run_suites(suites, run_config.seed, jobs=jobs, progress=not args.quiet)
    ok = all(r["ok"] for r in results)
    return {"seed": run_config.seed, "ok": ok, "suites": results}, ok


COMMANDS = {
    "dims": cmd_dims,
    "basis": cmd_basis,
    "eval": cmd_eval,
    "ore-div": cmd_ore_div,
    "ore-diag": cmd_ore_diag,
    "abelianize": cmd_abelianize,
    "normalize": cmd_normalize,
    "certify-large": cmd_certify_large,
    "ideal-closure": cmd_ideal_closure,
    "zp-check": cmd_zp_check,
    "power-check": cmd_power_check,
    "filtration": cmd_filtration,
    "derived-series": cmd_derived_series,
    "nil-index": cmd_nil_index,
    "find-d": cmd_find_d,
    "kukin-check": cmd_kukin_check,
    "verify": cmd_verify,
}


# ----------------------------------------------------------------------
# parser


def build_parser():
    """Sestaví parser se sdílenými volbami a všemi podpříkazy."""
    shared = RlakArgumentParser(add_help=False)
    shared.add_argument("--field", default=DEFAULT_FIELD, help="literál tělesa, např. gf(2) nebo gf(4; 1,1,1)")
    shared.add_argument("--generators", default=DEFAULT_GENERATORS, help="jména generátorů oddělená čárkou")
    shared.add_argument("--max-degree", type=int, default=None, help="stupeň zkrácení N")
    shared.add_argument("--cap", type=int, default=None, help="maximální velikost báze")
    shared.add_argument("--format", choices=("json", "csv"), default=DEFAULT_OUTPUT_FORMAT)
    shared.add_argument("--seed", type=int, default=None)

    parser = RlakArgumentParser(prog="rlak", description="Výpočty v restriktivních Lieových algebrách.")
    sub = parser.add_subparsers(dest="command", parser_class=RlakArgumentParser)
    sub.required = True

    p = sub.add_parser("dims", parents=[shared], help="graduované dimenze zkrácené volné algebry")
    p.add_argument("--r", type=int, default=None, help="počet generátorů (nahrazuje --generators)")

    sub.add_parser("basis", parents=[shared], help="kanonická báze")

    p = sub.add_parser("eval", parents=[shared], help="normální tvar výrazu")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("ore-div", parents=[shared], help="dělení se zbytkem v Λ")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--side", choices=("left", "right"), default="right")

    p = sub.add_parser("ore-diag", parents=[shared], help="diagonalizace matice nad Λ")
    p.add_argument("--matrix", required=True, help="JSON soubor s maticí")

    for name in ("abelianize", "normalize"):
        p = sub.add_parser(name, parents=[shared])
        p.add_argument("--presentation", required=True, help="JSON soubor s prezentací")

    p = sub.add_parser("certify-large", parents=[shared], help="certifikát velikosti prezentace")
    p.add_argument("--presentation", required=True)
    p.add_argument("--q", type=int, default=None, help="zadaná mez mocnin; bez ní se q spočítá")
    p.add_argument("--truncation", type=int, default=None)

    p = sub.add_parser("ideal-closure", parents=[shared], help="restriktivní ideál nebo podalgebra")
    p.add_argument("--expr", action="append", required=True)
    p.add_argument("--mode", choices=("ideal", "subalgebra"), default="ideal")

    p = sub.add_parser("zp-check", parents=[shared], help="ideál generovaný g proti ideálu N generovanému Z_p")
    p.add_argument("--ideal", action="append", required=True, help="generátory ideálu N")
    p.add_argument("--g", required=True)
    p.add_argument("--t", action="append", default=None, help="prvky T (výchozí: kanonický doplněk)")
    p.add_argument("--drop-last", action="store_true")

    p = sub.add_parser(
        "power-check", parents=[shared], aliases=["l991-check"], help="inkluze ideálů p-mocnin"
    )
    p.set_defaults(command="power-check")
    p.add_argument("--ideal", action="append", required=True, help="generátory ideálu H")
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("filtration", parents=[shared], help="filtrační ideál I_f")
    p.add_argument("--f", type=int, required=True)

    p = sub.add_parser("derived-series", parents=[shared], help="odvozená p-řada")
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("nil-index", parents=[shared], help="nil-index prvku (volitelně v podílu)")
    p.add_argument("--g", required=True)
    p.add_argument("--ideal", action="append", default=None)

    p = sub.add_parser("find-d", parents=[shared], help="nejmenší d s D^d ∩ V = 0")
    p.add_argument("--v", action="append", required=True)

    p = sub.add_parser("kukin-check", parents=[shared], help="ověření Kukinova vzorce")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("verify", parents=[shared], help="akceptační sady")
    p.add_argument("--suite", action="append", default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--quiet", action="store_true", help="bez ukazatele průběhu")
    return parser


def main(argv=None, stdout=None, stderr=None):
    """
    Spustí jeden podpříkaz.

    Vrací:
        int: 0 úspěch, 1 chyba vstupu, 2 ověřovaná vlastnost neplatí.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        run_config = build_run_config(args)
        cli_logger.info("Command %s started with %s", args.command, run_config)
        payload, verdict = COMMANDS[args.command](args, run_config)
    except UsageError as e:
        write_error(UsageError.code, str(e), stderr)
        return 1
    except AlgebraError as e:
        cli_logger.exception("Command failed: %s", e)
        write_error(e.code, str(e), stderr)
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        cli_logger.exception("Invalid input: %s", e)
        write_error("invalid_input", str(e), stderr)
        return 1

    if args.command == "dims" and run_config.output_format == "csv":
        write_dims_csv(payload, stdout)
    else:
        write_report(payload, stdout)
    if verdict is False:
        cli_logger.warning("Command %s: check failed.", args.command)
        return CHECK_FAILED
    cli_logger.info("Command %s finished.", args.command)
    return 0


if __name__ == "__main__":
    setup_loggers(ENV_CONFIG)
    sys.exit(main())
