"""Command-line interface.

JSON goes to stdout, notes to stderr.  Exit status: 0 success, 1 usage or
input error, 2 budget exhausted, 3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction

from lingames import __version__
from lingames.classical import (
    DEFAULT_NAIVE_BUDGET,
    classical_value,
    contradiction_number,
    validate_result,
)
from lingames.constructions import binary_game, girth_edge_bounds, rudin_game, rudin_set
from lingames.core import game_to_obj, parse_game, serialize_game
from lingames.cycles import (
    build_h_opt,
    certify_max_contradictions,
    cycle_count,
    graph_stats,
    subset_sum_certificate,
)
from lingames.errors import BudgetExceeded, ConsistencyError, ConvergenceError, GameFormatError
from lingames.lowerbound import exhaustive_min_d, lower_bound_report, permutation_certificate
from lingames.smallcase import Standard3x3, classify_3x3
from lingames.spectral import (
    DEFAULT_D_CAP,
    DEFAULT_TOL,
    bias_ratio,
    canonical_normalization,
    quantum_upper_bound,
)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CONSISTENCY = 0, 1, 2, 3
REPORT_SCHEMA = 1
DEFAULT_CYCLE_BUDGET = 10**6
PERMUTATION_CAP = 7
# smallest modulus for a 3x3 maximal game as stated in the literature; the
# exhaustive sweep finds 7
PRIOR_CLAIM_3X3 = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def note(msg):
    print(msg, file=sys.stderr)


def emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def decimal15(q: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def read_game(path):
    if path in (None, "-"):
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_game(data)


# ---------------------------------------------------------------------------
# building blocks shared by several commands
# ---------------------------------------------------------------------------

def _classical(m, algorithm, budget):
    r = contradiction_number(m, algorithm, budget)
    if not validate_result(r, m):
        raise ConsistencyError("witness does not reproduce the contradiction number")
    p = classical_value(r, m)
    return r, {
        "beta_c": r.beta_c,
        "p_cl": fraction_str(p),
        "p_cl_decimal": decimal15(p),
        "algorithm": r.algorithm,
        "witness": {"row_shifts": list(r.witness.row_shifts),
                    "col_shifts": list(r.witness.col_shifts)},
    }


def _maximality(m, cycle_budget):
    cost = cycle_count(m.n_a, m.n_b, 2 * min(m.n_a, m.n_b))
    if cost > cycle_budget:
        raise BudgetExceeded(f"cycle scan needs {cost} cycles, budget is {cycle_budget}",
                             {"required": cost, "budget": cycle_budget})
    return certify_max_contradictions(m)


def _check_agreement(m, beta, cert=None, perm=None):
    maximal = beta == (m.n_a - 1) * (m.n_b - 1)
    if cert is not None and cert.maximal != maximal:
        raise ConsistencyError(
            f"cycle certificate says {cert.verdict} but the solver found beta_c = {beta}")
    if perm is not None and perm.passed != maximal:
        raise ConsistencyError(
            f"permutation certificate ({perm.passed}) disagrees with beta_c = {beta}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_construct(args):
    if args.kind == "binary":
        if args.rows is None or args.cols is None:
            raise UsageError("construct binary needs --rows and --cols")
        m = binary_game(args.rows, args.cols)
    else:
        if args.n is None or args.s is None:
            raise UsageError("construct rudin needs --n and --s")
        m = rudin_game(args.n, args.s)
    sys.stdout.write(serialize_game(m) + "\n")


def cmd_analyze(args):
    m = read_game(args.file)
    if args.what == "classical":
        _, out = _classical(m, args.algorithm, args.budget)
        emit(out)
        return
    b = quantum_upper_bound(m, args.normalization, args.d_cap, args.tol, args.workers)
    emit(b.to_obj())


def cmd_certify(args):
    m = read_game(args.file)
    cert = _maximality(m, args.cycle_budget)
    out = {"maximality": cert.to_obj()}
    if m.n_a == m.n_b and m.n_a <= PERMUTATION_CAP:
        perm = permutation_certificate(m, PERMUTATION_CAP)
        if perm.passed != cert.maximal:
            raise ConsistencyError("cycle and permutation certificates disagree")
        out["permutation"] = perm.to_obj()
    if args.subset_sum is not None:
        out["subset_sum"] = subset_sum_certificate(m, args.subset_sum).to_obj()
    emit(out)


def _h_opt_stats(m, r):
    stats = graph_stats(build_h_opt(m, r))
    if stats.edges != m.n_a * m.n_b - r.beta_c:
        raise ConsistencyError("H_opt edge count disagrees with beta_c")
    maximal = r.beta_c == (m.n_a - 1) * (m.n_b - 1)
    if stats.is_tree != maximal:
        raise ConsistencyError("H_opt tree test disagrees with beta_c")
    return stats


def cmd_girth_stats(args):
    m = read_game(args.file)
    r, _ = _classical(m, args.algorithm, args.budget)
    stats = _h_opt_stats(m, r)
    out = {"beta_c": r.beta_c, "h_opt": stats.to_obj()}
    if m.n_a == m.n_b:
        n = m.n_a
        # girth > 2s for s = girth/2 - 1; an acyclic graph satisfies every s
        s = n if stats.girth is None else stats.girth // 2 - 1
        if s >= 1:
            gb = girth_edge_bounds(n, min(s, n))
            if stats.edges > gb.m_max_exact:
                raise ConsistencyError("H_opt has more edges than its girth allows")
            out["edge_bounds"] = gb.to_obj()
    emit(out)


def cmd_classify(args):
    m = read_game(args.file)
    g = Standard3x3.from_game(m)
    beta, rule = classify_3x3(g)
    out = {"beta": beta, "rule": rule,
           "standard_block": {"w": g.w, "x": g.x, "y": g.y, "z": g.z}, "d": g.d}
    if args.check:
        r = contradiction_number(m, "auto", DEFAULT_NAIVE_BUDGET)
        if r.beta_c != beta:
            raise ConsistencyError(f"classifier says {beta}, solver says {r.beta_c}")
        out["solver_beta"] = r.beta_c
    emit(out)


def cmd_rudin_set(args):
    A = rudin_set(args.s, args.p, verify=args.verify)
    emit({"s": A.s, "p": A.p, "elements": list(A.elements), "by_index": list(A.by_index),
          "bound": A.bound, "verified_level": A.verified_level})


def cmd_lower_bound(args):
    emit(lower_bound_report(args.n, exact=args.exact, chi_budget=args.chi_budget))


def cmd_min_d(args):
    res = exhaustive_min_d(args.n, args.d_max, args.budget, reduce_symmetry=not args.full)
    out = {
        "n": res.n,
        "d_max": res.d_max,
        "found": res.found,
        "d_min": res.d_min,
        "witness": game_to_obj(res.witness) if res.witness else None,
        "checked": {str(d): c for d, c in res.checked.items()},
        "symmetry_reduced": res.reduced,
    }
    if res.witness is not None:
        r = contradiction_number(res.witness, "naive")
        if r.beta_c != (res.n - 1) ** 2 or not validate_result(r, res.witness):
            raise ConsistencyError("min-d witness failed re-verification")
        out["witness_beta_c"] = r.beta_c
    if res.n == 3:
        agrees = res.d_min == PRIOR_CLAIM_3X3 if res.found else None
        out["prior_claim"] = {"d_min": PRIOR_CLAIM_3X3, "agrees": agrees}
        if agrees is False:
            note(f"note: sweep finds d_min = {res.d_min}, not the previously claimed {PRIOR_CLAIM_3X3}")
    emit(out)


def build_report(m, args):
    timings = {}
    t0 = time.perf_counter()
    r, cl = _classical(m, args.algorithm, args.budget)
    timings["classical"] = time.perf_counter() - t0
    report = {"schema": REPORT_SCHEMA, "game": game_to_obj(m)}
    report.update(cl)
    report["p_rand"] = fraction_str(Fraction(1, m.d))

    t0 = time.perf_counter()
    stats = _h_opt_stats(m, r)
    report["h_opt"] = stats.to_obj()

    certs = {}
    try:
        cert = _maximality(m, args.cycle_budget)
        certs["maximality"] = cert.to_obj()
    except BudgetExceeded as exc:
        cert = None
        certs["maximality"] = None
        note(f"note: maximality scan skipped ({exc})")
    perm = None
    if m.n_a == m.n_b and m.n_a <= PERMUTATION_CAP:
        perm = permutation_certificate(m, PERMUTATION_CAP)
        certs["permutation"] = perm.to_obj()
    if args.subset_sum is not None:
        certs["subset_sum"] = subset_sum_certificate(m, args.subset_sum).to_obj()
    _check_agreement(m, r.beta_c, cert, perm)
    report["certificates"] = certs
    timings["certificates"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    report["p_q_bar"] = None
    report["bias_ratio"] = None
    if not args.no_quantum:
        try:
            b = quantum_upper_bound(m, args.normalization, args.d_cap, args.tol, args.workers)
        except BudgetExceeded as exc:
            note(f"note: quantum bound skipped ({exc})")
        else:
            p_cl = classical_value(r, m)
            if args.normalization == "sqrt" and b.p_q_bar < float(p_cl) - b.error_bound - 1e-12:
                raise ConsistencyError("spectral bound fell below the classical value")
            report["p_q_bar"] = b.to_obj()
            if p_cl > Fraction(1, m.d):
                report["bias_ratio"] = bias_ratio(b.p_q_bar, p_cl, m.d)
    timings["quantum"] = time.perf_counter() - t0
    if args.timings:
        report["timings"] = timings
    return report


def cmd_report(args):
    emit(build_report(read_game(args.file), args))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_file(p):
    p.add_argument("file", nargs="?", default="-", help="game JSON file ('-' or omitted: stdin)")


def _add_solver(p):
    p.add_argument("--algorithm", choices=("auto", "naive", "path-gauge"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_NAIVE_BUDGET,
                   help="solver budget in residue evaluations (default 1e9)")


def _add_quantum(p):
    p.add_argument("--normalization", type=canonical_normalization, default="sqrt",
                   help="sqrt (default) or literal")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--d-cap", type=int, default=DEFAULT_D_CAP,
                   help="largest number of operator norms to compute (default 1e6)")
    p.add_argument("--workers", type=int, default=1)


def make_parser():
    parser = _Parser(prog="lingames", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lingames {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="emit a constructed game")
    p.add_argument("kind", choices=("binary", "rudin"))
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="classical value or quantum bound")
    asub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = asub.add_parser("classical")
    _add_file(q)
    _add_solver(q)
    q.set_defaults(func=cmd_analyze)
    q = asub.add_parser("quantum-bound")
    _add_file(q)
    _add_quantum(q)
    q.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="maximality certificates")
    _add_file(p)
    p.add_argument("--subset-sum", type=int, metavar="S")
    p.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("girth-stats", help="H_opt statistics")
    _add_file(p)
    _add_solver(p)
    p.set_defaults(func=cmd_girth_stats)

    p = sub.add_parser("classify3x3", help="closed-form 3x3 contradiction number")
    _add_file(p)
    p.add_argument("--check", action="store_true", help="cross-check with the exact solver")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rudin-set", help="the set A(s, p)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_rudin_set)

    p = sub.add_parser("lower-bound", help="lower bounds on outputs for n x n maximal games")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also run the exact colouring search")
    p.add_argument("--chi-budget", type=int, default=10**6)
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("min-d", help="exhaustive search for the smallest modulus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_NAIVE_BUDGET)
    p.add_argument("--full", action="store_true", help="disable symmetry reduction")
    p.set_defaults(func=cmd_min_d)

    p = sub.add_parser("report", help="full analysis pipeline")
    _add_file(p)
    _add_solver(p)
    _add_quantum(p)
    p.add_argument("--subset-sum", type=int, metavar="S")
    p.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET)
    p.add_argument("--no-quantum", action="store_true")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        args.func(args)
    except (UsageError, GameFormatError, ValueError, IndexError) as exc:
        note(f"error: {exc}")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        note(f"budget exhausted: {exc}")
        if exc.progress:
            note("progress: " + json.dumps(exc.progress, default=str))
        return EXIT_BUDGET
    except (ConsistencyError, ConvergenceError) as exc:
        note(f"consistency failure: {exc}")
        return EXIT_CONSISTENCY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
