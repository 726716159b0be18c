"""Command-line front end.

Every subcommand prints either an aligned table or a JSON document
``{"schema": 1, "command", "inputs", "results", "citations"}``.  Exit codes:
0 success, 1 usage error, 2 a computation contradicted a proven statement.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import __version__
from .algebra import Monomial, ValuedNumber, as_fraction
from .eisenstein import UnramifiedCharacter, Verdict, kato_report, multiplicity_one_report
from .endoscopy import (
    NormPair,
    TorusElementSO,
    check_identities,
    delta_IV,
    disc_gl_theta,
    disc_SO,
    disc_twisted,
    norm,
    norm_inverse,
)
from .errors import TheoremViolation
from .hecke import (
    LRS,
    RAMANUJAN,
    REFINED,
    bound_exponent_so2n,
    bound_so8,
    eigenvalue,
    satake_closed_form,
    satake_minimal,
    trivial_hecke_matrix,
)
from .lfunctions import build_intertwining_product, normalized_order_at_s0, residue_point
from .params import (
    ParseError,
    classify,
    global_type_count,
    hecke_matrix_of,
    packet,
    parse_parameter,
    render,
    residual_parameter,
    unramified_member_count,
    validate,
)
from .roots import (
    LeviDescriptor,
    RootSystemD,
    longest_relative_element,
    relative_weyl_set,
    vector_label,
    weyl_order,
)
from .singular import degeneracy_theorem_check

SCHEMA = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# formatting


def _plain(x):
    """Convert results to JSON-ready values with exact rationals as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def _table(command: str, inputs: dict, results: dict) -> str:
    head = f"# {command}  " + "  ".join(f"{k}={_cell(v)}" for k, v in inputs.items())
    rows = [(k, _cell(v)) for k, v in results.items()]
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join([head.rstrip()] + [f"{k.ljust(width)}  {v}" for k, v in rows])


def _cell(v) -> str:
    v = _plain(v)
    if isinstance(v, list):
        return ", ".join(_cell(x) for x in v) if v else "-"
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_cell(x)}" for k, x in v.items())
    if isinstance(v, bool):
        return "true" if v else "false"
    return "-" if v is None else str(v)


def emit(args, inputs: dict, results: dict, citations: Sequence[str]) -> None:
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": _plain(inputs),
            "results": _plain(results),
            "citations": list(citations),
        }
        print(json.dumps(doc, indent=2))
    else:
        print(_table(args.command, inputs, results))


# ---------------------------------------------------------------------------
# argument types


def _even(text: str) -> int:
    n = int(text)
    if n < 2 or n % 2:
        raise argparse.ArgumentTypeError(f"n must be even and >= 2, got {n}")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _prime(text: str) -> int:
    p = int(text)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(x) for x in text.split(","))


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma-separated list of integers") from None


def _parameter(args, n: int | None = None):
    target = 2 * n if n else None
    try:
        return parse_parameter(args.param, target)
    except ParseError as exc:
        raise UsageError(f"parameter: {exc}\n{exc.pointer()}") from None


def _levi(text: str, n: int) -> LeviDescriptor:
    if text == "gl2":
        return LeviDescriptor.product_gl2(n)
    if text == "gln":
        return LeviDescriptor.gl_n(n)
    if text.startswith("so:"):
        return LeviDescriptor.so_plus_torus(n, int(text[3:]))
    raise UsageError(f"unknown Levi {text!r}; use gl2, gln or so:K")


# ---------------------------------------------------------------------------
# commands


def cmd_roots(args):
    R = RootSystemD(args.n)
    results = {
        "positive_roots": [str(a) for a in R.positive_roots()],
        "simple_roots": [vector_label(v) for v in R.simple_roots()],
        "rho": list(R.rho()),
        "weyl_order": weyl_order(args.n),
        "extended_weyl_order": weyl_order(args.n, extended=True),
    }
    emit(args, {"n": args.n}, results, ["root system D_n"])


def cmd_wm(args):
    M = _levi(args.levi, args.n)
    W = relative_weyl_set(M)
    results = {"size": len(W)}
    if args.list:
        results["elements"] = [str(w) for w in W]
    if args.levi == "gl2":
        results["longest"] = str(longest_relative_element(M))
    emit(args, {"n": args.n, "levi": args.levi}, results, ["relative Weyl set W(M)"])


def cmd_poles(args):
    M = LeviDescriptor.product_gl2(args.n)
    prod = build_intertwining_product(longest_relative_element(M), M, args.n)
    s0 = residue_point(args.n)
    order = prod.order_at(s0)
    normalized = normalized_order_at_s0(prod, args.n)
    report = multiplicity_one_report(args.n)
    results = {
        "s0": list(s0),
        "quotients": prod.quotient_count(),
        "order": order,
        "normalized_order": normalized,
        "pole_terms": [str(t) for t in prod.pole_terms(s0)],
        "nonvanishing_certified": report.nonvanishing_certified,
        "square_integrable": report.square_integrable,
        "multiplicity_one": report.multiplicity_one,
    }
    emit(args, {"n": args.n}, results, ["constant term of Eisenstein series", "Langlands square-integrability criterion"])


def cmd_kato(args):
    chi = UnramifiedCharacter.residual(args.n) if args.character == "residual" else UnramifiedCharacter.trivial(args.n)
    tau = None
    if args.tau_exponent is not None:
        if args.p is None:
            raise UsageError("--tau-exponent needs --p")
        tau = args.p ** float(args.tau_exponent)
    r = kato_report(chi, p=args.p, tau=tau)
    results = {
        "e_nonzero": r.e_nonzero,
        "e_inverse_nonzero": r.e_inverse_nonzero,
        "stabilizer_order": r.stabilizer_order,
        "reflection_subgroup_order": r.reflection_subgroup_order,
        "regular": r.regular,
        "irreducible": r.irreducible,
        "spherical_cyclic": r.spherical_cyclic,
        "vanishing_e_inverse": [str(a) for a in r.vanishing_e_inverse],
    }
    inputs = {"n": args.n, "character": args.character, "p": args.p, "tau_exponent": args.tau_exponent}
    emit(args, inputs, results, ["Kato irreducibility criterion"])


def cmd_satake(args):
    weight = args.weight or (1,) + (0,) * (args.n - 1)
    if len(weight) != args.n:
        raise UsageError(f"--weight needs {args.n} entries")
    if args.at != "trivial":
        raise UsageError("only --at trivial is available")
    f = satake_minimal(weight, args.n)
    value = eigenvalue(f, trivial_hecke_matrix(args.n, args.p))
    closed = satake_closed_form(args.n)
    results = {
        "symbolic": str(value),
        "value": value.value_at(args.p),
        "closed_form": closed.value_at(args.p),
        "agrees": value == closed,
    }
    emit(args, {"n": args.n, "p": args.p, "at": args.at, "weight": list(weight)}, results, ["Satake transform of minimal weights"])


def cmd_bounds(args):
    t = hecke_matrix_of(residual_parameter(args.n))
    exponent = t.max_magnitude_exponent(0)
    refined = bound_exponent_so2n(args.n, REFINED)
    results = {
        "residual_max_exponent": exponent,
        "refined_exponent": refined,
        "lrs_exponent": bound_exponent_so2n(args.n, LRS),
        "ramanujan_exponent": bound_exponent_so2n(args.n, RAMANUJAN),
        "residual_exceeds_refined": exponent > refined,
    }
    inputs = {"n": args.n, "p": args.p, "tau_exponent": args.tau_exponent}
    if args.n == 4 and args.p is not None:
        tau = None if args.tau_exponent is None else args.p ** float(args.tau_exponent)
        results["bound_so8"] = bound_so8(args.p, tau)
    emit(args, inputs, results, ["bounds towards Ramanujan"])


def cmd_classify(args):
    psi = _parameter(args, args.n)
    report = validate(psi, args.n)
    results = {"parameter": render(psi), "valid": report.valid, "violations": [str(v) for v in report.violations]}
    if report.valid:
        if psi.is_discrete():
            c = classify(psi, args.n, remark_threshold=args.remark_threshold)
            results.update(verdict=c.verdict.value, reason=c.reason)
        else:
            results.update(verdict=None, reason="parameter is not discrete")
    emit(args, {"n": args.n, "param": args.param}, results, ["singular representations"])
    if not report.valid:
        return 1
    return 0


def cmd_hecke_matrix(args):
    psi = _parameter(args)
    t = hecke_matrix_of(psi, args.p)
    results = {
        "entries": [str(m) for m in t.entries],
        "multiset": [str(m) for m in t.multiset()],
        "outer_twist": [str(m) for m in t.outer_twist().entries],
    }
    if args.p is not None:
        results["values_at_p"] = [_value(m, args.p) for m in t.entries]
    emit(args, {"param": args.param, "p": args.p}, results, ["Hecke matrix of an Arthur parameter"])


def _value(m: Monomial, p: int) -> str:
    expr = m.to_expr()
    try:
        return str(expr.value_at(p))
    except ValueError:
        return str(expr)


def cmd_norm(args):
    t = TorusElementSO(tuple(ValuedNumber(v, args.p) for v in args.coords))
    x = norm(t)
    pair = NormPair.of(t)
    results = {
        "gl_side": list(x.full()),
        "round_trip": norm_inverse(x) == t,
        "regular": t.is_regular(),
        "strongly_theta_regular": x.is_strongly_theta_regular(),
    }
    if pair.is_regular():
        results.update(
            disc_SO=disc_SO(t).value,
            disc_twisted=disc_twisted(x).value,
            disc_gl_theta=disc_gl_theta(x).value,
        )
        if args.p != 2:
            results["delta_IV"] = str(delta_IV(pair))
    emit(args, {"p": args.p, "coords": list(args.coords)}, results, ["norm correspondence", "transfer factor"])


def cmd_char_check(args):
    if args.p == 2:
        raise UsageError("p = 2 is excluded from the identity check")
    r = check_identities(args.n, args.p, args.s, args.trials, args.seed)
    results = {"holds": r.holds, "total": r.total, "failures": list(r.failures), "summary": str(r)}
    inputs = {"n": args.n, "p": args.p, "s": args.s, "trials": args.trials, "seed": args.seed}
    emit(args, inputs, results, ["twisted character identity", "transfer factor"])
    if r.failures:
        raise TheoremViolation(f"{len(r.failures)} character identities failed")


def cmd_packet(args):
    psi = _parameter(args, args.n) if args.param else residual_parameter(args.n)
    d = packet(psi, args.n)
    results = {
        "parameter": render(psi),
        "centralizer_type": d.centralizer_type.value,
        "centralizer": d.centralizer_description,
        "component_group_order": d.component_group_order,
        "s_psi": list(d.s_psi),
        "members": [f"{m.label} (multiplicity {m.multiplicity}, character {m.character})" for m in d.members],
    }
    try:
        tc = global_type_count(psi, args.n)
        results.update(global_type_count=tc.count, note=tc.note, unramified_members=unramified_member_count(psi, args.n))
    except ValueError:
        pass
    emit(args, {"n": args.n, "param": args.param}, results, ["Arthur packets", "multiplicity formula"])


def cmd_degeneracy(args):
    r = degeneracy_theorem_check(args.n, args.trials, args.seed)
    results = {
        "all_degenerate": r.all_degenerate,
        "max_rank": r.max_rank,
        "rank_bound": r.rank_bound,
        "rank_histogram": r.rank_histogram,
        "basis_max_rank": r.basis_max_rank,
        "pfaffian_identically_zero": r.pfaffian_identically_zero,
        "axiom": r.axiom,
    }
    emit(args, {"n": args.n, "trials": args.trials, "seed": args.seed}, results, ["degenerate alternating forms"])


def cmd_selftest(args):
    """Short versions of the headline checks."""
    checks = {}
    M = LeviDescriptor.product_gl2(4)
    prod = build_intertwining_product(longest_relative_element(M), M, 4)
    checks["poles"] = prod.order_at(residue_point(4)) == -2 and normalized_order_at_s0(prod, 4) == 0
    r = kato_report(UnramifiedCharacter.residual(4))
    checks["kato"] = r.regular and r.spherical_cyclic is Verdict.TRUE
    value = eigenvalue(satake_minimal((1, 0, 0, 0)), trivial_hecke_matrix(4))
    checks["satake"] = value.value_at(2) == 135 and value == satake_closed_form(4)
    checks["degeneracy"] = degeneracy_theorem_check(4, 50, args.seed).all_degenerate
    checks["character_identity"] = check_identities(2, 3, Fraction(1, 4), 10, args.seed).holds == 10
    psi = residual_parameter(4)
    checks["packet"] = packet(psi, 4).component_group_order == 1 and global_type_count(psi, 4).count == 2
    emit(args, {"seed": args.seed}, {"checks": checks, "passed": all(checks.values())}, ["self test"])
    if not all(checks.values()):
        raise TheoremViolation("self test failed: " + ", ".join(k for k, ok in checks.items() if not ok))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")

    parser = _Parser(prog="so2n", description="Exact computations for the residual spectrum of split SO(2n).")
    parser.add_argument("--version", action="version", version=f"so2n {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("roots", cmd_roots, "roots, simple roots and rho of D_n")
    p.add_argument("--n", type=_positive, required=True)

    p = add("wm", cmd_wm, "relative Weyl set W(M)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--levi", default="gl2", help="gl2 (product of GL2 blocks), gln, or so:K")
    p.add_argument("--list", action="store_true", help="print every element")

    p = add("poles", cmd_poles, "pole order of the longest intertwining product at s0")
    p.add_argument("--n", type=_even, required=True)

    p = add("kato", cmd_kato, "Kato's criterion for the residual or trivial character")
    p.add_argument("--n", type=_even, required=True)
    p.add_argument("--character", choices=("residual", "trivial"), default="residual")
    p.add_argument("--p", type=_prime)
    p.add_argument("--tau-exponent", type=_rational, help="numeric mode: t = p^E")

    p = add("satake", cmd_satake, "Satake eigenvalue of a minimal weight")
    p.add_argument("--n", type=_even, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--at", default="trivial")
    p.add_argument("--weight", type=_int_list)

    p = add("bounds", cmd_bounds, "residual exponent against cuspidal bounds")
    p.add_argument("--n", type=_even, required=True)
    p.add_argument("--p", type=_prime)
    p.add_argument("--tau-exponent", type=_rational)

    p = add("classify", cmd_classify, "validate and classify an Arthur parameter")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--remark-threshold", action="store_true", help="flag any block with k >= n")

    p = add("hecke-matrix", cmd_hecke_matrix, "Hecke matrix of an Arthur parameter")
    p.add_argument("--param", required=True)
    p.add_argument("--p", type=_prime)

    p = add("norm", cmd_norm, "norm correspondence and discriminants of a torus element")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--coords", type=_rational_list, required=True, help="x_1,...,x_n")

    p = add("char-check", cmd_char_check, "verify the twisted character identity on random pairs")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--s", type=_rational, default=Fraction(0))
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("packet", cmd_packet, "packet descriptor of mu*sp_n + mu^-1*sp_n")
    p.add_argument("--n", type=_even, required=True)
    p.add_argument("--param", help="defaults to unit(t)*sp_n + unit(t^-1)*sp_n")

    p = add("degeneracy", cmd_degeneracy, "random forms vanishing on n_B are degenerate")
    p.add_argument("--n", type=_even, required=True)
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("selftest", cmd_selftest, "quick versions of the headline checks")
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
