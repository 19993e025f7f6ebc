"""Command-line front end.

Usage: ``jetcomp <command> <problem-file> [--output text|json]
[--tolerance num/den] [--max-degree P]``.

Exit status: 0 on success, 1 when the computation returns a negative
mathematical answer (not composite, not stabilized, a check fails),
2 on usage or input errors.
"""

import argparse
import json
import sys

from . import monomials as mono
from .diagrams import (
    complement_basis,
    diagram_of,
    ideal_from_generators,
    normal_form,
    standard_basis,
)
from .division import divide
from .errors import DimensionError, NotCompositeError, PreconditionError
from .problem import ProblemParseError, parse_problem
from .relations import (
    FiberTuple,
    normal_form_at,
    ranks,
    refinement_dimensions,
    relations_ideal,
    solve_composite,
    stabilization_degree,
)
from .series import format_point, format_rational, format_series, parse_rational
from .taylor import PolyMap, l_matrix
from .whitney import glue_truncation_check, prop32_check, whitney_defect

COMMANDS = (
    "divide", "diagram", "std-basis", "complement", "normal-form", "l-matrix",
    "relations", "nf", "composite", "stabilize", "whitney-defect", "prop32", "glue-check",
)

FIBER_NOTE = ("fiber points are taken as given; if they are a sample of a larger fiber "
              "the computed ideal can only be larger than the true one")


class InputError(Exception):
    pass


def _series_json(s):
    return [[format_rational(c), mono.format_exponent(a)] for a, c in s.items()]


def _exp(a):
    return mono.format_exponent(a)


class Output:
    """Collects text lines and a parallel JSON document."""

    def __init__(self):
        self.lines = []
        self.data = {}

    def line(self, text=""):
        self.lines.append(text)

    def series(self, title, s, key=None, store=True):
        self.line(title)
        body = format_series(s)
        if body:
            self.lines.append(body)
        if store:
            self.data[key or title] = _series_json(s)
        return _series_json(s)


def _require(cond, message):
    if not cond:
        raise InputError(message)


def _generators(prob, role):
    return [s for r, s in prob.series if r == role]


def _ideal(prob):
    _require(prob.n is not None and prob.p is not None, "VARS and DEGREE are required")
    return ideal_from_generators(_generators(prob, "generator"), prob.n, prob.p)


def _fiber(prob):
    _require(prob.map_lines, "MAP is required")
    _require(prob.fiber, "FIBER is required")
    phi = PolyMap(prob.m, tuple(prob.map_lines))
    try:
        return FiberTuple(phi, tuple(prob.fiber), prob.target)
    except PreconditionError as exc:
        raise InputError(f"bad fiber: {exc}") from None


def _degree(prob):
    _require(prob.p is not None, "DEGREE is required")
    return prob.p


def cmd_divide(prob, args, out):
    dividends = _generators(prob, "dividend")
    _require(len(dividends) == 1, "exactly one 'SERIES dividend' block is required")
    res = divide(dividends[0], _generators(prob, "divisor"))
    out.data["quotients"] = []
    for i, q in enumerate(res.quotients, 1):
        out.data["quotients"].append(out.series(f"quotient {i}", q, store=False))
    out.series("remainder", res.remainder)
    return 0


def cmd_diagram(prob, args, out):
    d = diagram_of(_ideal(prob))
    out.line("vertices")
    for v in d.vertices:
        out.line(_exp(v))
    out.data["vertices"] = [_exp(v) for v in d.vertices]
    return 0


def _emit_basis(out, basis):
    out.data["standard_basis"] = []
    for e in basis:
        if e.is_tail:
            out.line(f"vertex {_exp(e.vertex)} monomial")
            out.data["standard_basis"].append({"vertex": _exp(e.vertex), "monomial": True})
        else:
            terms = out.series(f"vertex {_exp(e.vertex)}", e.series, store=False)
            out.data["standard_basis"].append({"vertex": _exp(e.vertex), "terms": terms})


def cmd_std_basis(prob, args, out):
    _emit_basis(out, standard_basis(_ideal(prob)))
    return 0


def cmd_complement(prob, args, out):
    comp = complement_basis(diagram_of(_ideal(prob)), prob.p)
    out.line("complement")
    for b in comp:
        out.line(_exp(b))
    out.data["complement"] = [_exp(b) for b in comp]
    return 0


def _input_series(prob):
    inputs = _generators(prob, "input")
    _require(len(inputs) == 1, "exactly one 'SERIES input' block is required")
    return inputs[0]


def cmd_normal_form(prob, args, out):
    v = normal_form(_input_series(prob), _ideal(prob))
    out.series("normal-form", v, key="normal_form")
    return 0


def cmd_l_matrix(prob, args, out):
    fiber = _fiber(prob)
    p = _degree(prob)
    out.data["matrices"] = []
    for b in fiber.points:
        mat = l_matrix(fiber.phi, b, p)
        out.line(f"point {format_point(b)}")
        out.line(mat.to_tsv(label=_exp))
        out.data["matrices"].append({
            "point": format_point(b),
            "rows": [_exp(r) for r in mat.row_labels],
            "columns": [_exp(c) for c in mat.col_labels],
            "entries": [[format_rational(v) for v in row] for row in mat.rows],
        })
    return 0


def _relations(prob):
    fiber = _fiber(prob)
    p = _degree(prob)
    return fiber, relations_ideal(fiber, p)


def cmd_relations(prob, args, out):
    fiber, rel = _relations(prob)
    out.line(f"target {format_point(fiber.target)}")
    out.line(f"fiber-points {fiber.q}")
    for b in fiber.points:
        out.line(f"point {format_point(b)}")
    refinement = refinement_dimensions(fiber, rel.p)
    out.line("kernel-dimension-by-points " + " ".join(str(d) for d in refinement))
    out.line(f"kernel-dimension {rel.ideal.dim}")
    out.line("vertices")
    for v in rel.diagram.vertices:
        out.line(_exp(v))
    _emit_basis(out, rel.standard_basis)
    out.line("delta")
    for b in rel.delta:
        out.line(_exp(b))
    out.line(f"note {FIBER_NOTE}")
    out.data.update({
        "target": format_point(fiber.target),
        "fiber_points": [format_point(b) for b in fiber.points],
        "kernel_dimension_by_points": list(refinement),
        "kernel_dimension": rel.ideal.dim,
        "vertices": [_exp(v) for v in rel.diagram.vertices],
        "delta": [_exp(b) for b in rel.delta],
        "note": FIBER_NOTE,
    })
    if "l" in prob.options:
        l = prob.options["l"]
        rho0, rho1 = ranks(fiber, rel.p, l)
        out.line(f"rho0 {rho0}")
        out.line(f"rho1 {rho1}")
        out.data.update({"l": l, "rho0": rho0, "rho1": rho1})
    return 0


def cmd_nf(prob, args, out):
    _, rel = _relations(prob)
    v = normal_form_at(_input_series(prob), rel)
    out.series("normal-form", v, key="normal_form")
    return 0


def cmd_composite(prob, args, out):
    fiber, rel = _relations(prob)
    _require(len(prob.jets) == fiber.q, f"need one JET block per fiber point ({fiber.q})")
    try:
        v = solve_composite(prob.jets, rel)
    except NotCompositeError as exc:
        cert = {"beta": _exp(exc.beta), "nu": exc.point_index + 1, "row": exc.row + 1}
        out.line(f"not-composite beta={cert['beta']} nu={cert['nu']} row={cert['row']}")
        out.data["composite"] = False
        out.data["certificate"] = cert
        return 1
    out.data["composite"] = True
    out.series("composite", v, key="V")
    shown = v.to_string(prob.names("y"))
    out.line(f"V = {shown}")
    out.data["V_display"] = shown
    return 0


def cmd_stabilize(prob, args, out):
    fiber = _fiber(prob)
    _require("l" in prob.options, "OPTIONS must set l")
    l = prob.options["l"]
    p_max = args.max_degree if args.max_degree is not None else prob.options.get("max-degree")
    _require(p_max is not None, "give --max-degree or the max-degree option")
    st = stabilization_degree(fiber, l, p_max)
    out.line(f"l {l}")
    out.line("dims " + " ".join(str(d) for d in st.dims))
    out.data.update({"l": l, "p_max": p_max, "dims": list(st.dims)})
    if st.stabilized:
        out.line(f"stabilized-at {st.degree}")
        out.data["stabilized_at"] = st.degree
        return 0
    out.line(f"not-stabilized {p_max}")
    out.data["stabilized_at"] = None
    return 1


def _tolerance(prob, args):
    if args.tolerance is not None:
        return args.tolerance
    return prob.options.get("tolerance")


def _emit_table(out, key, table):
    rows = []
    for e in table.entries:
        row = {
            "a": format_point(e.a), "b": format_point(e.b), "beta": _exp(e.beta),
            "numerator": format_rational(e.numerator), "dist_sq": format_rational(e.dist_sq),
            "power": e.power, "quotient_sq": format_rational(e.quotient_sq),
        }
        rows.append(row)
        out.line("\t".join([row["a"], row["b"], row["beta"], row["numerator"],
                            row["dist_sq"], str(e.power), row["quotient_sq"]]))
    out.line(f"{key}-max-quotient-sq {format_rational(table.max_sq)}")
    out.data[key] = {"entries": rows, "max_quotient_sq": format_rational(table.max_sq)}


def cmd_whitney_defect(prob, args, out):
    _require(prob.jet_field is not None, "FIELD is required")
    table = whitney_defect(prob.jet_field)
    out.line("a\tb\tbeta\tnumerator\tdist_sq\tpower\tquotient_sq")
    _emit_table(out, "defect", table)
    tau = _tolerance(prob, args)
    if tau is None:
        return 0
    ok = table.passes(tau)
    out.line(f"tolerance {format_rational(tau)} {'pass' if ok else 'fail'}")
    out.data.update({"tolerance": format_rational(tau), "pass": ok})
    return 0 if ok else 1


def cmd_prop32(prob, args, out):
    _require(prob.field_poly is not None, "FIELDPOLY is required")
    _require(prob.curve, "CURVE is required")
    res = prop32_check(prob.field_poly, prob.curve, _degree(prob))
    out.data["holds"] = res.holds
    out.data["residuals"] = []
    for k, r in enumerate(res.residuals, 1):
        out.data["residuals"].append(out.series(f"residual {k}", r, store=False))
    out.line(f"holds {str(res.holds).lower()}")
    return 0 if res.holds else 1


def cmd_glue_check(prob, args, out):
    _require(prob.jet_field is not None, "FIELD is required")
    for key in ("k", "r"):
        _require(key in prob.options, f"OPTIONS must set {key}")
    tau = _tolerance(prob, args)
    _require(tau is not None, "a tolerance is required")
    rep = glue_truncation_check(prob.jet_field, prob.subset, prob.options["k"],
                                prob.options["r"], tau)
    out.line(f"mu-subset {format_rational(rep.mu_b)}")
    out.line(f"mu-rest {format_rational(rep.mu_rest)}")
    out.line(f"max-quotient-sq-subset {format_rational(rep.defect_b.max_sq)}")
    out.line(f"max-quotient-sq-rest {format_rational(rep.defect_rest.max_sq)}")
    out.line(f"max-quotient-sq-truncated {format_rational(rep.defect_truncated.max_sq)}")
    out.line(f"tolerance-sq {format_rational(tau * tau)}")
    out.line(f"tail-sup {rep.tail_sup.format()}")
    out.line(f"tolerance-truncated {rep.tau_truncated.format()}")
    out.line("identity u v alpha truncated full tail")
    for row in rep.identity_rows:
        out.line("\t".join([format_point(row.u), format_point(row.v), _exp(row.alpha),
                            format_rational(row.truncated_difference),
                            format_rational(row.full_difference), format_rational(row.tail)]))
    out.line(f"identity {'ok' if rep.identity_holds else 'broken'}")
    out.line(f"result {'pass' if rep.passed else 'fail'}")
    out.line(f"note {rep.note}")
    out.data.update({
        "mu_subset": format_rational(rep.mu_b),
        "mu_rest": format_rational(rep.mu_rest),
        "max_quotient_sq_subset": format_rational(rep.defect_b.max_sq),
        "max_quotient_sq_rest": format_rational(rep.defect_rest.max_sq),
        "max_quotient_sq_truncated": format_rational(rep.defect_truncated.max_sq),
        "tolerance_sq": format_rational(tau * tau),
        "tail_sup": rep.tail_sup.format(),
        "tolerance_truncated": rep.tau_truncated.format(),
        "identity": [[format_point(r.u), format_point(r.v), _exp(r.alpha),
                      format_rational(r.truncated_difference),
                      format_rational(r.full_difference), format_rational(r.tail)]
                     for r in rep.identity_rows],
        "identity_holds": rep.identity_holds,
        "pass": rep.passed,
        "note": rep.note,
    })
    return 0 if rep.passed else 1


HANDLERS = {
    "divide": cmd_divide, "diagram": cmd_diagram, "std-basis": cmd_std_basis,
    "complement": cmd_complement, "normal-form": cmd_normal_form, "l-matrix": cmd_l_matrix,
    "relations": cmd_relations, "nf": cmd_nf, "composite": cmd_composite,
    "stabilize": cmd_stabilize, "whitney-defect": cmd_whitney_defect, "prop32": cmd_prop32,
    "glue-check": cmd_glue_check,
}


def _rational_arg(text):
    try:
        value = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if value < 0:
        raise argparse.ArgumentTypeError("tolerance must be nonnegative")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="jetcomp", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("problem", help="problem file, or - for standard input")
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--tolerance", type=_rational_arg, default=None, metavar="NUM/DEN")
    parser.add_argument("--max-degree", type=int, default=None, metavar="P")
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.problem == "-":
            text = sys.stdin.read()
        else:
            with open(args.problem, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"jetcomp: cannot read {args.problem}: {exc.strerror}", file=stderr)
        return 2
    try:
        prob = parse_problem(text)
    except ProblemParseError as exc:
        print(f"jetcomp: {args.problem}:{exc.line}:{exc.column}: {exc.message}", file=stderr)
        return 2
    out = Output()
    out.data["command"] = args.command
    try:
        code = HANDLERS[args.command](prob, args, out)
    except (InputError, DimensionError, PreconditionError) as exc:
        print(f"jetcomp: {args.command}: {exc}", file=stderr)
        return 2
    out.data["exit_code"] = code
    if args.output == "json":
        stdout.write(json.dumps(out.data, indent=2) + "\n")
    else:
        stdout.write("\n".join(out.lines) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
