"""Line-oriented problem files read by the command-line tool.

A problem file is a sequence of sections in this fixed order, each optional::

    VARS x:<m> y:<n>        variable name prefixes and counts
    DEGREE <p>
    MAP                     one polynomial per line, n lines, in the x variables
    FIBER                   one point per line
    TARGET <point>
    SERIES <role>           repeatable; series lines "num/den (a1,...,an)"
    JET                     repeatable, one block per fiber point, in x
    FIELD                   jet field: "n p" header then "point (...)" blocks
    SUBSET                  one point per line
    FIELDPOLY               one polynomial line in (a_1..a_n, y_1..y_n)
    CURVE <d>               n polynomial lines in d parameters
    OPTIONS                 "key value" lines: l, k, r, tolerance, max-degree

A polynomial line is a run of terms ``num/den (a1,...,an)``.  Rationals are
always written ``num/den``.  ``#`` starts a comment line.
"""

import re
from dataclasses import dataclass, field

from .series import Polynomial, TruncatedSeries, parse_point, parse_rational, parse_term
from .whitney import parse_field

__all__ = ["SECTION_ORDER", "SERIES_ROLES", "Problem", "ProblemParseError", "parse_problem"]

SECTION_ORDER = (
    "VARS", "DEGREE", "MAP", "FIBER", "TARGET", "SERIES", "JET",
    "FIELD", "SUBSET", "FIELDPOLY", "CURVE", "OPTIONS",
)
REPEATABLE = {"SERIES", "JET"}
SERIES_ROLES = ("dividend", "divisor", "generator", "input")
OPTION_KEYS = {"l": int, "k": int, "r": int, "max-degree": int, "tolerance": parse_rational}

_HEADER = re.compile(r"^([A-Z][A-Z0-9_-]*)(?:\s+(.*))?$")
_TERM = re.compile(r"(-?\d+/-?\d+)\s*(\([^)]*\))")


class ProblemParseError(ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


@dataclass
class Problem:
    m: int = None
    n: int = None
    x_name: str = "x"
    y_name: str = "y"
    p: int = None
    map_lines: list = field(default_factory=list)
    fiber: list = field(default_factory=list)
    target: tuple = None
    series: list = field(default_factory=list)  # (role, Polynomial-or-Series)
    jets: list = field(default_factory=list)
    jet_field: object = None
    subset: list = field(default_factory=list)
    field_poly: Polynomial = None
    curve: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    sections: list = field(default_factory=list)

    def names(self, which):
        prefix, count = (self.x_name, self.m) if which == "x" else (self.y_name, self.n)
        if count == 1:
            return [prefix]
        return [f"{prefix}{i + 1}" for i in range(count)]


def _parse_poly_line(text, nvars, lineno, col0):
    pos = 0
    terms = {}
    stripped = text.rstrip()
    while pos < len(stripped):
        if stripped[pos] in " \t+":
            pos += 1
            continue
        mt = _TERM.match(stripped, pos)
        if not mt:
            raise ProblemParseError("expected a term 'num/den (a1,...,an)'", lineno, col0 + pos)
        try:
            a, c = parse_term(mt.group(0))
        except ValueError as exc:
            raise ProblemParseError(str(exc), lineno, col0 + pos) from None
        if len(a) != nvars:
            raise ProblemParseError(f"exponent {a} should have {nvars} entries", lineno, col0 + pos)
        terms[a] = terms.get(a, 0) + c
        pos = mt.end()
    return Polynomial(nvars, terms)


def _split_sections(text):
    sections = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        mh = _HEADER.match(line)
        if mh and not line[0].isspace():
            name = mh.group(1)
            if name not in SECTION_ORDER:
                raise ProblemParseError(f"unknown section {name}", lineno)
            sections.append([name, mh.group(2) or "", lineno, []])
        else:
            if not sections:
                raise ProblemParseError("content before the first section", lineno)
            sections[-1][3].append((lineno, line))
    return sections


def _need(value, what, lineno):
    if value is None:
        raise ProblemParseError(f"{what} must be declared before this section", lineno)
    return value


def parse_problem(text):
    prob = Problem()
    last_rank = -1
    seen = set()
    for name, arg, lineno, body in _split_sections(text):
        rank = SECTION_ORDER.index(name)
        if rank < last_rank or (name in seen and name not in REPEATABLE):
            raise ProblemParseError(f"section {name} out of order or repeated", lineno)
        if name in seen and name in REPEATABLE and rank != last_rank:
            raise ProblemParseError(f"{name} blocks must be consecutive", lineno)
        last_rank = rank
        seen.add(name)
        prob.sections.append(name)
        handler = _HANDLERS[name]
        handler(prob, arg, lineno, body)
    return prob


def _no_body(name, body):
    if body:
        ln, _ = body[0]
        raise ProblemParseError(f"{name} takes no body lines", ln)


def _vars(prob, arg, lineno, body):
    _no_body("VARS", body)
    parts = arg.split()
    if len(parts) != 2:
        raise ProblemParseError("VARS needs 'x:<m> y:<n>'", lineno)
    counts = []
    for part in parts:
        name, sep, cnt = part.partition(":")
        if not sep or not name.isidentifier() or not cnt.isdigit() or int(cnt) < 1:
            raise ProblemParseError(f"bad variable declaration {part!r}", lineno)
        counts.append((name, int(cnt)))
    (prob.x_name, prob.m), (prob.y_name, prob.n) = counts


def _degree(prob, arg, lineno, body):
    _no_body("DEGREE", body)
    if not arg.strip().isdigit():
        raise ProblemParseError("DEGREE needs a nonnegative integer", lineno)
    prob.p = int(arg)


def _map(prob, arg, lineno, body):
    m = _need(prob.m, "VARS", lineno)
    n = prob.n
    prob.map_lines = [_parse_poly_line(line, m, ln, 1) for ln, line in body]
    if len(prob.map_lines) != n:
        raise ProblemParseError(f"MAP needs {n} component lines, got {len(prob.map_lines)}", lineno)


def _point_line(line, dim, ln):
    try:
        pt = parse_point(line)
    except ValueError as exc:
        raise ProblemParseError(str(exc), ln, len(line) - len(line.lstrip()) + 1) from None
    if dim is not None and len(pt) != dim:
        raise ProblemParseError(f"point {line.strip()} should have {dim} coordinates", ln)
    return pt


def _fiber(prob, arg, lineno, body):
    m = _need(prob.m, "VARS", lineno)
    prob.fiber = [_point_line(line, m, ln) for ln, line in body]


def _target(prob, arg, lineno, body):
    _no_body("TARGET", body)
    prob.target = _point_line(arg, _need(prob.n, "VARS", lineno), lineno)


def _series_lines(body, nvars, p):
    terms = {}
    for ln, line in body:
        poly = _parse_poly_line(line, nvars, ln, 1)
        if len(_TERM.findall(line)) != 1:
            raise ProblemParseError("series blocks take one term per line", ln)
        for a, c in poly.items():
            if a in terms:
                raise ProblemParseError(f"exponent {a} listed twice", ln)
            if sum(a) > p:
                raise ProblemParseError(f"term {a} has degree above p={p}", ln)
            terms[a] = c
    return TruncatedSeries(nvars, p, terms)


def _series(prob, arg, lineno, body):
    role = arg.strip()
    if role not in SERIES_ROLES:
        raise ProblemParseError(f"SERIES role must be one of {', '.join(SERIES_ROLES)}", lineno)
    n = _need(prob.n, "VARS", lineno)
    p = _need(prob.p, "DEGREE", lineno)
    prob.series.append((role, _series_lines(body, n, p)))


def _jet(prob, arg, lineno, body):
    m = _need(prob.m, "VARS", lineno)
    p = _need(prob.p, "DEGREE", lineno)
    prob.jets.append(_series_lines(body, m, p))


def _field(prob, arg, lineno, body):
    text = "\n".join(line for _, line in body)
    try:
        prob.jet_field = parse_field(text)
    except ValueError as exc:
        raise ProblemParseError(f"FIELD: {exc}", lineno) from None


def _subset(prob, arg, lineno, body):
    dim = prob.jet_field.n if prob.jet_field is not None else None
    prob.subset = [_point_line(line, dim, ln) for ln, line in body]


def _fieldpoly(prob, arg, lineno, body):
    n = _need(prob.n, "VARS", lineno)
    if len(body) != 1:
        raise ProblemParseError("FIELDPOLY takes exactly one polynomial line", lineno)
    ln, line = body[0]
    prob.field_poly = _parse_poly_line(line, 2 * n, ln, 1)


def _curve(prob, arg, lineno, body):
    n = _need(prob.n, "VARS", lineno)
    if not arg.strip().isdigit() or int(arg) < 1:
        raise ProblemParseError("CURVE needs the parameter count", lineno)
    d = int(arg)
    prob.curve = [_parse_poly_line(line, d, ln, 1) for ln, line in body]
    if len(prob.curve) != n:
        raise ProblemParseError(f"CURVE needs {n} component lines", lineno)


def _options(prob, arg, lineno, body):
    for ln, line in body:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in OPTION_KEYS:
            raise ProblemParseError(f"unknown option line {line.strip()!r}", ln)
        key, value = parts
        try:
            prob.options[key] = OPTION_KEYS[key](value)
        except ValueError as exc:
            col = line.index(value) + 1
            raise ProblemParseError(f"bad value for {key}: {exc}", ln, col) from None


_HANDLERS = {
    "VARS": _vars, "DEGREE": _degree, "MAP": _map, "FIBER": _fiber, "TARGET": _target,
    "SERIES": _series, "JET": _jet, "FIELD": _field, "SUBSET": _subset,
    "FIELDPOLY": _fieldpoly, "CURVE": _curve, "OPTIONS": _options,
}
