"""
Text formats: Lie algebra input files and line-delimited reports.

Algebra file, one record per line ('#' starts a comment):

    field rationals            # or prime:p; optional
    dim 2
    bracket 0 1 1 0            # [e0, e1] = 1*e0 + 0*e1; (1, 0) follows by antisymmetry
    module 1                   # optional, default: trivial one-dimensional
    action 0 0 0 1/2           # rho(e0)[0, 0] = 1/2

Report lines are `kind key=value ...`; a value containing whitespace, quotes
or '=' is written as a JSON string. Exact scalars print as `p` or `p/q`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import __version__
from .leibniz import InvalidStructure, LieAlgebraData, ModuleData, trivial_module
from .linalg import QQ, SparseMatrix, parse_field

REPORT_FORMAT = "shlie-report 1"


class InputError(ValueError):
    pass


def _scalar(tok, where):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError("%s: bad scalar %r" % (where, tok))


def _int(tok, where):
    try:
        return int(tok)
    except ValueError:
        raise InputError("%s: bad integer %r" % (where, tok))


def parse_algebra(text, source="<algebra>"):
    """Returns (LieAlgebraData, ModuleData, field or None)."""
    field = None
    dim = None
    brackets = {}
    mdim = None
    actions = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        where = "%s:%d" % (source, lineno)
        kind, args = line[0], line[1:]
        if kind == "field":
            try:
                field = parse_field(args[0])
            except (ValueError, IndexError) as e:
                raise InputError("%s: %s" % (where, e))
        elif kind == "dim":
            dim = _int(args[0], where) if args else None
            if dim is None or dim < 1:
                raise InputError("%s: dim must be a positive integer" % where)
        elif kind == "bracket":
            if dim is None:
                raise InputError("%s: bracket before dim" % where)
            if len(args) != 2 + dim:
                raise InputError("%s: bracket needs i j and %d coefficients" % (where, dim))
            i, j = _int(args[0], where), _int(args[1], where)
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError("%s: basis index out of range" % where)
            coeffs = {k: _scalar(t, where) for k, t in enumerate(args[2:])}
            if (i, j) in brackets or (j, i) in brackets:
                raise InputError("%s: bracket [e%d,e%d] given twice" % (where, i, j))
            if i == j and any(coeffs.values()):
                raise InputError("%s: antisymmetry requires [e%d,e%d] = 0" % (where, i, i))
            brackets[i, j] = {k: v for k, v in coeffs.items() if v}
        elif kind == "module":
            mdim = _int(args[0], where) if args else 0
            if mdim < 1:
                raise InputError("%s: module dimension must be positive" % where)
        elif kind == "action":
            if mdim is None or dim is None:
                raise InputError("%s: action before dim/module" % where)
            if len(args) != 4:
                raise InputError("%s: action needs generator row col value" % where)
            g, r, c = (_int(t, where) for t in args[:3])
            if not (0 <= g < dim and 0 <= r < mdim and 0 <= c < mdim):
                raise InputError("%s: action index out of range" % where)
            actions.setdefault(g, {})[r, c] = _scalar(args[3], where)
        else:
            raise InputError("%s: unknown record %r" % (where, kind))
    if dim is None:
        raise InputError("%s: missing dim record" % source)
    try:
        A = LieAlgebraData.from_brackets(dim, brackets, name=source)
        if mdim is None:
            M = trivial_module(A)
        else:
            mats = [SparseMatrix(mdim, mdim, actions.get(g, {})) for g in range(dim)]
            M = ModuleData(mdim, mats, A, "M")
    except InvalidStructure as e:
        raise InputError("%s: %s" % (source, e))
    return A, M, field


def load_algebra(path):
    with open(path) as f:
        return parse_algebra(f.read(), source=path)


def format_algebra(A, M=None, field=None):
    lines = []
    if field is not None:
        lines.append("field %s" % field.name)
    lines.append("dim %d" % A.dim)
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            vec = A.bracket_basis(i, j)
            if vec:
                lines.append("bracket %d %d %s" % (i, j, " ".join(fmt_scalar(vec.get(k, 0)) for k in range(A.dim))))
    if M is not None:
        lines.append("module %d" % M.dim)
        for g, mat in enumerate(M.action):
            for (r, c), v in sorted(mat.entries.items()):
                lines.append("action %d %d %d %s" % (g, r, c, fmt_scalar(v)))
    return "\n".join(lines) + "\n"


def fmt_scalar(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else "%d/%d" % (v.numerator, v.denominator)


def matrix_records(name, m):
    """Rows of `entry` records (row, col, numerator, denominator) for a matrix."""
    out = [("matrix", {"name": name, "rows": m.nrows, "cols": m.ncols, "nnz": len(m.entries)})]
    for (r, c), v in sorted(m.entries.items()):
        v = Fraction(v)
        out.append(("entry", {"matrix": name, "row": r, "col": c, "num": v.numerator, "den": v.denominator}))
    return out


def read_matrix_records(lines):
    """Inverse of matrix_records on rendered text lines; returns {name: SparseMatrix}."""
    shapes, entries = {}, {}
    for kind, fields in parse_report(lines):
        if kind == "matrix":
            shapes[fields["name"]] = (int(fields["rows"]), int(fields["cols"]))
            entries.setdefault(fields["name"], {})
        elif kind == "entry":
            v = Fraction(int(fields["num"]), int(fields["den"]))
            entries.setdefault(fields["matrix"], {})[int(fields["row"]), int(fields["col"])] = v
    return {name: SparseMatrix(*shapes[name], entries.get(name, {})) for name in shapes}


_PLAIN = re.compile(r'^[^\s"=]+$')


def _render_value(v):
    if isinstance(v, bool):
        v = "pass" if v else "fail"
    elif isinstance(v, (list, tuple)):
        v = ",".join(str(x) for x in v)
    elif isinstance(v, Fraction):
        v = fmt_scalar(v)
    v = str(v)
    return v if _PLAIN.match(v) else json.dumps(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt_scalar(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


class Report:
    """Ordered records plus verdicts; rendering is deterministic."""

    def __init__(self, command, field=QQ):
        self.command = list(command)
        self.field = field.name
        self.records = []
        self.verdicts = []
        self.stats = []

    def add(self, kind, **fields):
        self.records.append((kind, fields))

    def extend(self, records):
        self.records.extend(records)

    def verdict(self, name, ok, detail=""):
        self.verdicts.append((name, bool(ok), detail))

    def stat(self, name, value):
        self.stats.append((name, value))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.verdicts)

    def lines(self, with_stats=False):
        head = [("shlie-report", {"format": 1, "version": __version__}),
                ("command", {"argv": " ".join(self.command)}),
                ("field", {"name": self.field})]
        body = list(self.records)
        body += [("verdict", {"name": n, "result": ok, **({"detail": d} if d else {})}) for n, ok, d in self.verdicts]
        if with_stats:
            body += [("stat", {"name": n, "value": v}) for n, v in self.stats]
        body.append(("status", {"result": self.ok}))
        return head + body

    def to_text(self, with_stats=False):
        out = []
        for kind, fields in self.lines(with_stats):
            parts = [kind] + ["%s=%s" % (k, _render_value(v)) for k, v in fields.items()]
            out.append(" ".join(parts))
        return "\n".join(out) + "\n"

    def to_json(self, with_stats=False):
        data = {
            "format": REPORT_FORMAT,
            "version": __version__,
            "command": self.command,
            "field": self.field,
            "records": [{"kind": k, **_jsonable(f)} for k, f in self.records],
            "verdicts": [{"name": n, "result": "pass" if ok else "fail", "detail": d} for n, ok, d in self.verdicts],
            "status": "pass" if self.ok else "fail",
        }
        if with_stats:
            data["stats"] = {n: _jsonable(v) for n, v in self.stats}
        return json.dumps(data, indent=2, sort_keys=False) + "\n"


def parse_report(lines):
    """Split rendered report lines back into (kind, {key: str}) pairs."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    token = re.compile(r'(\w+)=("(?:[^"\\]|\\.)*"|\S+)')
    out = []
    for line in lines:
        if not line.strip():
            continue
        kind, _, rest = line.partition(" ")
        fields = {}
        for key, val in token.findall(rest):
            fields[key] = json.loads(val) if val.startswith('"') else val
        out.append((kind, fields))
    return out
