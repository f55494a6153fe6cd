"""
The ``nk`` command: parse a job document, dispatch to the library, emit
a report.

A job document is a single self-describing JSON file:

    {"kind": "...", "payload": {...}, "options": {"precision": 32,
                                                  "direction": "plus"}}

kinds: complex-homology, novikov, domination, fundomain, mapping-torus,
knot, inequalities.  Polynomials are coefficient maps keyed by decimal
exponent strings ({"0": 1, "1": -2} is 1 - 2z); matrices are arrays of
rows of bare integers or coefficient maps; complexes are
{"lo", "hi", "ranks", "differentials": {degree: matrix}}.

Commands: ``nk run <file>``, ``nk validate <file>``, ``nk examples
list|run-all``.  Exit codes: 0 success, 1 a result was degraded by an
inconclusive diagonalization, 2 errors.  All report numerics are exact:
integers and coefficient maps, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from importlib import resources

from .rings import (
    DEFAULT_PRECISION,
    Direction,
    LaurentPoly,
    NotAUnit,
    NotInRationalSubring,
    expand,
)
from .linalg import (
    DimensionMismatch,
    Inconclusive,
    Matrix,
    novikov_diagonalize,
    rank_over_function_field,
)
from .complexes import (
    BasedChainComplex,
    ChainMap,
    Grade,
    NarrowingNotSupported,
    NotAComplex,
    base_change,
    integral_homology,
    morse_lower_bounds,
)
from .fundomain import (
    AlgebraicFundamentalDomain,
    InvalidDomain,
    algebraic_novikov_complex,
    assemble_mapping_cone,
    cokernel_iso_check,
    torsion_zeta,
)
from .models import (
    InternalInconsistency,
    SeifertData,
    fibering_check,
    knot_novikov_factors,
    mapping_torus_complex,
)
from .novikov import (
    check_inequalities,
    finite_domination_check,
    morse_novikov_bounds,
    novikov_homology,
)

KINDS = ("complex-homology", "novikov", "domination", "fundomain",
         "mapping-torus", "knot", "inequalities")

USER_ERRORS = (NotAComplex, NarrowingNotSupported, InvalidDomain,
               NotAUnit, NotInRationalSubring, DimensionMismatch,
               InternalInconsistency)


class ParseError(Exception):
    """Malformed document; carries the JSON path of the offence."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ValidationError(Exception):
    """Well-formed JSON that fails a semantic contract (d^2 != 0, a
    fundamental-domain identity, a shape mismatch)."""

    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class JobDocument:
    kind: str
    payload: dict
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def _need(obj, key, path, type_=None):
    if not isinstance(obj, dict):
        raise ParseError(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ParseError(f"{path}.{key}", "missing")
    v = obj[key]
    if type_ is not None and not isinstance(v, type_):
        raise ParseError(f"{path}.{key}",
                         f"expected {type_.__name__}, got {type(v).__name__}")
    return v


def _parse_entry(e, path):
    if isinstance(e, bool):
        raise ParseError(path, "booleans are not ring elements")
    if isinstance(e, int):
        return e
    if isinstance(e, dict):
        try:
            return LaurentPoly({int(k): int(v) for k, v in e.items()})
        except (TypeError, ValueError):
            raise ParseError(path, "coefficient map needs integer "
                                   "exponent keys and integer values")
    raise ParseError(path, f"expected integer or coefficient map, got {e!r}")


def _parse_matrix(obj, path, rows=None, cols=None):
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError(path, "expected an array of rows")
    width = None
    grid = []
    for i, row in enumerate(obj):
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"{path}[{i}]",
                             f"row has {len(row)} entries, expected {width}")
        grid.append([_parse_entry(e, f"{path}[{i}][{j}]")
                     for j, e in enumerate(row)])
    if width is None:
        width = cols if cols is not None else 0
    m = Matrix(len(grid), width, grid)
    if rows is not None and m.rows != rows or cols is not None and m.cols != cols:
        raise ValidationError(path, f"matrix is {m.rows}x{m.cols}, "
                                    f"expected {rows}x{cols}")
    return m


def _parse_complex(obj, path, grade=None):
    lo = _need(obj, "lo", path, int)
    hi = _need(obj, "hi", path, int)
    ranks = _need(obj, "ranks", path, list)
    if not all(isinstance(r, int) and not isinstance(r, bool) and r >= 0
               for r in ranks):
        raise ParseError(f"{path}.ranks", "expected nonnegative integers")
    if len(ranks) != hi - lo + 1:
        raise ParseError(f"{path}.ranks",
                         f"{len(ranks)} ranks for degrees [{lo},{hi}]")
    diffs = {}
    raw = obj.get("differentials", {})
    if not isinstance(raw, dict):
        raise ParseError(f"{path}.differentials", "expected an object")
    for key, mat in raw.items():
        try:
            i = int(key)
        except ValueError:
            raise ParseError(f"{path}.differentials.{key}",
                             "degree keys must be integers")
        if not lo < i <= hi:
            raise ParseError(f"{path}.differentials.{key}",
                             f"degree outside ({lo},{hi}]")
        diffs[i] = _parse_matrix(mat, f"{path}.differentials.{key}",
                                 rows=ranks[i - 1 - lo], cols=ranks[i - lo])
    if grade is None:
        laurent = any(isinstance(e, LaurentPoly)
                      for d in diffs.values() for r in d.entries for e in r)
        grade = Grade.LAURENT if laurent else Grade.Z
    elif grade is Grade.Z:
        for i, d in diffs.items():
            for r in d.entries:
                for e in r:
                    if not isinstance(e, int):
                        raise ValidationError(
                            f"{path}.differentials.{i}",
                            "integral job needs integer entries")
    try:
        return BasedChainComplex(grade, lo, hi, ranks, diffs)
    except NotAComplex as exc:
        raise ValidationError(path, f"not a complex: d o d != 0 at degree "
                                    f"{exc.degree}")
    except ValueError as exc:
        raise ValidationError(path, str(exc))


def _parse_matrix_family(obj, path):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object keyed by degree")
    out = {}
    for key, mat in obj.items():
        try:
            i = int(key)
        except ValueError:
            raise ParseError(f"{path}.{key}", "degree keys must be integers")
        out[i] = _parse_matrix(mat, f"{path}.{key}")
    return out


def _parse_chain_selfmap(c, fam, path):
    comps = {}
    for i, m in fam.items():
        if (m.rows, m.cols) != (c.rank(i), c.rank(i)):
            raise ValidationError(f"{path}.{i}",
                                  f"component is {m.rows}x{m.cols}, expected "
                                  f"{c.rank(i)}x{c.rank(i)}")
        comps[i] = m
    try:
        return ChainMap(c, c, comps)
    except ValueError as exc:
        raise ValidationError(path, str(exc))


def _parse_counts(obj, path):
    if not isinstance(obj, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise ParseError(path, "expected an array of integers")
    return obj


def parse_document(text: str) -> JobDocument:
    """Parse and fully validate a job document.

    Raises ParseError with the JSON path for malformed structure and
    ValidationError for semantic failures (shape mismatches, d^2 != 0,
    broken fundamental-domain identities).
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}", exc.msg)
    kind = _need(obj, "kind", "$", str)
    if kind not in KINDS:
        raise ParseError("$.kind", f"unknown kind {kind!r}; expected one of "
                                   f"{', '.join(KINDS)}")
    payload = _need(obj, "payload", "$", dict)
    options = obj.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("$.options", "expected an object")
    opts = {}
    if "precision" in options:
        k = options["precision"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise ParseError("$.options.precision",
                             "expected a nonnegative integer")
        opts["precision"] = k
    if "direction" in options:
        d = options["direction"]
        if d not in ("plus", "minus"):
            raise ParseError("$.options.direction", "expected plus or minus")
        opts["direction"] = d
    parsed = _PARSERS[kind](payload, "$.payload")
    return JobDocument(kind, parsed, opts)


def _parse_payload_complex(payload, path, grade=None):
    return {"complex": _parse_complex(_need(payload, "complex", path, dict),
                                      f"{path}.complex", grade)}


def _parse_payload_fundomain(payload, path):
    dom = _need(payload, "domain", path, dict)
    dpath = f"{path}.domain"
    D = _parse_complex(_need(dom, "D", dpath, dict), f"{dpath}.D", Grade.Z)
    F = _parse_complex(_need(dom, "F", dpath, dict), f"{dpath}.F", Grade.Z)
    fams = {name: _parse_matrix_family(dom.get(name, {}), f"{dpath}.{name}")
            for name in ("c", "hD", "hF")}
    try:
        fd = AlgebraicFundamentalDomain(D, F, c=fams["c"], h_D=fams["hD"],
                                        h_F=fams["hF"])
    except InvalidDomain as exc:
        raise ValidationError(dpath, str(exc))
    return {"domain": fd}


def _parse_payload_mapping_torus(payload, path):
    c = _parse_complex(_need(payload, "complex", path, dict),
                       f"{path}.complex", Grade.Z)
    fam = _parse_matrix_family(_need(payload, "h", path, dict), f"{path}.h")
    h = _parse_chain_selfmap(c, fam, f"{path}.h")
    orientation = _need(payload, "orientation", path, str)
    if orientation not in ("plus", "minus"):
        raise ParseError(f"{path}.orientation", "expected plus or minus")
    return {"h": h, "orientation": orientation}


def _parse_payload_knot(payload, path):
    base = _parse_complex(_need(payload, "base", path, dict),
                          f"{path}.base", Grade.Z)
    fam = _parse_matrix_family(_need(payload, "e", path, dict), f"{path}.e")
    e = _parse_chain_selfmap(base, fam, f"{path}.e")
    return {"seifert": SeifertData(base, e)}


def _parse_payload_inequalities(payload, path):
    lo = _need(payload, "lo", path, int)
    counts = _parse_counts(_need(payload, "counts", path, list),
                           f"{path}.counts")
    bounds = _parse_counts(_need(payload, "bounds", path, list),
                           f"{path}.bounds")
    if len(counts) != len(bounds):
        raise ValidationError(path, "counts and bounds must cover the same "
                                    "degree range")
    return {"lo": lo, "counts": counts, "bounds": bounds}


_PARSERS = {
    "complex-homology": lambda p, path: _parse_payload_complex(p, path, Grade.Z),
    "novikov": _parse_payload_complex,
    "domination": _parse_payload_complex,
    "fundomain": _parse_payload_fundomain,
    "mapping-torus": _parse_payload_mapping_torus,
    "knot": _parse_payload_knot,
    "inequalities": _parse_payload_inequalities,
}


# ---------------------------------------------------------------------------
# running


@dataclass(frozen=True)
class Report:
    kind: str
    exit_code: int
    data: dict
    text: str

    def to_json(self):
        return {"kind": self.kind, "exit_code": self.exit_code,
                "report": self.data}

    def machine(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def run(job: JobDocument, precision=None, direction=None,
        oracle=False) -> Report:
    """Dispatch a parsed job.  CLI flags beat document options beat
    defaults for precision and direction."""
    k = precision if precision is not None else \
        job.options.get("precision", DEFAULT_PRECISION)
    d = direction if direction is not None else \
        job.options.get("direction", "plus")
    dirn = Direction.PLUS if d == "plus" else Direction.MINUS
    return _RUNNERS[job.kind](job.payload, k, dirn, oracle)


def _poly_json(p):
    return p.to_json()


def _novikov_section(rep):
    lines = ["degree  b^Nov  q^Nov  torsion factors"]
    for i in range(rep.lo, rep.hi + 1):
        factors = rep.torsion_factors.get(i, [])
        shown = ", ".join(f.pretty() for f in factors) if factors else "-"
        lines.append(f"{i:>6}  {rep.b(i):>5}  {len(factors):>5}  {shown}")
    concl = "yes" if rep.conclusive else "no (q values are lower bounds)"
    lines.append(f"conclusive: {concl}")
    return lines


def _bounds_line(bounds):
    return " ".join(f"{i}:{bounds[i]}" for i in sorted(bounds))


def _run_complex_homology(payload, k, dirn, oracle):
    c = payload["complex"]
    rep = integral_homology(c)
    bounds = morse_lower_bounds(rep)
    data = {"homology": rep.to_json(),
            "morse_bounds": {str(i): bounds[i] for i in sorted(bounds)}}
    lines = ["kind: complex-homology", "degree  b  q  torsion"]
    for i in range(rep.lo, rep.hi + 1):
        t = rep.torsion_factors.get(i, [])
        lines.append(f"{i:>6}  {rep.b(i)}  {len(t)}  "
                     f"{', '.join(map(str, t)) if t else '-'}")
    lines.append(f"morse lower bounds: {_bounds_line(bounds)}")
    if oracle:
        checks = [_euler_check_int(c, rep)]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("complex-homology", 0, data, "\n".join(lines) + "\n")


def _euler_check_int(c, rep):
    chi_ranks = sum((-1) ** i * c.rank(i) for i in c.degrees())
    chi_b = sum((-1) ** i * rep.b(i) for i in c.degrees())
    return {"check": "euler-characteristic", "ok": chi_ranks == chi_b,
            "detail": f"sum (-1)^i rank_i = {chi_ranks}, "
                      f"sum (-1)^i b_i = {chi_b}"}


def _rank_vs_diag_check(c, dirn):
    ok = True
    details = []
    for i in range(c.lo + 1, c.hi + 1):
        d = c.differential(i)
        r = rank_over_function_field(d)
        try:
            s = novikov_diagonalize(d, dirn)
            agree = s.rank == r
        except Inconclusive:
            agree = True  # nothing to compare against
        if not agree:
            ok = False
            details.append(f"degree {i}: rank {r} vs diagonal {s.rank}")
    return {"check": "rank-vs-diagonalization", "ok": ok,
            "detail": "; ".join(details) if details else "all degrees agree"}


def _oracle_lines(checks):
    return [f"oracle {c['check']}: {'ok' if c['ok'] else 'FAIL'} "
            f"({c['detail']})" for c in checks]


def _run_novikov(payload, k, dirn, oracle):
    c = base_change(payload["complex"], Grade.LAURENT) \
        if payload["complex"].grade is Grade.Z else payload["complex"]
    rep = novikov_homology(c, dirn)
    bounds = morse_novikov_bounds(rep)
    data = {"novikov": rep.to_json(),
            "morse_novikov_bounds": {str(i): bounds[i] for i in sorted(bounds)}}
    lines = [f"kind: novikov (direction {dirn.value})"]
    lines += _novikov_section(rep)
    lines.append(f"morse-novikov bounds: {_bounds_line(bounds)}")
    code = 0 if rep.conclusive else 1
    if oracle:
        checks = [_rank_vs_diag_check(c, dirn)]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("novikov", code, data, "\n".join(lines) + "\n")


def _run_domination(payload, k, dirn, oracle):
    c = base_change(payload["complex"], Grade.LAURENT) \
        if payload["complex"].grade is Grade.Z else payload["complex"]
    verdict = finite_domination_check(c)
    data = {"domination": verdict.to_json()}
    lines = ["kind: domination",
             f"vanishes over Z((z)): {verdict.vanishes_plus}",
             f"vanishes over Z((z^-1)): {verdict.vanishes_minus}",
             f"finitely dominated: {verdict.finitely_dominated}"]
    if oracle:
        checks = [_rank_vs_diag_check(c, Direction.PLUS),
                  _rank_vs_diag_check(c, Direction.MINUS)]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("domination", 0, data, "\n".join(lines) + "\n")


def _run_fundomain(payload, k, dirn, oracle):
    fd = payload["domain"]
    cone = assemble_mapping_cone(fd)
    fhat = algebraic_novikov_complex(fd, "exact")
    rep = novikov_homology(fhat, dirn)
    zeta = torsion_zeta(fd)
    coker = cokernel_iso_check(fd, k)
    data = {
        "fhat_ranks": {str(i): fhat.rank(i) for i in fhat.degrees()},
        "novikov": rep.to_json(),
        "zeta": zeta.to_json(),
        "cokernel_check": {"passed": coker.passed,
                           "degree": coker.degree, "order": coker.order},
    }
    lines = [f"kind: fundomain (direction {dirn.value}, precision {k})",
             f"F^ ranks: " + " ".join(f"{i}:{fhat.rank(i)}"
                                      for i in fhat.degrees())]
    lines += _novikov_section(rep)
    lines.append(f"zeta (torsion of projection): {zeta.pretty()}")
    lines.append(f"cokernel identification through order {k}: "
                 f"{'pass' if coker.passed else f'FAIL at degree {coker.degree}, order {coker.order}'}")
    code = 0 if rep.conclusive else 1
    if oracle:
        checks = [_exact_vs_truncated_check(fd, fhat, k),
                  _cone_vs_fhat_check(cone, fhat, dirn)]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("fundomain", code, data, "\n".join(lines) + "\n")


def _exact_vs_truncated_check(fd, fhat, k):
    from .rings import TruncatedSeries
    trunc = algebraic_novikov_complex(fd, "truncated", order=k)
    ok = True
    for i in range(fhat.lo + 1, fhat.hi + 1):
        ex, tr = fhat.differential(i), trunc.differential(i)
        for r in range(ex.rows):
            for c in range(ex.cols):
                w = expand(_as_rational(ex.entry(r, c)), precision=k)
                if w != TruncatedSeries.of_poly(tr.entry(r, c), k):
                    ok = False
    return {"check": "exact-vs-truncated", "ok": ok,
            "detail": f"windows through z^{k}"}


def _as_rational(e):
    from .rings import RationalFunction
    return e if hasattr(e, "denominator") else RationalFunction(e)


def _cone_vs_fhat_check(cone, fhat, dirn):
    ra = novikov_homology(cone, dirn)
    rb = novikov_homology(fhat, dirn)
    lo, hi = min(ra.lo, rb.lo), max(ra.hi, rb.hi)
    ok = all(ra.b(i) == rb.b(i)
             and list(ra.torsion_factors.get(i, [])) ==
             list(rb.torsion_factors.get(i, []))
             for i in range(lo, hi + 1))
    return {"check": "cone-vs-algebraic-novikov", "ok": ok,
            "detail": "reports compared degreewise"}


def _run_mapping_torus(payload, k, dirn, oracle):
    c = mapping_torus_complex(payload["h"], payload["orientation"])
    rep = novikov_homology(c, dirn)
    bounds = morse_novikov_bounds(rep)
    data = {"orientation": payload["orientation"],
            "novikov": rep.to_json(),
            "morse_novikov_bounds": {str(i): bounds[i] for i in sorted(bounds)}}
    lines = [f"kind: mapping-torus (orientation {payload['orientation']}, "
             f"direction {dirn.value})"]
    lines += _novikov_section(rep)
    lines.append(f"morse-novikov bounds: {_bounds_line(bounds)}")
    code = 0 if rep.conclusive else 1
    if oracle:
        checks = [_rank_vs_diag_check(c, dirn)]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("mapping-torus", code, data, "\n".join(lines) + "\n")


def _run_knot(payload, k, dirn, oracle):
    s = payload["seifert"]
    verdict = fibering_check(s)
    factors = knot_novikov_factors(s, dirn)
    data = {"fibering": verdict.to_json(),
            "novikov_factors": {str(i): [f.to_json() for f in fs]
                                for i, fs in sorted(factors.items()) if fs}}
    lines = ["kind: knot"]
    for i in sorted(verdict.alexander):
        lines.append(f"alexander[{i}]: {verdict.alexander[i].pretty()}")
    lines.append(f"novikov homology vanishes: {verdict.novikov_vanishes}")
    lines.append(f"extreme coefficients +-1: {verdict.extreme_coeffs_unit}")
    lines.append(f"fibers: {verdict.fibers}")
    for i, fs in sorted(factors.items()):
        if fs:
            lines.append(f"novikov torsion factors[{i}]: "
                         + ", ".join(f.pretty() for f in fs))
    if verdict.base_torsion:
        lines.append("note: base homology has torsion the alexander "
                     "criterion cannot see: "
                     + ", ".join(f"H_{i}: {list(t)}"
                                 for i, t in sorted(verdict.base_torsion.items())))
    if oracle:
        checks = [_ses_check(s, verdict, dirn),
                  {"check": "fibering-criteria-agree",
                   "ok": verdict.novikov_vanishes == verdict.extreme_coeffs_unit
                   or bool(verdict.base_torsion),
                   "detail": "(ii) vs (iii)"}]
        data["oracle"] = checks
        lines += _oracle_lines(checks)
    return Report("knot", 0, data, "\n".join(lines) + "\n")


def _ses_check(s, verdict, dirn):
    """Novikov factors of the knot complex match the non-unit invariant
    factors of e + z(1-e) on each H_i."""
    from .models import induced_map_on_free_homology, _alex_entry
    factors = knot_novikov_factors(s, dirn)
    ok = True
    details = []
    for i in s.base.degrees():
        ebar = induced_map_on_free_homology(s.base, s.e, i)
        n = ebar.rows
        m = Matrix(n, n, [[_alex_entry(ebar.entries[r][c], r == c)
                           for c in range(n)] for r in range(n)])
        try:
            direct = [f for f in novikov_diagonalize(m, dirn).invariant_factors
                      if f != 1]
        except Inconclusive:
            continue
        if list(factors.get(i, ())) != direct:
            ok = False
            details.append(f"degree {i}")
    return {"check": "short-exact-sequence-factors", "ok": ok,
            "detail": "; ".join(details) if details else "all degrees agree"}


def _run_inequalities(payload, k, dirn, oracle):
    lo = payload["lo"]
    counts = {lo + i: v for i, v in enumerate(payload["counts"])}
    bounds = {lo + i: v for i, v in enumerate(payload["bounds"])}
    violations = check_inequalities(counts, bounds)
    data = {"violations": violations, "satisfied": not violations}
    lines = ["kind: inequalities",
             f"satisfied: {not violations}"]
    if violations:
        lines.append("violated at degrees: "
                     + ", ".join(str(i) for i in violations))
    return Report("inequalities", 0, data, "\n".join(lines) + "\n")


_RUNNERS = {
    "complex-homology": _run_complex_homology,
    "novikov": _run_novikov,
    "domination": _run_domination,
    "fundomain": _run_fundomain,
    "mapping-torus": _run_mapping_torus,
    "knot": _run_knot,
    "inequalities": _run_inequalities,
}


# ---------------------------------------------------------------------------
# entry point


def bundled_examples():
    """Names of the documents shipped with the package, in a fixed order."""
    root = resources.files("nk") / "examples"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def _read_bundled(name):
    return (resources.files("nk") / "examples" / name).read_text()


def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="nk",
        description="exact circle-valued Morse theory computations")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--precision", type=int, default=None, metavar="K",
                       help="series window size (default 32 or the "
                            "document's option)")
        p.add_argument("--direction", choices=("plus", "minus"), default=None,
                       help="which completion to use (default plus)")
        p.add_argument("--format", choices=("text", "machine"),
                       default="text", help="report format")
        p.add_argument("--oracle", action="store_true",
                       help="run redundant cross-checks (exact vs truncated, "
                            "rank vs diagonalization, fibering criteria)")

    p_run = sub.add_parser("run", help="run a job document")
    p_run.add_argument("file")
    add_common(p_run)

    p_val = sub.add_parser("validate", help="parse and validate only")
    p_val.add_argument("file")

    p_ex = sub.add_parser("examples", help="bundled example documents")
    ex_sub = p_ex.add_subparsers(dest="examples_command", required=True)
    ex_sub.add_parser("list", help="list bundled documents")
    p_all = ex_sub.add_parser("run-all", help="run every bundled document")
    add_common(p_all)
    return ap


def _emit(report, fmt, out):
    out.write(report.machine() if fmt == "machine" else report.text)


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    out, err = sys.stdout, sys.stderr
    try:
        if args.command == "run":
            with open(args.file) as fh:
                job = parse_document(fh.read())
            report = run(job, args.precision, args.direction, args.oracle)
            _emit(report, args.format, out)
            return report.exit_code
        if args.command == "validate":
            with open(args.file) as fh:
                parse_document(fh.read())
            out.write("ok\n")
            return 0
        if args.command == "examples":
            if args.examples_command == "list":
                for name in bundled_examples():
                    out.write(name + "\n")
                return 0
            code = 0
            for name in bundled_examples():
                job = parse_document(_read_bundled(name))
                report = run(job, args.precision, args.direction, args.oracle)
                out.write(f"== {name}\n")
                _emit(report, args.format, out)
                code = max(code, report.exit_code)
            return code
    except (ParseError, ValidationError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except Inconclusive as exc:
        err.write(f"inconclusive: {exc}\n")
        return 1
    except USER_ERRORS as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
