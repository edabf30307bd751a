"""``catlike`` command line.  Exit codes: 0 pass, 1 a mathematical check failed, 2 usage error."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import catalog
from .homog import homogenize, homogenize_sequence
from .polyring import PolyMatrix, Polynomial, VarSet, parse_poly
from .recmatrix import build_triangle, hankel, jacobi_matrix
from .series import solve_d
from .totalpos import check_bc_decomposition, check_lemma_key, check_tridiagonal_xtp, check_xtp
from .weightdsl import WeightSystem, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _parse_at(items) -> dict:
    point = {}
    for item in items or ():
        for part in item.split(","):
            if "=" not in part:
                raise UsageError(f"--at expects var=int, got {part!r}")
            name, val = part.split("=", 1)
            try:
                v = int(val)
            except ValueError:
                raise UsageError(f"--at value for {name} must be an integer") from None
            if v < 0:
                raise UsageError(f"--at value for {name} must be nonnegative")
            point[name.strip()] = v
    return point


def _preset_args(ns) -> tuple:
    base, parsed = catalog.parse_preset_name(ns.preset)
    if parsed:
        return parsed
    if base == "ex3_4" and ns.u is not None:
        return (ns.u,)
    if base == "counterexample" and (ns.a is not None or ns.b is not None):
        return (ns.a or 0, ns.b or 0)
    if base == "ex3_3_threshold" and ns.s:
        return tuple(int(x) for x in ns.s.split(","))
    return ()


def _load_preset(ns) -> catalog.Preset:
    return catalog.preset(ns.preset, *_preset_args(ns))


def _load_weights(ns) -> WeightSystem:
    if getattr(ns, "preset", None):
        return _load_preset(ns).weights
    if getattr(ns, "weights", None):
        with open(ns.weights) as fh:
            return WeightSystem.from_json(json.load(fh))
    raise UsageError("give --preset NAME or --weights FILE")


def _check_point(point, vs: VarSet):
    extra = [k for k in point if k not in vs]
    if extra:
        raise UsageError(f"--at names undeclared variables {extra}; declared {list(vs.names)}")
    missing = [k for k in vs.names if k not in point]
    if point and missing:
        raise UsageError(f"--at must assign every variable; missing {missing}")


def _emit(obj, ns):
    if ns.json:
        print(json.dumps(obj, indent=None if ns.compact else 2))
    else:
        print(obj)


def _add_source(p, *, weights=True):
    p.add_argument("--preset", help="preset name, e.g. ex3_1, ex3_4(5), counterexample(1,2)")
    if weights:
        p.add_argument("--weights", help="weight-system JSON file")
    p.add_argument("--u", type=int, help="parameter u for ex3_4")
    p.add_argument("--a", type=int, help="parameter a for counterexample")
    p.add_argument("--b", type=int, help="parameter b for counterexample")
    p.add_argument("--s", help="comma-separated thresholds for ex3_3_threshold")


def _add_common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--compact", action="store_true", help="single-line JSON")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


# ----------------------------------------------------------------- commands

def cmd_gen(ns) -> int:
    w = _load_weights(ns)
    point = _parse_at(ns.at)
    _check_point(point, w.varset)
    tri = build_triangle(w, ns.N)
    rows = [tri.column(0)] if ns.column else [list(r) for r in tri.rows]
    if ns.format == "csv":
        if not point:
            raise UsageError("--format csv needs --at")
        if ns.column:
            print(",".join(str(x.evaluate(point)) for x in rows[0]))
        else:
            sys.stdout.write(tri.to_csv(point))
        return EXIT_OK
    if ns.json:
        conv = (lambda x: x.evaluate(point)) if point else (lambda x: x.to_json())
        data = [conv(x) for x in rows[0]] if ns.column else [[conv(x) for x in r] for r in rows]
        _emit(data, ns)
        return EXIT_OK
    for r in rows:
        if point:
            print(" ".join(str(x.evaluate(point)) for x in r))
        else:
            print("; ".join(x.to_text() for x in r))
    return EXIT_OK


def cmd_hankel(ns) -> int:
    w = _load_weights(ns)
    point = _parse_at(ns.at)
    _check_point(point, w.varset)
    H = hankel(build_triangle(w, 2 * ns.N - 2).column(0), ns.N).matrix
    if ns.json:
        _emit(H.evaluate(point) if point else H.to_json(), ns)
    else:
        for row in H.rows:
            print(" | ".join(str(x.evaluate(point)) if point else x.to_text() for x in row))
    return EXIT_OK


def _matrix_for_check(ns) -> tuple[PolyMatrix, bool]:
    if ns.matrix:
        with open(ns.matrix) as fh:
            return PolyMatrix.from_json(json.load(fh)), False
    w = _load_weights(ns)
    if ns.jacobi:
        return jacobi_matrix(w, ns.N), True
    H = hankel(build_triangle(w, 2 * ns.N - 2).column(0), ns.N).matrix
    return H, False


def cmd_check(ns) -> int:
    m, tridiag = _matrix_for_check(ns)
    if ns.order is not None and ns.order < 1:
        raise UsageError("--order must be >= 1")
    if ns.tridiagonal or (tridiag and ns.order is None):
        rep = check_tridiagonal_xtp(m)
    else:
        rep = check_xtp(m, ns.order, exhaustive=ns.exhaustive)
    if ns.json:
        _emit(rep.to_json(), ns)
    else:
        print(f"verdict: {rep.verdict} (order {rep.order_checked}, {rep.minors_evaluated} minors)")
        for v in rep.violations:
            print(f"  rows {list(v.rows)} cols {list(v.cols)}: {v.det.to_text()}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_conditions(ns) -> int:
    w = _load_weights(ns)
    rep = check_lemma_key(w, ns.K)
    out = {"lemma_key": rep.to_json()}
    ok = rep.passed
    if ns.bc:
        b_text, c_text = ns.bc
        b = parse_weight(b_text, w.varset)
        c = parse_weight(c_text, w.varset)
        bc = check_bc_decomposition(b, c, w, ns.K)
        out["bc_decomposition"] = bc
        ok = ok and bc
    if ns.json:
        _emit(out, ns)
    else:
        print(f"lemma key: {out['lemma_key']}")
        if "bc_decomposition" in out:
            print(f"b,c decomposition: {out['bc_decomposition']}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gf(ns) -> int:
    pr = _load_preset(ns)
    if pr.riordan is None:
        raise UsageError(f"preset {pr.name} is not an R(a,b;c,e) family; use 'catalog run'")
    d = solve_d(pr.riordan, ns.N)
    col = build_triangle(pr.weights, ns.N).column(0)
    rows = [{"n": n, "series": d[n].to_text(), "triangle": col[n].to_text(), "equal": d[n] == col[n]}
            for n in range(ns.N + 1)]
    ok = all(r["equal"] for r in rows)
    if ns.json:
        _emit({"preset": pr.name, "T": ns.N, "all_equal": ok, "coefficients": rows}, ns)
    else:
        for r in rows:
            print(f"{r['n']:3d} {'ok ' if r['equal'] else 'BAD'} {r['series']}")
        print("all-equal" if ok else "mismatch")
    return EXIT_OK if ok else EXIT_FAIL


def _read_poly_arg(text: str, vars_: str | None):
    """A Polynomial (or list of them) from JSON text/file or plain text."""
    src = text
    if text == "-":
        src = sys.stdin.read()
    elif not text.lstrip().startswith(("{", "[")):
        try:
            with open(text) as fh:
                src = fh.read()
        except OSError:
            src = text
    stripped = src.strip()
    if stripped.startswith(("{", "[")):
        obj = json.loads(stripped)
        if isinstance(obj, list):
            return [Polynomial.from_json(o) for o in obj]
        return Polynomial.from_json(obj)
    if not vars_:
        raise UsageError("plain-text polynomial input needs --vars")
    return parse_poly(stripped, VarSet(vars_.split(",")))


def cmd_homogenize(ns) -> int:
    val = _read_poly_arg(ns.input, ns.vars)
    if isinstance(val, list):
        out = homogenize_sequence(val, ns.var)
        _emit([p.to_json() for p in out] if ns.json else "\n".join(p.to_text() for p in out), ns)
    else:
        out = homogenize(val, ns.var)
        _emit(out.to_json() if ns.json else out.to_text(), ns)
    return EXIT_OK


def _suite_job(args):
    name, N, order, strict = args
    return catalog.run_preset_suite(name, N, order=order, strict_listed=strict)


def cmd_catalog(ns) -> int:
    if ns.action == "list":
        names = catalog.preset_names()
        if ns.json:
            _emit(names, ns)
        else:
            for nm in names:
                print(nm)
        return EXIT_OK
    if not ns.names:
        raise UsageError("catalog run needs at least one preset name (or 'all')")
    names = catalog.preset_names() if ns.names == ["all"] else ns.names
    jobs = []
    for nm in names:
        ns.preset = nm
        pr = _load_preset(ns)  # validates the name early, before any fan-out
        jobs.append((pr.name, ns.N, ns.order, ns.strict))
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as ex:
            reports = list(ex.map(_suite_job, jobs))  # map keeps input order
    else:
        reports = [_suite_job(j) for j in jobs]
    ok = all(r.passed for r in reports)
    if ns.json:
        data = [r.to_json() for r in reports]
        _emit(data[0] if len(data) == 1 else data, ns)
    else:
        for r in reports:
            print(f"{r.preset} (N={r.N}): {'PASS' if r.passed else 'FAIL'}")
            for c in r.checks:
                print(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="catlike", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build the triangle or its first column")
    _add_source(g)
    _add_common(g)
    g.add_argument("-N", type=_nonneg, default=5, help="last row index")
    g.add_argument("--column", action="store_true", help="first column only")
    g.add_argument("--at", action="append", help="specialize, e.g. --at q=2 or --at p=1,q=2")
    g.add_argument("--format", choices=["text", "json", "csv"], default="text")
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("hankel", help="Hankel truncation of the first column")
    _add_source(h)
    _add_common(h)
    h.add_argument("-N", type=_positive, default=4)
    h.add_argument("--at", action="append")
    h.set_defaults(func=cmd_hankel)

    c = sub.add_parser("check", help="x-total-positivity certificate")
    _add_source(c)
    _add_common(c)
    c.add_argument("--matrix", help="matrix JSON file")
    kind = c.add_mutually_exclusive_group()
    kind.add_argument("--hankel", action="store_true", help="Hankel truncation (default)")
    kind.add_argument("--jacobi", action="store_true", help="Jacobi truncation")
    c.add_argument("-N", type=_positive, default=4)
    c.add_argument("--order", type=int, help="minor order bound (default min(4, N))")
    c.add_argument("--exhaustive", action="store_true", help="collect every violation")
    c.add_argument("--tridiagonal", action="store_true", help="consecutive-principal-minor test")
    c.add_argument("--jobs", type=_positive, default=1, help="accepted for symmetry; minors run serially")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("conditions", help="sufficient conditions on the weights")
    _add_source(k)
    _add_common(k)
    k.add_argument("-K", type=_positive, default=6, help="depth")
    k.add_argument("--bc", nargs=2, metavar=("B", "C"), help="b and c weight formulas")
    k.set_defaults(func=cmd_conditions)

    f = sub.add_parser("gf", help="compare the Riordan series with the first column")
    _add_source(f, weights=False)
    _add_common(f)
    f.add_argument("-N", type=_nonneg, default=10)
    f.set_defaults(func=cmd_gf)

    z = sub.add_parser("homogenize", help="homogenize a polynomial or a sequence")
    _add_common(z)
    z.add_argument("input", help="Polynomial JSON, a JSON list, a file, '-' for stdin, or text")
    z.add_argument("--vars", help="comma-separated variables for text input")
    z.add_argument("--var", default="x0", help="homogenizing variable (default x0)")
    z.set_defaults(func=cmd_homogenize)

    cat = sub.add_parser("catalog", help="preset registry and suites")
    _add_common(cat)
    cat.add_argument("action", choices=["list", "run"])
    cat.add_argument("names", nargs="*", help="preset names, or 'all'")
    cat.add_argument("-N", "--N", dest="N", type=_positive, default=6)
    cat.add_argument("--order", type=_positive, default=4)
    cat.add_argument("--jobs", type=_positive, default=1, help="parallel suites")
    cat.add_argument("--strict", action="store_true", help="assert printed values even when misprinted")
    cat.add_argument("--u", type=int)
    cat.add_argument("--a", type=int)
    cat.add_argument("--b", type=int)
    cat.add_argument("--s")
    cat.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    if getattr(ns, "format", None) == "json":
        ns.json = True
    try:
        return ns.func(ns)
    except (UsageError, catalog.UnknownPreset, catalog.PresetParameterError,
            ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"catlike: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
