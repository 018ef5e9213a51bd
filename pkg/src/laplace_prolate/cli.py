"""Command-line front end: spectra, the nu_0 table, decay data and the worked examples.

Exit codes: 0 success, 2 invalid input (parameters or a corrupt cache file),
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import approx
from .bounds import log_nu_upper_bound
from .eigensystem import EigenPair, ProblemParams
from .quadrature import gauss_jacobi_rule
from .spectrum import Spectrum, compute_spectrum, trace_exact

CACHE_FORMAT_VERSION = 1
CACHE_ENV = "LAPLACE_PROLATE_CACHE_DIR"

TABLE1_ALPHAS = (-0.75, 1.0)
TABLE1_MULTIPLES = (1, 2, 3, 4, 5)
# reference nu_0(k pi) as printed, six significant digits
TABLE1_REFERENCE = {
    (1, -0.75): 3.24362e01, (1, 1.0): 1.73873e00,
    (2, -0.75): 6.19658e02, (2, 1.0): 7.51136e00,
    (3, -0.75): 1.29094e04, (3, 1.0): 7.40701e01,
    (4, -0.75): 2.77508e05, (4, 1.0): 9.48287e02,
    (5, -0.75): 6.06695e06, (5, 1.0): 1.39132e04,
}

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
NUMERIC_ERRORS = (ArithmeticError, FloatingPointError, RuntimeError)


class CacheError(ValueError):
    """Cache file is unreadable, has the wrong version, or fails its checksum."""


# -- formatting and atomic output -----------------------------------------------------


def fmt(x: float) -> str:
    """17 significant digits in scientific notation; empty for missing values."""
    if x is None:
        return ""
    return f"{x:.16e}"


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit_csv(header, rows, out) -> None:
    text = csv_text(header, rows)
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)


# -- spectrum cache -------------------------------------------------------------------


def _payload(spectrum: Spectrum) -> dict:
    return {
        "c": repr(float(spectrum.params.c)),
        "alpha": repr(float(spectrum.params.alpha)),
        "trunc_order": int(spectrum.pairs[0].trunc_order),
        "records": [
            {
                "n": p.n,
                "parity": p.parity,
                "chi": repr(float(p.chi)),
                "nu": repr(float(nu)),
                "log_nu": repr(float(lnu)),
                "coeffs": [repr(float(v)) for v in p.coeffs],
            }
            for p, nu, lnu in zip(spectrum.pairs, spectrum.nu, spectrum.log_nu)
        ],
    }


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_dumps(spectrum: Spectrum) -> str:
    payload = _payload(spectrum)
    digest = hashlib.sha256(_canonical(payload).encode()).hexdigest()
    doc = {"format_version": CACHE_FORMAT_VERSION, "sha256": digest, "payload": payload}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def cache_loads(text: str) -> Spectrum:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CacheError(f"cache file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise CacheError("cache file has no format_version")
    if doc["format_version"] != CACHE_FORMAT_VERSION:
        raise CacheError(f"cache format_version {doc['format_version']} is not supported "
                         f"(expected {CACHE_FORMAT_VERSION})")
    payload = doc.get("payload")
    if hashlib.sha256(_canonical(payload).encode()).hexdigest() != doc.get("sha256"):
        raise CacheError("cache checksum mismatch")
    params = ProblemParams(float(payload["c"]), float(payload["alpha"]))
    pairs, nu, log_nu = [], [], []
    for rec in payload["records"]:
        coeffs = np.array([float(v) for v in rec["coeffs"]])
        coeffs.setflags(write=False)
        pairs.append(EigenPair(rec["n"], float(rec["chi"]), rec["parity"], coeffs, params,
                               payload["trunc_order"]))
        nu.append(float(rec["nu"]))
        log_nu.append(float(rec["log_nu"]))
    return Spectrum(params, pairs, np.array(nu), np.array(log_nu))


def cache_save(spectrum: Spectrum, path) -> None:
    atomic_write_text(path, cache_dumps(spectrum))


def cache_load(path) -> Spectrum:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    return cache_loads(text)


def cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cache_filename(params: ProblemParams) -> str:
    return f"spectrum_c={params.c!r}_alpha={params.alpha!r}.json"


def cached_spectrum(params: ProblemParams, n_max: int | None) -> Spectrum:
    """Spectrum from the cache directory if present and long enough, else computed (and stored)."""
    d = cache_dir()
    path = None if d is None else d / cache_filename(params)
    if path is not None and path.exists():
        sp = cache_load(path)
        if sp.params == params and (n_max is None or sp.n_spec >= n_max):
            return sp
    sp = compute_spectrum(params, n_max)
    if path is not None:
        cache_save(sp, path)
    return sp


# -- commands -------------------------------------------------------------------------


def cmd_spectrum(c: float, alpha: float, n_max: int | None, out=None, cache=None) -> int:
    sp = compute_spectrum(ProblemParams(c, alpha), n_max)
    rows = [(p.n, fmt(p.chi), fmt(nu), fmt(lnu / math.log(10)))
            for p, nu, lnu in zip(sp.pairs, sp.nu, sp.log_nu)]
    emit_csv(["n", "chi", "nu", "log10_nu"], rows, out)
    if cache is not None:
        cache_save(sp, cache)
    return EXIT_OK


def table1_values() -> dict:
    out = {}
    for k in TABLE1_MULTIPLES:
        for a in TABLE1_ALPHAS:
            out[(k, a)] = float(cached_spectrum(ProblemParams(k * math.pi, a), 0).nu[0])
    return out


def agrees_5_digits(value: float, reference: float) -> bool:
    """Within half a unit in the fifth significant digit of the reference."""
    unit = 10.0 ** (math.floor(math.log10(abs(reference))) - 4)
    return abs(value - reference) <= 0.5 * unit


def cmd_table1(check: bool = False) -> int:
    vals = table1_values()
    print(f"{'c':>6}  {'alpha=-3/4':>14}  {'alpha=1':>14}")
    bad = []
    for k in TABLE1_MULTIPLES:
        cells = []
        for a in TABLE1_ALPHAS:
            v = vals[(k, a)]
            ok = agrees_5_digits(v, TABLE1_REFERENCE[(k, a)])
            if not ok:
                bad.append((k, a))
            cells.append(f"{v:.5E}" + ("" if ok or not check else " *"))
        print(f"{k}pi".rjust(6) + "  " + "  ".join(s.rjust(14) for s in cells))
    if check:
        if bad:
            print(f"check FAILED for {len(bad)} cell(s): {bad}")
            return 1
        print("check passed: all cells agree to 5 significant digits")
    return EXIT_OK


def cmd_decay(c_list, alpha: float, n_max: int, out=None) -> int:
    rows = []
    for c in sorted(c_list):
        params = ProblemParams(c, alpha)
        sp = compute_spectrum(params, n_max)
        for n, lnu in enumerate(sp.log_nu):
            lb = log_nu_upper_bound(params, n)
            rows.append((n, fmt(c), fmt(lnu), fmt(lb)))
    emit_csv(["n", "c", "log_nu", "log_bound"], rows, out)
    return EXIT_OK


def cmd_trace(c: float, alpha: float, n_sum: int) -> int:
    params = ProblemParams(c, alpha)
    exact = trace_exact(params)
    sp = compute_spectrum(params, n_sum)
    partial = math.fsum(sp.nu[: n_sum + 1])
    gap = exact - partial
    print(f"trace_exact   {fmt(exact)}")
    print(f"partial_sum   {fmt(partial)}   (n = 0..{n_sum})")
    print(f"abs_gap       {fmt(gap)}")
    print(f"rel_gap       {fmt(abs(gap) / exact)}")
    return EXIT_OK


def _example_setup(c: float, a: float, beta: float, n: int, quad_points: int):
    params = ProblemParams(c, 0.0)
    sp = compute_spectrum(params)
    if sp.n_spec < n:
        sp = compute_spectrum(params, n)
    rule = gauss_jacobi_rule(0.0, quad_points)
    return params, sp, rule, approx.test_pair(a, beta, c)


def cmd_approx_demo(c: float, a: float, beta: float, n: int, grid_points: int = 1001,
                    quad_points: int = 400, out=None) -> int:
    _, sp, rule, tp = _example_setup(c, a, beta, n, quad_points)
    grid = approx.sup_grid(grid_points)
    bg = approx.expand(tp.g, sp, rule, n + 1)
    s_grid = approx.project(bg, sp, n, grid)
    s_nodes = approx.project(bg, sp, n, rule.nodes)
    j_grid = approx.legendre_project(tp.g, 0.0, n, rule, grid)
    j_nodes = approx.legendre_project(tp.g, 0.0, n, rule, rule.nodes)
    g_grid, g_nodes = tp.g(grid), tp.g(rule.nodes)
    print(f"S_{n}(g):  sup {fmt(approx.sup_error(s_grid, g_grid))}  "
          f"L2 {fmt(approx.l2_error(s_nodes, g_nodes, rule))}")
    print(f"Pi_{n}(g): sup {fmt(approx.sup_error(j_grid, g_grid))}  "
          f"L2 {fmt(approx.l2_error(j_nodes, g_nodes, rule))}")
    if out is not None:
        emit_csv(["x", "g", "S_n", "Pi_n"],
                 [(fmt(x), fmt(gv), fmt(s), fmt(j)) for x, gv, s, j in zip(grid, g_grid, s_grid, j_grid)],
                 out)
    return EXIT_OK


def cmd_invert_demo(c: float, a: float, beta: float, N: int, grid_points: int = 1001,
                    quad_points: int = 400, out=None) -> int:
    _, sp, rule, tp = _example_setup(c, a, beta, N, quad_points)
    grid = approx.sup_grid(grid_points)
    # the data b(g) are formed as nu_k b_k(f): exact coefficients of g = L f
    bg = approx.forward_coeffs(approx.expand(tp.f, sp, rule, N + 1), sp)
    f_grid = approx.invert(bg, sp, N, grid)
    f_nodes = approx.invert(bg, sp, N, rule.nodes)
    print(f"S_{N}^-1(g): sup {fmt(approx.sup_error(f_grid, tp.f(grid)))}  "
          f"L2 {fmt(approx.l2_error(f_nodes, tp.f(rule.nodes), rule))}")
    if out is not None:
        emit_csv(["x", "f", "f_N"], [(fmt(x), fmt(fv), fmt(v))
                                     for x, fv, v in zip(grid, tp.f(grid), f_grid)], out)
    return EXIT_OK


def cmd_show_cache(path) -> int:
    sp = cache_load(path)
    rows = [(p.n, fmt(p.chi), fmt(nu), fmt(lnu / math.log(10)))
            for p, nu, lnu in zip(sp.pairs, sp.nu, sp.log_nu)]
    emit_csv(["n", "chi", "nu", "log10_nu"], rows, None)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(eval_pi(s)) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def eval_pi(text: str) -> float:
    """Parse a float, allowing a ``pi`` factor such as ``5pi``, ``pi`` or ``2.5*pi``."""
    s = text.strip().lower().replace("*", "")
    if s.endswith("pi"):
        head = s[:-2]
        return (float(head) if head not in ("", "+", "-") else float(head + "1")) * math.pi
    return float(s)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="laplace-prolate", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, nmax_default=None):
        sp.add_argument("--c", type=eval_pi, required=True, help="bandwidth c > 0 (accepts e.g. 5pi)")
        sp.add_argument("--alpha", type=float, required=True, help="weight exponent alpha > -1")
        sp.add_argument("--nmax", type=int, default=nmax_default)

    s = sub.add_parser("spectrum", help="eigenvalues chi_n and nu_n as CSV")
    common(s)
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.add_argument("--cache", help="also write a cache file here")

    s = sub.add_parser("table1", help="nu_0 for c = pi..5pi and alpha in {-3/4, 1}")
    s.add_argument("--check", action="store_true", help="compare with the reference values")

    s = sub.add_parser("decay", help="log nu_n with its decay bound for several c")
    s.add_argument("--c", type=_float_list, required=True, help="comma list, e.g. pi,2pi,3pi")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--nmax", type=int, default=60)
    s.add_argument("--out")

    s = sub.add_parser("trace", help="Mercer trace against the partial eigenvalue sum")
    common(s, 80)

    demos = {
        "approx-demo": ("--n", 16, "projection S_n(g) vs the Legendre projection for g = L f"),
        "invert-demo": ("--N", 30, "truncated spectral inverse of g = L f"),
    }
    for name, (nname, n_default, text) in demos.items():
        s = sub.add_parser(name, help=text)
        s.add_argument("--c", type=eval_pi, default=5 * math.pi, help="bandwidth (default 5pi)")
        s.add_argument("--a", type=eval_pi, default=5 * math.pi, help="frequency of f (default 5pi)")
        s.add_argument("--beta", type=float, default=3.0, help="shift of f (default 3)")
        s.add_argument(nname, dest="n", type=int, default=n_default, help=f"truncation order (default {n_default})")
        s.add_argument("--grid-points", type=int, default=1001, help="uniform grid for sup errors")
        s.add_argument("--quad-points", type=int, default=400, help="Gauss-Jacobi nodes for L2 errors")
        s.add_argument("--out", help="CSV of values on the grid")

    s = sub.add_parser("show-cache", help="validate a cache file and print its spectrum")
    s.add_argument("path")
    return p


def dispatch(args) -> int:
    if args.command == "spectrum":
        return cmd_spectrum(args.c, args.alpha, args.nmax, args.out, args.cache)
    if args.command == "table1":
        return cmd_table1(args.check)
    if args.command == "decay":
        return cmd_decay(args.c, args.alpha, args.nmax, args.out)
    if args.command == "trace":
        return cmd_trace(args.c, args.alpha, args.nmax)
    if args.command == "approx-demo":
        return cmd_approx_demo(args.c, args.a, args.beta, args.n, args.grid_points,
                               args.quad_points, args.out)
    if args.command == "invert-demo":
        return cmd_invert_demo(args.c, args.a, args.beta, args.n, args.grid_points,
                               args.quad_points, args.out)
    if args.command == "show-cache":
        return cmd_show_cache(args.path)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return dispatch(args)
    except (ValueError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
