"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails
(the report is still written), 2 for invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import __version__
from .errors import ModmatError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
DEFAULT_MAX_N = 30


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    levels: list = field(default_factory=list)
    qprec: int = 25
    zprec: int = 6
    output: str | None = None
    format: str = "json"
    threads: int = 1
    max_n: int = DEFAULT_MAX_N
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.qprec < 5:
            raise ConfigError("qprec must be at least 5")
        if self.zprec < 4:
            raise ConfigError("zprec must be at least 4")
        if self.threads < 1:
            raise ConfigError("thread count must be positive")
        for n in self.levels:
            if not 3 <= n <= self.max_n:
                raise ConfigError(f"n = {n} outside 3..{self.max_n}")


# verify suites: name -> (n, qprec, zprec) -> list of reports


def _identity(kind):
    def run(n, qprec, zprec):
        from .qmod import verify_identity
        return [verify_identity(kind, n, qprec=qprec, zprec=zprec)]
    return run


def _main_k_independence(n, qprec, zprec):
    from .qmod import main_k_independence
    from .report import VerificationReport
    rep = VerificationReport("MAIN-K", n, qprec)
    for a in range(1, n):
        for b in range(a + 1, n):
            if (a + b) % n and (a - b) % n:
                rep.merge(main_k_independence(n, a, b, qprec))
    return [rep]


def _psi_suite(name):
    def run(n, qprec, zprec):
        from . import psi
        m = psi.psi_matrix(n, qprec)
        fn = {"collinearity": psi.collinearity_check, "alt": psi.alt_check,
              "closed-forms": psi.closed_form_check, "cubic": psi.cubic_vanishing_check}[name]
        return [fn(m)]
    return run


def _cusp_constants(n, qprec, zprec):
    from .psi import cusp_constant_check
    return [cusp_constant_check(n, min(qprec, 5))]


def _prop_all(n, qprec, zprec):
    from . import psi
    from .errors import NoSolutionAtPrecision
    from .report import VerificationReport
    rep = VerificationReport("prop-all", n, qprec)
    m = psi.psi_matrix(n, qprec)
    for i in range(1, n):
        try:
            sol = psi.prop_all_solve(n, i, qprec, m=m)
        except NoSolutionAtPrecision as exc:
            rep.fail(i, str(exc))
            continue
        rep.expect(i, sol.residual_order is None, sol.to_json())
    rep.merge(psi.formal_span_check(n))
    return [rep]


def _cusp_realizations(n, qprec, zprec):
    from .cusps import cusp_config
    from .matroid import check_realization, tn_matroid
    from .report import VerificationReport
    rep = VerificationReport("cusp-realization", n, 0)
    mat = tn_matroid(n)
    for a in range(1, n):
        if gcd(a, n) == 1:
            rr = check_realization(cusp_config(n, a), mat)
            rep.expect(a, rr.is_realization, {"failed_nonbases": len(rr.failed_nonbases),
                                              "degenerate_bases": len(rr.degenerate_bases)})
    return [rep]


def _group_law(n, qprec, zprec):
    from .chain import ChainParams, chord_tangent_add, cubic_through
    from .cusps import cusp_config
    from .projective import same_point
    from .report import VerificationReport
    rep = VerificationReport("group-law", n, 0)
    c = cusp_config(n, 1)
    f = cubic_through(ChainParams(c[n - 1][1], c[n - 4][1]))
    for k in range(n):
        rep.expect(("cubic", k), f(c[k]).is_zero())
        rep.expect(("succ", k), same_point(chord_tangent_add(f, c[k], c[1], c[0]), c[(k + 1) % n]))
        rep.expect(("inverse", k), same_point(chord_tangent_add(f, c[k], c[-k % n], c[0]), c[0]))
    return [rep]


VERIFY_SUITES = {
    "sigma": _identity("SIGMA"),
    "st": _identity("ST"),
    "rr": _identity("RR"),
    "main": _identity("MAIN"),
    "main-k": _main_k_independence,
    "bk": _identity("BK"),
    "ak1": _identity("AK1"),
    "cusponly": _identity("CUSPONLY"),
    "collinearity": _psi_suite("collinearity"),
    "alt": _psi_suite("alt"),
    "closed-forms": _psi_suite("closed-forms"),
    "cubic": _psi_suite("cubic"),
    "cusp": _cusp_constants,
    "prop-all": _prop_all,
    "cusp-realization": _cusp_realizations,
    "group-law": _group_law,
}

PSI_CHECKS = ("collinearity", "alt", "closed-forms", "cubic", "cusp")


def _run_job(job):
    name, n, qprec, zprec = job
    try:
        reports = VERIFY_SUITES[name](n, qprec, zprec)
    except ModmatError as exc:
        from .report import VerificationReport
        rep = VerificationReport(name, n, qprec)
        rep.fail(name, f"{type(exc).__name__}: {exc}")
        reports = [rep]
    return [r.to_json() for r in reports]


def _run_jobs(jobs, threads):
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as ex:
            results = list(ex.map(_run_job, jobs))
    else:
        results = [_run_job(j) for j in jobs]
    return [r for batch in results for r in batch]


def _select(checks: str, allowed) -> list:
    names = [c.strip() for c in checks.split(",") if c.strip()]
    if "all" in names:
        return list(allowed)
    bad = [c for c in names if c not in allowed]
    if bad or not names:
        raise ConfigError(f"unknown checks {bad}; choose from {', '.join(allowed)} or all")
    return names


def _suite_payload(cfg: RunConfig, names) -> dict:
    jobs = [(name, n, cfg.qprec, cfg.zprec) for n in cfg.levels for name in names]
    reports = _run_jobs(jobs, cfg.threads)
    ok = all(r["status"] == "pass" for r in reports)
    return {"command": cfg.command, "version": __version__, "qprec": cfg.qprec,
            "levels": cfg.levels, "status": "pass" if ok else "fail", "reports": reports}


# suites that only make sense from n = 10 on
_LARGE_N = set(VERIFY_SUITES) - {"sigma", "st", "rr", "main", "main-k", "bk", "ak1", "cusponly"}


def _require_large(cfg: RunConfig, names) -> None:
    if any(n < 10 for n in cfg.levels) and _LARGE_N.intersection(names):
        raise ConfigError(f"checks {sorted(_LARGE_N.intersection(names))} need n >= 10")


def cmd_verify(cfg: RunConfig) -> dict:
    names = _select(cfg.options["checks"], VERIFY_SUITES)
    _require_large(cfg, names)
    return _suite_payload(cfg, names)


def cmd_psi(cfg: RunConfig) -> dict:
    names = _select(cfg.options["checks"], PSI_CHECKS)
    _require_large(cfg, names)
    return _suite_payload(cfg, names)


def cmd_qseries(cfg: RunConfig) -> dict:
    from .qmod import laurent_data
    n, a = cfg.levels[0], cfg.options["a"]
    if a % n == 0:
        raise ConfigError("a must be nonzero mod n")
    out = laurent_data(n, a, cfg.qprec).to_json()
    out["status"] = "pass"
    return out


def cmd_cusp(cfg: RunConfig) -> dict:
    from . import cusps
    from .matroid import check_realization, tn_matroid
    n, a, kind = cfg.levels[0], cfg.options["a"], cfg.options["kind"]
    if gcd(a, n) != 1:
        raise ConfigError(f"{a} is not a unit mod {n}")
    build = {"infinity": cusps.cusp_config, "boroczky": cusps.boroczky_config,
             "ceva": cusps.ceva_config, "fourm": cusps.fourm_config}[kind]
    conf = build(n, a)
    rep = check_realization(conf, tn_matroid(n))
    # boundary limits are expected to degenerate; only the non-bases must vanish
    ok = rep.is_realization if kind == "infinity" else not rep.failed_nonbases
    return {"n": n, "a": a, "kind": kind, "configuration": conf.to_json(),
            "realization": rep.to_json(), "status": "pass" if ok else "fail"}


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"range must look like -4..8, got {text!r}") from exc
    if lo > -4 or hi < 5:
        raise ConfigError("the chain window must contain -4..5")
    return lo, hi


def cmd_chain(cfg: RunConfig) -> dict:
    from .chain import ChainParams, chain_extend, cubic_through
    from .chain import _json_scalar
    p = ChainParams(_parse_fraction(cfg.options["s"]), _parse_fraction(cfg.options["t"]))
    p.validate()
    lo, hi = _parse_range(cfg.options["range"])
    win = chain_extend(p, lo, hi)
    f = cubic_through(p)
    residuals = {str(k): _json_scalar(f(win.points[k])) for k in sorted(win.points)}
    violations = win.collinearity_violations()
    ok = not violations and all(r == "0" for r in residuals.values())
    return {"s": str(p.s), "t": str(p.t), "range": [lo, hi], "window": win.to_json(),
            "cubic": f.to_json(), "residuals": residuals,
            "collinearity_violations": [list(v) for v in violations],
            "status": "pass" if ok else "fail"}


def cmd_matroid(cfg: RunConfig) -> dict:
    from . import matroid
    special, param = cfg.options["special"], cfg.options["param"]
    if special:
        m = matroid.special_matroids(special)
        conf = matroid.special_family(special, _parse_fraction(param)) if param else None
    else:
        n = cfg.levels[0]
        m = matroid.tn_matroid(n)
        conf = None
        if 5 <= n <= 9:
            t = _parse_fraction(param) if param else None
            if t is None and n >= 7:
                raise ConfigError("--t is required for the one-parameter families n = 7, 8, 9")
            conf = matroid.small_family(n, t)
    out = {"name": m.name, "ground_size": m.ground_size,
           "nonbases": [list(t) for t in sorted(m.nonbases)], "atom_names": list(m.atom_names)}
    ok = True
    if conf is not None:
        rep = matroid.check_realization(conf, m)
        out["configuration"] = conf.to_json()
        out["realization"] = rep.to_json()
        ok = rep.is_realization
    out["status"] = "pass" if ok else "fail"
    return out


def cmd_numeric_oracle(cfg: RunConfig) -> dict:
    from .qmod import evaluate_at, numeric_laurent, sigma, wp_value
    n, tau, tol = cfg.levels[0], complex(cfg.options["tau"]), cfg.options["tol"]
    if tau.imag <= 0:
        raise ConfigError("tau must lie in the upper half plane")
    rows = []
    worst = 0.0
    for a in range(1, n):
        direct = numeric_laurent(n, a, tau)
        wp, wpp = wp_value(n, a, cfg.qprec)
        series = {"sigma": evaluate_at(sigma(n, a, cfg.qprec), tau),
                  "wp": evaluate_at(wp, tau), "wp_prime": evaluate_at(wpp, tau)}
        for key in ("sigma", "wp", "wp_prime"):
            d = abs(series[key] - direct[key])
            worst = max(worst, d)
            rows.append({"a": a, "quantity": key,
                         "series": [series[key].real, series[key].imag],
                         "direct": [direct[key].real, direct[key].imag], "abs_diff": d})
    return {"n": n, "tau": [tau.real, tau.imag], "qprec": cfg.qprec, "approximate": True,
            "tolerance": tol, "max_abs_diff": worst, "values": rows,
            "status": "pass" if worst <= tol else "fail"}


COMMANDS = {
    "verify": cmd_verify, "psi": cmd_psi, "qseries": cmd_qseries, "cusp": cmd_cusp,
    "chain": cmd_chain, "matroid": cmd_matroid, "numeric-oracle": cmd_numeric_oracle,
}


# output


def _csv_rows(payload: dict) -> tuple[list, list]:
    if "reports" in payload:
        head = ["check", "level", "qprec", "status", "residual_order", "case", "result"]
        rows = []
        for r in payload["reports"]:
            for d in r["details"]:
                res = d.get("zero", d.get("ok"))
                rows.append([r["check"], r["level"], r["qprec"], r["status"], r["residual_order"],
                             json.dumps(d["case"]), res])
        return head, rows
    if "values" in payload:
        head = ["a", "quantity", "series_re", "series_im", "direct_re", "direct_im", "abs_diff"]
        return head, [[v["a"], v["quantity"], *v["series"], *v["direct"], v["abs_diff"]]
                      for v in payload["values"]]
    if "sigma" in payload:
        head = ["q_power", "sigma", "tau", "upsilon", "nu"]
        cols = [payload[k] for k in ("sigma", "tau", "upsilon", "nu")]
        return head, [[i] + [" ".join(c[i]) for c in cols] for i in range(len(cols[0]))]
    if "window" in payload:
        pts = payload["window"]["points"]
        return ["label", "x1", "x2", "x3", "cubic"], [
            [k, *pts[k], payload["residuals"][k]] for k in sorted(pts, key=int)]
    if "configuration" in payload:
        head = ["label", "x1", "x2", "x3"]
        return head, [[i, *(c if isinstance(c, str) else " ".join(c) for c in p)]
                      for i, p in enumerate(payload["configuration"]["points"])]
    return ["nonbasis"], [[" ".join(map(str, t))] for t in payload["nonbases"]]


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    head, rows = _csv_rows(payload)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    w.writerows(rows)
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".modmat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig) -> int:
    """Execute one configured command; returns the process exit code."""
    try:
        cfg.validate()
        payload = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"modmat: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ModmatError as exc:
        # bad inputs rejected by the library (excluded parameter, non-unit, ...)
        print(f"modmat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(payload, cfg.format)
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if payload.get("status") == "pass" else EXIT_FAIL


# argument parsing


def _levels(args) -> list:
    if getattr(args, "n_range", None):
        try:
            lo, hi = (int(x) for x in args.n_range.split(".."))
        except ValueError as exc:
            raise ConfigError(f"--n-range must look like 10..14, got {args.n_range!r}") from exc
        return list(range(lo, hi + 1))
    if getattr(args, "n", None) is None:
        raise ConfigError("--n or --n-range is required")
    return [args.n]


def _threads_default() -> int:
    raw = os.environ.get("MODMAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modmat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", "-o", dest="output", help="write the report here (atomically)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--qprec", type=int, default=25)
    common.add_argument("--zprec", type=int, default=6)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: MODMAT_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def level_args(sp, n_range=False, n_required=True):
        sp.add_argument("--n", type=int, required=n_required and not n_range)
        if n_range:
            sp.add_argument("--n-range", help="inclusive range such as 10..14")

    sp = sub.add_parser("verify", parents=[common], help="run identity and matrix suites")
    level_args(sp, n_range=True)
    sp.add_argument("--checks", default="all", help=f"comma list of {', '.join(VERIFY_SUITES)}, or all")

    sp = sub.add_parser("psi", parents=[common], help="checks on the modular realization matrix")
    level_args(sp, n_range=True)
    sp.add_argument("--checks", default="all", help=f"comma list of {', '.join(PSI_CHECKS)}, or all")

    sp = sub.add_parser("qseries", parents=[common], help="sigma/tau/upsilon/nu coefficient tables")
    level_args(sp)
    sp.add_argument("--a", type=int, required=True)

    sp = sub.add_parser("cusp", parents=[common], help="cyclotomic configurations at cusps")
    level_args(sp)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--kind", choices=("infinity", "boroczky", "ceva", "fourm"), default="infinity")

    sp = sub.add_parser("chain", parents=[common], help="the (s, t) point chain and its cubic")
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--range", default="-4..8")

    sp = sub.add_parser("matroid", parents=[common], help="T_n and the small families")
    level_args(sp, n_required=False)
    sp.add_argument("--special", choices=("T5prime", "T6prime"))
    sp.add_argument("--t", dest="param", help="family parameter")

    sp = sub.add_parser("numeric-oracle", parents=[common],
                        help="floating-point comparison of series against theta")
    level_args(sp)
    sp.add_argument("--tau", default="1.1j")
    sp.add_argument("--tol", type=float, default=1e-9)
    return p


def config_from_args(args) -> RunConfig:
    opts = {k: v for k, v in vars(args).items()
            if k not in ("command", "n", "n_range", "qprec", "zprec", "output", "format",
                         "threads", "max_n")}
    if args.command == "chain" or (args.command == "matroid" and args.special):
        levels = []
    else:
        levels = _levels(args)
    if "tau" in opts:
        try:
            complex(opts["tau"])
        except ValueError as exc:
            raise ConfigError(f"not a complex number: {opts['tau']!r}") from exc
    threads = args.threads if args.threads is not None else _threads_default()
    return RunConfig(args.command, levels, args.qprec, args.zprec, args.output, args.format,
                     threads, args.max_n, opts)


def _join_negative_values(argv: list) -> list:
    # argparse reads "-4..8" as an option; glue such values to their flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--range", "--n-range", "--s", "--t", "--tau"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"modmat: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
