"""Command-line front end.

Results go to stdout (or --out); the resolved configuration is echoed to
stderr as one JSON line so stdout stays byte-identical across thread counts.
Exit status: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import census, expsums, quadroots, representations, singular, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """15 significant digits for floats, plain str otherwise."""
    if isinstance(x, float):
        return f"{x:.15g}"
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    return str(x)


def jsonable(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


class Output:
    """Collects a table (header + rows) or a record and renders it."""

    def __init__(self, fmt_name: str):
        self.format = fmt_name

    def table(self, header: list[str], rows: list[list], extra: dict | None = None) -> str:
        if self.format == "json":
            payload = {"rows": [dict(zip(header, r)) for r in rows]}
            if extra:
                payload.update(extra)
            return json.dumps(jsonable(payload), indent=2, sort_keys=False) + "\n"
        if self.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                w.writerow([fmt(v) for v in r])
            return buf.getvalue()
        widths = [max(len(h), *(len(fmt(r[i])) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(fmt(v).rjust(w) for v, w in zip(r, widths)) for r in rows]
        if extra:
            lines += [f"{k}: {fmt(v)}" for k, v in extra.items()]
        return "\n".join(lines) + "\n"

    def record(self, rec: dict) -> str:
        if self.format == "json":
            return json.dumps(jsonable(rec), indent=2) + "\n"
        return self.table(list(rec), [list(rec.values())])


# --- commands -------------------------------------------------------------


def cmd_gamma(args, out: Output):
    xs = sorted(args.x)
    if not xs or xs[0] < 1 or xs[-1] > census.MAX_X:
        raise UsageError(f"--x values must lie in [1, {census.MAX_X}]")
    sigma = singular.sigma_product(args.prime_bound)
    rep = census.asymptotic_report(xs, threads=args.threads, sigma=sigma.value)
    header = ["X", "gamma", "sigma_x", "abs_err", "rel_err", "sigma_prime_bound", "sigma_tail_bound"]
    rows = [
        [r.X, r.gamma, r.sigma_x, r.abs_err, r.rel_err, sigma.truncation, sigma.tail_bound]
        for r in rep.rows
    ]
    if args.z is not None or args.decompose:
        header += ["z", "gamma1", "gamma2", "decomposition_ok"]
        for row, r in zip(rows, rep.rows):
            z = args.z if args.z is not None else r.X ** (8 / 9)
            try:
                d = census.gamma_decomposed(census.DecompositionPlan(r.X, z))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            row += [z, d.gamma1, d.gamma2, d.total == r.gamma]
    extra = {"slope": rep.slope} if len(rows) > 1 else None
    text = out.table(header, rows, extra if out.format != "csv" else None)
    ok = all(row[-1] for row in rows) if "decomposition_ok" in header else True
    return text, ok


def cmd_sigma(args, out: Output):
    ests = []
    if args.method in ("product", "both"):
        ests.append(singular.sigma_product(args.prime_bound))
    if args.method in ("sum", "both"):
        ests.append(singular.sigma_sum(args.dmax))
    recs = []
    for est in ests:
        rec = est.as_dict()
        if est.exact is not None:
            rec["exact"] = str(est.exact)
        recs.append(rec)
    ok = True
    extra = {}
    if len(ests) == 2:
        gap = abs(ests[0].value - ests[1].value)
        allowed = ests[0].tail_bound + ests[1].tail_bound
        ok = gap <= allowed
        extra = {"abs_diff": gap, "allowed": allowed, "pass": ok}
    if out.format == "json" and len(recs) == 1:
        return out.record(recs[0]), ok
    header = ["method", "value", "truncation", "tail_bound"]
    rows = [[r["method"], r["value"], r["truncation"], r["tail_bound"]] for r in recs]
    return out.table(header, rows, extra or None), ok


def cmd_lambda(args, out: Output):
    if args.q1 is None or args.q2 is None:
        raise UsageError("lambda needs --q1 and --q2")
    v = quadroots.lam(args.q1, args.q2)
    return out.record({"q1": v.q1, "q2": v.q2, "lambda": v.value}), True


def cmd_roots(args, out: Output):
    if args.mod is None:
        raise UsageError("roots needs --mod")
    rs = quadroots.roots_mod(args.a, args.mod)
    return out.record({"a": rs.a, "modulus": rs.modulus, "count": len(rs), "roots": list(rs.roots)}), True


def cmd_surjection(args, out: Output):
    if args.action == "verify":
        nmax = args.max or 10**4
        rep = representations.verify_surjectivity(nmax)
        rec = {
            "nmax": nmax,
            "roots_checked": rep.roots_checked,
            "case2": rep.case2,
            "failures": len(rep.failures),
            "pass": rep.ok,
        }
        return out.record(rec), rep.ok
    if args.n is None:
        raise UsageError(f"surjection {args.action} needs --n")
    n = args.n
    if args.action == "reps":
        header = ["x", "y", "n", "beta", "in_bijective_subset"]
        chosen = set(representations.select_bijective_subset(n))
        rows = [[r.x, r.y, n, representations.beta(r), r in chosen] for r in representations.representations(n)]
        return out.table(header, rows), True
    # preimage: one root (--z) or all roots of z^2 + 2 modulo n
    zs = [args.z] if args.z is not None else list(quadroots.roots_mod(2, n).roots)
    rows, ok = [], True
    for z in zs:
        t = representations.trace_preimage(int(z), n)
        back = representations.beta(representations.Representation(t.x, t.y, n))
        ok &= back == t.z
        rows.append([t.z, t.n, t.a, t.q, t.r, t.case, t.x, t.y, back == t.z])
    header = ["z", "n", "a", "q", "r", "case", "x", "y", "pass"]
    return out.table(header, rows), ok


def cmd_kloosterman(args, out: Output):
    if args.action == "study":
        rmax = args.max or 5000
        study = expsums.weil_ratio_study(rmax, args.samples, args.seed)
        rows = [[r, h, a, b, k, ratio] for r, h, a, b, k, ratio in study.rows]
        ok = study.max_ratio <= 10
        header = ["r", "h", "alpha", "beta", "abs_K", "ratio"]
        extra = {"max_ratio": study.max_ratio, "bound": 10, "exponent": 0.6, "seed": args.seed}
        return out.table(header, rows, extra if out.format != "csv" else None), ok
    if None in (args.r, args.h, args.alpha, args.beta):
        raise UsageError("kloosterman sum needs --r --h --alpha --beta")
    spec = expsums.KloostermanSpec(args.r, args.h, args.alpha, args.beta)
    k = expsums.kloosterman_incomplete(spec)
    ref = expsums.kloosterman_direct(args.r, args.h, args.alpha, args.beta)
    diff = abs(k - ref)
    rec = {"lhs": k, "rhs": ref, "abs_diff": diff, "pass": diff <= 1e-9,
           "weil_ratio": expsums.weil_ratio(args.r, args.h, k)}
    return out.record(rec), diff <= 1e-9


def cmd_theta(args, out: Output):
    if args.d2 is None or args.m is None or not args.x:
        raise UsageError("theta needs --d2 --m --x")
    spec = expsums.ThetaSpec(args.d2, args.m, args.x[0])
    lhs, rhs = expsums.theta_direct(spec), expsums.theta_via_reps(spec)
    diff = abs(lhs - rhs)
    rec = {"D2": spec.D2, "m": spec.m, "X": spec.X, "lhs": lhs, "rhs": rhs,
           "abs_diff": diff, "tolerance": 1e-9, "pass": diff <= 1e-9}
    return out.record(rec), diff <= 1e-9


def cmd_psi(args, out: Output):
    if args.action == "expand":
        if args.t is None:
            raise UsageError("psi expand needs --t")
        lhs = expsums.psi(args.t)
        rhs = expsums.psi_truncated(args.t, args.M)
        return out.record({"t": args.t, "M": args.M, "lhs": lhs, "rhs": rhs, "abs_diff": abs(lhs - rhs)}), True
    if args.action == "study":
        rows = []
        for k in range(5, 13):
            M = 2**k
            err = expsums.psi_truncation_error(M, args.samples, args.seed)
            rows.append([M, err, err / (math.log(M) / M)])
        header = ["parameter", "value", "ratio"]
        return out.table(header, rows), all(b[1] < a[1] for a, b in zip(rows, rows[1:]))
    # roots: psi-sum over N_a(d) for D <= d < 2D, or a D-grid when --d2 is omitted
    if not args.x:
        raise UsageError("psi roots needs --x")
    X = args.x[0]
    Ds = [args.d2] if args.d2 is not None else [10 ** (2 + 0.2 * i) for i in range(6)]
    rows = [[D, v, ratio] for D, v, ratio in expsums.psi_sum_study(args.a, X, Ds)]
    return out.table(["parameter", "value", "ratio"], rows), True


def cmd_prehod(args, out: Output):
    if not args.x:
        raise UsageError("prehod needs --x")
    X = int(args.x[0])
    s = math.isqrt(X)
    if s * s != X:
        raise UsageError("prehod needs a perfect-square --x for exact arithmetic")
    ds = [args.d1] if args.d1 is not None else verify.prehod_moduli(X)
    recs = [expsums.prehod_check(d, X).as_dict() for d in ds]
    ok = all(r["pass"] for r in recs)
    if out.format == "json":
        return json.dumps(recs if len(recs) != 1 else recs[0], indent=2) + "\n", ok
    header = list(recs[0]) if recs else ["d1"]
    return out.table(header, [list(r.values()) for r in recs]), ok


def cmd_verify_all(args, out: Output):
    checks = verify.run_all(args.scale)
    if out.format == "text":
        text = "\n".join(c.line() for c in checks) + "\n"
    else:
        rows = [[c.name, c.ok, c.detail] for c in checks]
        text = out.table(["check", "pass", "detail"], rows)
    return text, all(c.ok for c in checks)


COMMANDS = {
    "gamma": cmd_gamma,
    "sigma": cmd_sigma,
    "lambda": cmd_lambda,
    "roots": cmd_roots,
    "surjection": cmd_surjection,
    "kloosterman": cmd_kloosterman,
    "theta": cmd_theta,
    "psi": cmd_psi,
    "prehod": cmd_prehod,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", help="write results to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = argparse.ArgumentParser(prog="sqfpairs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", parents=[common], help="exact census Gamma(X) against sigma X")
    g.add_argument("--x", type=int, nargs="+", required=True)
    g.add_argument("--z", type=float, help="threshold for the Gamma_1 + Gamma_2 split")
    g.add_argument("--decompose", action="store_true", help="also split at z = X^(8/9)")
    g.add_argument("--prime-bound", type=int, default=10**6)

    s = sub.add_parser("sigma", parents=[common], help="the constant sigma")
    s.add_argument("--method", choices=["product", "sum", "both"], default="product")
    s.add_argument("--prime-bound", type=int, default=10**6)
    s.add_argument("--dmax", type=int, default=10**4)

    lm = sub.add_parser("lambda", parents=[common], help="local count lambda(q1, q2)")
    lm.add_argument("--q1", type=int)
    lm.add_argument("--q2", type=int)

    r = sub.add_parser("roots", parents=[common], help="roots of n^2 + a modulo q")
    r.add_argument("--a", type=int, choices=[1, 2], default=1)
    r.add_argument("--mod", type=int)

    sj = sub.add_parser("surjection", parents=[common], help="representations n = x^2 + 2y^2")
    sj.add_argument("action", choices=["verify", "preimage", "reps"])
    sj.add_argument("--max", type=int)
    sj.add_argument("--n", type=int)
    sj.add_argument("--z", type=int)

    k = sub.add_parser("kloosterman", parents=[common], help="incomplete Kloosterman sums")
    k.add_argument("action", choices=["sum", "study"], nargs="?", default="sum")
    k.add_argument("--r", type=int)
    k.add_argument("--h", type=int)
    k.add_argument("--alpha", type=float)
    k.add_argument("--beta", type=float)
    k.add_argument("--max", type=int)
    k.add_argument("--samples", type=int, default=10**4)

    t = sub.add_parser("theta", parents=[common], help="Theta_m directly and via representations")
    t.add_argument("--d2", type=float)
    t.add_argument("--m", type=int)
    t.add_argument("--x", type=float, nargs=1)

    ps = sub.add_parser("psi", parents=[common], help="sawtooth expansions and psi-sums over roots")
    ps.add_argument("action", choices=["expand", "study", "roots"])
    ps.add_argument("--t", type=float)
    ps.add_argument("--M", type=int, default=1000)
    ps.add_argument("--samples", type=int, default=10**4)
    ps.add_argument("--a", type=int, choices=[1, 2], default=2)
    ps.add_argument("--d2", type=float, help="the range parameter D")
    ps.add_argument("--x", type=float, nargs=1)

    pr = sub.add_parser("prehod", parents=[common], help="passage from modulus d1^2 to d1")
    pr.add_argument("--d1", type=int)
    pr.add_argument("--x", type=int, nargs=1)

    v = sub.add_parser("verify-all", parents=[common], help="run the invariant suite")
    v.add_argument("--scale", choices=list(verify.SCALES), default="smoke")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    config = {k: v for k, v in sorted(vars(args).items())}
    print(json.dumps({"config": config}, default=str), file=sys.stderr)
    out = Output(args.format)
    try:
        text, ok = COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
