"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 numeric-domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .diffpoly import dominant_sign_at_large_argument, to_log_decomposition
from .errors import HardyError, NumericError
from .oscillation import classify, classify_selfadjoint, phi_down_times
from .parser import parse_diffpoly_expr, parse_germ
from .sequences import riccati_residual, sequence_table
from .tower import ONE, render
from .numeric._config import DEFAULT_ATOL, DEFAULT_RTOL

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(obj: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")
        return
    width = max(len(k) for k in obj) + 1
    for k, v in obj.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}={'-' if b is None else b}" for a, b in v.items())
        elif isinstance(v, list):
            v = ", ".join(map(str, v))
        sys.stdout.write(f"{k + ':':<{width}} {v}\n")


def _reduce_for_numerics(q):
    from .numeric.evaluator import MAX_NUMERIC_DEPTH
    times = 0
    f = 4 * q
    while f.depth > MAX_NUMERIC_DEPTH:
        f = phi_down_times(f, 1)
        times += 1
    return f / 4, times


def verdict_json(text: str, q) -> dict:
    v = classify(q)
    return {
        "input": text,
        "normalized": render(v.normalized_input),
        "depth": v.depth_used,
        "verdict": "oscillating" if v.oscillating else "nonoscillating",
        "witness": v.witness.to_json(),
        "flw": classify_selfadjoint(ONE, q).value,
    }


def cmd_classify(args) -> int:
    q = parse_germ(args.expr)
    out = verdict_json(args.expr, q)
    code = EXIT_OK
    if args.verify_numeric:
        from .numeric import numeric_oscillation_probe
        try:
            q_num, times = _reduce_for_numerics(q)
            res = numeric_oscillation_probe(q_num)
            out["numeric"] = {"trend": res.trend.value, "phi_down_applied": times,
                              "level": res.level, "tail_zeros": list(res.tail_zeros)}
        except (NumericError, HardyError) as e:
            out["numeric"] = {"trend": None, "error": str(e)}
            code = EXIT_NUMERIC
    _emit(out, args.json)
    return code


def cmd_sequences(args) -> int:
    if args.n < 0:
        raise ValueError("--n must be >= 0")
    rows = []
    ok = True
    for i in range(args.n + 1):
        row = sequence_table(i)
        ok = ok and row.check()
        rows.append({"n": i, "ell": render(row.ell), "gamma": render(row.gamma),
                     "lambda": render(row.lambda_), "omega": render(row.omega),
                     "sigma_gamma": render(row.sigma_gamma)})
    if args.json:
        _emit({"n": args.n, "rows": rows, "verified": ok}, True)
    else:
        for r in rows:
            _emit(r, False)
            sys.stdout.write("\n")
        sys.stdout.write(f"verified: {ok}\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    P = parse_diffpoly_expr(args.expr)
    D = to_log_decomposition(P)
    out = {"input": args.expr, "standard": P.render(), "logarithmic": D.render()}
    if D:
        ds = dominant_sign_at_large_argument(D)
        out["lead_index"] = list(ds.lead_index)
        out["dominant_sign"] = ds.sign
    else:
        out["lead_index"] = None
        out["dominant_sign"] = 0
    _emit(out, args.json)
    return EXIT_OK


def cmd_riccati(args) -> int:
    z, f = parse_germ(args.z), parse_germ(args.f)
    res = riccati_residual(z, f)
    _emit({"z": render(z), "f": render(f), "residual": render(res), "satisfied": not res},
          args.json)
    return EXIT_OK


def cmd_phi(args) -> int:
    if args.times < 0:
        raise ValueError("--times must be >= 0")
    f = parse_germ(args.expr)
    res = phi_down_times(f, args.times)
    if args.json:
        _emit({"input": args.expr, "times": args.times, "result": render(res)}, True)
    else:
        sys.stdout.write(render(res) + "\n")
    return EXIT_OK


def cmd_flw(args) -> int:
    f, g = parse_germ(args.f), parse_germ(args.g)
    res = classify_selfadjoint(f, g)
    _emit({"f": render(f), "g": render(g), "result": res.value}, args.json)
    return EXIT_OK


def cmd_simulate(args) -> int:
    from .numeric import compile, integrate, write_csv
    q = parse_germ(args.expr)
    ev = compile(q)
    traj = integrate(ev, args.t0, args.t1, args.y0, args.yp0, rtol=args.rtol, atol=args.atol)
    out = {"input": args.expr, "t0": args.t0, "t1": args.t1, "samples": len(traj),
           "steps": traj.steps, "zeros": len(traj.zeros)}
    if args.csv:
        zp = write_csv(traj, args.csv)
        out["csv"] = str(args.csv)
        out["zeros_csv"] = str(zp)
    _emit(out, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hardyosc",
                description="Oscillation of y'' + q y = 0 over the iterated-logarithm tower.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("classify", cmd_classify, "decide oscillation of y'' + q y = 0")
    sp.add_argument("expr")
    sp.add_argument("--verify-numeric", action="store_true",
                    help="append a heuristic numeric probe (never changes the verdict)")

    sp = add("sequences", cmd_sequences, "tabulate l_n, gamma_n, lambda_n, omega_n")
    sp.add_argument("--n", type=int, required=True)

    sp = add("decompose", cmd_decompose, "logarithmic decomposition of a polynomial in Y, Y', ...")
    sp.add_argument("expr")

    sp = add("riccati", cmd_riccati, "check z' + z^2 + f = 0")
    sp.add_argument("--z", required=True)
    sp.add_argument("--f", required=True)

    sp = add("phi", cmd_phi, "apply the depth-lowering transform")
    sp.add_argument("expr")
    sp.add_argument("--times", type=int, default=1)

    sp = add("flw", cmd_flw, "divergence test for (f y')' + g y = 0")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)

    sp = add("simulate", cmd_simulate, "integrate y'' + q y = 0 numerically")
    sp.add_argument("expr")
    sp.add_argument("--t0", type=float, default=10.0)
    sp.add_argument("--t1", type=float, default=1e6)
    sp.add_argument("--y0", type=float, default=1.0)
    sp.add_argument("--yp0", type=float, default=0.0)
    sp.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    sp.add_argument("--atol", type=float, default=DEFAULT_ATOL)
    sp.add_argument("--csv", default=None, help="write t,y,yp samples (zeros go to <stem>_zeros.csv)")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NumericError as e:
        sys.stderr.write(f"numeric error: {e}\n")
        return EXIT_NUMERIC
    except (HardyError, ValueError, ZeroDivisionError) as e:
        span = getattr(e, "span", None)
        where = f" (span {span[0]}-{span[1]})" if span else ""
        sys.stderr.write(f"input error: {e}{where}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
