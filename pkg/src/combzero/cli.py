"""``combzero`` command line.

Exit codes: 0 success, 1 a requested check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import io as cio
from .asymptotics import (
    LimitLaw,
    counting_measure_distance,
    edge_zero_limits,
    hermite_central_limits,
)
from .combo import Combination
from .counterexamples import laguerre_interlacing, nonorthogonal_xn
from .errors import CombzeroError
from .normalize import NormalizationSeq, construct_rho_cop
from .recurrence import RecurrenceFamily
from .roots import certify_coeffs, enze_equivalence_probe
from .thresholds import (
    ThresholdInput,
    end_to_end_certify,
    jacobi_level,
    n0_general,
    n0_hermite,
    n0_jacobi,
    n0_laguerre,
    n0_prob_hermite,
)


class UsageError(Exception):
    pass


# -- parsing -------------------------------------------------------------------


def parse_family(text: str):
    """``name[:p[:p]]``; returns (family, default rho rule or None)."""
    name, *params = text.strip().split(":")
    name = name.lower().replace("_", "-")
    try:
        vals = [float(p) for p in params]
    except ValueError:
        raise UsageError(f"bad family parameters in {text!r}")

    def need(k):
        if len(vals) > k:
            raise UsageError(f"family {name} takes at most {k} parameter(s)")

    if name in ("hermite", "hermite-orthonormal"):
        need(0)
        return RecurrenceFamily.hermite(), ("orthonormal" if name.endswith("orthonormal") else None)
    if name in ("prob-hermite", "probhermite"):
        need(0)
        return RecurrenceFamily.prob_hermite(), None
    if name in ("laguerre", "laguerre-orthonormal"):
        need(1)
        fam = RecurrenceFamily.laguerre(vals[0] if vals else 0.0)
        return fam, ("orthonormal" if name.endswith("orthonormal") else None)
    if name == "jacobi":
        need(2)
        vals += [0.0] * (2 - len(vals))
        return RecurrenceFamily.jacobi(vals[0], vals[1]), None
    if name == "custom":
        if len(params) != 1:
            raise UsageError("custom family needs a JSON path: custom:<file>")
        return RecurrenceFamily.from_json(params[0]), None
    raise UsageError(f"unknown family {name!r}")


def parse_rho(text: Optional[str], family, default: Optional[str]) -> NormalizationSeq:
    text = text or default or "ones"
    name, _, arg = text.partition(":")
    if name == "ones":
        return NormalizationSeq.ones()
    if name == "pow2":
        return NormalizationSeq.pow2()
    if name == "factorial":
        return NormalizationSeq.factorial()
    if name == "orthonormal":
        return NormalizationSeq.orthonormal(family)
    if name == "geometric":
        try:
            return NormalizationSeq.geometric(float(arg))
        except ValueError:
            raise UsageError("geometric rule needs a ratio: geometric:<nu>")
    raise UsageError(f"unknown rho rule {text!r}")


def parse_gamma(text: str, allow_pure: bool = False):
    try:
        vals = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"cannot parse gamma list {text!r}")
    if allow_pure and vals == (1.0,):
        return vals
    return Combination(vals)


def parse_range(text: str, kind=int) -> list:
    """``a``, ``a:b`` or ``a:b:step`` (inclusive); also comma lists."""
    try:
        if "," in text:
            return [kind(t) for t in text.split(",") if t.strip()]
        parts = [kind(t) for t in text.split(":")]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}")
    if len(parts) == 1:
        return parts
    if len(parts) > 3:
        raise UsageError(f"bad range {text!r}")
    a, b = parts[0], parts[1]
    step = parts[2] if len(parts) == 3 else kind(1)
    if step <= 0 or b < a:
        raise UsageError(f"bad range {text!r}")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [a + k * step for k in range(count)]


def _coeffs(g):
    return g.gamma if isinstance(g, Combination) else tuple(g)


# -- config --------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    family: object = None
    rho: Optional[NormalizationSeq] = None
    gamma: object = None
    ns: list = field(default_factory=list)
    fmt: str = "json"
    output: Optional[str] = None
    extra: dict = field(default_factory=dict)


def _emit(cfg: RunConfig, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------


def cmd_zeros(cfg: RunConfig) -> int:
    reports = [certify_coeffs(cfg.family, cfg.rho, _coeffs(cfg.gamma), n) for n in cfg.ns]
    if cfg.fmt == "csv":
        text = cio.csv_text(
            ["n", "count", "interlaces", "min_zero", "max_zero"], (r.csv_row() for r in reports)
        )
    else:
        text = cio.dumps(
            cio.document(
                "zeros",
                {
                    "family": cfg.family.label,
                    "rho_rule": cfg.rho.label,
                    "gamma": list(_coeffs(cfg.gamma)),
                    "reports": [r.to_dict() for r in reports],
                },
            )
        )
    _emit(cfg, text)
    return 0 if all(r.certified for r in reports) else 1


def cmd_threshold(cfg: RunConfig) -> int:
    fam, comb, x = cfg.family, cfg.gamma, cfg.extra
    inputs = {"family": fam.label, "gamma": list(comb.gamma), "K": comb.K}
    if x.get("general"):
        N = x["N"]
        rho, trace = construct_rho_cop(fam, None, N)
        inp = ThresholdInput(fam, rho, comb, list(trace.tau), 1.0, 2)
        n0 = n0_general(inp)
        inputs.update(rule="general", c=1.0, n1=2, N=N, tau_n0=float(trace.tau[n0]))
    elif fam.kind == "hermite":
        n0 = n0_hermite(x["nu"], comb)
        inputs.update(rule="hermite", nu=x["nu"])
    elif fam.kind == "prob_hermite":
        n0 = n0_prob_hermite(comb)
        inputs.update(rule="prob_hermite")
    elif fam.kind == "laguerre":
        n0 = n0_laguerre(fam.alpha, x["nu"], comb)
        inputs.update(rule="laguerre", alpha=fam.alpha, nu=x["nu"])
    elif fam.kind == "jacobi":
        n0 = n0_jacobi(fam.alpha, fam.beta, comb, cfg.rho)
        inputs.update(
            rule="jacobi", alpha=fam.alpha, beta=fam.beta, rho_rule=cfg.rho.label,
            level=jacobi_level(fam.alpha, fam.beta, comb),
        )
    else:
        raise UsageError("no closed-form threshold for custom families; use --general")
    payload = {"inputs": inputs, "n0": n0}
    code = 0
    if x.get("span") is not None:
        rho = cfg.rho if not x.get("general") else rho
        summary = end_to_end_certify(fam, rho, comb, n0, x["span"])
        payload["certification"] = summary.to_dict()
        code = 0 if summary.all_pass else 1
    _emit(cfg, cio.dumps(cio.document("threshold", payload)))
    return code


def cmd_construct_rho(cfg: RunConfig) -> int:
    shift = cfg.extra.get("theta_shift")
    theta = None if shift is None else (lambda n: 1.0 / (n + shift))
    _, trace = construct_rho_cop(cfg.family, theta, cfg.extra["N"])
    if cfg.fmt == "json":
        rows = [
            {"n": n, "theta": trace.theta[n], "tau": trace.tau[n], "e": trace.e[n],
             "d": trace.d[n], "rho_ratio": trace.rho_ratio[n]}
            for n in range(trace.N + 1)
        ]
        _emit(cfg, cio.dumps(cio.document("construct-rho", {"family": cfg.family.label, "rows": rows})))
    else:
        _emit(cfg, trace.to_csv())
    return 0


def cmd_counterexample(cfg: RunConfig) -> int:
    which = cfg.extra["which"]
    if which == "laguerre_interlacing":
        res = laguerre_interlacing()
        payload = res.to_dict()
        ok = not res.interlaces
    else:
        g2 = cfg.extra.get("gamma2", 1.0)
        ns = cfg.ns or list(range(2, 21))
        rows = nonorthogonal_xn((1.0, 0.0, g2), ns, cfg.rho)
        payload = {"gamma": [1.0, 0.0, g2], "rho_rule": cfg.rho.label, "rows": [r.to_dict() for r in rows]}
        ok = all((r.nonreal == 2) == r.predicted_nonreal for r in rows)
    _emit(cfg, cio.dumps(cio.document("counterexample", {"which": which, **payload, "as_expected": ok})))
    return 0 if ok else 1


def cmd_asymptotics(cfg: RunConfig) -> int:
    mode, ladder = cfg.extra["mode"], cfg.ns
    fam, rho, g = cfg.family, cfg.rho, cfg.gamma
    decreasing = True
    if mode == "central":
        if fam.kind != "hermite":
            raise UsageError("central mode is for the Hermite family")
        res = hermite_central_limits(rho, g, ladder, ks=(cfg.extra.get("k", 0),), parity=cfg.extra["parity"])
        rows = res.rows
        header = ["n", "observed", "target", "abs_error"]
        table = [(r.n, r.observed, r.target, r.abs_error) for r in rows]
    elif mode == "edge":
        rows = edge_zero_limits(fam, rho, g, cfg.extra.get("i", 1), ladder)
        header = ["n", "observed", "target", "abs_error"]
        table = [(r.n, r.observed, r.target, r.abs_error) for r in rows]
    elif mode == "bulk":
        law, scaling = {
            "hermite": ("semicircle", "hermite"),
            "laguerre": ("laguerre_mp", "laguerre"),
            "jacobi": ("arcsine", "identity"),
        }.get(fam.kind, (None, None))
        if law is None:
            raise UsageError("bulk mode needs a classical family")
        table = []
        for n in ladder:
            rep = certify_coeffs(fam, rho, _coeffs(g), n)
            if not rep.certified:
                raise CombzeroError(f"q_{n} not certified")
            table.append((n, counting_measure_distance(rep.zeros.values, scaling, LimitLaw(law))))
        header = ["n", "kolmogorov_distance"]
    else:
        raise UsageError(f"unknown mode {mode!r}")
    errs = [t[-1] for t in table]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    if cfg.fmt == "csv":
        _emit(cfg, cio.csv_text(header, table))
    else:
        _emit(cfg, cio.dumps(cio.document(
            "asymptotics",
            {"family": fam.label, "mode": mode, "rows": [dict(zip(header, t)) for t in table],
             "decreasing": decreasing},
        )))
    return 0 if decreasing else 1


def cmd_enze(cfg: RunConfig) -> int:
    rep = enze_equivalence_probe(cfg.family, cfg.rho, _coeffs(cfg.gamma), cfg.extra["thetas"], cfg.ns)
    _emit(cfg, cio.dumps(cio.document("enze", {"family": cfg.family.label, **rep.to_dict()})))
    return 0 if rep.consistent and rep.all_real else 1


COMMANDS = {
    "zeros": cmd_zeros,
    "threshold": cmd_threshold,
    "construct-rho": cmd_construct_rho,
    "counterexample": cmd_counterexample,
    "asymptotics": cmd_asymptotics,
    "enze": cmd_enze,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="combzero", description="Real zeros of linear combinations of orthogonal polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, gamma=True, ns=True, rho=True):
        sp.add_argument("--family", default="hermite", help="name[:param[:param]]")
        if rho:
            sp.add_argument("--rho", default=None, help="ones | pow2 | factorial | geometric:<nu> | orthonormal")
        if gamma:
            sp.add_argument("--gamma", default="1,1", help="comma list starting with 1")
        if ns:
            sp.add_argument("--n", default=None, help="n, a:b[:step] or a comma list")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", "-o", default=None)

    common(sub.add_parser("zeros", help="certify zeros of q_n"))

    t = sub.add_parser("threshold", help="threshold n0 and optional certification beyond it")
    common(t, ns=False)
    t.add_argument("--nu", type=float, default=None)
    t.add_argument("--general", action="store_true", help="use the constructed normalization and its tau")
    t.add_argument("--N", type=int, default=200)
    t.add_argument("--span", type=int, default=None)

    c = sub.add_parser("construct-rho", help="constructive normalization trace")
    common(c, gamma=False, ns=False, rho=False)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--theta-shift", type=float, default=None, help="theta_n = 1/(n + shift)")

    ce = sub.add_parser("counterexample", help="reproduce the counterexamples")
    ce.add_argument("which", choices=("nonorthogonal_xn", "laguerre_interlacing"))
    ce.add_argument("--gamma2", type=float, default=1.0)
    ce.add_argument("--rho", default=None)
    ce.add_argument("--n", default=None)
    ce.add_argument("--format", choices=("json",), default="json")
    ce.add_argument("--output", "-o", default=None)

    a = sub.add_parser("asymptotics", help="zero asymptotics ladders")
    common(a, ns=False)
    a.set_defaults(gamma="1")
    a.add_argument("--mode", choices=("central", "edge", "bulk"), default="central")
    a.add_argument("--n-ladder", default="20,50,100,200")
    a.add_argument("--parity", choices=("even", "odd"), default="even")
    a.add_argument("--k", type=int, default=0)
    a.add_argument("--i", type=int, default=1)

    e = sub.add_parser("enze", help="interlacing vs one-parameter real-rootedness probe")
    common(e, gamma=False)
    e.add_argument("--B", default="1,-0.5")
    e.add_argument("--theta-grid", default="-3:3:0.5")
    return p


def make_config(args) -> RunConfig:
    cmd = args.command
    if cmd == "counterexample":
        fam = None
        rho = parse_rho(args.rho, None, "ones")
        if rho.rule == "orthonormal":
            raise UsageError("orthonormal rule needs an orthogonal family")
        ns = parse_range(args.n) if args.n else []
        return RunConfig(cmd, None, rho, None, ns, args.format, args.output,
                         {"which": args.which, "gamma2": args.gamma2})
    fam, default_rho = parse_family(args.family)
    rho = parse_rho(getattr(args, "rho", None), fam, default_rho)
    cfg = RunConfig(cmd, fam, rho, fmt=args.format, output=args.output)
    if cmd == "zeros":
        cfg.gamma = parse_gamma(args.gamma, allow_pure=True)
        if args.n is None:
            raise UsageError("zeros needs --n")
        cfg.ns = parse_range(args.n)
    elif cmd == "threshold":
        cfg.gamma = parse_gamma(args.gamma)
        nu = args.nu
        if nu is None:
            nu = 0.0 if fam.kind == "hermite" else 1.0
        cfg.extra = {"nu": nu, "general": args.general, "N": args.N, "span": args.span}
    elif cmd == "construct-rho":
        cfg.extra = {"N": args.N, "theta_shift": args.theta_shift}
    elif cmd == "asymptotics":
        cfg.gamma = parse_gamma(args.gamma, allow_pure=True)
        cfg.ns = parse_range(args.n_ladder)
        cfg.extra = {"mode": args.mode, "parity": args.parity, "k": args.k, "i": args.i}
    elif cmd == "enze":
        cfg.gamma = parse_gamma(args.B, allow_pure=True)
        cfg.extra = {"thetas": parse_range(args.theta_grid, float)}
        cfg.ns = parse_range(args.n or "2:20")
    if any(n < 1 for n in cfg.ns):
        raise UsageError("degrees must be positive")
    return cfg


_VALUE_OPTS = {"--theta-grid", "--n", "--gamma", "--B", "--n-ladder", "--gamma2", "--nu", "--theta-shift"}


def _join_negative_values(argv):
    # "--theta-grid -3:3:0.25" would otherwise read -3:3:0.25 as an option
    out, it = [], iter(argv)
    for a in it:
        if a in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError, OSError) as exc:
        sys.stderr.write(f"combzero: error: {exc}\n")
        return 2
    except CombzeroError as exc:
        # well-formed input whose computation could not be completed
        sys.stderr.write(f"combzero: failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
