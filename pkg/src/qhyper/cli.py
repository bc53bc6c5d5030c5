"""Command-line front-end.

Usage: ``qhyper [options] COMMAND ARGS``; see ``qhyper --help``.

Settings come from, in increasing priority: built-in defaults, a config
file (``--config``, key=value lines or JSON), ``QHYPER_*`` environment
variables, then command-line flags.

Exit codes: 0 success, 1 kernel/domain error, 2 parse error, 3 failed check.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stderr
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .linear import Tensor
from .parser import DIALECTS, ParseError, dumps, parse, skew_ring, to_json, to_text
from .scalars import QParams, format_lognorm, format_scalar

EXIT_OK, EXIT_KERNEL, EXIT_PARSE, EXIT_CHECK = 0, 1, 2, 3

ENV_PREFIX = "QHYPER_"


@dataclass(frozen=True)
class SessionConfig:
    p: int = 5
    u: str = "6"
    eE: int = 1
    eF: int = 1
    eK: int = 0
    ez: int = 0
    precision_floor_exp: int = -40
    output: str = "text"

    def qparams(self) -> QParams:
        return QParams(self.p, Fraction(self.u))

    def radius(self):
        from .qalgebra import RadiusSpec
        return RadiusSpec(eE=self.eE, eF=self.eF, eK=self.eK)


_FIELD_TYPES = {f.name: f.type for f in fields(SessionConfig)}


def _coerce_field(name: str, value):
    if name not in _FIELD_TYPES:
        raise ValueError(f"unknown config key {name!r}")
    if _FIELD_TYPES[name] in ("int", int):
        return int(value)
    value = str(value)
    if name == "output" and value not in ("text", "json"):
        raise ValueError("output must be text or json")
    return value


def read_config_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        raw = json.loads(text)
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            raw[key.strip()] = value.strip()
    return {k: _coerce_field(k, v) for k, v in raw.items()}


def env_overrides(env) -> dict:
    out = {}
    lower = {n.lower(): n for n in _FIELD_TYPES}
    for key, value in env.items():
        if key.startswith(ENV_PREFIX):
            name = lower.get(key[len(ENV_PREFIX):].lower())
            if name is not None:
                out[name] = _coerce_field(name, value)
    return out


def load_config(args, env=None) -> SessionConfig:
    cfg = SessionConfig()
    if args.config:
        cfg = replace(cfg, **read_config_file(args.config))
    cfg = replace(cfg, **env_overrides(os.environ if env is None else env))
    flags = {k: getattr(args, k) for k in _FIELD_TYPES if getattr(args, k, None) is not None}
    if getattr(args, "json", False):
        flags["output"] = "json"
    return replace(cfg, **{k: _coerce_field(k, v) for k, v in flags.items()})


# ---------------------------------------------------------------------------
# commands: each returns (text, json-able)

def _parse(cfg, text, dialect):
    return parse(text, dialect, cfg.qparams(), cfg.ez)


def _norm_result(k, p):
    return format_lognorm(k, p), {"lognorm": None if k == float("-inf") else int(k),
                                  "norm": format_lognorm(k, p)}


def cmd_normalize(cfg, a):
    x = _parse(cfg, a.expr, a.dialect)
    return to_text(x), to_json(x)


def cmd_norm(cfg, a, which=None):
    from .qalgebra import nu_norm, nu_prime_norm
    from .skewseries import gauss_norm
    which = which or ("nuprime" if a.nuprime else "nu")
    x = _parse(cfg, a.expr, a.dialect)
    if a.dialect == "skew":
        return _norm_result(gauss_norm(x), cfg.p)
    if a.dialect == "slq2":
        raise ValueError("use dualnorm for SL_q(2) elements")
    f = nu_prime_norm if which == "nuprime" else nu_norm
    return _norm_result(f(x, cfg.radius()), cfg.p)


def cmd_dualnorm(cfg, a):
    from .slq2 import dual_norm
    return _norm_result(dual_norm(_parse(cfg, a.expr, "slq2"), cfg.radius()), cfg.p)


def _scalar_result(v):
    return str(v), format_scalar(v)


def cmd_pair(cfg, a):
    from .slq2 import uq_pairing
    return _scalar_result(uq_pairing(_parse(cfg, a.x, "uq"), _parse(cfg, a.y, "slq2")))


def cmd_brevepair(cfg, a):
    from .slq2 import breve_pairing
    return _scalar_result(breve_pairing(_parse(cfg, a.x, "breve"), _parse(cfg, a.y, "slq2")))


def _hopf_operand(cfg, a):
    if a.dialect == "skew":
        raise ValueError("Hopf operations are not defined on the skew dialect")
    if cfg.eK != 0:
        raise ValueError("Hopf operations need R_K = 1 (eK = 0)")
    return _parse(cfg, a.expr, a.dialect)


def _tensor_text(t: Tensor) -> str:
    if t.is_zero():
        return "0"
    parts = []
    for key, c in sorted(t.items(), key=lambda kv: repr(kv[0])):
        legs = " (x) ".join(par.format_monomial(m) for par, m in zip(t.parents, key))
        parts.append(f"{c}*[{legs}]")
    return " + ".join(parts)


def cmd_delta(cfg, a):
    from .qalgebra import coproduct
    t = coproduct(_hopf_operand(cfg, a))
    return _tensor_text(t), to_json(t)


def cmd_epsilon(cfg, a):
    from .qalgebra import counit
    return _scalar_result(counit(_hopf_operand(cfg, a)))


def cmd_antipode(cfg, a):
    from .qalgebra import antipode
    x = antipode(_hopf_operand(cfg, a))
    return to_text(x), to_json(x)


def cmd_wdiv(cfg, a):
    from .weierstrass import residual, wdivide
    floor = cfg.precision_floor_exp
    g, f = _parse(cfg, a.g, "skew"), _parse(cfg, a.f, "skew")
    res = wdivide(g, f, floor)
    achieved = residual(g, f, res.q, res.r)
    text = "\n".join([f"q = {to_text(res.q)}", f"r = {to_text(res.r)}",
                      f"residual = {format_lognorm(achieved, cfg.p)}",
                      f"iterations = {res.iterations}"])
    return text, {"q": to_json(res.q), "r": to_json(res.r),
                  "residual": format_lognorm(achieved, cfg.p),
                  "target_floor": format_lognorm(floor, cfg.p),
                  "iterations": res.iterations}


def cmd_wprep(cfg, a):
    from .weierstrass import check_regular, wprepare
    f = _parse(cfg, a.f, "skew")
    prep = wprepare(f, cfg.precision_floor_exp)
    d = check_regular(f).degree
    text = "\n".join([f"w = {to_text(prep.w)}", f"e' = {to_text(prep.e_prime)}", f"degree = {d}"])
    return text, {"w": to_json(prep.w), "e_prime": to_json(prep.e_prime), "degree": d}


def cmd_doublemul(cfg, a):
    from .qdouble import double_mul_formula, double_mul_relations
    x, y = _parse(cfg, a.x, "double"), _parse(cfg, a.y, "double")
    z = double_mul_formula(x, y) if a.engine == "formula" else double_mul_relations(x, y)
    return to_text(z), to_json(z)


def cmd_quotient(cfg, a):
    from .qdouble import quotient_to_uq
    x = quotient_to_uq(_parse(cfg, a.expr, "double"))
    return to_text(x), to_json(x)


def cmd_check(cfg, a):
    from .checks import run_suite
    results = run_suite(a.suite, cfg.qparams(), full=a.full)
    text = "\n".join(r.line() for r in results)
    data = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    return text, data, all(r.passed for r in results)


COMMANDS = {
    "normalize": cmd_normalize, "norm": cmd_norm,
    "nu": lambda cfg, a: cmd_norm(cfg, a, "nu"),
    "nuprime": lambda cfg, a: cmd_norm(cfg, a, "nuprime"),
    "dualnorm": cmd_dualnorm, "pair": cmd_pair, "brevepair": cmd_brevepair,
    "delta": cmd_delta, "epsilon": cmd_epsilon, "antipode": cmd_antipode,
    "wdiv": cmd_wdiv, "wprep": cmd_wprep, "doublemul": cmd_doublemul,
    "quotient": cmd_quotient, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhyper", description="p-adic quantum sl2 toolkit")
    ap.add_argument("--config", help="config file (key=value lines or JSON)")
    ap.add_argument("--p", type=int)
    ap.add_argument("--u", help="square root of q, as a rational")
    ap.add_argument("--eE", type=int)
    ap.add_argument("--eF", type=int)
    ap.add_argument("--eK", type=int)
    ap.add_argument("--ez", type=int, help="radius exponent of the skew variable z")
    ap.add_argument("--floor", dest="precision_floor_exp", type=int, help="log_p of the precision floor")
    ap.add_argument("--output", choices=("text", "json"))
    ap.add_argument("--json", action="store_true", help="same as --output json")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_dialect(p, default="uq", choices=DIALECTS):
        p.add_argument("--dialect", "-d", default=default, choices=choices)
        return p

    with_dialect(sub.add_parser("normalize")).add_argument("expr")
    p = with_dialect(sub.add_parser("norm"))
    p.add_argument("expr")
    p.add_argument("--nuprime", action="store_true")
    with_dialect(sub.add_parser("nu")).add_argument("expr")
    with_dialect(sub.add_parser("nuprime")).add_argument("expr")
    sub.add_parser("dualnorm").add_argument("expr")
    for name in ("pair", "brevepair"):
        p = sub.add_parser(name)
        p.add_argument("x")
        p.add_argument("y")
    for name in ("delta", "epsilon", "antipode"):
        with_dialect(sub.add_parser(name), choices=("uq", "breve", "double", "slq2")).add_argument("expr")
    p = sub.add_parser("wdiv")
    p.add_argument("g")
    p.add_argument("f")
    sub.add_parser("wprep").add_argument("f")
    p = sub.add_parser("doublemul")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--engine", choices=("formula", "relations"), default="formula")
    sub.add_parser("quotient").add_argument("expr")
    p = sub.add_parser("check")
    p.add_argument("suite", help="suite name or 'all'")
    p.add_argument("--full", action="store_true", help="acceptance-sized sweeps")
    return ap


def run_command(argv, env=None) -> tuple[int, str]:
    """Run one command; returns ``(exit code, output text)``."""
    ap = build_parser()
    err = io.StringIO()
    try:
        with redirect_stderr(err):
            args = ap.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_PARSE), err.getvalue().strip()
    try:
        cfg = load_config(args, env)
        cfg.qparams()
    except (ValueError, OSError) as exc:
        return EXIT_KERNEL, f"error: configuration: {exc}"
    try:
        out = COMMANDS[args.command](cfg, args)
    except ParseError as exc:
        return EXIT_PARSE, f"error: parse error at {exc}"
    except (ValueError, ArithmeticError, KeyError, TypeError) as exc:
        return EXIT_KERNEL, f"error: {args.command}: {exc}"
    ok = True
    if len(out) == 3:
        text, data, ok = out
    else:
        text, data = out
    body = dumps(data) if cfg.output == "json" else text
    return (EXIT_OK if ok else EXIT_CHECK), body


def main(argv=None) -> int:
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_CHECK) else sys.stderr
    if out:
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
