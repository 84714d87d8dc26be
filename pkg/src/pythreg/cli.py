"""Command-line front end.

Every subcommand produces a table (CSV) or a record (JSON with --json),
written to --out or to stdout, followed by a one-line summary.  Exit codes:
0 success, 2 invalid arguments, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

from . import concentration, counting, pairs, pretentious, triples, weights
from .errors import InvalidArgument, ResourceLimit
from .multfunc import AddFuncSpec, One, parse_spec

LADDER_TARGETS = ("pairs type1", "pairs type2", "dlms", "meanprobe", "conc-linear", "conc-quadratic")


@dataclass
class ExperimentConfig:
    command: tuple[str, ...]
    params: dict = field(default_factory=dict)
    out: str | None = None
    workers: int = 1
    json: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["command"] = list(self.command)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(tuple(d["command"]), dict(d.get("params", {})), d.get("out"),
                   int(d.get("workers", 1)), bool(d.get("json", False)))

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "ExperimentConfig":
        skip = {"command", "sub", "out", "workers", "config", "json", "func", "target"}
        params = {k: v for k, v in vars(ns).items() if k not in skip}
        cmd = (ns.command,) + ((ns.sub,) if getattr(ns, "sub", None) else ())
        return cls(cmd, params, ns.out, ns.workers, ns.json)


@dataclass
class Result:
    header: list
    rows: list
    record: dict
    summary: str


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+r}j"
    return str(v)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([_fmt(v) for v in r] for r in rows)
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if hasattr(obj, "item"):
        return _jsonable(obj.item())
    return obj


# ---------------------------------------------------------------------------
# command implementations


def _spec(text):
    return parse_spec(text)


def _cfg(a, kind=None):
    return weights.WeightConfig(a.ell, a.ell_prime, a.delta, kind or a.kind)


def cmd_distance(a) -> Result:
    r = pretentious.distance_squared(_spec(a.f), _spec(a.g), a.x, a.y, a.restricted)
    row = [r.f_desc, r.g_desc, r.x, r.y, int(r.restricted), r.d_squared, r.prime_count]
    return Result(["f", "g", "x", "y", "restricted", "d_squared", "prime_count"], [row], r.to_dict(),
                  f"{r.d_squared:.4f}  D^2({r.f_desc}, {r.g_desc}; {a.x:g}, {a.y:g}) over {r.prime_count} primes")


def cmd_meanprobe(a) -> Result:
    v = pretentious.mean_probe(_spec(a.f), a.a, a.b, a.N, a.mode)
    row = [a.f, a.a, a.b, a.N, a.mode, v.real, v.imag]
    return Result(["f", "a", "b", "N", "mode", "value_re", "value_im"], [row],
                  dict(zip(["f", "a", "b", "N", "mode"], row[:5]), value=v),
                  f"mean {v.real:.6g}{v.imag:+.6g}j of {a.f} on {a.a}n+{a.b}, n <= {a.N} ({a.mode})")


def _conc_result(r) -> Result:
    header = ["kind", "lhs", "drift_re", "drift_im", "bound_total", "ratio"] + list(r.bound_terms)
    row = [r.kind, r.lhs, r.drift.real, r.drift.imag, r.bound_total, r.ratio] + list(r.bound_terms.values())
    flags = f" flags={','.join(r.flags)}" if r.flags else ""
    return Result(header, [row], r.to_dict(), f"lhs={r.lhs:.6g} bound={r.bound_total:.6g} ratio={r.ratio:.4g}{flags}")


def cmd_conc_linear(a) -> Result:
    return _conc_result(concentration.linear_concentration(
        _spec(a.f), _spec(a.chi), a.t, a.K, a.Q, a.N, tail_limit=a.tail_limit))


def cmd_conc_quadratic(a) -> Result:
    return _conc_result(concentration.quadratic_concentration(
        _spec(a.f), _spec(a.chi), a.t, a.K0, a.Q, a.a, a.b, a.N, workers=a.workers, tail_limit=a.tail_limit))


def parse_additive(text: str) -> AddFuncSpec:
    """"p:value,p:value" with complex values, e.g. "13:1,17:0.5+0.5j"."""
    mapping = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        try:
            p, z = part.split(":")
            mapping[int(p)] = complex(z.replace(" ", ""))
        except ValueError:
            raise InvalidArgument(f"bad additive-function entry {part!r}; expected p:value") from None
    return AddFuncSpec.on_primes(mapping)


def cmd_tk(a) -> Result:
    r = concentration.tk_additive(parse_additive(a.h), a.K0, a.Q, a.a, a.b, a.N, workers=a.workers)
    header = ["variance_lhs", "H_re", "H_im", "exact_mean_check", "full_mean_check", "bound_total", "ratio"]
    row = [r.variance_lhs, r.H_N.real, r.H_N.imag, r.exact_mean_check, r.full_mean_check, r.bound_total, r.ratio]
    return Result(header, [row], r.to_dict(),
                  f"variance={r.variance_lhs:.6g} mean_check={r.exact_mean_check:.3g} ratio={r.ratio:.4g}")


def cmd_counting(a) -> Result:
    if a.sub == "wpair":
        r = counting.w_pair(a.N, a.Q, a.a, a.b, a.p, a.q, workers=a.workers)
        row = [r.N, r.Q, r.a, r.b, r.p, r.q, r.empirical, r.closed_form, r.abs_error]
        return Result(counting.CSV_HEADER.split(","), [row], r.to_dict(),
                      f"w({a.p},{a.q}) empirical={r.empirical:.6f} closed_form={r.closed_form:.6f} "
                      f"abs_error={r.abs_error:.2e}")
    r = counting.w_divisor(a.N, a.Q, a.a, a.b, a.l, workers=a.workers)
    row = [r.N, r.Q, r.a, r.b, r.l, r.empirical, r.bound_rhs, r.ratio]
    return Result(["N", "Q", "a", "b", "l", "empirical", "bound_rhs", "ratio"], [row], r.to_dict(),
                  f"l={a.l} empirical={r.empirical:.6f} ratio={r.ratio:.4g}")


def cmd_weights(a) -> Result:
    cfg = _cfg(a)
    if a.sub == "density":
        d = weights.weight_density(cfg, a.N)
        row = [cfg.kind, cfg.ell, cfg.ell_prime, cfg.delta, a.N, d]
        return Result(["kind", "ell", "ell_prime", "delta", "N", "density"], [row],
                      dict(zip(["kind", "ell", "ell_prime", "delta", "N", "density"], row)),
                      f"density={d:.6g} ({cfg.kind}, l={cfg.ell}, l'={cfg.ell_prime}, delta={cfg.delta})")
    r = weights.resonance(cfg)
    row = [cfg.kind, cfg.ell, cfg.ell_prime, r.slope, r.k, r.b, int(r.boundary)]
    return Result(["kind", "ell", "ell_prime", "slope", "k", "b", "boundary"], [row],
                  dict(zip(["kind", "ell", "ell_prime", "slope", "k", "b", "boundary"], row)),
                  f"slope={r.slope:.6g}" + (" (boundary b=2)" if r.boundary else ""))


def cmd_folner(a) -> Result:
    if a.sub == "set":
        fs = weights.folner_set(a.K)
        vals = fs.values()
        header = [f"a_{p}" for p in fs.primes] + ["Q"]
        rows = [list(map(int, e)) + ["" if q is None else q] for e, q in zip(fs.exponents, vals)]
        return Result(header, rows, dict(K=a.K, primes=list(fs.primes), size=len(fs)),
                      f"|Phi_{a.K}| = {len(fs)}")
    v = weights.folner_average(_spec(a.f), a.K)
    return Result(["f", "K", "value_re", "value_im"], [[a.f, a.K, v.real, v.imag]], dict(f=a.f, K=a.K, value=v),
                  f"E_(Q in Phi_{a.K}) f(Q) = {v.real:.6g}{v.imag:+.6g}j")


def cmd_pairs(a) -> Result:
    f = _spec(a.f)
    if a.sub in ("type1", "type2"):
        kind = "hyperbolic" if a.sub == "type1" else "elliptic"
        fn = pairs.typeI_average if a.sub == "type1" else pairs.typeII_average
        r = fn(f, a.Q, _cfg(a, kind), a.N, workers=a.workers)
        c = r.cfg
        row = [r.kind, a.f, r.Q, c.ell, c.ell_prime, c.delta, r.N, r.value.real, r.value.imag, r.weight_mass]
        return Result(pairs.CSV_HEADER.split(","), [row], r.to_dict(),
                      f"value={r.value.real:.6g}{r.value.imag:+.6g}j weight_mass={r.weight_mass:.6g}")
    if a.sub == "qstab":
        r = pairs.q_stability(f, _spec(a.chi), a.t, _cfg(a, "elliptic"), a.K, a.N, workers=a.workers)
        rows = [[Q, v.real, v.imag] for Q, v in r.L.items()]
        return Result(["Q", "L_re", "L_im"], rows, r.to_dict(), f"q_stability={r.value:.6g} at Q,Q'={r.argmax}")
    kind = "hyperbolic" if a.kind_avg == "typeI" else "elliptic"
    v = pairs.folner_q_average(f, _cfg(a, kind), a.K, a.N, a.kind_avg, workers=a.workers)
    return Result(["f", "K", "N", "kind", "value_re", "value_im"], [[a.f, a.K, a.N, a.kind_avg, v.real, v.imag]],
                  dict(f=a.f, K=a.K, N=a.N, kind=a.kind_avg, value=v), f"value={v.real:.6g}{v.imag:+.6g}j")


def cmd_dlms(a) -> Result:
    v = pairs.dlms_log_average(_spec(a.f), a.N)
    return Result(["f", "N", "value_re", "value_im"], [[a.f, a.N, v.real, v.imag]], dict(f=a.f, N=a.N, value=v),
                  f"dlms={v.real:.6g}{v.imag:+.6g}j")


def cmd_triples(a) -> Result:
    if a.sub == "search":
        ells = tuple(int(x) for x in a.ells.split(","))
        if len(ells) != 3:
            raise InvalidArgument("--ells takes three comma-separated integers")
        s = triples.search_level_set_triples(_spec(a.f), a.bound, ells)
        rows = [h.csv_row().split(",") for h in s.hits]
        return Result(triples.CSV_HEADER.split(","), rows,
                      dict(hits=[h.csv_row() for h in s.hits], dropped_degenerate=s.dropped_degenerate,
                           coefficients=list(s.coefficients)),
                      f"{len(s.hits)} hits with z <= {a.bound}; dropped {s.dropped_degenerate} degenerate")
    if a.sub == "pairsearch":
        col = triples.ColoringSpec.level_sets(_spec(a.f), a.N)
        hits = triples.search_monochromatic_pairs(col, a.N, a.kind_pair)
        header = ["x", "y", "z"] if a.kind_pair == "xy" else ["y", "z", "x"]
        first = f"; first {hits[0]}" if hits else ""
        return Result(header, [list(h) for h in hits], dict(kind=a.kind_pair, hits=hits),
                      f"{len(hits)} monochromatic {a.kind_pair} pairs in [{a.N}]{first}")
    v = triples.triple_density(_spec(a.f), a.d, a.N, a.K)
    return Result(["f", "d", "N", "K", "density"], [[a.f, a.d, a.N, a.K, v]], dict(f=a.f, d=a.d, N=a.N, K=a.K, density=v),
                  f"triple density={v:.6g}")


def _average_value(a) -> tuple[complex, float | str]:
    """(value, weight_mass or '') for the ladder targets."""
    if a.command == "pairs":
        kind = "hyperbolic" if a.sub == "type1" else "elliptic"
        fn = pairs.typeI_average if a.sub == "type1" else pairs.typeII_average
        r = fn(_spec(a.f), a.Q, _cfg(a, kind), a.N, workers=a.workers)
        return r.value, r.weight_mass
    if a.command == "dlms":
        return pairs.dlms_log_average(_spec(a.f), a.N), ""
    if a.command == "meanprobe":
        return pretentious.mean_probe(_spec(a.f), a.a, a.b, a.N, a.mode), ""
    if a.command == "conc-linear":
        return complex(cmd_conc_linear(a).record["lhs"]), ""
    return complex(cmd_conc_quadratic(a).record["lhs"]), ""


def cmd_ladder(a, parser) -> Result:
    if not a.target:
        raise InvalidArgument("ladder needs a target command")
    inner = parser.parse_args(a.target)
    name = inner.command + (f" {inner.sub}" if getattr(inner, "sub", None) else "")
    if name not in LADDER_TARGETS:
        raise InvalidArgument(f"ladder target must be one of {LADDER_TARGETS}; got {name!r}")
    if a.steps < 1:
        raise InvalidArgument("--steps must be >= 1")
    inner.workers = a.workers
    rows = []
    N0 = inner.N
    for rung in range(a.steps):
        inner.N = N0 * 2**rung
        v, mass = _average_value(inner)
        rows.append([rung, inner.N, v.real, v.imag, mass])
    return Result(["rung", "N", "value_re", "value_im", "weight_mass"], rows,
                  dict(target=name, rows=rows), f"{a.steps} rungs of {name} from N={N0}")


COMMANDS = {
    "distance": cmd_distance, "meanprobe": cmd_meanprobe, "conc-linear": cmd_conc_linear,
    "conc-quadratic": cmd_conc_quadratic, "tk": cmd_tk, "counting": cmd_counting, "weights": cmd_weights,
    "folner": cmd_folner, "pairs": cmd_pairs, "dlms": cmd_dlms, "triples": cmd_triples,
}


# ---------------------------------------------------------------------------
# argument parsing


def _common(p):
    p.add_argument("--out", help="write CSV (or JSON with --json) here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--config", help="TOML file with one table per subcommand")
    p.add_argument("--json", action="store_true")


def _weight_flags(p, kind=True):
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--ell-prime", type=int, default=2)
    p.add_argument("--delta", type=float, default=0.1)
    if kind:
        p.add_argument("--kind", choices=weights.KINDS, default="hyperbolic")


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(prog="pythreg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    leaves = {}

    def leaf(parent, name, key, **kw):
        p = parent.add_parser(name, **kw)
        _common(p)
        leaves[key] = p
        return p

    p = leaf(sub, "distance", "distance", help="pretentious distance squared over x < p <= y")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default="one")
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--restricted", action="store_true", help="only primes = 1 mod 4")

    p = leaf(sub, "meanprobe", "meanprobe", help="mean of f(an+b)")
    p.add_argument("--f", required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mode", choices=["cesaro", "logarithmic"], default="cesaro")

    p = leaf(sub, "conc-linear", "conc-linear", help="linear concentration harness")
    for k, t in (("--f", str), ("--chi", str), ("--K", int), ("--Q", int), ("--N", int)):
        p.add_argument(k, type=t, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--tail-limit", type=int, default=concentration.DEFAULT_TAIL_LIMIT)

    p = leaf(sub, "conc-quadratic", "conc-quadratic", help="quadratic concentration harness")
    for k, t in (("--f", str), ("--chi", str), ("--K0", int), ("--Q", int), ("--N", int)):
        p.add_argument(k, type=t, required=True)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--tail-limit", type=int, default=concentration.DEFAULT_TAIL_LIMIT)

    p = leaf(sub, "tk", "tk", help="Turan-Kubilius variance for an additive h")
    p.add_argument("--h", required=True, help='"p:value,..." on primes')
    for k in ("--K0", "--Q", "--N"):
        p.add_argument(k, type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=0)

    grp = sub.add_parser("counting", help="brute-force grid counts next to closed forms")
    gs = grp.add_subparsers(dest="sub", required=True)
    for name in ("wpair", "wdiv"):
        p = leaf(gs, name, f"counting.{name}")
        for k in ("--N", "--Q"):
            p.add_argument(k, type=int, required=True)
        p.add_argument("--a", type=int, default=1)
        p.add_argument("--b", type=int, default=0)
        if name == "wpair":
            p.add_argument("--p", type=int, required=True)
            p.add_argument("--q", type=int, required=True)
        else:
            p.add_argument("--l", type=int, required=True)

    grp = sub.add_parser("weights", help="trapezoid weights")
    gs = grp.add_subparsers(dest="sub", required=True)
    p = leaf(gs, "density", "weights.density")
    _weight_flags(p)
    p.add_argument("--N", type=int, required=True)
    p = leaf(gs, "slope", "weights.slope")
    _weight_flags(p)

    grp = sub.add_parser("folner", help="multiplicative Folner sets")
    gs = grp.add_subparsers(dest="sub", required=True)
    p = leaf(gs, "set", "folner.set")
    p.add_argument("--K", type=int, required=True)
    p = leaf(gs, "avg", "folner.avg")
    p.add_argument("--f", required=True)
    p.add_argument("--K", type=int, required=True)

    grp = sub.add_parser("pairs", help="weighted pair averages")
    gs = grp.add_subparsers(dest="sub", required=True)
    for name in ("type1", "type2", "qstab", "folneravg"):
        p = leaf(gs, name, f"pairs.{name}")
        p.add_argument("--f", required=True)
        p.add_argument("--N", type=int, required=True)
        _weight_flags(p, kind=False)
        if name in ("type1", "type2"):
            p.add_argument("--Q", type=int, default=1)
        else:
            p.add_argument("--K", type=int, required=True)
        if name == "qstab":
            p.add_argument("--chi", default="one")
            p.add_argument("--t", type=float, default=0.0)
        if name == "folneravg":
            p.add_argument("--kind", dest="kind_avg", choices=["typeI", "typeII"], default="typeI")

    p = leaf(sub, "dlms", "dlms", help="logarithmic f(n(n+1)) conj f(m^2) average")
    p.add_argument("--f", required=True)
    p.add_argument("--N", type=int, required=True)

    grp = sub.add_parser("triples", help="Pythagorean searches")
    gs = grp.add_subparsers(dest="sub", required=True)
    p = leaf(gs, "search", "triples.search")
    p.add_argument("--f", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--ells", default="1,2,1")
    p = leaf(gs, "pairsearch", "triples.pairsearch")
    p.add_argument("--f", required=True, help="coloring by level sets of f")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--kind", dest="kind_pair", choices=["xy", "yz"], default="xy")
    p = leaf(gs, "density", "triples.density")
    p.add_argument("--f", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, required=True)

    p = leaf(sub, "ladder", "ladder", help="run an average at N, 2N, 4N, ...")
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("target", nargs=argparse.REMAINDER, help="target subcommand and its flags")
    return parser, leaves


def _load_config(path: str, key: str) -> dict:
    import tomli

    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise InvalidArgument(f"cannot read config {path}: {exc}") from None
    table = data
    for part in key.split("."):
        table = table.get(part, {}) if isinstance(table, dict) else {}
    return {k.replace("-", "_"): v for k, v in table.items() if not isinstance(v, dict)}


def _parse(parser, leaves, argv):
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--config" not in argv and not any(a.startswith("--config=") for a in argv):
        return parser.parse_args(argv)
    # first pass without required flags, only to find the subcommand and config path
    required = {(k, a.dest) for k, leaf in leaves.items() for a in leaf._actions if a.required}
    for leaf in leaves.values():
        for act in leaf._actions:
            act.required = False
    ns = parser.parse_args(argv)
    key = ns.command + (f".{ns.sub}" if getattr(ns, "sub", None) else "")
    leaf = leaves[key]
    values = _load_config(ns.config, key)
    known = {a.dest for a in leaf._actions}
    unknown = set(values) - known
    if unknown:
        raise InvalidArgument(f"unknown keys in [{key}]: {sorted(unknown)}")
    for k2, lf in leaves.items():
        for act in lf._actions:
            act.required = (k2, act.dest) in required and not (k2 == key and act.dest in values)
    # file values become defaults, so flags given on the command line win
    leaf.set_defaults(**values)
    return parser.parse_args(argv)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser, leaves = build_parser()
    try:
        ns = _parse(parser, leaves, argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if ns.workers < 1:
            raise InvalidArgument("--workers must be >= 1")
        if ns.command == "ladder":
            res = cmd_ladder(ns, parser)
        else:
            res = COMMANDS[ns.command](ns)
    except SystemExit as exc:
        return int(exc.code or 0) or 2
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    if ns.json:
        cfg = ExperimentConfig.from_namespace(ns).to_dict()
        # neither the worker count nor the output path changes results
        cfg.pop("workers")
        cfg.pop("out")
        body = json.dumps({"config": _jsonable(cfg),
                           "result": _jsonable(res.record)}, indent=2, sort_keys=True) + "\n"
    else:
        body = _csv(res.header, res.rows)
    if ns.out:
        with open(ns.out, "w") as fh:
            fh.write(body)
    else:
        stdout.write(body)
    print(res.summary, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
