"""Command-line front end.

Exit codes: 0 success, 2 bad input (unparsable flags, weights or labels, or
weights outside a command's domain), 3 unsupported affine type, 4 a theorem
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hecke, verify
from .charring import T_INFINITY, specialize
from .errors import MacdemazError, TheoremViolation, TypeLabelError, UnsupportedType
from .macdonald import e_double_limit, e_tinf, expand_in_weyl_characters, p_tinf
from .rootdata import RootSystemData, build_affine_data, dump_rootdata
from .demazure import is_antidominant
from .weyl import weight_box

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_THEOREM = 4

MODES = ("e", "p", "expand", "double-limit", "generic-oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def parse_weight(text: str, n: int) -> tuple[int, ...]:
    try:
        w = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}") from None
    if len(w) != n:
        raise UsageError(f"weight {text!r} has {len(w)} coordinates, rank is {n}")
    return w


def parse_budget(text: str | None) -> tuple[int, int]:
    if not text:
        return hecke.DEFAULT_BUDGET
    try:
        rank, norm = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--oracle-budget expects RANK,NORM, got {text!r}") from None
    return rank, norm


def _data(args) -> RootSystemData:
    return build_affine_data(args.type, args.rank)


def _weights(args, data: RootSystemData) -> list[tuple[int, ...]]:
    if args.weight is not None:
        return [parse_weight(args.weight, data.n)]
    if args.box is not None:
        if args.box < 0:
            raise UsageError("--box must be nonnegative")
        return weight_box(data.n, args.box)
    raise UsageError("compute needs --weight or --box")


# -- compute ----------------------------------------------------------------


def compute_record(data: RootSystemData, lam, mode: str, budget) -> dict:
    rec: dict = {"lambda": list(lam)}
    if mode == "e":
        rec["E"] = e_tinf(data, lam).to_json()
    elif mode == "p":
        P = p_tinf(data, lam)
        rec["E"] = P.to_json()
        rec["P"] = P.to_json()
    elif mode == "expand":
        P = p_tinf(data, lam)
        rec["E"] = P.to_json()
        rec["P"] = P.to_json()
        rec["expansion"] = expand_in_weyl_characters(data, lam).to_json()
    elif mode == "double-limit":
        rec["E"] = e_tinf(data, lam).to_json()
        rec["E_double_limit"] = e_double_limit(data, lam).to_json()
    elif mode == "generic-oracle":
        res = hecke.e_generic(data, lam, budget)
        rec["F"] = res.F.to_json()
        rec["normalization"] = res.normalization.to_json()
        rec["qshift"] = str(res.qshift)
        rec["E"] = specialize(res.F, T_INFINITY).shift(q=-res.qshift).to_json()
    else:
        raise UsageError(f"unknown mode {mode!r}")
    return rec


def _fmt_coeff(items: list[dict]) -> str:
    parts = []
    for it in items:
        mono = []
        for name in ("q", "ts", "tl"):
            e = Fraction(it[name])
            if e:
                mono.append(name if e == 1 else f"{name}^{it[name]}")
        val = it["val"]
        if not mono:
            parts.append(val)
        else:
            prefix = "" if val == "1" else ("-" if val == "-1" else f"{val}*")
            parts.append(prefix + "*".join(mono))
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _fmt_character(items: list[dict]) -> list[str]:
    rows = [("[" + ",".join(str(c) for c in it["weight"]) + "]", _fmt_coeff(it["coeff"])) for it in items]
    width = max((len(r[0]) for r in rows), default=0)
    return [f"  {w.ljust(width)}  {c}" for w, c in rows]


def format_text(label: str, mode: str, records: list[dict]) -> str:
    out = []
    for rec in records:
        out.append(f"{label} lambda=[{','.join(str(c) for c in rec['lambda'])}] mode={mode}")
        for key in ("E", "P", "E_double_limit", "F"):
            if key in rec:
                out.append(f" {key}:")
                out.extend(_fmt_character(rec[key]))
        if "normalization" in rec:
            out.append(f" normalization: {_fmt_coeff(rec['normalization'])}")
            out.append(f" qshift: {rec['qshift']}")
        if "expansion" in rec:
            rows = [("[" + ",".join(map(str, e["mu"])) + "]", _fmt_coeff(e["d"]), str(e["d_at_1"])) for e in rec["expansion"]]
            w0 = max(len("mu"), *(len(r[0]) for r in rows))
            w1 = max(len("d"), *(len(r[1]) for r in rows))
            out.append(" expansion:")
            out.append(f"  {'mu'.ljust(w0)}  {'d'.ljust(w1)}  d_at_1")
            out.extend(f"  {a.ljust(w0)}  {b.ljust(w1)}  {c}" for a, b, c in rows)
    return "\n".join(out)


def cmd_compute(args) -> int:
    data = _data(args)
    budget = parse_budget(args.oracle_budget)
    weights = _weights(args, data)
    if args.box is not None and args.mode in ("p", "expand"):
        weights = [w for w in weights if is_antidominant(data, w)]
    if args.box is not None and args.mode == "generic-oracle":
        weights = [w for w in weights if hecke.within_budget(data, w, budget)]
    records = [compute_record(data, lam, args.mode, budget) for lam in weights]
    if args.format == "json":
        if args.weight is not None:
            payload = dict(records[0], type=data.label, mode=args.mode)
        else:
            payload = {"type": data.label, "mode": args.mode, "box": args.box, "results": records}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(format_text(data.label, args.mode, records))
    return EXIT_OK


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    data = _data(args)
    budget = parse_budget(args.oracle_budget)
    names = [s for chunk in (args.suite or ["all"]) for s in chunk.split(",") if s]
    try:
        suites = verify.expand_suites(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = verify.SuiteConfig(data, args.box if args.box is not None else 3, budget)
    reports = [verify.run_suite(name, cfg) for name in suites]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        print(json.dumps({"type": data.label, "box": cfg.box, "ok": ok, "suites": [r.to_json() for r in reports]}, sort_keys=True, indent=2))
    else:
        for r in reports:
            status = "SKIP" if r.skipped else ("PASS" if r.ok else "FAIL")
            counts = ", ".join(f"{k} {v[0]}/{v[0] + v[1]}" for k, v in sorted(r.counts.items()))
            extra = f" ({r.skipped})" if r.skipped else ""
            print(f"{status} {r.suite:<14} {r.type} box={r.box}{extra}  {counts}".rstrip())
            for f in r.failures[:10]:
                print(f"    {f}")
    return EXIT_OK if ok else EXIT_THEOREM


def cmd_dump(args) -> int:
    data = _data(args)
    text = dump_rootdata(data)
    if args.format == "json":
        print(json.dumps(json.loads(text), sort_keys=True, indent=2))
    else:
        d = data.to_json()
        print(f"type {d['type']} rank {d['rank']}")
        print(f"marks {d['marks']} comarks {d['comarks']}")
        print("cartan")
        for row in d["cartan"]:
            print("  " + " ".join(f"{x:>3}" for x in row))
        print(f"positive roots ({len(d['positive_roots'])})")
        for b in d["positive_roots"]:
            print("  " + " ".join(str(x) for x in b))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="macdemaz", description="Specialized Macdonald polynomials, Demazure characters and their checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--type", required=True, help='affine type label, e.g. "A2~1", "D3~2", "A4~2"')
        sp.add_argument("--rank", type=int, help="rank, for labels without an index or as a consistency check")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    c = sub.add_parser("compute", help="compute E, P, expansions, double limits or the generic oracle")
    common(c)
    c.add_argument("--weight", help="comma-separated fundamental-weight coordinates")
    c.add_argument("--box", type=int, help="all weights with sum |c_i| <= BOX")
    c.add_argument("--mode", choices=MODES, default="e")
    c.add_argument("--oracle-budget", help="RANK,NORM limits for the generic oracle (default 2,4)")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", action="append", help="suite name(s), comma separated or repeated; 'all' for every suite")
    v.add_argument("--box", type=int, help="weight box bound (default 3)")
    v.add_argument("--oracle-budget", help="RANK,NORM limits for the generic oracle (default 2,4)")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dump-rootdata", help="print the root data tables")
    common(d)
    d.set_defaults(func=cmd_dump)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedType as exc:
        print(f"unsupported type: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TheoremViolation as exc:
        print(f"theorem check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (UsageError, TypeLabelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MacdemazError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
