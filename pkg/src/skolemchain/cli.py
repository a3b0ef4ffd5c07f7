"""Command-line front end.

Exit status: 0 on success or passing verification, 1 on a failed
verification, 2 on bad input (parse errors, violated preconditions, an
exhausted window cap).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .analysis import (
    DEFAULT_HORIZON,
    decide_infinite_equality,
    query_scan,
    reverse_reduce,
    verify_certificate,
)
from .degeneracy import (
    DEFAULT_WINDOW_CAP,
    WindowNotFound,
    decomposition_report,
    find_nonzero_window,
    find_positive_window,
    sml_decompose,
)
from .kernel import format_rational
from .lrs import eval_range, lrs_to_dict, shift
from .randomized import run_selftest
from .reduction import PreconditionError, Query, build_instance
from .serialize import (
    InputError,
    certificate_to_dict,
    dumps,
    instance_to_dict,
    read_certificate,
    read_instance,
    read_lrs,
    write_json,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

COMMANDS = ("reduce", "verify", "eval", "decompose", "reverse", "scan", "selftest")


@dataclass
class PipelineConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: Optional[Path] = None
    query: Query = Query.EQUAL
    horizon: int = DEFAULT_HORIZON
    window_cap: int = DEFAULT_WINDOW_CAP
    seed: int = 0
    as_json: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.window_cap < 1:
            raise ValueError("window cap must be >= 1")


def _emit(cfg: PipelineConfig, text: str, payload=None):
    """Print text, or JSON when --json is set; mirror JSON to --out if given."""
    if cfg.as_json and payload is not None:
        sys.stdout.write(dumps(payload))
    else:
        print(text)
    if cfg.out is not None and payload is not None:
        write_json(cfg.out, payload)


# --------------------------------------------------------------------------
# reduce
# --------------------------------------------------------------------------


def _reduce(cfg: PipelineConfig) -> int:
    source = read_lrs(cfg.inputs[0])
    out = cfg.out or Path("reduction-out")
    out.mkdir(parents=True, exist_ok=True)
    components = sml_decompose(source)
    query = cfg.query
    entries = []
    status = EXIT_OK
    for comp in components:
        l = comp.component
        k = l.order
        entry = {"offset": comp.offset, "stride": comp.stride, "order": k}
        entries.append(entry)

        def original(n, comp=comp):
            return comp.offset + comp.stride * n

        if comp.identically_zero:
            entry["status"] = "identically_zero"
            entry["note"] = (
                f"u_n = 0 for every n = {comp.offset} (mod {comp.stride})"
            )
            continue

        t = find_nonzero_window(l, cfg.window_cap)
        prefix = eval_range(l, t + k - 1)
        if query is Query.EQUAL:
            zeros = [original(n) for n in range(t) if prefix[n] == 0]
            if zeros:
                entry["prefix_zero_indices"] = zeros
        elif query is Query.LESS:
            negative = next((n for n, u in enumerate(prefix) if u < 0), None)
            if negative is not None:
                entry["status"] = "answered"
                entry["note"] = (
                    f"u_{original(negative)} = {format_rational(prefix[negative])} < 0 "
                    "already witnesses a negative term"
                )
                continue
        else:
            try:
                t = find_positive_window(l, cfg.window_cap)
            except WindowNotFound as exc:
                entry["status"] = "undetermined"
                entry["note"] = f"no all-positive window to reduce from: {exc}"
                continue

        shifted = shift(l, t)
        inst, cert = build_instance(shifted, query)
        report = verify_certificate(shifted, inst, cert, cfg.horizon)
        stem = f"component-{comp.offset}"
        write_json(out / f"{stem}.instance.json", instance_to_dict(inst))
        write_json(out / f"{stem}.certificate.json", certificate_to_dict(cert))
        write_json(out / f"{stem}.report.json", report.to_dict())
        (out / f"{stem}.report.txt").write_text(report.render() + "\n")
        entry.update({
            "status": "instance",
            "shift": t,
            "index_map": f"step n of the chain <-> u_{{{comp.offset} + {comp.stride}*(n + {t})}}",
            "instance": f"{stem}.instance.json",
            "certificate": f"{stem}.certificate.json",
            "report": f"{stem}.report.json",
            "verification": "pass" if report.overall else "fail",
        })
        if not report.overall:
            status = EXIT_FAIL

    manifest = {
        "source": lrs_to_dict(source),
        "query": query.value,
        "stride": components[0].stride,
        "horizon": cfg.horizon,
        "components": entries,
    }
    write_json(out / "manifest.json", manifest)
    for e in entries:
        line = f"component c={e['offset']} (stride {e['stride']}, order {e['order']}): {e['status']}"
        if e["status"] == "instance":
            line += f", shift {e['shift']}, verification {e['verification']}"
        elif "note" in e:
            line += f" - {e['note']}"
        print(line)
    print(f"wrote {out / 'manifest.json'}")
    return status


def _verify(cfg: PipelineConfig) -> int:
    if len(cfg.inputs) != 2:
        raise InputError("verify needs an instance file and a certificate file")
    inst = read_instance(cfg.inputs[0])
    cert = read_certificate(cfg.inputs[1])
    try:
        report = verify_certificate(cert.lrs, inst, cert, cfg.horizon)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(cfg, report.render(), report.to_dict())
    return EXIT_OK if report.overall else EXIT_FAIL


def _eval(cfg: PipelineConfig) -> int:
    l = read_lrs(cfg.inputs[0])
    terms = eval_range(l, cfg.horizon)
    text = "\n".join(f"u_{n} = {format_rational(u)}" for n, u in enumerate(terms))
    _emit(cfg, text, {"terms": [format_rational(u) for u in terms]})
    return EXIT_OK


def _decompose(cfg: PipelineConfig) -> int:
    l = read_lrs(cfg.inputs[0])
    report = decomposition_report(sml_decompose(l))
    lines = [f"stride L = {report[0]['stride']}"]
    for c in report:
        flags = []
        if c["identically_zero"]:
            flags.append("identically zero")
        flags.append("non-degenerate" if c["nondegenerate"] else "DEGENERATE")
        lines.append(
            f"  c={c['offset']}: order {c['order']}, {', '.join(flags)}; "
            f"terms {' '.join(c['first_terms'])}"
        )
    _emit(cfg, "\n".join(lines), {"components": report})
    return EXIT_OK


def _reverse(cfg: PipelineConfig) -> int:
    inst = read_instance(cfg.inputs[0])
    try:
        l, start = reverse_reduce(inst.matrix, inst.target, inst.source, inst.threshold)
        infinite = decide_infinite_equality(inst.matrix, inst.target, inst.source, inst.threshold)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {"lrs": lrs_to_dict(l), "start_shift": start, "infinitely_often_equal": infinite}
    text = (
        f"v_n = m_{inst.target}{inst.source}^(n + {start}) - {format_rational(inst.threshold)}\n"
        f"  coefficients a_0..a_{l.order - 1}: {' '.join(map(format_rational, l.coefficients))}\n"
        f"  initial terms: {' '.join(map(format_rational, l.initial))}\n"
        f"m_ij^(n) = r for infinitely many n: {'yes' if infinite else 'no'}"
    )
    _emit(cfg, text, payload)
    return EXIT_OK


def _scan(cfg: PipelineConfig) -> int:
    inst = read_instance(cfg.inputs[0])
    result = query_scan(inst, cfg.horizon)
    payload = {
        "query": result.query.value,
        "horizon": result.horizon,
        "witness": result.witness,
        "hits": list(result.hits),
        "note": "bounded scan only; absence of a witness decides nothing",
    }
    _emit(cfg, result.render(), payload)
    return EXIT_OK


def _selftest(cfg: PipelineConfig) -> int:
    suites = run_selftest(cfg.seed)
    for s in suites:
        print(s.line())
    ok = all(s.ok for s in suites)
    print(f"selftest seed {cfg.seed}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "reduce": _reduce,
    "verify": _verify,
    "eval": _eval,
    "decompose": _decompose,
    "reverse": _reverse,
    "scan": _scan,
    "selftest": _selftest,
}


def run_command(cfg: PipelineConfig) -> int:
    try:
        return HANDLERS[cfg.command](cfg)
    except (InputError, PreconditionError, WindowNotFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skolemchain",
        description="Reduce linear recurrence sequences to ergodic Markov chains, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon=True):
        if horizon:
            p.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                           help=f"number of steps/terms to check (default {DEFAULT_HORIZON})")
        p.add_argument("--out", type=Path, help="output file (directory for reduce)")
        p.add_argument("--json", action="store_true", help="print JSON instead of text")

    p = sub.add_parser("reduce", help="LRS file -> instances, certificates, manifest")
    p.add_argument("input")
    p.add_argument("--query", default="Equal",
                   help="Equal, Less or InfinitelyOftenLess (default Equal)")
    p.add_argument("--window-cap", type=int, default=DEFAULT_WINDOW_CAP)
    common(p)

    p = sub.add_parser("verify", help="re-check an instance against its certificate")
    p.add_argument("instance")
    p.add_argument("certificate")
    common(p)

    p = sub.add_parser("eval", help="print u_0 .. u_horizon")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("decompose", help="stride decomposition report")
    p.add_argument("input")
    common(p, horizon=False)

    p = sub.add_parser("reverse", help="instance file -> LRS, plus the infinite-equality decision")
    p.add_argument("instance")
    common(p, horizon=False)

    p = sub.add_parser("scan", help="bounded search for a query witness")
    p.add_argument("instance")
    common(p)

    p = sub.add_parser("selftest", help="seeded randomized property checks")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = [getattr(args, name) for name in ("input", "instance", "certificate")
              if getattr(args, name, None) is not None]
    try:
        cfg = PipelineConfig(
            command=args.command,
            inputs=inputs,
            out=getattr(args, "out", None),
            query=Query.parse(getattr(args, "query", "Equal")),
            horizon=getattr(args, "horizon", DEFAULT_HORIZON),
            window_cap=getattr(args, "window_cap", DEFAULT_WINDOW_CAP),
            seed=getattr(args, "seed", 0),
            as_json=getattr(args, "json", False),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run_command(cfg)


if __name__ == "__main__":
    sys.exit(main())
