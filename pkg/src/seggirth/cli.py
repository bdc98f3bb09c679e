"""Command-line interface: ``seggirth <command> ...``.

Exit codes: 0 success, 1 mismatch, 2 bad input or degenerate geometry,
3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .arrangement import build_planarization, read_graph_dump
from .distkit import segment_distances
from .gen import MODELS, GenerationError, generate
from .geom import GeneralPositionError, GeometryError, Segment, format_segments, parse_segments
from .girthcore import PromiseViolated, girth
from .minplus import INF, BdViolation
from .oracle import naive_intersection_graph, segment_girth, shortest_cycle_witness
from .params import Params
from .separator import SepInput, WeightCapError, separate, verify_separation
from .trace import STAGES, Trace

SCHEMA = 1


def _fmt_g(g) -> str:
    return "INF" if g == float("inf") else str(int(g))


def _json_g(g):
    return "INF" if g == float("inf") else int(g)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _read_segments(path: str) -> list[Segment]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GeometryError(str(exc)) from None
    return parse_segments(text)


def _params(args) -> Params:
    return Params().with_overrides(args.params)


def _instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(count)]


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    segs = generate(args.model, args.n, args.seed, k=args.k)
    header = f"model={args.model} n={len(segs)} seed={args.seed}" + (f" k={args.k}" if args.k else "")
    text = format_segments(segs, header)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _trace_report(tr: Trace, timings: bool) -> dict:
    out = {
        "girth": tr.summary("girth"),
        "distances": tr.summary("dist"),
        "stages_executed": tr.executed(),
        "stage_calls": {s: tr.calls.get(s, 0) for s in STAGES},
        "products": {"bd": tr.stats.bd, "naive": tr.stats.naive},
        "branches": sorted({str(x.get("case")) for x in tr.nodes if x.get("kind") == "girth"}),
    }
    if timings:
        out["timings"] = {s: round(tr.timings.get(s, 0.0), 6) for s in STAGES}
    return out


def cmd_compute(args) -> int:
    segs = _read_segments(args.input)
    prm = _params(args)
    payload = {"command": "compute", "n": len(segs), "engine": args.engine, "params": prm.as_dict()}
    lines = []
    fast = oracle = None
    if args.engine in ("fast", "both"):
        tr = Trace()
        t0 = time.perf_counter()
        res = girth(segs, prm, tr)
        wall = time.perf_counter() - t0
        fast = res.girth
        payload.update(girth=_json_g(fast), branch=res.branch, trace=_trace_report(tr, not args.no_timings))
        if not args.no_timings:
            payload["wall_seconds"] = round(wall, 6)
    if args.engine in ("oracle", "both"):
        oracle = segment_girth(segs)
        payload["oracle_girth"] = _json_g(oracle)
        if fast is None:
            payload["girth"] = _json_g(oracle)
    value = fast if fast is not None else oracle
    lines.append(f"girth={_fmt_g(value)}")
    code = 0
    if args.engine == "both":
        same = fast == oracle
        payload["match"] = same
        lines.append("MATCH" if same else f"MISMATCH fast={_fmt_g(fast)} oracle={_fmt_g(oracle)}")
        code = 0 if same else 1
    elif fast is not None:
        lines.append(f"branch={payload['branch']}")
    _emit(args, payload, lines)
    return code


def cmd_distances(args) -> int:
    segs = _read_segments(args.input)
    X = [int(t) for t in args.sources.split(",") if t.strip()] if args.sources else list(range(len(segs)))
    for s in X:
        if not 0 <= s < len(segs):
            raise GeometryError(f"unknown segment id {s}")
    D = segment_distances(segs, X, _params(args), Trace())
    rows = [["INF" if v >= INF else int(v) for v in row] for row in D.data.tolist()]
    lines = ["src " + " ".join(map(str, X))]
    lines += [f"{s} " + " ".join(map(str, r)) for s, r in zip(X, rows)]
    _emit(args, {"command": "distances", "sources": X, "matrix": rows}, lines)
    return 0


def _looks_like_dump(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return line.split()[0] in ("vertex", "edge", "weight", "load")
    return False


def cmd_separate(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GeometryError(str(exc)) from None
    if _looks_like_dump(text):
        graph, _, wmap, lmap = read_graph_dump(text)
        weight = [wmap.get(v, Fraction(1)) for v in range(graph.n)]
        load = [lmap.get(v, Fraction(1)) for v in range(graph.n)]
    else:
        arr = build_planarization(parse_segments(text))
        graph = arr.graph()
        weight = [Fraction(0)] * arr.n
        for v in arr.left_vertex.values():
            weight[v] = Fraction(1)
        load = [Fraction(1)] * arr.n
        if args.emit_dump:
            extra = [f"weight {v} {w}" for v, w in enumerate(weight)] + [f"load {v} {x}" for v, x in enumerate(load)]
            with open(args.emit_dump, "w", encoding="utf-8") as fh:
                fh.write(arr.dump() + "\n".join(extra) + "\n")
    n = graph.n
    p = args.p if args.p else max(1, round(n ** 0.5))
    inp = SepInput(graph, weight, load, p, _params(args).eps)
    try:
        sep = separate(inp)
    except WeightCapError as exc:
        raise GeometryError(f"cannot separate: {exc}") from None
    rep = verify_separation(inp, sep)
    verdict = "PASS" if rep.ok else "FAIL"
    payload = {
        "command": "separate",
        "n": n,
        "p": p,
        "case": sep.case,
        "V1": sep.V1,
        "V2": sep.V2,
        "P": sep.P,
        "Q": sep.Q,
        "verdict": verdict,
        "failures": [list(f) for f in rep.failures],
    }
    lines = [
        f"n={n} p={p} case={sep.case}",
        f"V1 {len(sep.V1)}: " + " ".join(map(str, sep.V1)),
        f"V2 {len(sep.V2)}: " + " ".join(map(str, sep.V2)),
    ]
    lines += [f"P[{i}] {len(pth)}: " + " ".join(map(str, pth)) for i, pth in enumerate(sep.P)]
    lines.append(f"Q {len(sep.Q)}: " + " ".join(map(str, sep.Q)))
    lines.append(f"verdict={verdict}")
    lines += [f"  {c}: {msg}" for c, msg in rep.failures]
    _emit(args, payload, lines)
    return 0 if rep.ok else 3


def cmd_check(args) -> int:
    prm = _params(args)
    models = [m.strip() for m in args.models.split(",")] if args.models else list(MODELS)
    for m in models:
        if m not in MODELS:
            raise GeometryError(f"unknown model {m!r}")
    seeds = _instance_seeds(args.seed, args.count)
    per = {m: [0, 0, 0] for m in models}  # pass, total, skipped
    failures = []
    skipped = []
    for i, s in enumerate(seeds):
        model = models[i % len(models)]
        rng = random.Random(s)
        n = rng.randint(args.nmin, args.nmax)
        k = rng.randint(3, 12)
        try:
            segs = generate(model, n, s, k=k)
            fast = girth(segs, prm).girth
        except (GenerationError, GeneralPositionError) as exc:
            per[model][2] += 1
            skipped.append((model, s, str(exc).splitlines()[0]))
            continue
        orc = segment_girth(segs)
        per[model][1] += 1
        if fast == orc:
            per[model][0] += 1
        else:
            failures.append({"model": model, "seed": s, "n": len(segs), "fast": _json_g(fast), "oracle": _json_g(orc),
                             "segments": format_segments(segs, f"model={model} seed={s}")})
    lines = [f"{m}: {per[m][0]}/{per[m][1]} pass" + (f", {per[m][2]} skipped" if per[m][2] else "") for m in models]
    for sk in skipped:
        lines.append(f"skipped {sk[0]} seed={sk[1]}: {sk[2]}")
    for f in failures:
        lines.append(f"MISMATCH {f['model']} seed={f['seed']} n={f['n']} fast={f['fast']} oracle={f['oracle']}")
        if args.repro:
            lines.append(f["segments"].rstrip("\n"))
    lines.append(f"mismatches={len(failures)}")
    if not args.repro:
        for f in failures:
            del f["segments"]
    payload = {
        "command": "check",
        "per_model": {m: {"pass": a, "total": b, "skipped": c} for m, (a, b, c) in per.items()},
        "mismatches": failures,
        "skipped": [{"model": a, "seed": b, "reason": c} for a, b, c in skipped],
    }
    _emit(args, payload, lines)
    return 1 if failures else 0


def cmd_bench(args) -> int:
    prm = _params(args)
    sizes = [int(t) for t in args.sizes.split(",")]
    models = [m.strip() for m in args.models.split(",")]
    engines = [e.strip() for e in args.engines.split(",")]
    rows = []
    for m in models:
        for n in sizes:
            segs = generate(m, n, args.seed, k=args.k)
            for eng in engines:
                t0 = time.perf_counter()
                if eng == "fast":
                    tr = Trace()
                    g = girth(segs, prm, tr).girth
                    stages = {s: round(tr.timings.get(s, 0.0), 4) for s in STAGES}
                elif eng == "oracle":
                    g = segment_girth(segs)
                    stages = {s: None for s in STAGES}
                else:
                    raise GeometryError(f"unknown engine {eng!r}")
                rows.append({"model": m, "n": n, "engine": eng, "girth": _json_g(g),
                             "total": round(time.perf_counter() - t0, 4), "stages": stages})
    head = ["model", "n", "engine", "girth", "total", *STAGES]
    lines = ["\t".join(head)]
    for r in rows:
        vals = [r["model"], r["n"], r["engine"], r["girth"], r["total"]]
        vals += ["-" if r["stages"][s] is None else r["stages"][s] for s in STAGES]
        lines.append("\t".join(map(str, vals)))
    _emit(args, {"command": "bench", "rows": rows}, lines)
    return 0


def render_svg(segments, solid: set[int], size: int = 800, margin: int = 20) -> str:
    """Segments in ``solid`` drawn solid, everything else dotted."""
    if not segments:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"></svg>\n'
    xs = [float(c) for s in segments for c in (s.a.x, s.b.x)]
    ys = [float(c) for s in segments for c in (s.a.y, s.b.y)]
    x0, y0 = min(xs), min(ys)
    span = max(max(xs) - x0, max(ys) - y0) or 1.0
    scale = (size - 2 * margin) / span

    def tx(x):
        return margin + (float(x) - x0) * scale

    def ty(y):
        return size - margin - (float(y) - y0) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    for s in segments:
        cls = "cycle" if s.id in solid else "other"
        dash = "" if s.id in solid else ' stroke-dasharray="2,4"'
        width = 2.5 if s.id in solid else 1.2
        out.append(
            f'<line class="{cls}" data-seg="{s.id}" x1="{tx(s.a.x):.3f}" y1="{ty(s.a.y):.3f}" '
            f'x2="{tx(s.b.x):.3f}" y2="{ty(s.b.y):.3f}" stroke="black" stroke-width="{width}"{dash}/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(args) -> int:
    segs = _read_segments(args.input)
    build_planarization(segs)  # rejects degenerate input
    witness = shortest_cycle_witness(naive_intersection_graph(segs)) or []
    svg = render_svg(segs, set(witness))
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    lines = [f"wrote {args.output}: {len(witness)} solid, {len(segs) - len(witness)} dotted"]
    _emit(args, {"command": "render", "output": args.output, "cycle": sorted(witness)}, lines)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for generation (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--params", default=argparse.SUPPRESS, help="overrides, e.g. n0=32,eps=1/24")

    ap = argparse.ArgumentParser(prog="seggirth", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", default=False)
    ap.add_argument("--params", default="")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    g.add_argument("model", choices=MODELS)
    g.add_argument("-n", type=int, default=20)
    g.add_argument("-k", type=int, default=None, help="cycle length for ring / girth-k-planted")
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compute", parents=[common], help="girth of a segment file")
    c.add_argument("input")
    c.add_argument("--engine", choices=("fast", "oracle", "both"), default="fast")
    c.add_argument("--no-timings", action="store_true", help="omit timings so output is reproducible")
    c.set_defaults(func=cmd_compute)

    d = sub.add_parser("distances", parents=[common], help="intersection-graph distances between segments")
    d.add_argument("input")
    d.add_argument("--sources", default="", help="comma-separated segment ids (default: all)")
    d.set_defaults(func=cmd_distances)

    s = sub.add_parser("separate", parents=[common], help="separate a graph dump or planarized segment file")
    s.add_argument("input")
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--emit-dump", default=None, help="write the planarized graph dump here")
    s.set_defaults(func=cmd_separate)

    k = sub.add_parser("check", parents=[common], help="differential test against the oracle")
    k.add_argument("--count", type=int, default=100)
    k.add_argument("--models", default="")
    k.add_argument("--nmin", type=int, default=3)
    k.add_argument("--nmax", type=int, default=60)
    k.add_argument("--repro", action="store_true", help="print failing instances")
    k.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", parents=[common], help="stage timings per size")
    b.add_argument("--sizes", default="1000,5000")
    b.add_argument("--models", default="sparse-chain")
    b.add_argument("--engines", default="fast")
    b.add_argument("-k", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", parents=[common], help="SVG with a shortest cycle drawn solid")
    r.add_argument("input")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GeneralPositionError as exc:
        print(f"error: {exc.report.summary()}", file=sys.stderr)
        return 2
    except (GeometryError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, PromiseViolated, BdViolation) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
