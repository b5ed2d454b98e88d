"""Command-line front end.

Subcommands: enumerate, classify, geometry, tables, netlist, laplacian.
Exit codes: 0 success/match, 1 mismatch, 2 search cap exceeded, 3 bad input.
All pipelines are deterministic; --jobs only changes wall time, never output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .algebra import (
    DISPLAY_NAMES,
    EnumerationMode,
    SearchCapExceeded,
    StructureConstants,
    calculus_relations,
    enumerate_algebras,
    find_unit,
    generic_names,
)
from .circuits import compile_bilinear, compile_linear, compile_pi
from .constructions import (
    PartitionDatum,
    all_partition_data,
    euclidean_metric,
    functions_algebra,
    partition_qlc,
)
from .fieldcalc import Polynomial, differential, laplacian
from .geometry import find_metrics, find_qlcs, qlcs_bimodule
from .orbits import orbits
from .reports import classify_report, enumerate_report, geometry_report
from .tables import class_tensors, compare_table, label_map, paper_data
from .gf2 import mat_from_lists


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # bad input is exit code 3
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(3)


@dataclass
class RunConfig:
    n: int = 2
    mode: EnumerationMode = field(default_factory=EnumerationMode.inner_any)
    sigma_space_max: int = 1 << 24
    gl_cache_max: int = 1 << 26
    fmt: str = "text"
    out: str | None = None
    jobs: int = 1
    unsafe_large: bool = False
    heisenberg_theta: str | None = None

    def __post_init__(self):
        if self.sigma_space_max <= 0 or self.gl_cache_max <= 0:
            raise ValueError("caps must be positive")
        if not (1 <= self.n <= 4) and not self.unsafe_large:
            raise ValueError("n outside 1..4 needs --unsafe-large")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_theta(n: int, text: str) -> int:
    text = text.strip()
    if not all(ch in "01" for ch in text) or len(text) != n or "1" not in text:
        raise ValueError(f"theta must be n={n} bits with at least one 1, e.g. '10'*")
    theta = 0
    for i, ch in enumerate(text):
        if ch == "1":
            theta |= int(ch) << i
    return theta


def _mode_from_args(args, n: int) -> EnumerationMode:
    if getattr(args, "inner", None) is not None:
        if args.inner == "any":
            return EnumerationMode.inner_any()
        return EnumerationMode.inner(_parse_theta(n, args.inner))
    mode = args.mode
    if mode == "all":
        return EnumerationMode.all()
    if mode == "inner":
        return EnumerationMode.inner_any()
    if mode == "inner-theta":
        if not args.theta:
            raise ValueError("--mode inner-theta needs --theta <bits>")
        return EnumerationMode.inner(_parse_theta(n, args.theta))
    if mode == "unital-iso":
        return EnumerationMode.unital_up_to_iso()
    raise ValueError(f"unknown mode {mode}")


def _names(n: int):
    return DISPLAY_NAMES.get(n, generic_names(n))


def _resolve_label(n: int, label: str) -> tuple[StructureConstants, bool]:
    """Class tensor for a paper label; second value marks non-inner families."""
    inner = class_tensors(n, True)
    if label in inner:
        return inner[label], False
    data = paper_data()["noninner_classes"]
    if str(n) in data:
        non = class_tensors(n, False)
        if label in non:
            return non[label], True
    raise KeyError(f"unknown label {label!r} for n={n}")


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    mode = _mode_from_args(args, cfg.n)
    sols = list(
        enumerate_algebras(cfg.n, mode, cap=cfg.gl_cache_max,
                           unsafe_large=cfg.unsafe_large, jobs=cfg.jobs)
    )
    report = enumerate_report(cfg.n, mode.kind, sols, cfg.heisenberg_theta)
    if cfg.fmt == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["hex", "theta", "relations"])
        for s in report["solutions"]:
            w.writerow([s["hex"], s["theta"] or "", "; ".join(s["relations"])])
        _emit(buf.getvalue(), cfg.out)
    else:
        lines = [f"{report['count']} solutions (n={cfg.n}, mode={mode.kind})"]
        for s in report["solutions"]:
            lines.append(f"  {s['hex']}  theta={s['theta'] or '-'}  " + "; ".join(s["relations"]))
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_classify(args) -> int:
    cfg = _config(args)
    if cfg.n == 4:
        sols = list(enumerate_algebras(4, EnumerationMode.inner(1),
                                       cap=cfg.gl_cache_max, jobs=cfg.jobs))
        reps = orbits(sols, 4, slice_mode=True, labels=label_map(4))
    else:
        sols = list(enumerate_algebras(cfg.n, EnumerationMode.inner_any(),
                                       cap=cfg.gl_cache_max, jobs=cfg.jobs))
        reps = orbits(sols, cfg.n, labels=label_map(cfg.n))
    report = classify_report(cfg.n, reps, cfg.heisenberg_theta)
    if cfg.fmt == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["label", "canonical_hex", "size", "isotropy_order"])
        for o in report["orbits"]:
            w.writerow([o["label"] or "", o["canonical_hex"], o["size"], o["isotropy_order"]])
        _emit(buf.getvalue(), cfg.out)
    else:
        lines = [f"{report['orbit_count']} classes (n={cfg.n}, {len(sols)} solutions)"]
        for o in sorted(report["orbits"], key=lambda o: o["label"] or "~"):
            lines.append(
                f"  {o['label'] or '?'}: orbit size {o['size']}, "
                f"isotropy order {o['isotropy_order']}, rep {o['canonical_hex']}"
            )
        lines.append(report["metadata"]["heisenberg_note"])
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_geometry(args) -> int:
    cfg = _config(args)
    try:
        v, noninner = _resolve_label(cfg.n, args.label)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    pairs = []
    for g in find_metrics(v):
        if noninner:
            qlcs = qlcs_bimodule(v, g, cap=cfg.sigma_space_max)
        else:
            qlcs = find_qlcs(v, g, cap=cfg.sigma_space_max)
        pairs.append((g, qlcs))
    report = geometry_report(args.label, v, pairs, cfg.heisenberg_theta)
    if cfg.fmt == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg.out)
    else:
        names = _names(cfg.n)
        lines = [f"calculus {args.label} (n={cfg.n})"]
        lines += [f"  {r}" for r in report["relations"]]
        for m in report["metrics"]:
            lines.append(
                f"metric {m['matrix_hex']} {m['matrix']}: "
                f"{m['qlc_count_nonzero']} nonzero QLCs"
            )
            for q in m["qlcs"]:
                flat = "flat" if q["curvature_zero"] else "curved"
                lines.append(f"  gamma {q['gamma_hex']} sigma {q['sigma_hex']} ({flat})")
        lines.append(report["metadata"]["heisenberg_note"])
        _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def cmd_tables(args) -> int:
    cfg = _config(args)
    ok, diff = compare_table(int(args.which), cap=cfg.gl_cache_max, jobs=cfg.jobs)
    if ok:
        _emit(f"table {args.which}: PASS\n", cfg.out)
        return 0
    _emit(f"table {args.which}: MISMATCH\n{diff}\n", cfg.out)
    return 1


def cmd_netlist(args) -> int:
    cfg = _config(args)
    try:
        v, _ = _resolve_label(cfg.n, args.label)
    except KeyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    names = list(_names(cfg.n))
    if args.fig1_basis:
        if cfg.n != 2:
            sys.stderr.write("error: --fig1-basis is the n=2 basis {t, x}\n")
            return 3
        from .algebra import act

        v = act(mat_from_lists([[1, 1], [0, 1]]), v)
        names = ["t", "x"]
    if args.kind == "bilinear":
        nl = compile_bilinear(v, names)
    elif args.kind == "linear":
        nl = compile_linear(v, names)
    else:
        nl = compile_pi(cfg.n, names)
    _emit(nl.to_text(), cfg.out)
    return 0


def cmd_laplacian(args) -> int:
    cfg = _config(args)
    n = cfg.n
    v = functions_algebra(n)
    g = euclidean_metric(n)
    data = all_partition_data(n)
    if args.connection_index is None:
        datum = PartitionDatum(n, tuple(range(n)), ())
    else:
        if not 0 <= args.connection_index < len(data):
            sys.stderr.write(f"error: connection index outside 0..{len(data) - 1}\n")
            return 3
        datum = data[args.connection_index]
    conn = partition_qlc(datum)
    try:
        f = Polynomial.parse(n, args.poly)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    df = differential(f, v)
    box = laplacian(f, v, g, conn)
    names = generic_names(n)
    out = {
        "n": n,
        "poly": f.render(),
        "df": df.render(names),
        "box": box.render(),
        "connection": {"fixed": list(datum.fixed), "pairs": [list(p) for p in datum.pairs]},
        "zero_mode": box.is_zero(),
    }
    if cfg.fmt == "json":
        _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", cfg.out)
    else:
        _emit(
            f"f = {out['poly']}\ndf = {out['df']}\nbox f = {out['box']}\n"
            f"zero mode: {out['zero_mode']}\n",
            cfg.out,
        )
    return 0


def _config(args) -> RunConfig:
    return RunConfig(
        n=args.n,
        sigma_space_max=1 << args.cap_sigma,
        fmt=args.format,
        out=args.out,
        jobs=args.jobs,
        unsafe_large=args.unsafe_large,
        heisenberg_theta=args.heisenberg_theta,
    )


def build_parser() -> _Parser:
    p = _Parser(prog="f2geo", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_n=True):
        if need_n:
            sp.add_argument("--n", type=int, default=2)
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--out", default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--cap-sigma", type=int, default=24,
                        help="log2 of the sigma-space enumeration cap")
        sp.add_argument("--unsafe-large", action="store_true")
        sp.add_argument("--heisenberg-theta", default=None,
                        help="antisymmetric Theta recorded as metadata only")

    sp = sub.add_parser("enumerate", help="enumerate calculi (structure constants)")
    common(sp)
    sp.add_argument("--mode", choices=["all", "inner", "inner-theta", "unital-iso"],
                    default="inner")
    sp.add_argument("--theta", default=None, help="bit string, e.g. 100 for dx1")
    sp.add_argument("--inner", default=None, metavar="any|BITS",
                    help="alias: --inner any == --mode inner; --inner BITS == inner-theta")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("classify", help="orbit decomposition with paper labels")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("geometry", help="metrics, QLCs and curvature for one class")
    common(sp)
    sp.add_argument("--label", required=True)
    sp.set_defaults(func=cmd_geometry)

    sp = sub.add_parser("tables", help="regenerate a table and diff against the golden")
    common(sp)
    sp.add_argument("which", choices=["1", "2", "4", "5", "6"])
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("netlist", help="compile a class product to AND/XOR gates")
    common(sp)
    sp.add_argument("--label", required=True)
    sp.add_argument("--kind", choices=["bilinear", "linear", "pi"], required=True)
    sp.add_argument("--fig1-basis", action="store_true",
                    help="use the n=2 basis t=e+x, x with states 0=00,x=01,t=10,e=11")
    sp.set_defaults(func=cmd_netlist)

    sp = sub.add_parser("laplacian", help="finite-difference calculus on the functions algebra")
    common(sp)
    sp.add_argument("--poly", required=True, help="e.g. 'x1^2*x3 + x2'")
    sp.add_argument("--connection-index", type=int, default=None,
                    help="index into the partition-connection list; default zero connection")
    sp.set_defaults(func=cmd_laplacian)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchCapExceeded as exc:
        sys.stderr.write(f"search cap exceeded: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
