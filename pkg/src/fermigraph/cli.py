"""Command-line interface.

Subcommands: spectrum, gap, graph, walk, liebmattis, groundstate,
weights-validate.  Exit codes: 0 success, 2 invalid configuration,
3 computation failure, 4 oracle or consistency-check mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .combinatorics import Partition
from .graph import build_graph, export_graph
from .irreps import mixture_spectrum_by_symmetry
from .physics import energy_at, ground_state, interchange_walk, lieb_mattis_table
from .snippets import DEFAULT_SNIPPET_CAP
from .spectral import (DEFAULT_DENSE_CAP, DEFAULT_RTOL, SpectrumError, box_gap, full_spectrum, spectral_gap,
                       spectrum_tolerance)
from .weights import WeightFileError, WeightSet, load_weights, parse_weight_source

log = logging.getLogger("fermigraph")

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_MISMATCH = 0, 2, 3, 4


class ConfigError(Exception):
    pass


class OracleMismatch(Exception):
    pass


# --- parsing helpers ----------------------------------------------------------


def parse_mixture(text: str) -> Partition:
    try:
        parts = [int(tok) for tok in text.replace(" ", "").strip("[]()").split(",") if tok]
    except ValueError:
        raise ConfigError(f"mixture must be a comma list of positive integers, got {text!r}") from None
    if not parts or any(p <= 0 for p in parts):
        raise ConfigError(f"mixture must be a comma list of positive integers, got {text!r}")
    if parts != sorted(parts, reverse=True):
        log.warning("mixture %s is not in decreasing order; using %s", text, sorted(parts, reverse=True))
        parts.sort(reverse=True)
    return Partition(parts)


def parse_n_range(text: str) -> list[int]:
    """``"5"`` or ``"2:30"`` (inclusive)."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"--n must be an integer or lo:hi, got {text!r}") from None
    if lo < 2 or hi < lo:
        raise ConfigError(f"particle numbers must satisfy 2 <= lo <= hi, got {text!r}")
    return list(range(lo, hi + 1))


def resolve_weights(spec: str, n: int) -> WeightSet:
    try:
        return parse_weight_source(spec, n)
    except WeightFileError as exc:
        raise ConfigError(str(exc)) from None
    except ValueError as exc:
        raise ConfigError(f"bad weight source {spec!r}: {exc}") from None


def fmt_value(x: float, tol: float = 0.0) -> str:
    if abs(x) <= tol:
        x = 0.0
    return format(x, ".12g")


def emit(text: str, args) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_table(header: Sequence[str] | None, rows: Sequence[Sequence]) -> str:
    cells = [[str(c) for c in row] for row in rows]
    if header:
        cells.insert(0, list(header))
    if not cells:
        return ""
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _plot_path(args) -> Path | None:
    if not getattr(args, "plot", None):
        return None
    return Path(args.plot)


# --- subcommands --------------------------------------------------------------


def cmd_spectrum(args) -> int:
    if not args.mixture:
        raise ConfigError("--mixture is required")
    nu = parse_mixture(args.mixture)
    w = resolve_weights(args.weights, nu.n) if nu.n > 1 else None
    if w is None:
        values, labels = np.zeros(1), (nu,)
        tol = args.tolerance
    else:
        spec = mixture_spectrum_by_symmetry(nu, w)
        values, labels = spec.values, spec.labels
        tol = spectrum_tolerance(w.d, args.tolerance)
        if args.oracle:
            dense = full_spectrum(build_graph(nu, w, cap=args.cap), cap=args.dense_cap, rtol=args.tolerance)
            if not dense.matches(spec, tol):
                diff = float(np.max(np.abs(np.sort(dense.values) - np.sort(spec.values))))
                raise OracleMismatch(f"block spectrum differs from dense spectrum (max deviation {diff:.3e})")
            log.info("oracle: block route matches dense spectrum of size %d", len(dense))
    if args.format == "json":
        doc = {"mixture": list(nu.parts), "d": None if w is None else w.d,
               "alphas": None if w is None else list(w.alphas),
               "eigenvalues": [float(v) for v in values], "labels": [list(m.parts) for m in labels]}
        text = to_json(doc)
    elif args.format == "csv":
        text = to_csv(["index", "eigenvalue", "symmetry"],
                      [(i, repr(float(v)), str(m)) for i, (v, m) in enumerate(zip(values, labels))])
    else:
        text = to_table(None, [(fmt_value(v, tol), str(m)) for v, m in zip(values, labels)])
    emit(text, args)
    plot = _plot_path(args)
    if plot is not None and w is not None:
        from .plotting import plot_spectrum
        plot_spectrum(spec, plot, title=f"mixture {nu}")
    return EXIT_OK


def cmd_gap(args) -> int:
    ns = parse_n_range(args.n)
    rows = []
    for n in ns:
        w = resolve_weights(args.weights, n)
        k2 = spectral_gap(w)
        row = {"n": n, "K2": k2, "d": w.d, "potential": w.potential or w.provenance}
        if args.oracle:
            _gap_oracle(n, w, k2, args)
        rows.append(row)
    if args.format == "json":
        text = to_json({"weights": args.weights, "rows": rows})
    elif args.format == "csv":
        text = to_csv(["n", "K2", "d", "potential"], [(r["n"], repr(r["K2"]), repr(r["d"]), r["potential"])
                                                       for r in rows])
    else:
        text = to_table(["n", "K2", "d", "potential"],
                        [(r["n"], fmt_value(r["K2"]), fmt_value(r["d"]), r["potential"]) for r in rows])
    emit(text, args)
    plot = _plot_path(args)
    if plot is not None:
        from .plotting import plot_gap_curves
        name = rows[0]["potential"] if rows else args.weights
        plot_gap_curves({name: ([r["n"] for r in rows], [r["K2"] for r in rows])}, plot)
    return EXIT_OK


def _gap_oracle(n: int, w: WeightSet, k2: float, args) -> None:
    if w.provenance == "box":
        ref = box_gap(n, w.l_or_omega)
        if abs(ref - k2) > 1e-12 * ref:
            raise OracleMismatch(f"N={n}: path gap {k2!r} differs from box formula {ref!r}")
    if math.factorial(n) <= args.dense_cap:
        dense = full_spectrum(build_graph(Partition((1,) * n), w), cap=args.dense_cap)
        if abs(dense.values[1] - k2) > spectrum_tolerance(w.d, args.tolerance):
            raise OracleMismatch(f"N={n}: path gap {k2!r} differs from dense Cayley gap {dense.values[1]!r}")


def cmd_graph(args) -> int:
    if not args.mixture:
        raise ConfigError("--mixture is required")
    nu = parse_mixture(args.mixture)
    w = resolve_weights(args.weights, nu.n)
    g = build_graph(nu, w, cap=args.cap)
    fmt = args.format if args.format in ("dot", "json") else "dot"
    data = export_graph(g, fmt)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def cmd_walk(args) -> int:
    if not args.mixture:
        raise ConfigError("--mixture is required")
    nu = parse_mixture(args.mixture)
    w = resolve_weights(args.weights, nu.n)
    g = build_graph(nu, w, cap=args.cap)
    if args.events is not None:
        if args.events < 0:
            raise ConfigError("--events must be >= 0")
        duration = args.events / w.d
    else:
        duration = args.duration
    if duration < 0 or args.trajectories <= 0:
        raise ConfigError("duration must be >= 0 and trajectories > 0")
    stats = interchange_walk(g, duration, seed=args.seed, trajectories=args.trajectories, start=args.start)
    doc = {"mixture": list(nu.parts), "alphas": list(w.alphas), **stats.to_dict()}
    if args.format == "csv":
        text = to_csv(["vertex", "occupancy", "initial"],
                      [(lab, repr(float(p)), repr(float(q)))
                       for lab, p, q in zip(g.labels, stats.occupancy, stats.initial_histogram)])
    elif args.format == "table":
        text = to_table(["vertex", "occupancy", "initial"],
                        [(lab, fmt_value(p), fmt_value(q))
                         for lab, p, q in zip(g.labels, stats.occupancy, stats.initial_histogram)])
        rate = "n/a" if stats.relaxation_rate is None else fmt_value(stats.relaxation_rate)
        text += f"# relaxation_rate {rate}\n"
    else:
        text = to_json(doc)
    emit(text, args)
    return EXIT_OK


def cmd_liebmattis(args) -> int:
    if args.n is None:
        raise ConfigError("--n is required")
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise ConfigError("liebmattis takes a single --n")
    n = ns[0]
    w = resolve_weights(args.weights, n)
    table = lieb_mattis_table(n, w, rtol=args.tolerance)
    comparable = [p for p in table.pairs if p.comparable]
    if args.format == "json":
        doc = {
            "n": n, "d": table.d, "alphas": list(w.alphas),
            "classes": [{"shape": list(mu.parts), "K_max": k} for mu, k in table.ordered()],
            "comparable_pairs": len(comparable),
            "violations": len(table.violations),
            "incomparable": [{"a": list(p.upper.parts), "b": list(p.lower.parts), "K_a": p.k_upper,
                              "K_b": p.k_lower} for p in table.incomparable],
        }
        text = to_json(doc)
    elif args.format == "csv":
        text = to_csv(["shape", "K_max"], [(str(mu), repr(k)) for mu, k in table.ordered()])
    else:
        text = to_table(["shape", "K_max"], [(str(mu), fmt_value(k, 1e-12 * max(1, w.d)))
                                             for mu, k in table.ordered()])
        text += f"# comparable pairs {len(comparable)}, violations {len(table.violations)}\n"
        for p in table.incomparable:
            text += f"# incomparable {p.upper} vs {p.lower}: {fmt_value(p.k_upper)} vs {fmt_value(p.k_lower)}\n"
    emit(text, args)
    if table.violations:
        log.error("%d dominance-order violations", len(table.violations))
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_groundstate(args) -> int:
    if not args.mixture:
        raise ConfigError("--mixture is required")
    nu = parse_mixture(args.mixture)
    if nu.n < 2:
        raise ConfigError("ground state needs at least two particles")
    w = resolve_weights(args.weights, nu.n)
    report = ground_state(nu, w, seed=args.seed)
    if args.oracle:
        dense = full_spectrum(build_graph(nu, w, cap=args.cap), cap=args.dense_cap)
        if abs(dense.max - report.k_max) > spectrum_tolerance(w.d, args.tolerance):
            raise OracleMismatch(f"Lanczos K_max {report.k_max!r} differs from dense {dense.max!r}")
    doc = report.to_dict()
    if args.energy_a is not None:
        if args.coupling is None:
            raise ConfigError("--energy-a needs --coupling")
        doc["E"] = energy_at(report, args.energy_a, args.coupling)
    if args.format == "csv":
        text = to_csv(["snippet", "coefficient"], [(s, repr(float(a))) for s, a in
                                                    zip(report.snippets, report.eigenvector)])
    elif args.format == "table":
        label = "ambiguous" if report.symmetry_label is None else str(report.symmetry_label)
        text = to_table(None, [("K_max", fmt_value(report.k_max)), ("symmetry", label),
                               ("residual", format(report.residual, ".3e"))])
        if "E" in doc:
            text += to_table(None, [("E", fmt_value(doc["E"]))])
    else:
        text = to_json(doc)
    emit(text, args)
    return EXIT_OK


def cmd_weights_validate(args) -> int:
    rows = []
    for path in args.paths:
        try:
            w = load_weights(path)
        except WeightFileError as exc:
            raise ConfigError(str(exc)) from None
        rows.append({"path": path, "n": w.n, "potential": w.potential, "d": w.d,
                     "alpha_min": min(w.alphas), "alpha_max": max(w.alphas), "source": w.source})
    if args.format == "json":
        text = to_json(rows)
    elif args.format == "csv":
        text = to_csv(["path", "n", "potential", "d"], [(r["path"], r["n"], r["potential"], repr(r["d"]))
                                                        for r in rows])
    else:
        text = to_table(["path", "n", "potential", "d"],
                        [(r["path"], r["n"], r["potential"], fmt_value(r["d"])) for r in rows])
    emit(text, args)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit with the config code
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mixture", help="mixture as a comma list, largest first, e.g. 2,2")
    common.add_argument("--weights", default="uniform:1",
                        help="uniform:ALPHA | box:L | random:SEED | file:PATH ({n} expands to N)")
    common.add_argument("--format", choices=["table", "json", "csv", "dot"], default=None,
                        help="output format (default: table; json for walk and groundstate)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_RTOL,
                        help="relative eigenvalue tolerance, scaled by max(1, d)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle", action="store_true", help="cross-check against a dense solve")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--cap", type=int, default=DEFAULT_SNIPPET_CAP, help="maximum number of snippets")
    common.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP, help="maximum dense solve size")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="fermigraph", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="symmetry-labelled spectrum of a mixture")
    p.add_argument("--plot", help="also render the spectrum to this image file")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gap", parents=[common], help="spectral gap of the full mixture versus N")
    p.add_argument("--n", required=True, help="particle number or inclusive range lo:hi")
    p.add_argument("--plot", help="also render K2 versus N (log-log) to this image file")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("graph", parents=[common], help="export the Schreier graph as DOT or JSON")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("walk", parents=[common], help="simulate the interchange process")
    p.add_argument("--duration", type=float, default=5.0)
    p.add_argument("--events", type=float, help="expected clock ticks per trajectory (sets duration = events/d)")
    p.add_argument("--trajectories", type=int, default=1000)
    p.add_argument("--start", type=int, help="fixed start vertex (default: uniform random)")
    p.set_defaults(func=cmd_walk, default_format="json")

    p = sub.add_parser("liebmattis", parents=[common], help="K_max per symmetry class and dominance check")
    p.add_argument("--n", required=True, help="particle number")
    p.set_defaults(func=cmd_liebmattis)

    p = sub.add_parser("groundstate", parents=[common], help="largest eigenpair and its symmetry class")
    p.add_argument("--energy-a", type=float, help="noninteracting energy E_A for the first-order energy")
    p.add_argument("--coupling", type=float, help="interaction strength g for the first-order energy")
    p.set_defaults(func=cmd_groundstate, default_format="json")

    p = sub.add_parser("weights-validate", parents=[common], help="check weight files")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_weights_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "table")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    if args.format == "dot" and args.command != "graph":
        print("fermigraph: error: --format dot only applies to 'graph'", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"fermigraph: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OracleMismatch as exc:
        print(f"fermigraph: oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (SpectrumError, ArithmeticError, MemoryError) as exc:
        print(f"fermigraph: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"fermigraph: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
