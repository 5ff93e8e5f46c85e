"""Command-line front end: ``modspec {spectrum,classify,verify,q2,witness}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass

from . import __version__
from .definiteness import classify
from .errors import (
    BadGraph6,
    Disconnected,
    EdgeListParseError,
    GraphError,
    IsolatedVertex,
    ModspecError,
    TooLarge,
)
from .graph import WeightedGraph, is_connected, normalize_total_weight, parse_edge_list, parse_graph6
from .multipartite import MultipartiteStructure, recover_partition
from .partition import best_bipartition, mixing_identity_check
from .spectral import MatrixLabel, build_matrix, eigendecompose, mu_lambda_correspondence

EXIT_OK = 0
EXIT_INDEFINITE = 1
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_DISCREPANCY = 4
EXIT_TOO_LARGE = 5
EXIT_NO_WITNESS = 6

log = logging.getLogger("modspec")


@dataclass
class RunConfig:
    command: str
    input: str | None = "-"
    format: str = "edgelist"
    matrix: str = "modularity"
    max_n: int | None = None
    tolerance: float = 1e-9
    output: str = "text"
    workers: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _graph6_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and line != ">>graph6<<":
            yield lineno, line


def load_graph(cfg: RunConfig) -> WeightedGraph:
    try:
        text = _read_text(cfg.input)
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {cfg.input}: {exc}") from exc
    try:
        if cfg.format == "graph6":
            lines = list(_graph6_lines(text))
            if len(lines) != 1:
                raise _Exit(EXIT_PARSE, f"expected exactly one graph6 line, found {len(lines)}")
            lineno, line = lines[0]
            return parse_graph6(line, line=lineno)
        return parse_edge_list(text)
    except GraphError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from exc


def _fmt(x, scale=1.0):
    if abs(x) <= 1e-12 * max(1.0, scale):
        return "0"
    return f"{x:.12g}"


def _emit(cfg, text_lines, record):
    if cfg.output == "json-lines":
        print(json.dumps(record))
    else:
        print("\n".join(text_lines))


def _require_connected(g):
    if not is_connected(g):
        raise _Exit(EXIT_DISCONNECTED, "graph is not connected")


def cmd_spectrum(cfg: RunConfig) -> int:
    g = load_graph(cfg)
    label = MatrixLabel(cfg.matrix)
    if label is not MatrixLabel.MODULARITY:
        _require_connected(g)
    m = build_matrix(g, label)
    dec = eigendecompose(m)
    scale = m.max_abs
    vals = [_fmt(x, scale) for x in dec.eigenvalues]
    lines = [
        f"matrix: {label.value} (n={g.n})",
        "eigenvalues: " + ", ".join(vals),
        f"residual: {dec.residual:.3e}",
        f"sweeps: {dec.sweeps}",
    ]
    record = {
        "command": "spectrum",
        "matrix": label.value,
        "n": g.n,
        "eigenvalues": [float(x) for x in dec.eigenvalues],
        "residual": dec.residual,
        "gram_deviation": dec.gram_deviation,
    }
    if label is MatrixLabel.NORMALIZED_MODULARITY:
        corr = mu_lambda_correspondence(g)
        lines.append("mu_i        1 - lambda_i   |diff|")
        for mu, lam in corr.pairs:
            lines.append(f"{mu: .9f}  {1 - lam: .9f}   {abs(mu - (1 - lam)):.1e}")
        lines.append(f"sqrt(d) null residual: {corr.null_residual:.3e}")
        record["mu_lambda"] = [[mu, lam] for mu, lam in corr.pairs]
        record["max_deviation"] = corr.max_deviation
        record["null_residual"] = corr.null_residual
    _emit(cfg, lines, record)
    return EXIT_OK


def _simple_connected(cfg):
    g = load_graph(cfg)
    if not g.is_simple:
        raise _Exit(EXIT_PARSE, "this command needs a simple (unweighted) graph")
    if g.n < 2:
        raise _Exit(EXIT_PARSE, "graph needs at least two vertices")
    _require_connected(g)
    return g


def cmd_classify(cfg: RunConfig) -> int:
    g = _simple_connected(cfg)
    cert = classify(g, tol_factor=cfg.tolerance)
    record = {"command": "classify", **cert.to_record()}
    _emit(cfg, [cert.report()], record)
    return EXIT_OK if cert.is_nsd else EXIT_INDEFINITE


def cmd_witness(cfg: RunConfig) -> int:
    g = _simple_connected(cfg)
    found = recover_partition(g)
    if isinstance(found, MultipartiteStructure):
        sizes = ",".join(map(str, found.sizes))
        raise _Exit(EXIT_NO_WITNESS, f"graph is complete multipartite (sizes [{sizes}]); no witness exists")
    cert = classify(g, tol_factor=cfg.tolerance)
    a, b, c = cert.triple.as_tuple()
    lines = [
        f"forbidden triple: ({a}, {b}, {c})",
        "witness x: " + " ".join(f"{v:.12g}" for v in cert.witness),
        f"x . sqrt(d): {cert.witness_residual:.3e}",
        f"x^T M_D x: {cert.witness_value:.12g}",
    ]
    record = {
        "command": "witness",
        "triple": [a, b, c],
        "witness": [float(v) for v in cert.witness],
        "witness_dot_sqrt_d": cert.witness_residual,
        "quadratic_form": cert.witness_value,
    }
    _emit(cfg, lines, record)
    return EXIT_OK


def cmd_q2(cfg: RunConfig) -> int:
    g = load_graph(cfg)
    _require_connected(g)
    if not g.is_simple:
        g = normalize_total_weight(g)
    try:
        part, q2 = best_bipartition(g)
    except TooLarge as exc:
        raise _Exit(EXIT_TOO_LARGE, str(exc)) from exc
    mix = mixing_identity_check(g, part)
    subset = sorted(part.subset)
    lines = [
        f"Q2: {_fmt(q2)}",
        "U: {" + ", ".join(map(str, subset)) + "}",
        f"mixing identity residual |Q - 2 sum mu_i a_i^2|: {mix.residual:.3e}",
    ]
    record = {
        "command": "q2",
        "q2": q2,
        "subset": subset,
        "mixing_residual": mix.residual,
    }
    _emit(cfg, lines, record)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from .enumeration import MAX_LABELED_N, enumerate_labeled, stream_graph6_file
    from .verify import sweep_stream

    if cfg.input is not None:
        path, tmp_path = cfg.input, None
        if path == "-":
            with tempfile.NamedTemporaryFile("w", suffix=".g6", delete=False) as tmp:
                tmp.write(sys.stdin.read())
            path = tmp_path = tmp.name
        try:
            stream = stream_graph6_file(path, connected_only=True)
            stats = sweep_stream(stream, tol_factor=cfg.tolerance, entry_scaled=True, workers=cfg.workers)
        except OSError as exc:
            raise _Exit(EXIT_PARSE, f"cannot read {cfg.input}: {exc}") from exc
        except BadGraph6 as exc:
            raise _Exit(EXIT_PARSE, str(exc)) from exc
        finally:
            if tmp_path is not None:
                os.unlink(tmp_path)
    else:
        if cfg.max_n is None:
            raise _Exit(EXIT_PARSE, "verify needs --max-n or a graph6 file")
        if cfg.max_n > MAX_LABELED_N:
            raise _Exit(EXIT_TOO_LARGE, f"--max-n is limited to {MAX_LABELED_N}")
        if cfg.max_n < 2:
            raise _Exit(EXIT_PARSE, "--max-n must be at least 2")
        stats = {}
        for n in range(2, cfg.max_n + 1):
            stats.update(sweep_stream(enumerate_labeled(n), tol_factor=cfg.tolerance, entry_scaled=True,
                                      workers=cfg.workers))
    total = sum(s.connected for s in stats.values())
    bad = sum(s.discrepancies + s.no_convergence for s in stats.values())
    for s in stats.values():
        if cfg.output == "json-lines":
            print(json.dumps({"command": "verify", **s.to_record()}))
        else:
            print(f"n={s.n}: {s.connected} connected graphs, {s.multipartite} NSD, "
                  f"{s.indefinite} indefinite, {s.discrepancies} discrepancies")
            for g6, reason in s.examples:
                print(f"  discrepancy {g6}: {reason}")
    if cfg.output == "json-lines":
        print(json.dumps({"command": "verify", "total_connected": total, "discrepancies": bad}))
    else:
        print(f"total: {total} connected graphs checked, {bad} discrepancies")
    return EXIT_OK if bad == 0 else EXIT_DISCREPANCY


COMMANDS = {
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "q2": cmd_q2,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modspec",
        description="Modularity spectra and complete multipartite certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_default="-"):
        p.add_argument("input", nargs="?", default=input_default,
                       help="input file, '-' for stdin")
        p.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")
        p.add_argument("--tolerance", type=float, default=1e-9,
                       help="eigenvalue threshold factor; tol = factor * n * max|entry|")
        p.add_argument("--output", choices=["text", "json-lines"], default="text")

    p = sub.add_parser("spectrum", help="eigenvalues of a graph matrix")
    common(p)
    p.add_argument("--matrix", default="modularity",
                   choices=["modularity", "normalized-modularity", "normalized-laplacian"])
    common(sub.add_parser("classify", help="certify complete multipartite or not"))
    p = sub.add_parser("verify", help="exhaustive four-way equivalence check")
    common(p, input_default=None)
    p.add_argument("--max-n", type=int, default=None, help="enumerate labeled graphs up to n")
    p.add_argument("--workers", type=int, default=1)
    common(sub.add_parser("q2", help="exact 2-way Newman-Girvan modularity"))
    common(sub.add_parser("witness", help="indefiniteness witness vector"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            format=getattr(args, "format", "edgelist"),
            matrix=getattr(args, "matrix", "modularity"),
            max_n=getattr(args, "max_n", None),
            tolerance=args.tolerance,
            output=args.output,
            workers=getattr(args, "workers", 1),
        )
    except ValueError as exc:
        print(f"modspec: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if cfg.command == "verify" and cfg.input is not None and cfg.format != "graph6":
        # verify reads graph lists; edge lists describe single graphs
        cfg.format = "graph6"
    try:
        return COMMANDS[cfg.command](cfg)
    except _Exit as exc:
        print(f"modspec: {exc}", file=sys.stderr)
        return exc.code
    except (Disconnected, IsolatedVertex) as exc:
        print(f"modspec: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except TooLarge as exc:
        print(f"modspec: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (EdgeListParseError, GraphError) as exc:
        print(f"modspec: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ModspecError as exc:
        print(f"modspec: internal error: {exc}", file=sys.stderr)
        return EXIT_DISCREPANCY


if __name__ == "__main__":
    sys.exit(main())
