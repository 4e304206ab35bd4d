"""``borsuk`` command line: analyze, partition, generate, oracle, verify, batch.

Exit codes: 0 success, 1 other library error, 2 malformed input,
3 invalid body, 4 partition verification failed, 5 oracle hard failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bodies import ConvexBody, body_from_json
from .decision import borsuk_number
from .diameter import EPS_REL, is_bipartite_with_separation
from .errors import BorsukError, InvalidBody, InvalidParameters, SchemaError
from .gallery import SHAPES
from .oracle import OracleConfig, brute_diameter, cross_check
from .partition import build_partition, verify_partition

log = logging.getLogger("borsuk")

EXIT_OK, EXIT_ERROR, EXIT_SCHEMA, EXIT_BODY, EXIT_VERIFY, EXIT_ORACLE = range(6)
VERIFY_SAMPLES = 10_000


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class AnalysisReport:
    input_sha256: str
    diameter: float
    witness: list
    graph: dict
    alpha: int
    certificate: dict
    partition: dict
    oracle: dict | None = None
    timings: dict | None = None
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("oracle", "timings"):
            if out[key] is None:
                del out[key]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "AnalysisReport":
        return cls(**obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_body(path: str | Path) -> tuple[ConvexBody, str]:
    """(body, sha256 of the raw file) with errors mapped to exit codes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_SCHEMA) from exc
    try:
        obj = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: malformed JSON: {exc}", EXIT_SCHEMA) from exc
    return parse_body(obj, str(path)), hashlib.sha256(raw).hexdigest()


def parse_body(obj, where: str = "input") -> ConvexBody:
    try:
        return body_from_json(obj)
    except SchemaError as exc:
        raise CliError(f"{where}: schema violation: {exc}", EXIT_SCHEMA) from exc
    except InvalidBody as exc:
        raise CliError(f"{where}: invalid body: {exc}", EXIT_BODY) from exc


def analyze_body(
    body: ConvexBody,
    digest: str,
    eps_rel: float = EPS_REL,
    oracle: OracleConfig | None = None,
    verify_samples: int = VERIFY_SAMPLES,
    timings: bool = False,
) -> tuple[AnalysisReport, object]:
    """Full pipeline on one body; returns the report and the partition."""
    clock = {}
    t0 = time.perf_counter()
    cert = borsuk_number(body, eps_rel)
    graph = cert.graph
    clock["decision"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    part = build_partition(body, cert)
    check = verify_partition(body, part, samples=verify_samples)
    clock["partition"] = time.perf_counter() - t0

    summary = {
        "classes": len(graph.classes),
        "edges": len(graph.edges),
        "bipartite": graph.is_bipartite(),
        "separable": is_bipartite_with_separation(graph) is not None,
    }
    part_json = {
        "construction": part.construction,
        "pieces": len(part.pieces),
        "piece_diameters": list(part.piece_diameters),
        "verification": check.to_json(),
    }
    oracle_json = None
    if oracle is not None:
        t0 = time.perf_counter()
        rep = cross_check(body, oracle)
        d_est, _ = brute_diameter(body, oracle)
        oracle_json = {**rep.to_json(), "brute_diameter": d_est, "config": asdict(oracle)}
        clock["oracle"] = time.perf_counter() - t0
    report = AnalysisReport(
        input_sha256=digest,
        diameter=graph.diameter,
        witness=graph.witness.to_json(),
        graph=summary,
        alpha=cert.alpha,
        certificate=cert.to_json(),
        partition=part_json,
        oracle=oracle_json,
        timings=clock if timings else None,
        warnings=list(cert.warnings),
    )
    return report, part


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _oracle_config(args) -> OracleConfig:
    try:
        return OracleConfig(
            boundary_samples=args.samples or OracleConfig.boundary_samples,
            chord_grid=args.grid,
            seed=args.seed,
            eps_rel=args.eps,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_SCHEMA) from exc


# -- commands -----------------------------------------------------------------------


def cmd_analyze(args) -> int:
    body, digest = load_body(args.body)
    oracle = _oracle_config(args) if args.oracle else None
    report, part = analyze_body(body, digest, args.eps, oracle, args.samples or VERIFY_SAMPLES, args.timings)
    _write(dumps(report.to_json()), args.out)
    if args.svg:
        from .svg import render

        Path(args.svg).write_text(render(body, part, args.eps))
    if not report.partition["verification"]["passed"]:
        return EXIT_VERIFY
    if report.oracle and report.oracle["status"] == "hard_failure":
        return EXIT_ORACLE
    return EXIT_OK


def cmd_partition(args) -> int:
    from .svg import render

    body, _ = load_body(args.body)
    cert = borsuk_number(body, args.eps)
    part = build_partition(body, cert)
    check = verify_partition(body, part, samples=args.samples or VERIFY_SAMPLES)
    out = {**part.to_json(), "alpha": cert.alpha, "verification": check.to_json()}
    _write(dumps(out), args.out)
    if args.svg:
        Path(args.svg).write_text(render(body, part, args.eps))
    if not check.passed:
        log.error("partition failed verification")
        return EXIT_VERIFY
    return EXIT_OK


def _shape_params(pairs: list[str]) -> dict:
    params = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"parameter {item!r} is not key=value", EXIT_SCHEMA)
        try:
            params[key] = float(value)
        except ValueError as exc:
            raise CliError(f"parameter {key} is not a number: {value!r}", EXIT_SCHEMA) from exc
    return params


def cmd_generate(args) -> int:
    params = _shape_params(args.param)
    for key in ("n", "width", "radius", "r", "beta", "gamma", "side", "w", "h"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    if args.shape in ("random", "symmetric"):
        params.setdefault("seed", args.seed)
    try:
        body = SHAPES[args.shape](**params)
    except (InvalidParameters, InvalidBody) as exc:
        raise CliError(f"{args.shape}: {exc}", EXIT_BODY) from exc
    _write(dumps(body.to_json()), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    body, digest = load_body(args.body)
    cfg = _oracle_config(args)
    rep = cross_check(body, cfg)
    d_est, witness = brute_diameter(body, cfg)
    out = {
        "input_sha256": digest,
        **rep.to_json(),
        "brute_diameter": d_est,
        "brute_witness": witness.to_json(),
        "config": asdict(cfg),
    }
    _write(dumps(out), args.out)
    return EXIT_ORACLE if rep.hard_failure else EXIT_OK


def load_pieces(path: str) -> list[ConvexBody]:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_SCHEMA) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}", EXIT_SCHEMA) from exc
    pieces = obj.get("pieces") if isinstance(obj, dict) else obj
    if not isinstance(pieces, list) or not pieces:
        raise CliError(f"{path}: expected a nonempty 'pieces' list", EXIT_SCHEMA)
    return [parse_body(p, f"{path} piece {i}") for i, p in enumerate(pieces)]


def cmd_verify(args) -> int:
    body, _ = load_body(args.body)
    pieces = load_pieces(args.partition)
    check = verify_partition(body, pieces, samples=args.samples or VERIFY_SAMPLES)
    _write(dumps(check.to_json()), args.out)
    return EXIT_OK if check.passed else EXIT_VERIFY


def _batch_one(path: str, out_dir: str | None, eps: float, svg: bool) -> dict:
    # runs in a worker; every failure stays inside this file's record
    entry = {"file": Path(path).name}
    try:
        body, digest = load_body(path)
        report, part = analyze_body(body, digest, eps)
        code = EXIT_OK if report.partition["verification"]["passed"] else EXIT_VERIFY
        entry.update(alpha=report.alpha, exit_code=code)
        if out_dir:
            stem = Path(out_dir) / Path(path).stem
            stem.with_suffix(".report.json").write_text(dumps(report.to_json()))
            if svg:
                from .svg import render

                stem.with_suffix(".svg").write_text(render(body, part, eps))
    except CliError as exc:
        entry.update(exit_code=exc.code, error=str(exc))
    except BorsukError as exc:
        entry.update(exit_code=EXIT_ERROR, error=f"{type(exc).__name__}: {exc}")
    return entry


def cmd_batch(args) -> int:
    files = sorted(str(p) for p in Path(args.directory).glob("*.json"))
    if not files:
        raise CliError(f"no .json bodies in {args.directory}", EXIT_SCHEMA)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    jobs = [(f, args.out, args.eps, args.svg is not None) for f in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_batch_one, *zip(*jobs)))
    else:
        results = [_batch_one(*j) for j in jobs]
    sys.stdout.write(dumps({"results": results}))
    return max(r["exit_code"] for r in results)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=EPS_REL, help="relative tolerance for diameter pairs")
    common.add_argument("--samples", type=int, default=None,
                        help="boundary samples (oracle default 2048, verification default 10000)")
    common.add_argument("--grid", type=int, default=256, help="oracle chord grid size")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="borsuk", description="Borsuk numbers and partitions of planar convex bodies.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full analysis report for one body")
    a.add_argument("body")
    a.add_argument("--oracle", action="store_true", help="include the brute-force cross-check")
    a.add_argument("--timings", action="store_true", help="include wall-clock timings (not byte-stable)")
    a.add_argument("--svg", help="also draw the partition figure")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("partition", parents=[common], help="build, verify and draw a partition")
    a.add_argument("body")
    a.add_argument("--svg")
    a.set_defaults(func=cmd_partition)

    a = sub.add_parser("generate", parents=[common], help="emit a gallery shape as body JSON")
    a.add_argument("shape", choices=sorted(SHAPES))
    a.add_argument("--n", type=int)
    for key in ("width", "radius", "r", "beta", "gamma", "side", "w", "h"):
        a.add_argument(f"--{key}", type=float)
    a.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    a.set_defaults(func=cmd_generate)

    a = sub.add_parser("oracle", parents=[common], help="brute-force cross-check of the decision")
    a.add_argument("body")
    a.set_defaults(func=cmd_oracle)

    a = sub.add_parser("verify", parents=[common], help="verify a partition file against a body")
    a.add_argument("body")
    a.add_argument("partition")
    a.set_defaults(func=cmd_verify)

    a = sub.add_parser("batch", parents=[common], help="analyze every .json body in a directory")
    a.add_argument("directory")
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--svg", nargs="?", const="", help="also write one SVG per body into --out")
    a.set_defaults(func=cmd_batch)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"borsuk: {exc}", file=sys.stderr)
        return exc.code
    except BorsukError as exc:
        print(f"borsuk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
