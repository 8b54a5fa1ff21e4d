"""Command-line interface.

Subcommands
-----------
table              critical pairs at one r, Table-style (default markdown)
enumerate          critical pairs over a range of r (default json)
verify             check every critical pair against the threshold; exit 1 on failure
region             certify the multiplicity cut-off by bisection; writes a certificate
classify           rationality status of epsilon(mu) at a rational mu
coverage           chain the witness catalog over the target ray; exit 1 on gaps
audit-certificate  replay a previously written region certificate; exit 1 on defects

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 inconclusive
(bisection hit its depth limit before closing every piece).

Configuration is resolved flags > environment > config file > defaults.
Environment variables are SESHADRI_OUTPUT_FORMAT, SESHADRI_CACHE_DIR,
SESHADRI_BISECTION_DEPTH, SESHADRI_SQRT_WIDTH_EXPONENT, SESHADRI_PARALLELISM
and SESHADRI_APPROX; the config file (SESHADRI_CONFIG, or ./seshadri.conf
when present) holds key = value lines with the same lowercase names.

Reports always carry exact values as canonical strings ("77/24",
"4 - 1/3*sqrt(3)"); --approx appends 6-digit decimal columns next to them.
JSON output is serialized with sorted keys so reruns are byte-identical.
With --cache-dir set, per-r results are cached one JSON file per
(command, r), keyed by command, r, parameters and package version, and
written atomically.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from pathlib import Path

from . import __version__
from .errors import (
    DepthLimitExceeded,
    InvalidT,
    InvalidT0,
    NotAboveSqrtR,
    SeshadriError,
    UnsupportedR,
)
from .exact import parse_quadratic
from .region import (
    audit_certificate,
    large_r_inequalities,
    verify_t_bound,
)
from .search import (
    check_pair,
    enumerate_critical_pairs,
    small_degree_pairs,
    verify_no_counterexample,
)
from .thresholds import classify, threshold, verify_coverage

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

FORMATS = ("json", "markdown", "csv")

_DEFAULT_FORMATS = {
    "table": "markdown",
    "enumerate": "json",
    "verify": "json",
    "region": "json",
    "classify": "json",
    "coverage": "json",
    "audit-certificate": "json",
}

_CSV_COMMANDS = {"table", "enumerate", "verify", "coverage"}


class UsageError(SeshadriError):
    """Bad command line, bad configuration, or out-of-domain request."""


@dataclass(frozen=True)
class RunConfig:
    r_min: int
    r_max: int
    output_format: str | None = None
    cache_dir: str | None = None
    bisection_depth: int = 40
    sqrt_width_exponent: int = 32
    parallelism: int = 1
    approx: bool = False


def parse_r_range(text: str) -> tuple[int, int]:
    """"12" -> (12, 12); "10..19" -> (10, 19)."""
    s = text.strip()
    try:
        if ".." in s:
            lo_text, _, hi_text = s.partition("..")
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(s)
    except ValueError:
        raise UsageError(f"cannot parse r range from {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty r range {text!r}")
    return lo, hi


def _parse_bool(text: str, origin: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"{origin}: cannot parse boolean from {text!r}")


def _parse_int(text: str, origin: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise UsageError(f"{origin}: cannot parse integer from {text!r}") from None


def _read_config_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}: malformed line {raw!r} (expected key = value)")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


_SETTING_NAMES = (
    "output_format",
    "cache_dir",
    "bisection_depth",
    "sqrt_width_exponent",
    "parallelism",
    "approx",
)


def resolve_config(args: argparse.Namespace, env: dict | None = None) -> RunConfig:
    """Layer defaults, config file, environment and flags into a RunConfig."""
    env = dict(os.environ) if env is None else env
    settings: dict[str, object] = {}

    config_path = env.get("SESHADRI_CONFIG")
    path = Path(config_path) if config_path else Path("seshadri.conf")
    if config_path and not path.exists():
        raise UsageError(f"config file {path} does not exist")
    if path.exists():
        file_values = _read_config_file(path)
        unknown = set(file_values) - set(_SETTING_NAMES)
        if unknown:
            raise UsageError(f"{path}: unknown settings {sorted(unknown)}")
        settings.update(file_values)

    for name in _SETTING_NAMES:
        env_value = env.get(f"SESHADRI_{name.upper()}")
        if env_value is not None:
            settings[name] = env_value

    for name in _SETTING_NAMES:
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            settings[name] = flag_value

    def as_int(name: str, default: int) -> int:
        value = settings.get(name, default)
        return value if isinstance(value, int) else _parse_int(str(value), name)

    def as_bool(name: str) -> bool:
        value = settings.get(name, False)
        return value if isinstance(value, bool) else _parse_bool(str(value), name)

    output_format = settings.get("output_format")
    if output_format is not None:
        output_format = str(output_format)
        if output_format not in FORMATS:
            raise UsageError(
                f"output_format must be one of {', '.join(FORMATS)}, got {output_format!r}"
            )
    cache_dir = settings.get("cache_dir")
    cache_dir = str(cache_dir) if cache_dir else None
    bisection_depth = as_int("bisection_depth", 40)
    if bisection_depth < 1:
        raise UsageError(f"bisection_depth must be >= 1, got {bisection_depth}")
    sqrt_width_exponent = as_int("sqrt_width_exponent", 32)
    if not 1 <= sqrt_width_exponent <= 256:
        raise UsageError(
            f"sqrt_width_exponent must be in 1..256, got {sqrt_width_exponent}"
        )
    parallelism = as_int("parallelism", 1)
    if parallelism < 1:
        raise UsageError(f"parallelism must be >= 1, got {parallelism}")

    r_min = r_max = 0
    if getattr(args, "r", None) is not None:
        r_min, r_max = parse_r_range(args.r)

    return RunConfig(
        r_min=r_min,
        r_max=r_max,
        output_format=output_format,
        cache_dir=cache_dir,
        bisection_depth=bisection_depth,
        sqrt_width_exponent=sqrt_width_exponent,
        parallelism=parallelism,
        approx=as_bool("approx"),
    )


# --------------------------------------------------------------------------
# result documents (pure data, cache- and pool-friendly)


def _pair_record(pair, verdict) -> dict:
    return {
        "class": str(pair.curve_class()),
        "t": pair.t,
        "M": pair.total_multiplicity,
        "delta": verdict.delta,
        "mu_minus": verdict.mu_minus.render() if verdict.mu_minus is not None else None,
        "outcome": verdict.outcome.value,
    }


def _table_doc(command: str, r: int, mu0_text: str | None) -> dict:
    mu0 = parse_quadratic(mu0_text) if mu0_text else threshold(r).mu0
    rows = [_pair_record(p, check_pair(p, mu0)) for p in enumerate_critical_pairs(r)]
    return {"command": command, "r": r, "mu0": mu0.render(), "rows": rows}


def _verify_doc(r: int, mu0_text: str | None) -> dict:
    mu0 = parse_quadratic(mu0_text) if mu0_text else None
    report = verify_no_counterexample(r, mu0)
    all_pass = report.all_pass
    small_records = None
    large_r = None
    if r >= 20:
        small_records = []
        for pair in small_degree_pairs(r):
            verdict = check_pair(pair, report.mu0)
            small_records.append(
                {
                    "class": str(pair.curve_class()),
                    "t": pair.t,
                    "M": pair.total_multiplicity,
                    "delta": verdict.delta,
                    "negative_delta": verdict.delta < 0,
                }
            )
            all_pass = all_pass and verdict.delta < 0
        first, second = large_r_inequalities(r)
        large_r = {
            "degree_five_inequality": first,
            "small_degree_inequality": second,
        }
        all_pass = all_pass and first and second
    return {
        "command": "verify",
        "r": r,
        "mu0": report.mu0.render(),
        "all_pass": all_pass,
        "pairs": [_pair_record(p, v) for p, v in report.pairs],
        "small_degree_pairs": small_records,
        "large_r": large_r,
    }


def _coverage_doc(r: int) -> dict:
    return {"command": "coverage", **verify_coverage(r).to_json_dict()}


def _compute_doc(command: str, r: int, params: dict) -> dict:
    if command in ("table", "enumerate"):
        return _table_doc(command, r, params.get("mu0"))
    if command == "verify":
        return _verify_doc(r, params.get("mu0"))
    if command == "coverage":
        return _coverage_doc(r)
    raise ValueError(f"no document builder for command {command!r}")


# --------------------------------------------------------------------------
# cache


def _cache_key(command: str, r: int, params: dict) -> tuple[dict, str]:
    key = {"command": command, "r": r, "params": params, "version": __version__}
    digest = hashlib.sha256(
        json.dumps(key, sort_keys=True).encode("utf-8")
    ).hexdigest()[:16]
    return key, digest


def _cache_path(cfg: RunConfig, command: str, r: int, digest: str) -> Path | None:
    if cfg.cache_dir is None:
        return None
    return Path(cfg.cache_dir) / f"{command}-r{r}-{digest}.json"


def _cache_load(path: Path | None, key: dict) -> dict | None:
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("key") != key:
        return None
    result = data.get("result")
    return result if isinstance(result, dict) else None


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cache_store(path: Path | None, key: dict, result: dict) -> None:
    if path is None:
        return
    payload = json.dumps({"key": key, "result": result}, sort_keys=True, indent=2)
    _atomic_write(path, payload)


def _docs_for_range(cfg: RunConfig, command: str, params: dict) -> list[dict]:
    """Per-r documents in ascending r, from cache where possible."""
    rs = list(range(cfg.r_min, cfg.r_max + 1))
    keyed = {r: _cache_key(command, r, params) for r in rs}
    docs: dict[int, dict] = {}
    missing: list[int] = []
    for r in rs:
        key, digest = keyed[r]
        cached = _cache_load(_cache_path(cfg, command, r, digest), key)
        if cached is None:
            missing.append(r)
        else:
            docs[r] = cached
    if missing:
        if cfg.parallelism > 1 and len(missing) > 1:
            with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
                computed = list(
                    pool.map(_compute_doc, repeat(command), missing, repeat(params))
                )
        else:
            computed = [_compute_doc(command, r, params) for r in missing]
        for r, doc in zip(missing, computed):
            key, digest = keyed[r]
            _cache_store(_cache_path(cfg, command, r, digest), key, doc)
            docs[r] = doc
    return [docs[r] for r in rs]


# --------------------------------------------------------------------------
# rendering


def _approx_string(exact: str | None) -> str | None:
    if exact is None:
        return None
    return parse_quadratic(exact).approx_decimal(6)


def _augment_approx(doc: dict) -> dict:
    """Copy of the document with *_approx fields next to exact strings."""
    out = dict(doc)
    if isinstance(out.get("mu0"), str):
        out["mu0_approx"] = _approx_string(out["mu0"])
    for field in ("rows", "pairs"):
        if isinstance(out.get(field), list):
            rows = []
            for row in out[field]:
                row = dict(row)
                row["mu_minus_approx"] = _approx_string(row.get("mu_minus"))
                rows.append(row)
            out[field] = rows
    return out


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, indent=2))


def _pair_rows_markdown(rows: list[dict], approx: bool, outcome: bool) -> list[str]:
    headers = ["class", "t", "M", "delta", "mu_minus"]
    if approx:
        headers.append("mu_minus_approx")
    if outcome:
        headers.append("outcome")
    lines = [
        "| " + " | ".join(headers) + " |",
        "|" + "|".join("---" for _ in headers) + "|",
    ]
    for row in rows:
        cells = [
            str(row["class"]),
            str(row["t"]),
            str(row["M"]),
            str(row["delta"]),
            row["mu_minus"] if row["mu_minus"] is not None else "",
        ]
        if approx:
            approx_value = row.get("mu_minus_approx")
            cells.append(approx_value if approx_value is not None else "")
        if outcome:
            cells.append(row["outcome"])
        lines.append("| " + " | ".join(cells) + " |")
    return lines


def _render_pairs_markdown(doc: dict, approx: bool, outcome: bool) -> str:
    rows = doc.get("rows", doc.get("pairs", []))
    lines = [f"## r = {doc['r']} (mu0 = {doc['mu0']})", ""]
    lines.extend(_pair_rows_markdown(rows, approx, outcome))
    if doc.get("command") == "verify":
        lines.append("")
        lines.append(f"all_pass: {doc['all_pass']}")
        if doc.get("small_degree_pairs") is not None:
            for record in doc["small_degree_pairs"]:
                lines.append(
                    f"- small-degree pair {record['class']} t={record['t']}: "
                    f"delta = {record['delta']} "
                    f"({'negative' if record['negative_delta'] else 'NOT NEGATIVE'})"
                )
        if doc.get("large_r") is not None:
            lines.append(
                "- large-r inequalities: "
                f"degree_five={doc['large_r']['degree_five_inequality']} "
                f"small_degree={doc['large_r']['small_degree_inequality']}"
            )
    return "\n".join(lines)


def _render_coverage_markdown(doc: dict) -> str:
    lines = [
        f"## coverage r = {doc['r']}: {'COVERED' if doc['covered'] else 'GAPS'}",
        "",
        f"target: {doc['target']}",
        "",
        "| class | t | locus |",
        "|---|---|---|",
    ]
    for link in doc["chain"]:
        lines.append(f"| {link['class']} | {link['t']} | {link['locus']} |")
    for gap in doc["gaps"]:
        lines.append(f"- gap: ({gap[0]}, {gap[1]})")
    return "\n".join(lines)


def _render_keyvalue_markdown(doc: dict) -> str:
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"- {key}: {value}")
    return "\n".join(lines)


def _csv_text(headers: list[str], rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _render_pairs_csv(docs: list[dict], approx: bool) -> str:
    headers = ["r", "class", "t", "M", "delta", "mu_minus"]
    if approx:
        headers.append("mu_minus_approx")
    headers.append("outcome")
    rows = []
    for doc in docs:
        for row in doc.get("rows", doc.get("pairs", [])):
            cells = [
                doc["r"],
                row["class"],
                row["t"],
                row["M"],
                row["delta"],
                row["mu_minus"] if row["mu_minus"] is not None else "",
            ]
            if approx:
                cells.append(row.get("mu_minus_approx") or "")
            cells.append(row["outcome"])
            rows.append(cells)
    return _csv_text(headers, rows)


def _render_coverage_csv(docs: list[dict]) -> str:
    headers = ["r", "covered", "class", "t", "locus"]
    rows = []
    for doc in docs:
        for link in doc["chain"]:
            rows.append([doc["r"], doc["covered"], link["class"], link["t"], link["locus"]])
    return _csv_text(headers, rows)


def _emit_docs(cfg: RunConfig, command: str, docs: list[dict]) -> None:
    fmt = cfg.output_format or _DEFAULT_FORMATS[command]
    if fmt == "csv" and command not in _CSV_COMMANDS:
        raise UsageError(f"csv output is not available for {command}")
    if cfg.approx:
        docs = [_augment_approx(doc) for doc in docs]
    if fmt == "json":
        if len(docs) == 1:
            _print_json(docs[0])
        else:
            _print_json({"command": command, "results": docs})
        return
    if fmt == "csv":
        if command == "coverage":
            print(_render_coverage_csv(docs))
        else:
            print(_render_pairs_csv(docs, cfg.approx))
        return
    blocks = []
    for doc in docs:
        if command == "coverage":
            blocks.append(_render_coverage_markdown(doc))
        elif command in ("table", "enumerate"):
            blocks.append(_render_pairs_markdown(doc, cfg.approx, outcome=False))
        elif command == "verify":
            blocks.append(_render_pairs_markdown(doc, cfg.approx, outcome=True))
        else:
            blocks.append(_render_keyvalue_markdown(doc))
    print("\n\n".join(blocks))


# --------------------------------------------------------------------------
# command handlers


def _require_r(cfg: RunConfig, minimum: int, command: str) -> None:
    if cfg.r_min < minimum:
        raise UsageError(f"{command} needs r >= {minimum}, got {cfg.r_min}")


def _require_single_r(cfg: RunConfig, command: str) -> int:
    if cfg.r_min != cfg.r_max:
        raise UsageError(f"{command} takes a single r, got {cfg.r_min}..{cfg.r_max}")
    return cfg.r_min


def _validated_mu0(args: argparse.Namespace) -> str | None:
    if args.mu0 is None:
        return None
    try:
        parse_quadratic(args.mu0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return args.mu0


def cmd_table(cfg: RunConfig, args: argparse.Namespace) -> int:
    _require_r(cfg, 10, "table")
    docs = _docs_for_range(cfg, "table", {"mu0": _validated_mu0(args)})
    _emit_docs(cfg, "table", docs)
    return EXIT_PASS


def cmd_enumerate(cfg: RunConfig, args: argparse.Namespace) -> int:
    _require_r(cfg, 10, "enumerate")
    docs = _docs_for_range(cfg, "enumerate", {"mu0": _validated_mu0(args)})
    _emit_docs(cfg, "enumerate", docs)
    return EXIT_PASS


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    _require_r(cfg, 10, "verify")
    docs = _docs_for_range(cfg, "verify", {"mu0": _validated_mu0(args)})
    _emit_docs(cfg, "verify", docs)
    failed = False
    for doc in docs:
        for row in doc["pairs"]:
            if row["outcome"] == "Counterexample":
                failed = True
                print(
                    f"FAIL r={doc['r']}: {row['class']} t={row['t']} has "
                    f"mu_minus = {row['mu_minus']} below mu0 = {doc['mu0']}",
                    file=sys.stderr,
                )
        for record in doc.get("small_degree_pairs") or []:
            if not record["negative_delta"]:
                failed = True
                print(
                    f"FAIL r={doc['r']}: small-degree pair {record['class']} "
                    f"t={record['t']} has delta = {record['delta']} >= 0",
                    file=sys.stderr,
                )
        if doc.get("large_r") is not None and not all(doc["large_r"].values()):
            failed = True
            print(f"FAIL r={doc['r']}: large-r inequalities do not hold", file=sys.stderr)
        if not doc["all_pass"]:
            failed = True
    return EXIT_FAIL if failed else EXIT_PASS


def cmd_region(cfg: RunConfig, args: argparse.Namespace) -> int:
    r = _require_single_r(cfg, "region")
    _require_r(cfg, 10, "region")
    if args.t0 is None:
        raise UsageError("region needs --t0")
    params = {
        "t0": args.t0,
        "depth": cfg.bisection_depth,
        "sqrt_width_exponent": cfg.sqrt_width_exponent,
    }
    key, digest = _cache_key("region", r, params)
    path = _cache_path(cfg, "region", r, digest)
    doc = _cache_load(path, key)
    if doc is None:
        certificate = verify_t_bound(
            r,
            args.t0,
            depth_limit=cfg.bisection_depth,
            sqrt_width=Fraction(1, 2**cfg.sqrt_width_exponent),
        )
        doc = certificate.to_json_dict()
        _cache_store(path, key, doc)
    out_dir = Path(cfg.cache_dir) if cfg.cache_dir else Path(".")
    out_path = out_dir / f"certificate-r{r}-t{args.t0}.json"
    _atomic_write(out_path, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    summary = {
        field: doc[field]
        for field in (
            "kind",
            "r",
            "t0",
            "depth_limit",
            "sqrt_width",
            "mu_lo",
            "mu_hi",
            "max_depth",
            "leaf_count",
        )
    }
    summary["command"] = "region"
    summary["certificate_path"] = str(out_path)
    _emit_docs(cfg, "region", [summary])
    return EXIT_PASS


def cmd_classify(cfg: RunConfig, args: argparse.Namespace) -> int:
    r = _require_single_r(cfg, "classify")
    _require_r(cfg, 10, "classify")
    try:
        mu = Fraction(args.mu)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse mu from {args.mu!r}: {exc}") from None
    result = classify(r, mu)
    doc = {"command": "classify", **result.to_json_dict()}
    _emit_docs(cfg, "classify", [doc])
    return EXIT_PASS


def cmd_coverage(cfg: RunConfig, args: argparse.Namespace) -> int:
    _require_r(cfg, 1, "coverage")
    docs = _docs_for_range(cfg, "coverage", {})
    _emit_docs(cfg, "coverage", docs)
    failed = False
    for doc in docs:
        if not doc["covered"]:
            failed = True
            for gap in doc["gaps"]:
                print(
                    f"FAIL r={doc['r']}: coverage gap ({gap[0]}, {gap[1]})",
                    file=sys.stderr,
                )
    return EXIT_FAIL if failed else EXIT_PASS


def cmd_audit(cfg: RunConfig, args: argparse.Namespace) -> int:
    path = Path(args.certificate)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read certificate {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate {path} is not valid JSON: {exc}") from None
    ok, problems = audit_certificate(doc)
    summary = {
        "command": "audit-certificate",
        "certificate_path": str(path),
        "ok": ok,
        "problems": problems,
    }
    _emit_docs(cfg, "audit-certificate", [summary])
    for problem in problems:
        print(f"AUDIT: {problem}", file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", dest="output_format", choices=FORMATS, default=None,
        help="output format (defaults: markdown for table, json elsewhere)",
    )
    common.add_argument("--cache-dir", dest="cache_dir", default=None,
                        help="cache per-r results in this directory")
    common.add_argument("--depth", dest="bisection_depth", type=int, default=None,
                        help="bisection depth limit (default 40)")
    common.add_argument("--jobs", dest="parallelism", type=int, default=None,
                        help="compute per-r results with this many processes")
    common.add_argument("--approx", dest="approx", action="store_true", default=None,
                        help="append 6-digit decimal approximations to exact values")

    parser = argparse.ArgumentParser(
        prog="seshadri",
        description="Exact certification of Seshadri-function rationality "
        "on blow-ups of the plane at r very general points.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common],
                       help="critical pairs at r, Table-style")
    p.add_argument("--r", required=True, help="point count, e.g. 12 or 10..13")
    p.add_argument("--mu0", default=None, help="threshold override, e.g. 7/2 or sqrt(13)")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("enumerate", parents=[common],
                       help="critical pairs over a range of r")
    p.add_argument("--r", required=True, help="point count range, e.g. 10..13")
    p.add_argument("--mu0", default=None, help="threshold override")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common],
                       help="check critical pairs against the threshold")
    p.add_argument("--r", required=True, help="point count range, e.g. 10..19")
    p.add_argument("--mu0", default=None, help="threshold override")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("region", parents=[common],
                       help="certify the multiplicity cut-off t0 by bisection; "
                       "writes certificate-r<r>-t<t0>.json to the cache "
                       "directory when set, else to the working directory")
    p.add_argument("--r", required=True, help="point count (single value)")
    p.add_argument("--t0", type=int, required=True, help="multiplicity to exclude")
    p.set_defaults(handler=cmd_region)

    p = sub.add_parser("classify", parents=[common],
                       help="rationality status of epsilon(mu) at rational mu")
    p.add_argument("--r", required=True, help="point count (single value)")
    p.add_argument("--mu", required=True, help="rational mu, e.g. 7/2")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("coverage", parents=[common],
                       help="chain the witness catalog over the target ray")
    p.add_argument("--r", required=True, help="point count range, e.g. 8..13")
    p.set_defaults(handler=cmd_coverage)

    p = sub.add_parser("audit-certificate", parents=[common],
                       help="replay a region certificate from scratch")
    p.add_argument("certificate", help="path to a certificate JSON file")
    p.set_defaults(handler=cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = resolve_config(args)
        return args.handler(cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedR, InvalidT, InvalidT0, NotAboveSqrtR) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DepthLimitExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
