#!/usr/bin/env python3
"""
Squeeze Lab command line.

Every command writes one self-describing record (toolkit, version, command,
inputs, seed, rows) as JSON, or the rows alone as CSV. Identical inputs and
seed give byte-identical output. Exit codes: 0 success, 2 validation error,
3 numerical failure.
"""

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from comparisons import envelope_for, parse_relation
from domains_catalog import (
    DEFAULT_SHEAR,
    ShearParams,
    ball_domain,
    catalog_lookup,
    default_boundary_point,
    hartogs_thickening_report,
    list_catalog,
    punctured_disc_domain,
    reinhardt_support_scan,
)
from embedding_verifier import EMBEDDINGS, EmbeddingVerifier, embedding_lookup
from geometry_core import BOUNDARY_TOL, SAMPLE_TOL, RealPoint
from metrics_model import (
    critical_point_feasible,
    exact_boundary_distance,
    geodesic_ball_boundary_distance,
    geodesic_radicand,
    kobayashi_distance,
    numerical_boundary_distance_oracle,
)
from pinching import PinchingAnalyzer
from squeeze_bounds import (
    Provenance,
    boundary_estimate_at_point,
    decreasing_sequence_eval,
    increasing_sequence_eval,
    product_lower_bound,
)
from squeeze_errors import BadParams, SqueezeLabError, UnknownCommand

TOOLKIT = "squeeze-lab"
TOOLKIT_VERSION = "1.0.0"
DEFAULT_SAMPLES = 100_000
MIN_SAMPLES = 1_000
WARN_SAMPLES = 10_000
COMMANDS = ("pinch", "enclosing", "semicontinuity", "geodesic", "kobayashi", "bounds", "product",
            "limit", "envelope", "catalog", "verify-embedding", "support-scan")
SAMPLED_COMMANDS = ("pinch", "enclosing", "semicontinuity", "bounds")
SEQUENCES = ("punctured-disc-exhaustion", "dyadic-exhaustion", "ball-exhaustion",
             "punctured-disc-shrinking", "constant", "hartogs-thickening")


@dataclass
class RunConfig:
    command: str
    domain_id: Optional[str] = None
    point: Optional[List[float]] = None
    samples: int = DEFAULT_SAMPLES
    seed: int = 42
    output: Optional[str] = None
    format: str = "json"
    verbose: bool = False
    params: Dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Argument parsing

def parse_floats(text, label: str = "value list") -> List[float]:
    if isinstance(text, (list, tuple)):
        text = ",".join(str(v) for v in text)
    try:
        values = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise BadParams(f"Could not parse {label} {text!r}", hint="Use comma-separated numbers, e.g. 1,0,0,0")
    if not all(math.isfinite(v) for v in values):
        raise BadParams(f"Non-finite entry in {label} {text!r}", hint="nan and inf are not accepted as coordinates or parameters")
    return values


def parse_grid(text: str) -> List[float]:
    """'start:stop:count' -> inclusive linspace."""
    parts = str(text).split(":")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise BadParams(f"Could not parse grid {text!r}", hint="Use start:stop:count, e.g. 0.55:0.99:45")
    if count < 1:
        raise BadParams(f"Grid count must be positive, got {count}")
    return [float(v) for v in np.linspace(start, stop, count)]


def _common_arguments(parser: argparse.ArgumentParser, domain: bool = False):
    if domain:
        parser.add_argument("--domain", dest="domain_id", required=False, help="Catalog identifier, e.g. thullen:k=0.5")
        parser.add_argument("--point", help="Real coordinates x1,y1,...,xn,yn (default: catalog boundary point)")
        parser.add_argument("--boundary-tol", dest="boundary_tol", type=float, default=BOUNDARY_TOL,
                            help="Largest |rho| accepted at the analyzed point (default: 1e-6)")
        parser.add_argument("--sample-tol", dest="sample_tol", type=float, default=SAMPLE_TOL,
                            help="Largest |rho| accepted for sampled boundary points (default: 1e-8)")
    parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Boundary samples (default: 1e5)")
    parser.add_argument("--seed", type=int, default=42, help="Random seed (default: 42)")
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="Output format")
    parser.add_argument("--output", help="Output path (default: stdout)")
    parser.add_argument("--verbose", action="store_true", help="Print the processing log to stderr")
    parser.add_argument("--config", help="JSON file with defaults for the long flags")


def build_parser(defaults: Optional[Dict] = None) -> argparse.ArgumentParser:
    """Subcommand parser; `defaults` (from --config) replace the built-in defaults."""
    parser = argparse.ArgumentParser(
        prog="squeeze_lab",
        description="Squeezing functions, pinching radii and metric comparison envelopes.",
    )
    sub = parser.add_subparsers(dest="command")

    for name, help_text in (("pinch", "Pinching radius at a boundary point"),
                            ("enclosing", "Enclosing radius at a boundary point")):
        p = sub.add_parser(name, help=help_text)
        _common_arguments(p, domain=True)
        p.add_argument("--analytic", action="store_true", help="Use closed-form derivatives when available")

    p = sub.add_parser("semicontinuity", help="Ring minima of the pinching radius around a point")
    _common_arguments(p, domain=True)
    p.add_argument("--radii", default="0.2,0.1,0.05,0.02", help="Decreasing ring radii")
    p.add_argument("--ring-samples", dest="ring_samples", type=int, default=20)
    p.add_argument("--tolerance", type=float, default=0.05)

    p = sub.add_parser("geodesic", help="Distance from (r,0,...) to the internally tangent sphere")
    _common_arguments(p)
    p.add_argument("--r-grid", dest="r_grid", default="0.55:0.99:45", help="start:stop:count")
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--oracle", action="store_true", help="Add the grid-search oracle column")
    p.add_argument("--oracle-grid", dest="oracle_grid", type=int, default=1_000_000)

    p = sub.add_parser("kobayashi", help="Kobayashi distance in the unit ball")
    _common_arguments(p)
    p.add_argument("--z", required=False, help="Real coordinates of z")
    p.add_argument("--w", required=False, help="Real coordinates of w")

    p = sub.add_parser("bounds", help="Boundary estimate sweep along the inward normal")
    _common_arguments(p, domain=True)
    p.add_argument("--depths", default="1e-5,1e-4,1e-3,1e-2,5e-2", help="Comma-separated depths")
    p.add_argument("--max-depth", dest="max_depth", type=float, default=None)

    p = sub.add_parser("product", help="Product-domain squeezing lower bound")
    _common_arguments(p)
    p.add_argument("--factors", required=False, help="Comma-separated factor lower bounds")

    p = sub.add_parser("limit", help="Squeezing along increasing or decreasing domain sequences")
    _common_arguments(p)
    p.add_argument("--sequence", choices=SEQUENCES, default="punctured-disc-exhaustion")
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--z", default="0.3,0", help="Real coordinates of the evaluation point")
    p.add_argument("--a", type=float, default=0.5, help="Threshold a for hartogs-thickening")

    p = sub.add_parser("envelope", help="Comparison envelope constants")
    _common_arguments(p)
    p.add_argument("--relation", default="CK", help="CK, KB, KKE, VolumeAny, VolumeKB or VolumeKKE")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("catalog", help="List or describe cataloged domains and embeddings")
    _common_arguments(p)
    p.add_argument("--describe", help="Domain identifier to describe")

    p = sub.add_parser("verify-embedding", help="Witness radius and inclusion checks for an embedding")
    _common_arguments(p)
    p.add_argument("--embedding", default="moebius:a=0.5")
    p.add_argument("--r", help="Comma-separated radii to check B(0, r) in f(D)")
    p.add_argument("--grid", type=int, default=64, help="Target directions per radius")

    p = sub.add_parser("support-scan", help="Support-function scan for the sheared Reinhardt domain")
    _common_arguments(p)
    p.add_argument("--eps", type=float, default=DEFAULT_SHEAR)
    p.add_argument("--grid", type=int, default=500)

    if defaults:
        for subparser in sub.choices.values():
            subparser.set_defaults(**defaults)
    return parser


def load_config_defaults(argv: List[str]) -> Dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    try:
        with open(known.config, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise BadParams(f"Could not read config {known.config}: {e}")
    if not isinstance(raw, dict):
        raise BadParams(f"Config {known.config} must hold a JSON object")
    aliases = {"domain": "domain_id"}
    return {aliases.get(k, k.replace("-", "_")): v for k, v in raw.items()}


def parse_run_config(argv: Optional[List[str]] = None) -> RunConfig:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser(load_config_defaults(argv))

    if argv and argv[0] in ("-h", "--help"):
        parser.parse_args(argv)
    if not argv or argv[0] not in COMMANDS:
        given = repr(argv[0]) if argv else "none"
        raise UnknownCommand(f"Unknown command {given}", hint="Commands: " + ", ".join(COMMANDS))
    args = parser.parse_args(argv)

    values = vars(args).copy()
    config = RunConfig(
        command=values.pop("command"),
        domain_id=values.pop("domain_id", None),
        point=parse_floats(values.pop("point"), "point") if values.get("point") else None,
        samples=int(values.pop("samples")),
        seed=int(values.pop("seed")),
        output=values.pop("output"),
        format=values.pop("format"),
        verbose=bool(values.pop("verbose")),
    )
    values.pop("point", None)
    values.pop("config", None)
    config.params = values
    return config


# ---------------------------------------------------------------------------
# Output

def make_json_safe(obj):
    """Plain JSON types; inf becomes "Infinite" and nan becomes null."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.integer, np.floating)):
        obj = obj.item()
    if isinstance(obj, np.ndarray):
        return make_json_safe(obj.tolist())
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "Infinite" if obj > 0 else "-Infinite"
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Path):
        return str(obj)
    return obj


def render(record: Dict, fmt: str) -> str:
    if fmt == "csv":
        frame = pd.DataFrame(make_json_safe(record["rows"]))
        return frame.to_csv(index=False, lineterminator="\n")
    return json.dumps(make_json_safe(record), indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# Runner

class SqueezeLabRunner:
    """Dispatches a RunConfig to the library and assembles the output record."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.processing_log = []
        self.warnings = []

    def run(self) -> Dict:
        config = self.config
        handler = getattr(self, "_cmd_" + config.command.replace("-", "_"), None)
        if handler is None:
            raise UnknownCommand(f"Unknown command {config.command!r}")
        if config.command in SAMPLED_COMMANDS:
            self._check_samples()
        self._log(f"🎯 {config.command} (seed {config.seed})")
        inputs, rows = handler()
        self._log(f"✅ {len(rows)} rows")
        return {
            "toolkit": TOOLKIT,
            "version": TOOLKIT_VERSION,
            "command": config.command,
            "inputs": inputs,
            "seed": config.seed,
            "warnings": self.warnings,
            "rows": rows,
        }

    def _check_samples(self):
        samples = self.config.samples
        if samples < MIN_SAMPLES:
            raise BadParams(f"--samples must be at least {MIN_SAMPLES}, got {samples}")
        if samples < WARN_SAMPLES:
            message = f"{samples} samples is below the recommended {WARN_SAMPLES}; enclosing radii may be underestimated"
            self.warnings.append(message)
            self._log(f"⚠️ {message}")

    # -- helpers

    def _domain_and_point(self):
        if not self.config.domain_id:
            raise BadParams(f"{self.config.command} needs --domain", hint="See the catalog command for identifiers.")
        domain = catalog_lookup(self.config.domain_id)
        if self.config.point is not None:
            point = RealPoint.from_array(self.config.point)
            if point.n != domain.n:
                raise BadParams(f"--point has {len(self.config.point)} coordinates, {domain.name} needs {domain.dim}")
        else:
            point = default_boundary_point(domain)
        return domain, point

    def _tolerances(self) -> Dict[str, float]:
        tolerances = {}
        for key, default in (("boundary_tol", BOUNDARY_TOL), ("sample_tol", SAMPLE_TOL)):
            value = float(self.config.params.get(key, default))
            if not (math.isfinite(value) and value > 0.0):
                flag = "--" + key.replace("_", "-")
                raise BadParams(f"{flag} must be a positive number, got {value}")
            tolerances[key] = value
        return tolerances

    def _analyzer(self, domain) -> PinchingAnalyzer:
        return PinchingAnalyzer(domain, samples=self.config.samples, seed=self.config.seed, **self._tolerances())

    def _base_inputs(self) -> Dict:
        inputs = {"samples": self.config.samples}
        if self.config.domain_id:
            inputs["domain"] = self.config.domain_id
            inputs.update(self._tolerances())
        return inputs

    def _point_from(self, key: str) -> RealPoint:
        text = self.config.params.get(key)
        if not text:
            raise BadParams(f"{self.config.command} needs --{key}")
        return RealPoint.from_array(parse_floats(text, key))

    # -- commands

    def _cmd_pinch(self) -> Tuple[Dict, List[Dict]]:
        domain, point = self._domain_and_point()
        analyzer = self._analyzer(domain)
        result = analyzer.pinch(point, analytic=self.config.params.get("analytic", False))
        self.processing_log.extend(analyzer.processing_log)
        row = result.to_dict()
        row["provenance"] = "Sampled"
        return {**self._base_inputs(), "point": list(point.coords)}, [row]

    def _cmd_enclosing(self) -> Tuple[Dict, List[Dict]]:
        domain, point = self._domain_and_point()
        analyzer = self._analyzer(domain)
        value = analyzer.enclosing(point)
        self.processing_log.extend(analyzer.processing_log)
        return ({**self._base_inputs(), "point": list(point.coords)},
                [{"point": list(point.coords), "enclosing_radius": value, "provenance": "Sampled"}])

    def _cmd_semicontinuity(self) -> Tuple[Dict, List[Dict]]:
        domain, point = self._domain_and_point()
        params = self.config.params
        radii = parse_floats(params["radii"], "radii")
        analyzer = self._analyzer(domain)
        report = analyzer.semicontinuity_scan(point, radii, params["ring_samples"], params["tolerance"])
        self.processing_log.extend(analyzer.processing_log)
        rows = [{**row, "base_pinching": report.base_pinching, "passed": report.passed, "provenance": "Sampled"}
                for row in report.rows]
        inputs = {**self._base_inputs(), "point": list(point.coords), "radii": radii,
                  "ring_samples": params["ring_samples"], "tolerance": params["tolerance"]}
        return inputs, rows

    def _cmd_geodesic(self) -> Tuple[Dict, List[Dict]]:
        params = self.config.params
        rho, n = params["rho"], params["n"]
        rows = []
        for r in parse_grid(params["r_grid"]):
            row = {"r": r, "rho": rho}
            if max(0.5, 1.0 - 2.0 * rho) < r < 1.0:
                row["closed_form"] = geodesic_ball_boundary_distance(r, rho) if geodesic_radicand(r, rho) >= -1e-12 else None
                row["region"] = "feasible" if critical_point_feasible(r, rho) else "sliver"
            else:
                row["closed_form"] = None
                row["region"] = "outside"
            row["exact_minimum"] = exact_boundary_distance(r, rho)
            if params["oracle"]:
                row["oracle"] = numerical_boundary_distance_oracle(r, rho, n, params["oracle_grid"])
            row["provenance"] = Provenance.EXACT.value
            rows.append(row)
        inputs = {"r_grid": params["r_grid"], "rho": rho, "n": n, "oracle": params["oracle"]}
        if params["oracle"]:
            inputs["oracle_grid"] = params["oracle_grid"]
        return inputs, rows

    def _cmd_kobayashi(self) -> Tuple[Dict, List[Dict]]:
        z, w = self._point_from("z"), self._point_from("w")
        distance = kobayashi_distance(z, w)
        return ({"z": list(z.coords), "w": list(w.coords)},
                [{"distance": distance, "provenance": Provenance.EXACT.value}])

    def _cmd_bounds(self) -> Tuple[Dict, List[Dict]]:
        domain, point = self._domain_and_point()
        params = self.config.params
        depths = parse_floats(params["depths"], "depths")
        analyzer = self._analyzer(domain)
        pinch = analyzer.pinch(point)
        results = boundary_estimate_at_point(domain, point, depths, analyzer.interior,
                                             max_depth=params.get("max_depth"), pinch=pinch)
        self.processing_log.extend(analyzer.processing_log)
        rows = []
        for depth, bound in results:
            row = {"depth": depth, "pinching": pinch.pinching, "enclosing_radius": pinch.enclosing_radius}
            row.update(bound.to_dict())
            row["provenance"] = bound.tag
            rows.append(row)
        return {**self._base_inputs(), "point": list(point.coords), "depths": depths,
                "max_depth": params.get("max_depth")}, rows

    def _cmd_product(self) -> Tuple[Dict, List[Dict]]:
        text = self.config.params.get("factors")
        if not text:
            raise BadParams("product needs --factors")
        factors = parse_floats(text, "factors")
        value = product_lower_bound(factors)
        return {"factors": factors}, [{"lower": value, "upper": 1.0,
                                       "provenance": Provenance.PRODUCT_BOUND.value}]

    def _cmd_limit(self) -> Tuple[Dict, List[Dict]]:
        params = self.config.params
        kind, terms = params["sequence"], params["terms"]
        if terms < 1:
            raise BadParams(f"--terms must be positive, got {terms}")
        inputs = {"sequence": kind, "terms": terms}
        if kind == "hartogs-thickening":
            frame = hartogs_thickening_report(params["a"], list(range(1, terms + 1)))
            inputs["a"] = params["a"]
            rows = frame.to_dict(orient="records")
            for row in rows:
                row["provenance"] = Provenance.PRODUCT_BOUND.value
            return inputs, rows

        z = RealPoint.from_array(parse_floats(params["z"], "z"))
        inputs["z"] = list(z.coords)
        domains, limit = model_sequence(kind, terms, z.n)
        if kind == "punctured-disc-shrinking" or kind == "constant":
            report = decreasing_sequence_eval(domains, limit, z)
        else:
            report = increasing_sequence_eval(domains, limit, z)
        rows = []
        for row in report.rows:
            rows.append({**row, "limit_value": report.limit_value, "monotone": report.monotone,
                         "converges": report.converges, "inequality_holds": report.inequality_holds})
        return inputs, rows

    def _cmd_envelope(self) -> Tuple[Dict, List[Dict]]:
        params = self.config.params
        relation = parse_relation(params["relation"])
        envelope = envelope_for(relation, params["s"], params["n"])
        row = envelope.to_dict()
        row["provenance"] = Provenance.EXACT.value
        return {"relation": relation.value, "s": params["s"], "n": params["n"]}, [row]

    def _cmd_catalog(self) -> Tuple[Dict, List[Dict]]:
        describe = self.config.params.get("describe")
        if describe:
            domain = catalog_lookup(describe)
            lo, hi = domain.bbox
            metadata = {k: v for k, v in domain.metadata.items() if not callable(v)}
            return {"describe": describe}, [{
                "name": domain.name, "n": domain.n, "bbox_low": list(lo), "bbox_high": list(hi),
                "analytic_derivatives": domain.analytic_hessian is not None,
                "excluded_set": domain.excluded_set is not None, **metadata,
            }]
        rows = [{"kind": "domain", **row} for row in list_catalog().to_dict(orient="records")]
        rows += [{"kind": "embedding", "name": name, "usage": usage}
                 for name, (_, usage) in sorted(EMBEDDINGS.items())]
        return {}, rows

    def _cmd_verify_embedding(self) -> Tuple[Dict, List[Dict]]:
        params = self.config.params
        spec = embedding_lookup(params["embedding"])
        verifier = EmbeddingVerifier(spec, samples=self.config.samples, seed=self.config.seed)
        bound = verifier.witness()
        rows = [{"check": "witness_radius", **bound.to_dict(), "provenance": bound.tag}]
        radii = parse_floats(params["r"], "r") if params.get("r") else []
        for radius in radii:
            report = verifier.verify(radius, params["grid"])
            rows.append({"check": "inclusion", **report.to_dict()})
        self.processing_log.extend(verifier.processing_log)
        return {"embedding": params["embedding"], "samples": self.config.samples, "r": radii,
                "grid": params["grid"]}, rows

    def _cmd_support_scan(self) -> Tuple[Dict, List[Dict]]:
        params = self.config.params
        report = reinhardt_support_scan(ShearParams(params["eps"]), params["grid"])
        return {"eps": params["eps"], "grid": params["grid"]}, [{**report, "provenance": "Sampled"}]

    def _log(self, message: str):
        """Add to processing log."""
        timestamp = datetime.now().strftime("%H:%M:%S")
        log_entry = f"[{timestamp}] {message}"
        self.processing_log.append(log_entry)


def model_sequence(kind: str, terms: int, n: int = 1):
    """
    Model domain sequences with exact squeezing values.

    Returns:
        (domains, limit)
    """
    ks = range(1, terms + 1)
    if kind == "punctured-disc-exhaustion":
        return [punctured_disc_domain(1.0 - 1.0 / (k + 1)) for k in ks], punctured_disc_domain()
    if kind == "dyadic-exhaustion":
        return [punctured_disc_domain(1.0 - 2.0 ** -k) for k in ks], punctured_disc_domain()
    if kind == "punctured-disc-shrinking":
        return [punctured_disc_domain(1.0 + 1.0 / k) for k in ks], punctured_disc_domain()
    if kind == "ball-exhaustion":
        return [ball_domain(n, 1.0 - 1.0 / (k + 1)) for k in ks], ball_domain(n)
    if kind == "constant":
        return [punctured_disc_domain() for _ in ks], punctured_disc_domain()
    raise BadParams(f"Unknown sequence {kind!r}", hint="Sequences: " + ", ".join(SEQUENCES))


def run(config: RunConfig) -> Tuple[int, str]:
    """
    Run one command.

    Returns:
        (exit code, rendered output)
    """
    runner = SqueezeLabRunner(config)
    try:
        record = runner.run()
    except SqueezeLabError as e:
        print(str(e), file=sys.stderr)
        if e.hint:
            print(f"   hint: {e.hint}", file=sys.stderr)
        return e.exit_code, ""
    finally:
        if config.verbose:
            for entry in runner.processing_log:
                print(entry, file=sys.stderr)

    text = render(record, config.format)
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0, text


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = parse_run_config(argv)
    except SqueezeLabError as e:
        print(str(e), file=sys.stderr)
        if e.hint:
            print(f"   hint: {e.hint}", file=sys.stderr)
        return e.exit_code
    code, _ = run(config)
    return code


if __name__ == "__main__":
    sys.exit(main())
