#!/usr/bin/env python3
"""
Command-line tests - records, formats, exit codes and reproducibility
"""

import io
import json
import math
import os
import sys

import pandas as pd
import pytest

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(os.path.dirname(current_dir), 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

import squeeze_cli
from squeeze_cli import (
    COMMANDS,
    SqueezeLabRunner,
    main,
    make_json_safe,
    model_sequence,
    parse_floats,
    parse_grid,
    parse_run_config,
)
from squeeze_errors import BadParams, NonFinite


def _run_json(argv, tmp_path, name="out.json"):
    target = tmp_path / name
    code = main(argv + ["--output", str(target)])
    assert code == 0
    return json.loads(target.read_text(encoding="utf-8"))


def test_parsers():
    assert parse_floats("1,0,0.5") == [1.0, 0.0, 0.5]
    assert parse_floats([1, 2]) == [1.0, 2.0]
    with pytest.raises(BadParams):
        parse_floats("1,x")
    with pytest.raises(BadParams):
        parse_floats("1,inf")
    with pytest.raises(BadParams):
        parse_floats("nan,0")
    assert parse_grid("0.5:0.9:3") == pytest.approx([0.5, 0.7, 0.9])
    with pytest.raises(BadParams):
        parse_grid("0.5:0.9")


def test_make_json_safe():
    safe = make_json_safe({"a": math.inf, "b": math.nan, "c": (1, 2)})
    assert safe == {"a": "Infinite", "b": None, "c": [1, 2]}


def test_run_config_defaults():
    config = parse_run_config(["envelope", "--relation", "KB"])
    assert config.command == "envelope"
    assert config.samples == 100_000
    assert config.seed == 42
    assert config.params["relation"] == "KB"


def test_envelope_record(tmp_path):
    record = _run_json(["envelope", "--relation", "KB", "--s", "1", "--n", "1"], tmp_path)
    assert record["toolkit"] == "squeeze-lab"
    assert record["command"] == "envelope"
    assert record["inputs"] == {"relation": "MetricKB", "s": 1.0, "n": 1}
    row = record["rows"][0]
    assert row["high"] == 8.0 * math.pi
    assert row["provenance"] == "Exact"


def test_geodesic_csv(tmp_path):
    target = tmp_path / "geodesic.csv"
    code = main(["geodesic", "--r-grid", "0.6:0.95:8", "--rho", "0.5", "--format", "csv", "--output", str(target)])
    assert code == 0
    frame = pd.read_csv(target)
    assert len(frame) == 8
    assert {"r", "rho", "closed_form", "region", "exact_minimum", "provenance"} <= set(frame.columns)
    feasible = frame[frame.region == "feasible"]
    assert len(feasible) == 8
    assert (feasible.closed_form - feasible.exact_minimum).abs().max() < 1e-12


def test_geodesic_regions(tmp_path):
    record = _run_json(["geodesic", "--r-grid", "0.3:0.9:4", "--rho", "0.2"], tmp_path)
    regions = [row["region"] for row in record["rows"]]
    assert regions[0] == "outside"
    assert record["rows"][0]["closed_form"] is None
    assert all(row["exact_minimum"] > 0 for row in record["rows"])


def test_kobayashi_command(tmp_path):
    record = _run_json(["kobayashi", "--z", "0,0,0,0", "--w", "0.7,0,0,0"], tmp_path)
    assert record["rows"][0]["distance"] == pytest.approx(math.log(1.7 / 0.3), abs=1e-12)


def test_product_and_limit_commands(tmp_path):
    record = _run_json(["product", "--factors", "0.5,0.5"], tmp_path)
    assert record["rows"][0]["lower"] == pytest.approx(0.5 / math.sqrt(2.0))
    assert record["rows"][0]["provenance"] == "ProductBound"

    record = _run_json(["limit", "--sequence", "punctured-disc-exhaustion", "--terms", "5"], tmp_path, "limit.json")
    for row in record["rows"]:
        r = 1.0 - 1.0 / (row["k"] + 1)
        assert row["error"] == pytest.approx(0.3 * (1.0 / r - 1.0), abs=1e-12)
        assert row["provenance"] == "LimitTheorem"

    record = _run_json(["limit", "--sequence", "hartogs-thickening", "--terms", "4", "--a", "0.5"], tmp_path, "h.json")
    assert all(row["holds"] for row in record["rows"])


def test_model_sequences():
    domains, limit = model_sequence("dyadic-exhaustion", 3)
    assert [d.metadata["scale"] for d in domains] == [0.5, 0.75, 0.875]
    assert limit.name == "punctured-disc"
    with pytest.raises(BadParams):
        model_sequence("spiral", 3)


def test_catalog_command(tmp_path):
    record = _run_json(["catalog"], tmp_path)
    kinds = {row["kind"] for row in record["rows"]}
    assert kinds == {"domain", "embedding"}
    record = _run_json(["catalog", "--describe", "cartan-hartogs:I:1,1:k=0.5:m=1"], tmp_path, "d.json")
    row = record["rows"][0]
    assert row["n"] == 2
    assert row["analytic_derivatives"] is True


def test_support_scan_command(tmp_path):
    record = _run_json(["support-scan", "--eps", "0.01", "--grid", "300"], tmp_path)
    assert record["rows"][0]["passed"] is True


def test_pinch_command_is_reproducible(tmp_path):
    argv = ["pinch", "--domain", "thullen:k=0.5", "--samples", "2000", "--seed", "7"]
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(argv + ["--output", str(first)]) == 0
    assert main(argv + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    record = json.loads(first.read_text(encoding="utf-8"))
    assert record["rows"][0]["pinching"] == pytest.approx(0.5, abs=5e-2)
    assert record["warnings"]


def test_bounds_command(tmp_path):
    record = _run_json(["bounds", "--domain", "thullen:k=0.5", "--samples", "2000", "--depths", "1e-6,0.3"],
                       tmp_path)
    first, last = record["rows"]
    assert first["lower"] == pytest.approx(math.sqrt(0.5), abs=1e-2)
    assert last["provenance"] in ("Heuristic", "Vacuous")


def test_verify_embedding_command(tmp_path):
    record = _run_json(["verify-embedding", "--embedding", "moebius:a=0.5", "--samples", "2000",
                        "--r", "0.45,0.55", "--grid", "8"], tmp_path)
    witness, inside, outside = record["rows"]
    assert witness["lower"] == pytest.approx(0.5, abs=2e-3)
    assert inside["included"] is True
    assert outside["included"] is False


def test_config_file_supplies_defaults(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"rho": 0.6, "r-grid": "0.7:0.9:3"}), encoding="utf-8")
    record = _run_json(["geodesic", "--config", str(config)], tmp_path)
    assert record["inputs"]["rho"] == 0.6
    assert len(record["rows"]) == 3
    record = _run_json(["geodesic", "--config", str(config), "--rho", "0.7"], tmp_path, "override.json")
    assert record["inputs"]["rho"] == 0.7


def test_validation_errors_exit_with_two(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["pinch", "--domain", "torus:k=1"]) == 2
    assert main(["pinch", "--domain", "thullen:k=0.5", "--samples", "500"]) == 2
    assert main(["envelope", "--relation", "KB", "--s", "0"]) == 2
    assert main(["pinch", "--domain", "thullen:k=0.5", "--point", "1,0"]) == 2
    err = capsys.readouterr().err
    assert "❌ UnknownCommand" in err
    assert "hint:" in err


def test_numerical_errors_exit_with_three(monkeypatch, capsys):
    def broken(identifier):
        raise NonFinite("rho overflowed")

    monkeypatch.setattr(squeeze_cli, "catalog_lookup", broken)
    assert main(["pinch", "--domain", "thullen:k=0.5", "--samples", "1000"]) == 3
    assert "NonFinite" in capsys.readouterr().err


def test_non_finite_coordinates_exit_with_two(capsys):
    assert main(["kobayashi", "--z", "nan,0,0,0", "--w", "0.7,0,0,0"]) == 2
    assert "BadParams" in capsys.readouterr().err
    assert main(["pinch", "--domain", "thullen:k=0.5", "--point", "inf,0,0,0", "--samples", "1000"]) == 2


@pytest.mark.parametrize("identifier", [
    "cartan-hartogs:I:2,2:k=0.5:m=1",
    "cartan-hartogs:II:2:k=0.5:m=1",
    "cartan-hartogs:III:4:k=0.5:m=1",
    "cartan-hartogs:IV:3:k=0.5:m=1",
])
def test_pinch_over_cartan_hartogs_types(tmp_path, identifier):
    record = _run_json(["pinch", "--domain", identifier, "--samples", "2000"], tmp_path)
    row = record["rows"][0]
    assert row["lambda_max"] > 0
    assert record["inputs"]["domain"] == identifier


def test_boundary_tolerance_flag(tmp_path):
    argv = ["pinch", "--domain", "ball:n=2:radius=1", "--point", "1.00001,0,0,0", "--samples", "1000"]
    assert main(argv) == 2
    record = _run_json(argv + ["--boundary-tol", "1e-4", "--sample-tol", "1e-9"], tmp_path)
    assert record["inputs"]["boundary_tol"] == pytest.approx(1e-4)
    assert record["inputs"]["sample_tol"] == pytest.approx(1e-9)
    assert record["rows"][0]["pinching"] == pytest.approx(1.0, abs=5e-2)


def test_non_positive_tolerances_are_rejected():
    assert main(["pinch", "--domain", "thullen:k=0.5", "--samples", "1000", "--sample-tol", "0"]) == 2
    assert main(["bounds", "--domain", "thullen:k=0.5", "--samples", "1000", "--boundary-tol", "-1"]) == 2


def test_runner_covers_every_command():
    for command in COMMANDS:
        assert hasattr(SqueezeLabRunner, "_cmd_" + command.replace("-", "_"))


def test_stdout_output(monkeypatch):
    buffer = io.StringIO()
    monkeypatch.setattr(sys, "stdout", buffer)
    assert main(["product", "--factors", "1,1"]) == 0
    assert json.loads(buffer.getvalue())["rows"][0]["lower"] == pytest.approx(2 ** -0.5)


if __name__ == "__main__":
    import pytest as _pytest
    print("🧪 COMMAND LINE TESTS")
    print("=" * 50)
    sys.exit(_pytest.main([__file__, "-v"]))
