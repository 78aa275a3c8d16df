#!/usr/bin/env python3
"""Run every CLI verb on the builtin model and validate the artifacts against docs/schemas.

Usage: validate_outputs.py GCIM_BINARY REPO_ROOT
"""

import csv
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load_schema(root, name):
    return json.loads((root / "docs" / "schemas" / name).read_text())


def check_cell(kind, value, where):
    if kind == "number?" and value == "":
        return
    if kind in ("number", "number?"):
        float(value)
    elif kind == "integer":
        int(value)
    elif kind == "flag":
        assert value in ("0", "1"), where
    elif kind == "scheme":
        assert value in ("standard", "reduced", "givens-fswap", "givens-adjacent"), where
    elif kind != "string":
        raise AssertionError(f"unknown cell kind {kind}")


def check_csv(path, layout):
    with path.open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows and rows[0] == list(layout), f"{path}: header {rows[0] if rows else None}"
    for n, row in enumerate(rows[1:], start=2):
        assert len(row) == len(layout), f"{path}:{n}: {len(row)} cells"
        for kind, value in zip(layout.values(), row):
            check_cell(kind, value, f"{path}:{n}")
    return rows


def check_compare(path):
    with path.open(newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0][0] == "iteration" and len(rows[0]) >= 3, path
    assert rows[-1][0] == "chemical-accuracy", path
    for row in rows[1:-1]:
        int(row[0])
        for v in row[1:]:
            check_cell("number?", v, str(path))
    assert all(float(v) == 1.6e-3 for v in rows[-1][1:]), path


def gcim(binary, *args):
    r = subprocess.run([binary, *args], capture_output=True, text=True)
    if r.returncode != 0:
        sys.exit(f"gcim {' '.join(args)} exited {r.returncode}: {r.stderr}")


def main():
    binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
    config_schema = load_schema(root, "config.schema.json")
    record_schema = load_schema(root, "trace_record.schema.json")
    summary_schema = load_schema(root, "summary.schema.json")
    spectrum_schema = load_schema(root, "spectrum.schema.json")
    layouts = load_schema(root, "csv.schema.json")

    for cfg in sorted((root / "docs" / "configs").glob("*.json")):
        jsonschema.validate(json.loads(cfg.read_text()), config_schema)

    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp)
        config = {
            "algorithms": ["adapt-gcim", "adapt-vqe", "adapt-vqe-gcim", "adapt-vqe-gcim-1", "adapt-gcim-mn"],
            "noise": {"tau_grid": [1e3, 1e5], "runs": 10},
        }
        jsonschema.validate(config, config_schema)
        (out / "config.json").write_text(json.dumps(config))
        gcim(binary, "run", "--out", str(out))
        gcim(binary, "compare", "--config", str(out / "config.json"), "--out", str(out))
        gcim(binary, "noise", "--config", str(out / "config.json"), "--out", str(out))
        gcim(binary, "resources", "--out", str(out))
        gcim(binary, "exact", "--out", str(out))

        traces = [out / "trace.jsonl"] + sorted(out.glob("*/trace.jsonl"))
        assert len(traces) == 6, traces
        for t in traces:
            lines = t.read_text().splitlines()
            for line in lines:
                jsonschema.validate(json.loads(line), record_schema)
            assert json.loads(lines[0])["type"] == "header" and json.loads(lines[-1])["type"] == "final", t
            jsonschema.validate(json.loads((t.parent / "summary.json").read_text()), summary_schema)
            check_csv(t.parent / "convergence.csv", layouts["convergence.csv"])
        jsonschema.validate(json.loads((out / "spectrum.json").read_text()), spectrum_schema)
        assert len(check_csv(out / "noise.csv", layouts["noise.csv"])) == 5
        check_csv(out / "resources.csv", layouts["resources.csv"])
        check_csv(out / "measurements.csv", layouts["measurements.csv"])
        check_compare(out / "compare.csv")
    print("all artifacts match their schemas")


if __name__ == "__main__":
    main()
