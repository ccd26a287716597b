"""Validates shipped configs against docs/config.schema.json and the reports they
produce against docs/report.schema.json."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--root", required=True, type=pathlib.Path)
    ap.add_argument("--work", required=True, type=pathlib.Path)
    args = ap.parse_args()

    config_schema = json.loads((args.root / "docs" / "config.schema.json").read_text())
    report_schema = json.loads((args.root / "docs" / "report.schema.json").read_text())
    config_validator = jsonschema.Draft202012Validator(config_schema)
    report_validator = jsonschema.Draft202012Validator(report_schema)

    failures = 0
    configs = sorted((args.root / "configs" / "golden").glob("*.json"))
    sweep = json.loads((args.root / "configs" / "sweep-qd.json").read_text())
    for path in configs:
        config = json.loads(path.read_text())
        for err in config_validator.iter_errors(config):
            print(f"{path.name}: {err.message}")
            failures += 1
        out = args.work / path.stem
        subprocess.run([args.cli, "analyze", "--config", str(path), "--out", str(out)], check=True)
        report = json.loads((out / "report.json").read_text())
        for err in report_validator.iter_errors(report):
            print(f"{path.name} report: {err.message}")
            failures += 1
    for err in config_validator.iter_errors(sweep["base"]):
        print(f"sweep-qd.json base: {err.message}")
        failures += 1

    bad = {"field": {"p": 5}, "analyses": [{"kind": "nope"}]}
    if config_validator.is_valid(bad):
        print("schema accepted an unknown analysis kind")
        failures += 1

    print(f"{len(configs)} configs checked, {failures} problems")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
