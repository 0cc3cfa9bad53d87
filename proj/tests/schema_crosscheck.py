"""Validates command-line output against the shipped schema with jsonschema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main():
    cli, schema_path, fixtures = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    def run(*args):
        return subprocess.run([cli, *args], capture_output=True, text=True).stdout

    records = []
    records.append(run("pair", "0", "0", "0", "4", "0", "0", "0", "4", "0", "1", "1", "-1", "1", "1", "2", "3", "3", "2"))
    records.append(run("pair", "0", "0", "0", "1", "0", "0", "0", "1", "0", "0", "0", "0", "-1", "0", "0", "0", "-1", "0",
                       "--backend", "rational"))
    with tempfile.TemporaryDirectory() as tmp:
        stream = os.path.join(tmp, "scan.jsonl")
        records.append(run("scan", os.path.join(fixtures, "two_spheres.off"), "--ignore-shared-simplices", "false",
                           "--output", stream))
        with open(stream) as f:
            records.extend(f.read().splitlines())
        specs = os.path.join(tmp, "specs.txt")
        with open(specs, "w") as f:
            f.write("generalPosition 300 1\nnearDegenerate 300 2\n")
        records.append(run("bench", specs, "--repetitions", "1"))
    for family in ("identical", "gridSnapped", "coplanarRandom"):
        records.append(run("fuzz", "--family", family, "--count", "100"))

    bad = 0
    for line in filter(None, (r.strip() for r in records)):
        errors = list(validator.iter_errors(json.loads(line)))
        if errors:
            bad += 1
            print(errors[0].message)
    print(f"{len(records)} records, {bad} invalid")
    return 1 if bad or len(records) < 100 else 0


if __name__ == "__main__":
    sys.exit(main())
