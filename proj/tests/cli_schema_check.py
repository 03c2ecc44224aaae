#!/usr/bin/env python3
"""Run every JSON-producing tfcolor command and validate its output against docs/schemas."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    binary, schema_dir = sys.argv[1], sys.argv[2]
    validators = {}
    for name in os.listdir(schema_dir):
        if name.endswith(".schema.json"):
            with open(os.path.join(schema_dir, name)) as f:
                schema = json.load(f)
            jsonschema.Draft202012Validator.check_schema(schema)
            validators[name[: -len(".schema.json")]] = jsonschema.Draft202012Validator(schema)

    def run(args, stdin=None):
        return subprocess.run([binary, *args], input=stdin, capture_output=True, text=True)

    graphs = {
        "c5": run(["gen", "cycle", "5"]).stdout,
        "k3": run(["gen", "complete", "3"]).stdout,
        "k44": run(["gen", "complete-bipartite", "4", "4"]).stdout,
        "petersen": run(["gen", "petersen"]).stdout,
        "big": run(["gen", "edgeless", "22"]).stdout,
    }
    cases = [
        ("info", ["info"], "petersen", 0),
        ("info", ["info"], "k3", 0),
        ("sample", ["sample", "--w0", "0.3", "--seed", "3"], "petersen", 0),
        ("estimate", ["estimate", "--w0", "0.3", "--samples", "2000", "--seed", "3"], "c5", 0),
        ("exact", ["exact", "--w0", "0.3"], "c5", 0),
        ("exact", ["exact", "--w0", "0.3", "--target", "2"], "petersen", 0),
        ("chif", ["chif"], "petersen", 0),
        ("verify-mainproc", ["verify", "mainproc", "--w0", "0.05", "--target", "5", "--epsilon", "0.5",
                             "--exact", "--samples", "2000"], "c5", 0),
        ("verify-mainproc", ["verify", "mainproc", "--w0", "0.9", "--target", "5", "--epsilon", "0.1"], "c5", 1),
        ("verify-main", ["verify", "main", "--samples", "5000"], "k44", 0),
        ("verify-main", ["verify", "main", "--samples", "0", "--per-vertex"], "k44", 0),
        ("verify-main", ["verify", "main"], "c5", 1),
        ("verify-maingen", ["verify", "maingen", "--p", "0.1", "--exact", "--samples", "5000"], "c5", 0),
        ("verify-maingen", ["verify", "maingen", "--p", "0.9"], "c5", 1),
        ("verify-maingen", ["verify", "maingen", "--p", "shearer"], "k44", 0),
        ("verify-claims", ["verify", "claims"], "petersen", 0),
        ("verify-claims", ["verify", "claims", "--target", "3"], "k3", 0),
        ("error", ["exact", "--w0", "0.3"], "big", 2),
        ("error", ["info"], None, 2),
        ("error", ["frobnicate"], None, 2),
    ]
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for schema, args, graph, expected_code in cases:
            stdin = graphs[graph] if graph else "p edge 2 1\ne 1 9\n"
            result = run(args, stdin)
            label = " ".join(args)
            if result.returncode != expected_code:
                print(f"FAIL {label}: exit {result.returncode}, expected {expected_code}\n{result.stderr}")
                failures += 1
                continue
            text = result.stderr if schema == "error" else result.stdout
            try:
                document = json.loads(text)
                validators[schema].validate(document)
            except (json.JSONDecodeError, jsonschema.ValidationError) as err:
                print(f"FAIL {label}: {err}")
                failures += 1
                continue
            print(f"ok   {label} -> {schema}")

        # round trip through a file and CSV output
        path = os.path.join(tmp, "g.dimacs")
        if run(["gen", "random-triangle-free", "12", "20", "--seed", "4", "-o", path]).returncode != 0:
            print("FAIL gen -o")
            failures += 1
        csv = run(["estimate", path, "--w0", "0.2", "--samples", "100", "--format", "csv"]).stdout.splitlines()
        if csv[0] != "vertex,estimate,ciLow,ciHigh,hits" or len(csv) != 13:
            print("FAIL estimate csv layout")
            failures += 1
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
