"""Validates CLI --json output against the schemas in schema/."""

import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

runs = {
    "crosscheck": [["crosscheck", "-r", "2", "-s", "2", "-a", "1", "-t", "1"],
                   ["crosscheck", "-r", "3", "-s", "0", "-a", "2", "-t", "2"]],
    "conformance": [["sweep", "--mode", "conformance", "--grid", "d=2..3,s=0..1,n=6..7,count=2", "-r", "1", "-a", "1"]],
    "boundary": [["boundary", "--family", "EO", "-r", "2", "-s", "2", "-a", "1", "-x", "2"],
                 ["boundary", "--family", "OO", "-r", "1", "-s", "3", "-a", "1", "-x", "3"]],
}

for name, commands in runs.items():
    schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
    for args in commands:
        out = subprocess.run([cli, *args, "--json"], capture_output=True, text=True, check=True).stdout
        jsonschema.validate(json.loads(out), schema)
        print("ok", name, " ".join(args))
