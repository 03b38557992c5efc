"""Runs isingff subcommands and validates their JSON against the output schema."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    (["params", "--kx", "0.5", "--ky", "0.5"], 0),
    (["spectrum", "--kx", "0.5", "--ky", "0.5", "--n", "3"], 0),
    (["ff", "--kx", "0.4", "--ky", "0.7", "--n", "4", "--bra", "", "--bra", "0,1", "--ket", "", "--ket", "1,2"], 0),
    (["ff", "--kx", "0.4", "--ky", "0.7", "--n", "12", "--bra", "0", "--ket", "1"], 0),
    (["corr", "--kx", "0.4", "--ky", "0.7", "--n", "4", "--m", "4", "--dx", "1"], 0),
    (["corr", "--kx", "0.4", "--ky", "0.7", "--n", "14", "--m", "4", "--dx", "1", "--cutoff", "2"], 0),
    (["verify", "all", "--kx", "0.5", "--ky", "0.5", "--n", "4"], 0),
    (["params", "--kx", "0.2", "--ky", "0.2"], 3),
    (["corr", "--kx", "0.5", "--ky", "0.5", "--n", "40", "--m", "4", "--dx", "1", "--cutoff", "8"], 4),
    (["ff", "--kx", "0.4", "--ky", "0.7", "--n", "4", "--bra", "0", "--ket", "9"], 2),
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args, code in CASES:
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        errors = []
        if proc.returncode != code:
            errors.append(f"exit {proc.returncode}, expected {code}")
        else:
            errors.extend(e.message for e in validator.iter_errors(json.loads(proc.stdout)))
        status = "ok" if not errors else "FAIL"
        print(f"{status} {' '.join(args)}")
        for e in errors:
            print(f"    {e[:300]}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
