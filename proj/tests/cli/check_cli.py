#!/usr/bin/env python3
"""End-to-end checks of the annulus binary: output schemas, exit codes, determinism."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BINARY = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

registry = Registry()
for path in SCHEMAS.glob("*.schema.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))

failures = []


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=300)


def check(label, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {label}{': ' + detail if detail and not ok else ''}")
    if not ok:
        failures.append(label)


def validate(label, document, schema):
    validator = jsonschema.Draft202012Validator(
        registry.get_or_retrieve(schema).value.contents, registry=registry)
    errors = [e.message for e in validator.iter_errors(document)]
    check(f"{label} matches {schema}", not errors, "; ".join(errors[:3]))


def expect(label, args, code, schema=None):
    proc = run(*args)
    check(f"{label} exits {code}", proc.returncode == code, f"got {proc.returncode}: {proc.stderr.strip()}")
    if schema is not None and proc.returncode == code:
        validate(label, json.loads(proc.stdout), schema)
    return proc


BASE = ["--n", "2", "--R", "2", "--Rstar", "3", "--phi", "quad:kappa=1"]

expect("solve", ["solve", *BASE], 0, "solve_summary.schema.json")
expect("solve n=3 poly", ["solve", "--n", "3", "--R", "2", "--Rstar", "2.5", "--phi", "poly:1,0.5,0.3"], 0,
       "solve_summary.schema.json")
expect("solve below r_circ", ["solve", "--n", "2", "--R", "3", "--Rstar", "1.2", "--phi", "quad:kappa=1"], 2,
       "no_solution.schema.json")
expect("energy below r_circ", ["energy", "--n", "2", "--R", "3", "--Rstar", "1.2", "--phi", "quad:kappa=1"], 2,
       "no_solution.schema.json")
expect("rcirc quadratic", ["rcirc", "--n", "2", "--R", "2", "--phi", "quad:kappa=1"], 0, "rcirc.schema.json")
expect("rcirc xlogx n=3", ["rcirc", "--n", "3", "--R", "2", "--phi", "xlogx:c=1"], 0, "rcirc.schema.json")
expect("energy", ["energy", *BASE], 0, "energy_report.schema.json")
expect("energy with oracle", ["energy", *BASE, "--oracle-nodes", "40"], 0, "energy_report.schema.json")
expect("sweep json", ["sweep", "--n", "2", "--kappas", "0.5,1", "--R-min", "1.5", "--R-max", "2", "--format", "json"],
       0, "sweep.schema.json")
expect("verify", ["verify"], 0, "verify_report.schema.json")
expect("verify wrong-sign", ["verify", "--inject-fault", "wrong-sign"], 4, "verify_report.schema.json")

for label, args in [
    ("missing --phi", ["solve", "--n", "2", "--R", "2", "--Rstar", "3"]),
    ("R <= 1", ["solve", "--n", "2", "--R", "1", "--Rstar", "3", "--phi", "quad:kappa=1"]),
    ("nonconvex poly", ["solve", *BASE[:6], "--phi", "poly:1,-2"]),
    ("unknown subcommand", ["launch"]),
    ("unknown suite", ["verify", "--suite", "everything"]),
]:
    expect(label, args, 1)

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)

    csv_runs = []
    for i in range(2):
        out = tmp / f"profile{i}.csv"
        expect(f"solve csv run {i}", ["solve", *BASE, "--nodes", "101", "--out", str(out)], 0)
        csv_runs.append(out.read_bytes())
    check("solve csv byte-identical across runs", csv_runs[0] == csv_runs[1])
    lines = csv_runs[0].decode().split("\n")
    check("solve csv header", lines[0] == "t,H,Hdot,mu,J,density", lines[0])
    check("solve csv row count", len([l for l in lines if l]) == 102, str(len(lines)))
    check("solve csv uses LF only", b"\r" not in csv_runs[0])

    out = tmp / "profile.json"
    expect("solve json artifact", ["solve", *BASE, "--nodes", "11", "--format", "json", "--out", str(out)], 0)
    validate("solve json artifact", json.loads(out.read_text()), "profile.schema.json")

    sweep_runs = [run("sweep", "--n", "2", "--kappas", "0.25,1,4", "--R-min", "1.2", "--R-max", "3").stdout
                  for _ in range(2)]
    check("sweep csv byte-identical across runs", sweep_runs[0] == sweep_runs[1] and sweep_runs[0] != "")
    check("sweep csv header", sweep_runs[0].startswith("kappa,R,r_circ,status\n"))

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
