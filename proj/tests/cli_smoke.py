"""End-to-end runs of cvoptk, validated against the JSON schemas.

usage: cli_smoke.py CVOPTK SOURCE_DIR WORK_DIR
"""
import json
import math
import pathlib
import subprocess
import sys

import jsonschema

tool, src, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)
fixtures = src / "fixtures"
failures = []


def schema(name):
    return json.loads((src / "schemas" / "v1" / f"{name}.schema.json").read_text())


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f": {detail}" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def valid(path, name):
    try:
        jsonschema.validate(json.loads(pathlib.Path(path).read_text()), schema(name))
        return ""
    except jsonschema.ValidationError as e:
        return f"{e.json_path}: {e.message}"


def run(*args):
    return subprocess.run([tool, *map(str, args)], capture_output=True, text=True)


for name in ["problem", "upper_set", "boundedness_report", "sandwich_result",
             "divergence_trace", "setops", "setops_result", "run_record"]:
    jsonschema.Draft202012Validator.check_schema(schema(name))

for f in sorted(fixtures.glob("*.json")):
    err = valid(f, "problem")
    check(f"fixture {f.name} matches the problem schema", not err, err)

    out = work / f"classify_{f.stem}.json"
    r = run("classify", f, "--out", out, "--csv", work / f"classify_{f.stem}.csv")
    check(f"classify {f.stem} exits 0", r.returncode == 0, r.stderr)
    if r.returncode == 0:
        err = valid(out, "boundedness_report") or valid(f"{out}.run.json", "run_record")
        check(f"classify {f.stem} output matches its schema", not err, err)
        truth = json.loads(f.read_text()).get("analytic_truth", {}).get("verdict")
        got = json.loads(out.read_text())["verdict"]
        check(f"classify {f.stem} verdict", truth is None or truth == got, f"{got} != {truth}")

# solve: the self-bounded example certifies with K = recc, fails with K = C, and
# the not self-bounded one is refused.
out = work / "solve_hyperbola.json"
r = run("solve", fixtures / "hyperbola.json", "--eps", "0.05", "--budget", "128", "--out", out,
        "--csv", work / "solve_hyperbola.csv")
check("solve hyperbola exits 0", r.returncode == 0, r.stderr)
err = valid(out, "sandwich_result") or valid(f"{out}.run.json", "run_record")
check("solve hyperbola output matches its schema", not err, err)
res = json.loads(out.read_text())
gens = sorted(tuple(round(x, 6) for x in g) for g in res["K_used"]["generators"])
check("solve hyperbola uses K = R2+", gens == [(0.0, 1.0), (1.0, 0.0)], str(gens))
check("solve hyperbola certifies eps 0.05", res["status"] == "CERTIFIED" and res["eps_certified"] <= 0.05)

out = work / "solve_hyperbola_C.json"
r = run("solve", fixtures / "hyperbola.json", "--K", "C", "--out", out)
check("solve hyperbola with K = C exits 2", r.returncode == 2, r.stderr)
check("solve hyperbola with K = C is DIVERGENT", json.loads(out.read_text())["status"] == "DIVERGENT")
check("solve with K = C output matches its schema", not valid(out, "sandwich_result"))

r = run("solve", fixtures / "expon.json", "--out", work / "solve_expon.json")
check("solve expon is refused with exit 1", r.returncode == 1 and "not self-bounded" in r.stderr, r.stderr)

# Determinism: equal spec, config and seed give identical bytes.
a, b = work / "det_a.json", work / "det_b.json"
for p in (a, b):
    run("solve", fixtures / "disk.json", "--eps", "0.01", "--seed", "3", "--out", p)
check("solve disk is byte-identical across runs", a.read_bytes() == b.read_bytes())

e1 = repr(math.exp(-1.0))
out = work / "diverge.json"
r = run("diverge", fixtures / "expon.json", "--K", f"[[1,0],[-{e1},1]]", "--k-bar", f"[-{e1},1]",
        "--n-max", "100", "--out", out, "--csv", work / "diverge.csv")
check("diverge expon exits 0", r.returncode == 0, r.stderr)
err = valid(out, "divergence_trace")
check("diverge output matches its schema", not err, err)
tr = json.loads(out.read_text())
check("diverge d_100 near n/e - ln n", abs(tr["distances"][-1]["d"] - (100 / math.e - math.log(100))) <= 1.0)
r = run("diverge", fixtures / "expon.json", "--K", f"[[1,0],[-{e1},1]]", "--k-bar", "[1,0]",
        "--n-max", "100", "--out", work / "diverge_control.json")
check("diverge along a recession direction exits 2", r.returncode == 2, r.stderr)

expr = work / "setops_in.json"
expr.write_text(json.dumps({
    "schema": "cvop.setops/v1",
    "sets": {"A": {"points": [[1, 0], [0, 1]], "rec": {"generators": [[1, 0], [0, 1]]}}},
    "expr": "0 ⊙ A"}, ensure_ascii=False))
check("setops input matches its schema", not valid(expr, "setops"))
out = work / "setops.json"
r = run("setops", expr, "--out", out)
check("setops exits 0", r.returncode == 0, r.stderr)
err = valid(out, "setops_result")
check("setops output matches its schema", not err, err)
check("0 ⊙ A is {0} + C", json.loads(out.read_text())["result"]["points"] == [[0.0, 0.0]])

bad = work / "bad_problem.json"
bad.write_text('{"kind": "builtin", "name": "expon",\n "C": {"generators": [[1, 0], [0, 0]]}}')
r = run("classify", bad)
check("zero generator is a schema error with exit 1", r.returncode == 1 and "schema" in r.stderr, r.stderr)
r = run("classify", fixtures / "expon.json", "--resolution", "-1")
check("bad flag exits 1", r.returncode == 1)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
