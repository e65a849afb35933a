"""Exit codes, output routing and byte-stability of the dcsharp binary."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
GOLDEN = Path(__file__).parent / "golden"
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("DCSHARP_OUTPUT_DIR", None)
    if env:
        e.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def expect(name, cond, extra=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  {extra}" if extra and not cond else ""))
    if not cond:
        failures.append(name)


def statuses(text):
    j = json.loads(text)
    return j["status"], {c["name"]: c["status"] for c in j["checks"]}


# spec examples
r = run("analyze", "--family", "gevrey:1", "--K", "200")
st, checks = statuses(r.stdout)
q = [c for c in json.loads(r.stdout)["checks"] if c["name"] == "quasianalyticity"][0]
expect("analyze exit 0", r.returncode == 0)
expect("analyze log-convexity pass", checks["log-convexity"] == "pass")
expect("analyze converging-like", q["payload"]["trend"] == "converging-like")

r = run("compare", "--N", "analytic", "--M", "gevrey:1", "--K", "200")
verdict = json.loads(r.stdout)["checks"][0]["payload"]["verdict"]
expect("compare verdict", verdict == "strictly-contained-diagnostic", verdict)

r = run("selftest", "--criteria", "1,3,9,11")
expect("selftest subset exit 0", r.returncode == 0, r.stderr)

# usage errors
for args in (["analyze", "--family", "bogus"], ["frobnicate"], [], ["analyze", "--K", "x"],
             ["verify-bounds", "--target", "cube"], ["construct-flat", "--family", "analytic"],
             ["construct-flat", "--E", "power:2"], ["certify", "--gamma", "/nonexistent.json"]):
    r = run(*args)
    expect("usage error " + " ".join(args), r.returncode == 2, f"rc={r.returncode}")

expect("--help exits 0", run("--help").returncode == 0)

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    # byte-stable reports, identical across runs
    a = run("counterexample", "--json", str(tmp / "a.json"), "--csv", str(tmp / "a.csv"))
    b = run("counterexample", "--json", str(tmp / "b.json"), "--csv", str(tmp / "b.csv"))
    expect("counterexample exit 0", a.returncode == 0 and b.returncode == 0)
    expect("json byte-stable", (tmp / "a.json").read_bytes() == (tmp / "b.json").read_bytes())
    expect("csv byte-stable", (tmp / "a.csv").read_bytes() == (tmp / "b.csv").read_bytes())
    expect("csv header", (tmp / "a.csv").read_text().splitlines()[0] == "k,a_k,b_k,g_k")
    expect("no elapsed_ms without --timing", "elapsed_ms" not in json.loads((tmp / "a.json").read_text()))
    r = run("compare", "--timing")
    expect("--timing adds elapsed_ms", "elapsed_ms" in json.loads(r.stdout))

    # output directory routing
    out = tmp / "out"
    r = run("ostrowski", "--points", "7", env={"DCSHARP_OUTPUT_DIR": str(out)})
    expect("output dir json", (out / "ostrowski.json").is_file() and r.stdout == "")
    expect("output dir csv", (out / "ostrowski.csv").read_text().startswith("r,phi_log,argmax\n"))

    # construct-flat -> certify round trip; the envelope and the bare payload both load
    g = tmp / "gamma.json"
    r = run("construct-flat", "--family", "gevrey:1", "--lambda-max", "64", "--json", str(g))
    st, checks = statuses(g.read_text())
    expect("construct-flat pass", r.returncode == 0 and st == "pass", str(checks))
    r = run("certify", "--gamma", str(g), "--N", "gevrey:1.5")
    expect("certify exit 0", r.returncode == 0, r.stderr)
    expect("certify golden", r.stdout == (GOLDEN / "certify.csv").read_text(), r.stdout)
    payload = [c for c in json.loads(g.read_text())["checks"] if c["name"] == "gamma"][0]["payload"]
    (tmp / "bare.json").write_text(json.dumps(payload))
    r2 = run("certify", "--gamma", str(tmp / "bare.json"), "--N", "gevrey:1.5")
    expect("certify from bare gamma", r2.stdout == r.stdout)
    r = run("certify", "--gamma", str(g), "--N", "gevrey:3")
    expect("certify refuses N outside M^(2)", r.returncode == 2)

    r = run("compare", "--N", "analytic", "--M", "gevrey:1", "--K", "200")
    expect("compare golden", r.stdout == (GOLDEN / "compare.json").read_text())

    r = run("verify-bounds", "--target", "base", "--csv", str(tmp / "h.csv"))
    expect("verify-bounds base", r.returncode == 0 and statuses(r.stdout)[0] == "pass")
    expect("base profile", (tmp / "h.csv").read_text().startswith("t,along_x1,along_x2\n"))

print(f"{len(failures)} failures" if failures else "all cli checks passed")
sys.exit(1 if failures else 0)
