"""Walk through the worked examples with the pcx command line and report exit codes."""
import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

FREE_S = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
FREE_A = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, "3/5", "-1/5"], [0, 0, "-1/5", "2/5"]]
OSC_S = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
OSC_A = [[1, 1, 2, 0], [1, -1, 0, 1], [1, 0, 1, 1], [0, 2, 1, -1]]
THETA = ["-1*p1 + q2", "q2", "q1 + p2", "p2"]


def steps(tmp: Path):
    files = {}
    for name, obj in [("free_S", FREE_S), ("free_A", FREE_A), ("osc_S", OSC_S), ("osc_A", OSC_A),
                      ("theta", THETA), ("xi", ["q1", "0", "0", "0"])]:
        files[name] = tmp / f"{name}.json"
        files[name].write_text(json.dumps(obj))
    return [
        ("free particle block map", ["canonoid", "--S", files["free_S"], "--A", files["free_A"]], 0),
        ("oscillator example (a)", ["canonoid", "--S", files["osc_S"], "--A", files["osc_A"]], 0),
        ("admissible Gamma for the oscillator", ["gamma-space", "--S", files["osc_S"]], 0),
        ("so3 rescaling", ["poissonoid", "check", "--scenario", "euler_so3", "--transform", "rescaling"], 0),
        ("so3 Casimirs", ["casimir", "--scenario", "euler_so3", "--degree", "2"], 0),
        ("Kirchhoff certificate", ["kirchhoff", "--omega", "6,2,1", "--eps", "1", "--a", "1"], 0),
        ("irrational Kirchhoff constants", ["kirchhoff", "--omega", "5,2,1", "--eps", "1", "--a", "1"], 2),
        ("Whittaker generator", ["whittaker", "--scenario", "harmonic_oscillator_2d", "--theta", files["theta"]], 0),
        ("master symmetry q1 d/dq1", ["symmetry", "--scenario", "free_particle", "--xi", files["xi"]], 0),
        ("generator of q1", ["master-gen", "--scenario", "free_particle", "--T", "q1"], 0),
        ("Euler drift", ["integrate", "--scenario", "euler_so3", "--x0", "1,1/10,1/10", "--t-end", "10",
                         "--step", "1e-3", "--tolerance", "1e-9"], 0),
        ("all scenarios", ["scenario", "run", "--all"], 0),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show", action="store_true", help="print each command's JSON output")
    args = ap.parse_args()
    bad = 0
    with tempfile.TemporaryDirectory() as d:
        for title, argv, want in steps(Path(d)):
            argv = [str(a) for a in argv]
            proc = subprocess.run([sys.executable, "-m", "pcx", *argv], capture_output=True, text=True)
            ok = proc.returncode == want
            bad += not ok
            print(f"{'ok ' if ok else 'BAD'} exit={proc.returncode} (want {want})  {title}")
            if args.show or not ok:
                print("    " + (proc.stdout.strip() or proc.stderr.strip())[:2000])
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
