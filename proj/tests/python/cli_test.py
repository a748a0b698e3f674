# Copyright 2026 The soctherm authors.
# SPDX-License-Identifier: Apache-2.0
"""CLI contract checks: exit codes, file outputs, replay determinism."""

import os
import subprocess
import sys
import tempfile

RUNAWAY_INI = """
[run]
epochs = 4000
label = runaway
[power]
effective_capacitance = 2.2
leakage_model = exponential
beta = 0.09
p_leak0 = 0.4
k_lin = 0
[dtm]
f_band_floor = 4.0
[attack]
enabled = true
[workload]
profile = constant
base_activity = 1.0
"""

BAD_KEY_INI = """
[run]
epochs = 10
not_a_key = 1
"""


def run(binary, *args, **kw):
    return subprocess.run([binary, *args], capture_output=True, text=True, **kw)


def main():
    binary = sys.argv[1]
    configs = sys.argv[2]

    with tempfile.TemporaryDirectory() as tmp:
        # Success path.
        r = run(binary, "run", os.path.join(configs, "default.ini"), "--out-dir",
                os.path.join(tmp, "ok"))
        assert r.returncode == 0, r.stderr
        assert os.path.exists(os.path.join(tmp, "ok", "default_trace.csv"))
        assert os.path.exists(os.path.join(tmp, "ok", "default_report.json"))

        # Missing config -> 2.
        r = run(binary, "run", os.path.join(tmp, "nope.ini"))
        assert r.returncode == 2, (r.returncode, r.stderr)

        # Unknown key -> 2.
        bad = os.path.join(tmp, "bad.ini")
        with open(bad, "w") as f:
            f.write(BAD_KEY_INI)
        r = run(binary, "run", bad)
        assert r.returncode == 2, (r.returncode, r.stderr)
        assert "not_a_key" in r.stderr

        # Thermal runaway -> 3, diagnostic names the epoch.
        cook = os.path.join(tmp, "runaway.ini")
        with open(cook, "w") as f:
            f.write(RUNAWAY_INI)
        r = run(binary, "run", cook, "--out-dir", os.path.join(tmp, "cook"))
        assert r.returncode == 3, (r.returncode, r.stderr)
        assert "epoch" in r.stderr

        # Seed override changes outputs; determinism holds per seed.
        out_a = os.path.join(tmp, "a")
        out_b = os.path.join(tmp, "b")
        out_c = os.path.join(tmp, "c")
        fixture = os.path.join(configs, "accept", "gcc_hot.ini")
        assert run(binary, "run", fixture, "--out-dir", out_a).returncode == 0
        assert run(binary, "run", fixture, "--out-dir", out_b).returncode == 0
        assert run(binary, "run", fixture, "--out-dir", out_c, "--seed", "999").returncode == 0
        trace = lambda d: open(os.path.join(d, "gcc_hot_trace.csv"), "rb").read()
        assert trace(out_a) == trace(out_b)
        assert trace(out_a) != trace(out_c)

        # gen-trace produces a loadable CSV.
        csv = os.path.join(tmp, "lbm.csv")
        assert run(binary, "gen-trace", "lbm", csv, "--epochs", "64", "--cores", "4").returncode == 0
        lines = open(csv).read().splitlines()
        assert lines[0] == "epoch,core_0,core_1,core_2,core_3"
        assert len(lines) == 65

        # infer-thresholds on the recon fixture emits sane JSON.
        r = run(binary, "infer-thresholds", os.path.join(configs, "accept", "recon.ini"),
                "--out-dir", os.path.join(tmp, "recon"))
        assert r.returncode == 0, r.stderr
        assert '"th_critical_est"' in r.stdout

        # stability subcommand writes both files.
        r = run(binary, "stability", os.path.join(configs, "default.ini"), "--out-dir",
                os.path.join(tmp, "stab"))
        assert r.returncode == 0, r.stderr
        assert os.path.exists(os.path.join(tmp, "stab", "default_stability.json"))
        assert os.path.exists(os.path.join(tmp, "stab", "default_stability_curves.csv"))

    print("cli: all checks passed")


if __name__ == "__main__":
    main()
