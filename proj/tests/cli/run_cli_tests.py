#!/usr/bin/env python3
"""End-to-end checks of the rablur command line binary.

Usage: run_cli_tests.py /path/to/rablur
Exit status 0 when every check passes; each check prints one line.
"""

import json
import os
import subprocess
import sys
import tempfile

failures = 0


def run(binary, *args, env_extra=None, cwd=None):
    env = os.environ.copy()
    env.pop("RABLUR_OUT_DIR", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [binary, *args], capture_output=True, text=True, env=env, cwd=cwd, timeout=300
    )


def check(name, cond, detail=""):
    global failures
    if cond:
        print(f"ok - {name}")
    else:
        failures += 1
        print(f"FAIL - {name}" + (f": {detail}" if detail else ""))


def main():
    binary = os.path.abspath(sys.argv[1])
    with tempfile.TemporaryDirectory() as tmp:
        r = run(binary, "--version")
        check("version flag", r.returncode == 0 and "0.1.0" in r.stdout, r.stdout)

        r = run(binary)
        check("no subcommand is a usage error", r.returncode == 1)

        r = run(binary, "ra-check", "--I", "6")
        check(
            "ra-check reports a clean structure",
            r.returncode == 0 and "atoms 7" in r.stdout and "violations 0" in r.stdout,
            r.stdout,
        )
        r = run(binary, "ra-check")
        check("missing required option is a usage error", r.returncode == 1)

        graph_file = os.path.join(tmp, "g.txt")
        r = run(binary, "graph", "--nodes", "12", "--p", "0.4", "--seed", "3", "--out", graph_file)
        check(
            "graph sampling reports invariants",
            r.returncode == 0 and "nodes 12" in r.stdout and "chromatic " in r.stdout,
            r.stdout,
        )
        r2 = run(binary, "graph", "--in", graph_file)
        check("graph files round-trip", r2.returncode == 0 and r2.stdout == r.stdout)

        r = run(binary, "blur-build", "--I", "6", "--depth", "8")
        check(
            "blur-build counts atoms",
            r.returncode == 0
            and "bases 6" in r.stdout
            and "blurs 15" in r.stdout
            and "atoms_at_depth 241" in r.stdout,
            r.stdout,
        )

        r = run(binary, "blur-check", "--I", "6")
        check(
            "blur-check passes at six bases",
            r.returncode == 0
            and "blur conditions hold (exhaustive; i=52800 ii=11480 iii=484 violations=0)"
            in r.stdout
            and "n_complex_blur(3) true" in r.stdout,
            r.stdout,
        )
        r = run(binary, "blur-check", "--I", "3")
        check(
            "blur-check fails at three bases",
            r.returncode == 2
            and "conditions skipped" in r.stdout
            and "n_complex_blur(3) false" in r.stdout,
            r.stdout,
        )
        r = run(binary, "blur-check", "--I", "9", "--l", "3", "--sampled", "--seed", "4")
        check(
            "sampled blur-check passes for the subset family",
            r.returncode == 0 and "sampled" in r.stdout,
            r.stdout,
        )

        log1 = os.path.join(tmp, "log1.txt")
        log2 = os.path.join(tmp, "log2.txt")
        r = run(binary, "represent", "--I", "6", "--steps", "120", "--out", log1)
        check(
            "represent verifies the saturated graph",
            r.returncode == 0
            and "steps 120" in r.stdout
            and "nodes 121" in r.stdout
            and "representation checks passed" in r.stdout,
            r.stdout,
        )
        run(binary, "represent", "--I", "6", "--steps", "120", "--out", log2)
        with open(log1, "rb") as f1, open(log2, "rb") as f2:
            check("represent runs are byte-identical", f1.read() == f2.read())

        cert_file = os.path.join(tmp, "cert.json")
        r = run(binary, "certify", "--construction", "blur", "--I", "6", "--out", cert_file)
        check("certify writes a blur certificate", r.returncode == 0 and os.path.exists(cert_file))
        r = run(binary, "check-certificate", cert_file)
        check(
            "fresh certificate checks",
            r.returncode == 0 and "certificate ok" in r.stdout,
            r.stdout,
        )

        with open(cert_file) as f:
            cert = json.load(f)
        cert["mono_zero"][2]["zero"] = not cert["mono_zero"][2]["zero"]
        bad_file = os.path.join(tmp, "cert_bad.json")
        with open(bad_file, "w") as f:
            json.dump(cert, f, indent=2)
        r = run(binary, "check-certificate", bad_file)
        check(
            "tampered verdict is pinpointed",
            r.returncode == 2 and "mono_zero" in r.stdout and "(block 2)" in r.stdout,
            r.stdout,
        )

        cut_file = os.path.join(tmp, "cert_cut.json")
        with open(cert_file) as f:
            text = f.read()
        with open(cut_file, "w") as f:
            f.write(text[:50])
        r = run(binary, "check-certificate", cut_file)
        check(
            "truncated file is malformed",
            r.returncode == 2 and "malformed JSON" in r.stdout,
            r.stdout,
        )
        r = run(binary, "check-certificate", os.path.join(tmp, "missing.json"))
        check("missing file is a usage error", r.returncode == 1)

        r = run(binary, "certify", "--construction", "alpha", "--N", "3", "--n", "3")
        ok = r.returncode == 0
        if ok:
            cert = json.loads(r.stdout)
            ok = cert["counts"]["blocks"] == 10 and cert["spec"]["construction"] == "alpha"
        check("alpha certificate on stdout", ok, r.stdout[:200])

        flmu_file = os.path.join(tmp, "flmu.json")
        r = run(
            binary, "certify", "--construction", "flmu", "--I", "6", "--l", "2", "--mu", "2",
            "--out", flmu_file,
        )
        r2 = run(binary, "check-certificate", flmu_file)
        check("subset-family certificate round-trips", r.returncode == 0 and r2.returncode == 0)

        r = run(binary, "certify", "--construction", "bogus")
        check("unknown construction is a usage error", r.returncode == 1)

        outdir = os.path.join(tmp, "outdir")
        os.mkdir(outdir)
        r = run(
            binary, "certify", "--construction", "blur", "--I", "6", "--out", "env_cert.json",
            env_extra={"RABLUR_OUT_DIR": outdir}, cwd=tmp,
        )
        redirected = os.path.join(outdir, "env_cert.json")
        ok = r.returncode == 0 and os.path.exists(redirected)
        if ok:
            with open(redirected) as f1, open(cert_file) as f2:
                ok = f1.read() == f2.read()
        check("relative outputs honor RABLUR_OUT_DIR", ok)

        abs_file = os.path.join(tmp, "abs_cert.json")
        r = run(
            binary, "certify", "--construction", "blur", "--I", "6", "--out", abs_file,
            env_extra={"RABLUR_OUT_DIR": outdir},
        )
        check(
            "absolute outputs ignore RABLUR_OUT_DIR",
            r.returncode == 0
            and os.path.exists(abs_file)
            and not os.path.exists(os.path.join(outdir, "abs_cert.json")),
        )

        mat_file = os.path.join(tmp, "m.json")
        r = run(binary, "matrices", "--I", "6", "--n", "3", "--out", mat_file)
        ok = r.returncode == 0 and "matrices 229" in r.stdout and "basis ok" in r.stdout
        if ok:
            with open(mat_file) as f:
                doc = json.load(f)
            ok = (
                len(doc["matrices"]) == 229
                and doc["matrices"][0] == "x0=x1 & x0=x2 & x1=x2"
            )
        check("matrices pass the amalgamation test at six bases", ok, r.stdout)

        r = run(binary, "matrices", "--I", "3", "--n", "3")
        check(
            "matrices fail the amalgamation test at three bases",
            r.returncode == 2
            and "matrices 34" in r.stdout
            and "basis failed" in r.stdout
            and "failure at axes" in r.stdout,
            r.stdout,
        )

        prefix = os.path.join(tmp, "monkpref")
        r = run(
            binary, "monk", "--n", "3", "--count", "3", "--copies", "4", "--seed", "1",
            "--out", prefix,
        )
        want = [
            "member 0 clique_size 3 chromatic 3 blocks 10",
            "member 1 clique_size 4 chromatic 4 blocks 13",
            "member 2 clique_size 5 chromatic 5 blocks 16",
        ]
        check(
            "monk sequence prints exact invariants",
            r.returncode == 0 and all(line in r.stdout for line in want),
            r.stdout,
        )
        ok = True
        for i in range(3):
            r = run(binary, "check-certificate", f"{prefix}_{i}.json")
            ok = ok and r.returncode == 0
        check("every monk certificate checks", ok)

    print(f"{failures} failures" if failures else "all cli checks passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
