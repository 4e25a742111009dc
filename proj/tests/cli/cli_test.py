"""End-to-end tests of the qsvlab command-line tool."""

import argparse
import csv
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

CLI = ""
SCHEMAS = Path()

COMMANDS = {
    "gen-instance": ["--family", "typical", "--n", "32"],
    "adversary-pair": [],
    "verify": ["--kind", "mixed", "--eps", "0.01", "--trials", "500"],
    "typical-sweep": ["--n", "512", "--trials", "200"],
    "pm-bound": [],
    "cost-gap": ["--kappa", "4,8,16,32"],
}
SCHEMA_OF = {"gen-instance": "instance", "summary": "summary"}


def run(*args, env=None, check=True):
    full_env = dict(os.environ)
    full_env.pop("QSVLAB_SEED", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return proc


def schema_for(stem):
    name = SCHEMA_OF.get(stem, stem)
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


class CliTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def check_outputs(self, directory):
        columns = json.loads((SCHEMAS / "csv-columns.json").read_text())
        seen = 0
        for path in sorted(directory.iterdir()):
            if path.suffix == ".json":
                jsonschema.validate(json.loads(path.read_text()), schema_for(path.stem))
            else:
                with path.open(newline="") as fh:
                    rows = list(csv.reader(fh))
                self.assertEqual(rows[0], columns[path.name], path.name)
                self.assertGreater(len(rows), 1, path.name)
                for row in rows[1:]:
                    self.assertEqual(len(row), len(rows[0]), path.name)
            seen += 1
        return seen

    def test_jobs_do_not_change_bytes(self):
        for cmd, extra in COMMANDS.items():
            outs = []
            for jobs in ("1", "3"):
                d = self.tmp / f"{cmd}-{jobs}"
                d.mkdir()
                run(cmd, *extra, "--seed", "11", "--jobs", jobs, "--format", "both",
                    "--out", str(d / cmd))
                outs.append({p.name: p.read_bytes() for p in d.iterdir()})
            self.assertEqual(outs[0], outs[1], cmd)
            self.assertEqual(len(outs[0]), 2, cmd)

    def test_outputs_validate_against_schemas(self):
        for cmd, extra in COMMANDS.items():
            run(cmd, *extra, "--format", "both", "--out", str(self.tmp / cmd))
        self.assertEqual(self.check_outputs(self.tmp), 12)

    def test_report_all(self):
        out = self.tmp / "report"
        run("report-all", "--seed", "3", "--format", "both", "--out", str(out))
        self.assertEqual(self.check_outputs(out), 13)
        summary = json.loads((out / "summary.json").read_text())
        self.assertTrue(summary["adversary_bounds_ok"])
        self.assertTrue(summary["pm_distance_ok"])

    def test_stdout_when_no_out(self):
        proc = run("pm-bound")
        doc = json.loads(proc.stdout)
        self.assertEqual(doc["q0_pm_floor150"], 600)
        proc = run("pm-bound", "--format", "csv")
        self.assertTrue(proc.stdout.startswith("overlap,q0_pm_exact"))

    def test_out_extension_is_stripped(self):
        run("pm-bound", "--out", str(self.tmp / "pm.json"), "--format", "both")
        self.assertEqual(sorted(p.name for p in self.tmp.iterdir()), ["pm.csv", "pm.json"])

    def test_documented_examples(self):
        cert = json.loads(run("adversary-pair", "--kappa", "100", "--n", "64", "--seed", "7").stdout)
        self.assertTrue(cert["bounds_ok"])

        ver = json.loads(run("verify", "--kappa", "50", "--d", "0.125", "--trials", "10000",
                             "--seed", "1").stdout)
        self.assertGreaterEqual(ver["accept_rate"], 0.79 - 3 * ver["sigma"])

        typ = json.loads(run("typical-sweep", "--n", "4096", "--kappa", "16",
                             "--trials", "1000").stdout)
        self.assertLessEqual(typ["empirical_tail"], typ["bound_value"])

    def test_validation_errors_exit_2(self):
        cases = [
            ["no-such-command"],
            ["verify", "--eps", "0.5"],
            ["verify", "--kind", "weird"],
            ["gen-instance", "--n", "1"],
            ["gen-instance", "--kappa", "0.5"],
            ["typical-sweep", "--trials", "0"],
            ["cost-gap", "--z", "0"],
            ["verify", "--format", "xml"],
            ["verify", "--bogus", "1"],
        ]
        for args in cases:
            proc = run(*args, check=False)
            self.assertEqual(proc.returncode, 2, args)
            self.assertTrue(proc.stderr.strip(), args)

    def test_unwritable_path_exits_3(self):
        blocker = self.tmp / "file"
        blocker.write_text("x")
        proc = run("pm-bound", "--out", str(blocker / "sub" / "pm"), check=False)
        self.assertEqual(proc.returncode, 3)
        proc = run("report-all", "--out", str(blocker / "dir"), check=False)
        self.assertEqual(proc.returncode, 3)
        proc = run("pm-bound", "--instance", str(self.tmp / "missing.json"), check=False)
        self.assertEqual(proc.returncode, 3)

    def test_failed_run_leaves_no_files(self):
        out = self.tmp / "out"
        out.mkdir()
        run("verify", "--eps", "0.5", "--out", str(out / "v"), check=False)
        self.assertEqual(list(out.iterdir()), [])

    def test_config_file(self):
        cfg = self.tmp / "cfg.json"
        cfg.write_text(json.dumps({"n": 16, "kappa": 8, "seed": 4, "family": "typical"}))
        from_cfg = json.loads(run("gen-instance", "--config", str(cfg)).stdout)
        self.assertEqual(len(from_cfg["eigvals"]), 16)
        self.assertEqual(from_cfg["kappa"], 8.0)
        flags = json.loads(run("gen-instance", "--n", "16", "--kappa", "8", "--seed", "4",
                               "--family", "typical").stdout)
        self.assertEqual(from_cfg, flags)
        overridden = json.loads(run("gen-instance", "--config", str(cfg), "--n", "4").stdout)
        self.assertEqual(len(overridden["eigvals"]), 4)

        cfg.write_text(json.dumps({"nonsense": 1}))
        self.assertEqual(run("gen-instance", "--config", str(cfg), check=False).returncode, 2)
        cfg.write_text("{broken")
        self.assertEqual(run("gen-instance", "--config", str(cfg), check=False).returncode, 2)
        missing = str(self.tmp / "absent.json")
        self.assertEqual(run("gen-instance", "--config", missing, check=False).returncode, 3)

    def test_seed_environment_variable(self):
        base = ["gen-instance", "--family", "typical", "--n", "8"]
        default = run(*base).stdout
        env5 = run(*base, env={"QSVLAB_SEED": "5"}).stdout
        flag5 = run(*base, "--seed", "5").stdout
        self.assertEqual(env5, flag5)
        self.assertNotEqual(env5, default)
        self.assertEqual(run(*base, "--seed", "0", env={"QSVLAB_SEED": "5"}).stdout, default)
        self.assertEqual(run(*base, env={"QSVLAB_SEED": "x"}, check=False).returncode, 2)

    def test_instance_round_trip_through_file(self):
        path = self.tmp / "inst"
        run("gen-instance", "--family", "random", "--n", "16", "--kappa", "100",
            "--seed", "2", "--out", str(path))
        inst_file = str(path) + ".json"
        cert = json.loads(run("adversary-pair", "--instance", inst_file).stdout)
        self.assertEqual(cert["kappa"], 100.0)
        self.assertTrue(cert["bounds_ok"])


def main():
    global CLI, SCHEMAS
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schemas", required=True)
    args, rest = parser.parse_known_args()
    CLI = args.cli
    SCHEMAS = Path(args.schemas)
    unittest.main(argv=[sys.argv[0], *rest], verbosity=2)


if __name__ == "__main__":
    main()
