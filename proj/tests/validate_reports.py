# Copyright 2026 The igloo-kit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs every igloo-kit subcommand with --out and validates the reports."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

RUNS = {
    "check-refinement": ["--scenario", "leader3", "--depth", "5"],
    "check-composition": ["--cases", "5", "--depth", "3"],
    "check-theorem3": ["--cases", "5", "--depth", "3"],
    "check-theorem4": ["--process", "all", "--cases", "5"],
    "enumerate": ["--scenario", "leader3", "--depth", "2"],
    "simulate": ["--scenario", "leader3", "--seed", "3", "--steps", "300"],
    "dump-iospec": ["--scenario", "repl-3s-1c", "--component", "0"],
}


def main(kit: str, schema_path: str) -> int:
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        log = pathlib.Path(tmp, "leader3.jsonl")
        subprocess.run([kit, "simulate", "--scenario", "leader3", "--seed", "1",
                        "--steps", "300", "--log", str(log)], check=True,
                       stdout=subprocess.DEVNULL)
        runs = dict(RUNS)
        runs["replay"] = ["--scenario", "leader3", "--log", str(log)]
        for command, args in runs.items():
            out = pathlib.Path(tmp, command + ".json")
            proc = subprocess.run([kit, command, *args, "--out", str(out)],
                                  stdout=subprocess.DEVNULL)
            errors = list(validator.iter_errors(json.loads(out.read_text())))
            ok = proc.returncode == 0 and not errors
            print(("PASS " if ok else "FAIL ") + command)
            for e in errors:
                print("    " + e.message)
            failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
