"""Run the CLI with --output json over the samples and the error fixtures and
validate every report against the published schema."""

import json
import pathlib
import subprocess
import sys

try:
    import jsonschema
except ImportError:
    print("jsonschema is not installed; skipping")
    sys.exit(77)


def runs(samples, data):
    for f in sorted(samples.glob("*.elp")) + sorted(samples.glob("*.slp")):
        for cmd in ("check", "interpolate", "justify"):
            yield [cmd, str(f), "--trace"] if cmd != "justify" else [cmd, str(f)]
    for f in sorted(samples.glob("*.model")) + sorted(data.glob("*.model")):
        yield ["model-check", str(f)]
    for f in sorted(data.glob("*.slp")) + sorted(data.glob("*.elp")):
        yield ["check", str(f)]
        yield ["interpolate", str(f)]
    beth = str(samples / "beth.slp")
    model = str(samples / "model_s.model")
    yield ["beth", beth, "--sigma", "g,e", "--target", "a"]
    yield ["beth", beth, "--sigma", "g,e", "--target", "a", "--sharing", "intersection", "--model", model]
    yield ["beth", beth, "--sigma", "g,e", "--target", "nope"]
    yield ["check", str(samples / "missing.slp")]


def main():
    cli, schema_path, samples = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    data = pathlib.Path(__file__).parent / "data"
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    count = 0
    for args in runs(samples, data):
        proc = subprocess.run([cli, *args, "--output", "json"], capture_output=True, text=True)
        count += 1
        try:
            report = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            print(f"FAIL {' '.join(args)}: not JSON ({e})")
            bad += 1
            continue
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        if report.get("exit_code") != proc.returncode:
            errors.append(f"exit_code {report.get('exit_code')} but process returned {proc.returncode}")
        for e in errors:
            print(f"FAIL {' '.join(args)}: {getattr(e, 'message', e)}")
        bad += bool(errors)
    print(f"{count - bad}/{count} reports valid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
