"""The regspec command line.

Exit codes follow one convention everywhere: 0 all inputs valid (or the
requested report produced), 1 at least one input invalid (or error-level
findings), 2 usage, IO or format errors. Message output is JSON lines so
results stream and pipe cleanly.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import mmsr
from .bench import format_table, run_benchmarks
from .cnl import abstract, error_findings, parse as parse_cnl, render, soundness_check, traceback
from .datagen import BUILTIN_GENERATORS, GenContext, sample
from .engine import explain as explain_value, validate as validate_value
from .errors import CnlError, CnlSyntaxError, RegspecError
from .keywords import Keyword, keyword
from .ruleset import dump_ruleset, load_ruleset
from .values import value_from_json, value_to_json


class _UsageError(click.ClickException):
    exit_code = 2


def _load(ruleset_path: str | None):
    if not ruleset_path:
        raise _UsageError("a ruleset is required (--ruleset or REGSPEC_RULESET)")
    try:
        registry, root = load_ruleset(ruleset_path, mmsr.predicate_library())
    except RegspecError as exc:
        raise _UsageError(f"cannot load ruleset: {exc}") from exc
    return registry, root


def _spec_name(registry, root, spec: str | None) -> Keyword:
    if spec is None:
        return root
    try:
        name = keyword(spec, root.namespace)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if name not in registry:
        raise _UsageError(f"unknown spec: {name.text}")
    return name


def _read_messages(in_path: str, fmt: str) -> list:
    try:
        text = sys.stdin.read() if in_path == "-" else Path(in_path).read_text("utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read input: {exc}") from exc
    try:
        if fmt == "jsonl":
            return [
                value_from_json(json.loads(line))
                for line in text.splitlines()
                if line.strip()
            ]
        return [value_from_json(json.loads(text))]
    except (json.JSONDecodeError, RegspecError) as exc:
        raise _UsageError(f"malformed message input: {exc}") from exc


ruleset_option = click.option(
    "--ruleset",
    envvar="REGSPEC_RULESET",
    type=click.Path(),
    help="Ruleset JSON file (default: env REGSPEC_RULESET).",
)
spec_option = click.option("--spec", help="Spec keyword (default: the ruleset root).")


@click.group()
@click.version_option(package_name="regspec")
def main():
    """Regulations as composable software contracts."""


@main.command("validate")
@ruleset_option
@spec_option
@click.option("--in", "in_path", default="-", help="Message file or - for stdin.")
@click.option("--format", "fmt", type=click.Choice(["json", "jsonl"]), default="json")
@click.option("--parallel", type=int, default=1, help="Worker threads.")
def cmd_validate(ruleset, spec, in_path, fmt, parallel):
    """Check messages; exit 0 if all valid, 1 otherwise."""
    registry, root = _load(ruleset)
    name = _spec_name(registry, root, spec)
    lib = mmsr.predicate_library()
    messages = _read_messages(in_path, fmt)

    def check(message):
        return validate_value(registry, name, message, lib)

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            verdicts = list(pool.map(check, messages))
    else:
        verdicts = [check(m) for m in messages]
    for index, valid in enumerate(verdicts):
        click.echo(json.dumps({"index": index, "valid": valid}))
    sys.exit(0 if all(verdicts) else 1)


@main.command("explain")
@ruleset_option
@spec_option
@click.option("--in", "in_path", default="-", help="Message file or - for stdin.")
@click.option("--format", "fmt", type=click.Choice(["json", "jsonl"]), default="json")
@click.option("--cnl", "cnl_path", type=click.Path(), help="CNL file for tracebacks.")
def cmd_explain(ruleset, spec, in_path, fmt, cnl_path):
    """Report why messages fail, optionally traced into the CNL."""
    registry, root = _load(ruleset)
    name = _spec_name(registry, root, spec)
    lib = mmsr.predicate_library()
    doc = None
    if cnl_path:
        try:
            doc = parse_cnl(Path(cnl_path).read_text("utf-8"))
        except (OSError, CnlError) as exc:
            raise _UsageError(f"cannot load CNL: {exc}") from exc
    messages = _read_messages(in_path, fmt)
    any_invalid = False
    for index, message in enumerate(messages):
        problems = explain_value(registry, name, message, lib)
        any_invalid = any_invalid or bool(problems)
        report = {
            "index": index,
            "valid": not problems,
            "problems": [p.to_json() for p in problems],
        }
        if doc is not None:
            report["traceback"] = [e.to_json() for e in traceback(doc, problems)]
        click.echo(json.dumps(report, ensure_ascii=False))
    sys.exit(1 if any_invalid else 0)


@main.command("generate")
@ruleset_option
@spec_option
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=8, show_default=True)
def cmd_generate(ruleset, spec, count, seed, size):
    """Emit generated messages as JSON lines, deterministic per seed."""
    registry, root = _load(ruleset)
    name = _spec_name(registry, root, spec)
    if count < 0:
        raise _UsageError("--count must be non-negative")
    try:
        values = sample(
            registry, name, count, GenContext(seed=seed, size=size),
            mmsr.predicate_library(), BUILTIN_GENERATORS,
        )
    except RegspecError as exc:
        raise _UsageError(f"generation failed: {exc}") from exc
    for value in values:
        click.echo(json.dumps(value_to_json(value), ensure_ascii=False))


@main.group("cnl")
def cmd_cnl():
    """Work with controlled-natural-language documents."""


@cmd_cnl.command("check")
@ruleset_option
@click.option("--cnl", "cnl_path", type=click.Path(), required=True)
def cnl_check(ruleset, cnl_path):
    """Soundness-check a CNL file against a ruleset; exit 0 when sound."""
    registry, root = _load(ruleset)
    try:
        doc = parse_cnl(Path(cnl_path).read_text("utf-8"))
    except OSError as exc:
        raise _UsageError(f"cannot read CNL: {exc}") from exc
    except CnlSyntaxError as exc:
        raise _UsageError(f"CNL syntax error on line {exc.line}: expected {exc.expected}") from exc
    except CnlError as exc:
        raise _UsageError(f"CNL error: {exc}") from exc
    findings = soundness_check(doc, registry, expected_root=root)
    click.echo(json.dumps({"findings": [f.to_json() for f in findings]}, ensure_ascii=False))
    sys.exit(1 if error_findings(findings) else 0)


@cmd_cnl.command("render")
@click.option("--cnl", "cnl_path", type=click.Path(), required=True)
def cnl_render(cnl_path):
    """Parse and re-render a CNL file in canonical form."""
    try:
        doc = parse_cnl(Path(cnl_path).read_text("utf-8"))
    except OSError as exc:
        raise _UsageError(f"cannot read CNL: {exc}") from exc
    except CnlError as exc:
        raise _UsageError(str(exc)) from exc
    click.echo(render(doc), nl=False)


@cmd_cnl.command("abstract")
@ruleset_option
@spec_option
def cnl_abstract(ruleset, spec):
    """Emit the CNL abstraction of a ruleset (from the root by default)."""
    registry, root = _load(ruleset)
    name = _spec_name(registry, root, spec)
    click.echo(render(abstract(registry, name)), nl=False)


@main.command("predicates")
def cmd_predicates():
    """Dump the predicate catalogue as JSON."""
    click.echo(json.dumps(mmsr.predicate_library().catalogue(), indent=2))


@main.command("bench")
@ruleset_option
@click.option("--iterations", type=int, default=1000, show_default=True)
@click.option("--warmup", type=int, default=1000, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def cmd_bench(ruleset, iterations, warmup, as_json):
    """Time the five message-processing scenarios on the example message."""
    if ruleset:
        registry, root = _load(ruleset)
    else:
        registry, root = mmsr.load_bundle()
    if iterations < 2 or warmup < 0:
        raise _UsageError("--iterations must be >= 2 and --warmup >= 0")
    spec = mmsr.SECURED_REPORT if mmsr.SECURED_REPORT in registry else root
    message = (
        mmsr.canonical_example()
        if spec == mmsr.SECURED_REPORT
        else sample(registry, spec, 1, GenContext(seed=0), mmsr.predicate_library())[0]
    )
    results = run_benchmarks(
        registry, spec, message, mmsr.predicate_library(),
        iterations=iterations, warmup=warmup,
    )
    if as_json:
        click.echo(json.dumps([r.to_json() for r in results], indent=2))
    else:
        click.echo(format_table(results))


@main.command("serve")
@click.option("--rulesets-dir", type=click.Path(), default=None,
              help="Directory of ruleset JSON files (default: the shipped bundle).")
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def cmd_serve(rulesets_dir, port, host):
    """Run the HTTP JSON API for the workbench."""
    import uvicorn

    from .service import build_app

    app = build_app(rulesets_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


@main.command("dump-ruleset")
@ruleset_option
def cmd_dump(ruleset):
    """Round-trip a ruleset through the registry (normalization check)."""
    registry, root = _load(ruleset)
    click.echo(json.dumps(dump_ruleset(registry, root, root.namespace), indent=2))


if __name__ == "__main__":
    main()
