"""reeb-forge command line interface.

One-shot commands: read JSON in, write JSON out, print a homology table.
Exit codes: 0 success, 1 infeasible target or failed verification,
2 usage or input errors.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from .catalog import generator_from_spec, make_atomic, manifold_from_spec, standard_catalog_grid
from .engine import (
    infer_source_homology,
    profile_from_json,
    profile_to_json,
    run_script,
    script_from_json,
)
from .errors import InfeasibleTargetError, ReebForgeError
from .oracle import validate_catalog_entry
from .pid_algebra import (
    GradedModule,
    INTEGERS,
    euler_characteristic,
    graded_text,
    module_text,
    module_to_json,
    parse_module_text,
    parse_ring,
)
from .planner import (
    PlanReport,
    TargetSpec,
    check_torsion_gap,
    plan_bundle_bubbling,
    plan_euler_target,
    plan_finite_torsion_products,
    plan_free_realization,
    plan_report_to_json,
    plan_torsion_free_wedge,
    single_op_feasibility,
    verify_necessary_conditions,
)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _handled(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except InfeasibleTargetError as exc:
            _fail(1, str(exc))
        except ReebForgeError as exc:
            _fail(2, str(exc))
        except json.JSONDecodeError as exc:
            _fail(2, f"malformed JSON: {exc}")

    return wrapper


def _parse_csv_ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok.strip()) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise click.UsageError(f"{what} must be a comma-separated integer list, got {text!r}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        _fail(2, f"cannot read {path}: {exc}")


def _write_json(path: str | None, obj):
    if not path:
        return
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
    click.echo(f"wrote {path}")


def _parse_space_arg(text: str) -> dict:
    """Accept inline JSON, a JSON file path, or compact 'kind:params'."""
    s = text.strip()
    if s.startswith("{"):
        return json.loads(s)
    if os.path.exists(s):
        with open(s) as fh:
            return json.load(fh)
    name, _, params = s.partition(":")
    args = _parse_csv_ints(params, "space parameters") if params else []
    if name == "point":
        return {"kind": "point"}
    if name == "sphere" and len(args) == 1:
        return {"kind": "sphere", "dim": args[0]}
    if name == "surface" and len(args) == 1:
        return {"kind": "surface", "genus": args[0]}
    if name == "lens" and len(args) == 2:
        return {"kind": "lens", "p": args[0], "q": args[1]}
    if name == "homology_sphere" and len(args) == 1:
        return {"kind": "homology_sphere", "dim": args[0]}
    raise click.UsageError(
        f"cannot parse space {text!r}; use JSON or point|sphere:k|surface:g|lens:p,q|homology_sphere:d"
    )


def _print_table(h: GradedModule):
    click.echo(f"{'degree':>6}  {'rank':>5}  {'torsion':<18}  module")
    for i, m in enumerate(h.degrees):
        torsion = " + ".join(f"Z/{d}" for d in m.torsion) if m.torsion else "-"
        click.echo(f"{i:>6}  {m.rank:>5}  {torsion:<18}  {module_text(m)}")
    click.echo(f"euler characteristic: {euler_characteristic(h)}")


def _emit_plan(report: PlanReport, output: str | None):
    _print_table(report.achieved)
    for note in report.notes:
        click.echo(f"note: {note}")
    click.echo(f"target met: {'yes' if report.target_met else 'NO'}")
    _write_json(output, plan_report_to_json(report))
    if not report.target_met:
        sys.exit(1)


@click.group()
def cli():
    """Exact homology of Reeb spaces under bubbling operations."""


@cli.command("plan-free")
@click.option("--ambient", type=int, required=True, help="Ambient dimension n.")
@click.option("--ranks", required=True, help="Comma-separated ranks r0,...,rn (r0 = 1).")
@click.option("--ring", default="Z", show_default=True, help="Coefficients: Z, Q, or F<p>.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the plan report JSON here.")
@_handled
def plan_free_cmd(ambient, ranks, ring, output):
    """Realize free ranks with normal sphere/point operations."""
    values = _parse_csv_ints(ranks, "--ranks")
    if len(values) != ambient + 1:
        raise click.UsageError(f"--ranks needs {ambient + 1} values for degrees 0..{ambient}")
    report = plan_free_realization(TargetSpec(ambient, tuple(values)), parse_ring(ring))
    _emit_plan(report, output)


@cli.command("plan-euler")
@click.option("--ambient", type=int, required=True, help="Ambient dimension n (>= 3).")
@click.option("--target", type=int, required=True, help="Desired Euler characteristic.")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@_handled
def plan_euler_cmd(ambient, target, output):
    """Hit an arbitrary Euler characteristic with surfaces and points."""
    _emit_plan(plan_euler_target(ambient, target), output)


@cli.command("plan-wedge")
@click.option("--ambient", type=int, required=True)
@click.option("--ranks", required=True, help="Comma-separated ranks r0,...,rn (r0 = 1).")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@_handled
def plan_wedge_cmd(ambient, ranks, output):
    """Realize free ranks with bouquet operations (no top-rank bound)."""
    values = _parse_csv_ints(ranks, "--ranks")
    if len(values) != ambient + 1:
        raise click.UsageError(f"--ranks needs {ambient + 1} values for degrees 0..{ambient}")
    _emit_plan(plan_torsion_free_wedge(TargetSpec(ambient, tuple(values))), output)


@cli.command("plan-torsion")
@click.option("--ambient", type=int, required=True, help="Ambient dimension n (>= 7).")
@click.option("--gs", required=True, help="Comma-separated offsets g_0,...,g_(n-7), each >= -1.")
@click.option("--groups", required=True, help="Semicolon-separated finite groups, e.g. 'Z/3;0;Z/2+Z/4'.")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@_handled
def plan_torsion_cmd(ambient, gs, groups, output):
    """Realize finite torsion via products of 3-manifolds with spheres."""
    offsets = _parse_csv_ints(gs, "--gs")
    parsed = [parse_module_text(tok, INTEGERS) for tok in groups.split(";")]
    _emit_plan(plan_finite_torsion_products(ambient, offsets, parsed), output)


@cli.command("plan-bundle")
@click.option("--ambient", type=int, required=True)
@click.option("--k", type=int, required=True, help="Shift parameter, l + 1 < k < n; base dim = n - k.")
@click.option("--l", type=int, required=True, help="Embedding slack, l >= 0.")
@click.option("--base", required=True, help="Base manifold spec (JSON, file, or compact form).")
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@_handled
def plan_bundle_cmd(ambient, k, l, base, output):
    """One operation on a sphere-bundle total space over the base."""
    s = manifold_from_spec(_parse_space_arg(base))
    _emit_plan(plan_bundle_bubbling(ambient, k, l, s), output)


@cli.command("apply")
@click.argument("script_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the resulting profile JSON here.")
@_handled
def apply_cmd(script_path, output):
    """Run a bubbling script (or a plan report containing one)."""
    obj = _load_json(script_path)
    if isinstance(obj, dict) and "script" in obj and "ops" not in obj:
        obj = obj["script"]
    profile = run_script(script_from_json(obj))
    _print_table(profile.homology)
    _write_json(output, profile_to_json(profile))


@cli.command("verify")
@click.argument("profile_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--structure", "mode", flag_value="structure", default=True,
              help="Check the structural necessary conditions (default).")
@click.option("--torsion-gap", "--thm5", "mode", flag_value="gap",
              help="Check that finite torsion sits within --i0 of free rank.")
@click.option("--i0", type=int, default=1, show_default=True)
@click.option("--direction", type=click.Choice(["below", "above"]), default="below", show_default=True)
@_handled
def verify_cmd(profile_path, mode, i0, direction):
    """Verify a profile against the necessary conditions."""
    profile = profile_from_json(_load_json(profile_path))
    if mode == "gap":
        report = check_torsion_gap(profile, i0, direction)
        for degree, offset in report.witnesses:
            where = f"degree {degree + (offset if direction == 'above' else -offset)}" if offset else "none"
            status = "ok" if offset is not None else "MISSING"
            click.echo(f"finite degree {degree}: free rank witness {where} [{status}]")
        click.echo(f"longest finite run: {report.longest_finite_run}")
        click.echo(f"holds (i0={report.i0}, {report.direction}): {'yes' if report.holds else 'NO'}")
        sys.exit(0 if report.holds else 1)
    report = verify_necessary_conditions(profile)
    for check in report.checks:
        status = "ok" if check.passed else ("skip" if check.passed is None else "FAIL")
        click.echo(f"[{status:>4}] {check.name}: {check.detail}")
    click.echo(f"verification: {'pass' if report.passed else 'FAIL'}")
    sys.exit(0 if report.passed else 1)


@cli.command("catalog")
@click.option("--validate", is_flag=True, help="Cross-check formula homology against the chain oracle.")
@_handled
def catalog_cmd(validate):
    """List the standard catalog grid; optionally oracle-check it."""
    entries = standard_catalog_grid()
    failures = 0
    for entry in entries:
        dim = getattr(entry, "dim", max(s.dim for s in getattr(entry, "summands", ())))
        line = f"{entry.label:<28} dim {dim}  H = {graded_text(entry.homology)}"
        if validate:
            report = validate_catalog_entry(entry)
            line += f"  [{report.status}]"
            if report.status == "fail":
                failures += 1
        click.echo(line)
    if validate:
        click.echo(f"validated {len(entries)} entries, {failures} failure(s)")
        if failures:
            sys.exit(1)


@cli.command("oracle-check")
@click.option("--space", required=True, help="Space spec (JSON, file, or compact form like lens:3,1).")
@_handled
def oracle_check_cmd(space):
    """Compare formula homology with chain-complex homology for one space."""
    entry = generator_from_spec(_parse_space_arg(space))
    report = validate_catalog_entry(entry)
    click.echo(f"formula: {graded_text(entry.homology)}")
    if report.computed is not None:
        click.echo(f"oracle:  {graded_text(report.computed)}")
    click.echo(f"status: {report.status}")
    if report.status == "fail":
        click.echo(f"mismatched degrees: {list(report.mismatched_degrees)}")
        sys.exit(1)


@cli.command("infer-source")
@click.option("--m", "source_dim", type=int, required=True, help="Source manifold dimension (> ambient).")
@click.argument("profile_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@_handled
def infer_source_cmd(source_dim, profile_path, output):
    """Read low-degree source homology off a profile."""
    profile = profile_from_json(_load_json(profile_path))
    inference = infer_source_homology(profile, source_dim)
    for j, m in enumerate(inference.modules):
        click.echo(f"H_{j}(source) = {module_text(m)}")
    click.echo(f"valid range: degrees 0..{inference.max_degree}")
    for a in inference.assumptions:
        click.echo(f"assumes: {a}")
    _write_json(
        output,
        {
            "source_dim": inference.source_dim,
            "max_degree": inference.max_degree,
            "modules": [module_to_json(m) for m in inference.modules],
            "assumptions": list(inference.assumptions),
        },
    )


def main():
    cli(prog_name="reeb-forge")


if __name__ == "__main__":
    main()
