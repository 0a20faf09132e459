"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import click

from . import serialize
from .adversary import GENERATORS
from .checks import CHECKS, sweep as sweep_table
from .core import FixedInstance, RandomizedFamily
from .offline import DEFAULT_OPT_CAP, InstanceTooLarge, optimal_makespan
from .policies import revised_two_machine_params, thresholds
from .scheduler import component_schedule, gcl_expected_makespan
from .verifier import DEFAULT_ENUM_CAP, lemma1_expected_ratio

CHECK_ORDER = ("thm4", "thm5-tight", "inst1", "inst2", "thm2", "thm3", "thm6",
               "lemma1", "lemma6", "lemma7", "bounds")


@dataclass
class RunConfig:
    fmt: str = "json"
    seed: int = 0
    cap_opt: int = DEFAULT_OPT_CAP
    cap_enum: int = DEFAULT_ENUM_CAP


def _fmt_num(value) -> str:
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _emit(rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(rows, indent=2, sort_keys=True, default=_json_default))
        return
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt_num(row[k]) for k in fields})
    click.echo(buf.getvalue(), nl=False)


def _json_default(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return serialize.to_dict(obj)


def _parse_values(text: str | None, allow_inf: bool = False) -> list:
    """'3', '3..6' or '2,3,inf'."""
    if not text:
        return []
    out: list = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif allow_inf and part.lower() in ("inf", "infinity", "oo"):
            out.append(math.inf)
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise click.BadParameter(f"not an integer: {part!r}") from None
    return out


def _load(path: str):
    try:
        return serialize.load(path)
    except (OSError, KeyError, ValueError) as exc:
        raise click.UsageError(f"cannot read instance {path}: {exc}") from exc


def _fixed(obj) -> FixedInstance:
    if isinstance(obj, FixedInstance):
        return obj
    if isinstance(obj, RandomizedFamily):
        raise click.UsageError("expected a single instance, got a randomized family")
    return obj  # adaptive games are accepted where list scheduling can play them


def _override(attr: str):
    def callback(ctx: click.Context, param, value):
        if value is not None:
            cfg = ctx.find_object(RunConfig)
            if cfg is None:
                cfg = ctx.ensure_object(RunConfig)
            setattr(cfg, attr, value)
        return value

    return callback


def common_options(func):
    """Shared flags, accepted both before and after the subcommand name."""
    options = [
        click.option("--format", type=click.Choice(["json", "csv"]), default=None,
                     expose_value=False, callback=_override("fmt"), help="Output format [json]."),
        click.option("--seed", type=int, default=None, expose_value=False,
                     callback=_override("seed"), help="Seed for random corpora [0]."),
        click.option("--cap-opt", type=int, default=None, expose_value=False,
                     callback=_override("cap_opt"),
                     help=f"Max jobs for the exact offline solver [{DEFAULT_OPT_CAP}]."),
        click.option("--cap-enum", type=int, default=None, expose_value=False,
                     callback=_override("cap_enum"),
                     help=f"Max jobs for strategy enumeration [{DEFAULT_ENUM_CAP}]."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@common_options
@click.pass_context
def main(ctx):
    """Online scheduling with testing: GCL, offline optima and bound verifiers."""
    ctx.ensure_object(RunConfig)


@main.command()
@common_options
@click.option("--instance", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", default="gcl", show_default=True, help="component:i | gcl | revised")
@click.option("--ell", type=int, default=1, show_default=True)
@click.pass_obj
def run(cfg: RunConfig, path, algo, ell):
    """Schedule an instance online and report the makespan."""
    inst = _fixed(_load(path))
    if algo == "revised":
        if inst.m != 2:
            raise click.UsageError("the revised algorithm is for two machines")
        params = revised_two_machine_params()
    else:
        try:
            params = thresholds(inst.m, ell)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    if algo.startswith("component:"):
        try:
            i = int(algo.split(":", 1)[1])
            sched = component_schedule(inst, i, params)
        except (ValueError, IndexError) as exc:
            raise click.UsageError(f"bad component selector {algo!r}: {exc}") from exc
        out = serialize.schedule_to_dict(sched)
    elif algo in ("gcl", "revised"):
        comps = []
        for i, (weight, x, y) in enumerate(params.components()):
            sched = component_schedule(inst, i, params)
            comps.append({"component": i, "weight": weight, "x": x, "y": y,
                          **serialize.schedule_to_dict(sched)})
        out = {"algo": algo, "params": params.to_dict(), "components": comps,
               "expected_makespan": gcl_expected_makespan(inst, params)}
    else:
        raise click.UsageError(f"unknown algorithm {algo!r}")
    if cfg.fmt == "csv":
        rows = out.get("components") or [out]
        _emit([{k: v for k, v in row.items() if k != "placements"} for row in rows], "csv")
    else:
        click.echo(serialize.dumps(out))


@main.command()
@common_options
@click.option("--instance", "path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def opt(cfg: RunConfig, path):
    """Exact offline optimum and the simple lower bound."""
    inst = _load(path)
    if not isinstance(inst, FixedInstance):
        raise click.UsageError("opt needs a fixed instance")
    try:
        res = optimal_makespan(inst, cfg.cap_opt)
    except InstanceTooLarge as exc:
        raise click.UsageError(str(exc)) from exc
    if cfg.fmt == "csv":
        _emit([{"opt": res.opt, "lb": res.lb,
                "assignment": " ".join(map(str, res.assignment))}], "csv")
    else:
        click.echo(serialize.dumps(res.to_dict()))


@main.command()
@common_options
@click.option("--family", required=True, type=click.Choice(sorted(GENERATORS)))
@click.option("--m", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--big-u", type=float, default=None, help="Upper bound of the forced-test jobs.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def gen(cfg: RunConfig, family, m, k, big_u, out):
    """Write one of the lower-bound or tightness constructions as JSON."""
    try:
        obj = GENERATORS[family](m=m, k=k, big_u=big_u)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    text = serialize.dumps(serialize.to_dict(obj))
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


@main.command()
@common_options
@click.argument("check", required=False, type=click.Choice(CHECK_ORDER))
@click.option("--only", multiple=True, type=click.Choice(CHECK_ORDER), help="Run just these checks.")
@click.option("--m", "m_text", default=None, help="Machine counts, e.g. 3 or 3..6.")
@click.option("--k", "k_text", default=None, help="Sizes k of the many-machine family, e.g. 2..6.")
@click.option("--grid", is_flag=True, help="Full grid for 'bounds' (the default).")
@click.option("--size", type=int, default=1000, show_default=True,
              help="Random instances per grid point for 'bounds'.")
@click.pass_obj
def verify(cfg: RunConfig, check, only, m_text, k_text, grid, size):
    """Run verification checks; exit 1 if any fails."""
    names = [check] if check else (list(only) if only else list(CHECK_ORDER))
    kwargs = {"m_values": _parse_values(m_text), "k_values": _parse_values(k_text),
              "seed": cfg.seed, "size": size, "cap_enum": cfg.cap_enum}
    reports = []
    summary = []
    for name in names:
        start = time.perf_counter()
        try:
            batch = CHECKS[name](**kwargs)
        except ValueError as exc:
            raise click.UsageError(f"{name}: {exc}") from exc
        elapsed = time.perf_counter() - start
        reports.extend(batch)
        failed = [r.name for r in batch if not r.passed]
        summary.append((name, len(batch), failed, elapsed))
    rows = [r.to_dict() for r in reports]
    if cfg.fmt == "csv":
        _emit([{k: row[k] for k in ("name", "kind", "claimed", "computed", "margin",
                                     "tolerance", "status")} for row in rows], "csv")
    else:
        click.echo(json.dumps(rows, indent=2, sort_keys=True, default=_json_default))
    for name, count, failed, elapsed in summary:
        status = "PASS" if not failed else "FAIL " + ",".join(failed)
        click.echo(f"{name:<12} {count:>4} report(s)  {status}", err=True)
    if any(not r.passed for r in reports):
        sys.exit(1)


@main.command()
@common_options
@click.option("--m", "m_text", default="2,3,4,8,inf", show_default=True)
@click.option("--ell", "ell_text", default="1,2,4,inf", show_default=True)
@click.pass_obj
def sweep(cfg: RunConfig, m_text, ell_text):
    """Table of mixture weights, last thresholds and the GCL bound."""
    try:
        rows = sweep_table(_parse_values(m_text, True), _parse_values(ell_text, True))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    for row in rows:
        for key in ("m", "ell"):
            if row[key] == math.inf:
                row[key] = "inf"
    _emit(rows, cfg.fmt)


@main.command()
@common_options
@click.option("--k", "k_text", default="2..5", show_default=True)
@click.pass_obj
def lemma1(cfg: RunConfig, k_text):
    """Expected ratio of the single-machine testing probability on k(k-1)+1 machines."""
    rows = []
    for k in _parse_values(k_text):
        try:
            res = lemma1_expected_ratio(k, closed_form_fallback=True)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        rows.append({"k": k, "machines": k * (k - 1) + 1, "exact": res.exact,
                     "closed_form": res.closed_form})
    _emit(rows, cfg.fmt)


if __name__ == "__main__":
    main()
