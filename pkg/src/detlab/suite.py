"""Suite configs and JSON reports.

A config is a JSON document::

    {"name": "...", "budget": 50000000, "jobs": 1,
     "checks": [{"id": "conjecture1",
                 "grid": {"n": "1..6", "m": [1, 2, 3]},
                 "where": ["b<=a"],
                 "params": {"x": 2}}]}

Grid values are lists or inclusive ``"lo..hi"`` ranges; the grid is the
cartesian product in the order the keys are written.  ``params`` are fixed
for every instance.  ``where`` filters grid points with simple comparisons.
"""

import json
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import product

from . import __version__
from .algebra import as_scalar
from .checks import get_check, run_check, validate_params
from .errors import ConfigError
from .report import FAIL, PASS, STATUSES, to_jsonable

BUNDLED = {"paper-full": "paper-full.json", "smoke": "smoke.json"}

_CMP = re.compile(r"^\s*([A-Za-z_]\w*|-?\d+)\s*(<=|>=|==|!=|<|>)\s*([A-Za-z_]\w*|-?\d+)\s*$")
_OPS = {"<=": int.__le__, ">=": int.__ge__, "==": int.__eq__, "!=": int.__ne__,
        "<": int.__lt__, ">": int.__gt__}


def parse_value(v):
    """Integers stay integers; ``"p/q"`` text becomes an exact scalar."""
    if isinstance(v, bool):
        raise ConfigError(f"boolean {v!r} is not a number")
    if isinstance(v, (int,)) or not isinstance(v, str):
        return v
    try:
        return as_scalar(v)
    except (ValueError, ZeroDivisionError):
        return v


def expand_values(spec, location):
    if isinstance(spec, str) and ".." in spec:
        lo, hi = spec.split("..", 1)
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise ConfigError(f"bad range {spec!r}", location=location) from None
        values = list(range(lo, hi + 1))
    elif isinstance(spec, list):
        values = [parse_value(v) for v in spec]
    else:
        values = [parse_value(spec)]
    if not values:
        raise ConfigError(f"empty grid for {location}", location=location)
    return values


def compile_where(text, location):
    m = _CMP.match(text)
    if not m:
        raise ConfigError(f"cannot parse constraint {text!r}", location=location)
    lhs, op, rhs = m.groups()

    def pred(point):
        val = lambda t: int(t) if re.match(r"^-?\d+$", t) else point[t]
        try:
            return _OPS[op](val(lhs), val(rhs))
        except KeyError as exc:
            raise ConfigError(f"constraint {text!r} names unknown parameter {exc}", location=location)
    return pred


@dataclass
class CheckSpec:
    id: str
    grid: dict
    params: dict = field(default_factory=dict)
    where: list = field(default_factory=list)

    def instances(self, location):
        keys = list(self.grid)
        axes = [expand_values(self.grid[k], f"{location}.grid.{k}") for k in keys]
        preds = [compile_where(w, f"{location}.where") for w in self.where]
        out = []
        for values in product(*axes):
            point = {**self.params, **dict(zip(keys, values))}
            if all(p(point) for p in preds):
                out.append(point)
        if not out:
            raise ConfigError(f"grid for {self.id} is empty after constraints", location=location)
        return out


@dataclass
class SuiteConfig:
    name: str
    checks: list
    budget: int | None = None
    jobs: int = 1
    source: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object", location="$")
        unknown = set(data) - {"name", "checks", "budget", "jobs", "description"}
        if unknown:
            raise ConfigError(f"unknown config fields {sorted(unknown)}", location="$")
        raw = data.get("checks")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("config needs a non-empty 'checks' list", location="$.checks")
        checks = []
        for k, entry in enumerate(raw):
            loc = f"$.checks[{k}]"
            if not isinstance(entry, dict) or "id" not in entry:
                raise ConfigError("check entries need an 'id'", location=loc)
            extra = set(entry) - {"id", "grid", "params", "where"}
            if extra:
                raise ConfigError(f"unknown fields {sorted(extra)}", location=loc)
            try:
                get_check(entry["id"])
            except ConfigError:
                raise ConfigError(f"unknown check id {entry['id']!r}", location=loc) from None
            grid = entry.get("grid", {})
            if not isinstance(grid, dict):
                raise ConfigError("'grid' must be an object", location=loc)
            where = entry.get("where", [])
            where = [where] if isinstance(where, str) else list(where)
            params = {k2: parse_value(v) for k2, v in entry.get("params", {}).items()}
            checks.append(CheckSpec(entry["id"], grid, params, where))
        jobs = data.get("jobs", 1)
        if not isinstance(jobs, int) or jobs < 1:
            raise ConfigError("'jobs' must be a positive integer", location="$.jobs")
        budget = data.get("budget")
        if budget is not None and (not isinstance(budget, int) or budget < 1):
            raise ConfigError("'budget' must be a positive integer", location="$.budget")
        cfg = cls(data.get("name", "unnamed"), checks, budget, jobs, data)
        cfg.tasks()  # surface grid errors now
        return cfg

    def tasks(self):
        out = []
        for k, spec in enumerate(self.checks):
            loc = f"$.checks[{k}]"
            check = get_check(spec.id)
            for point in spec.instances(loc):
                try:
                    validate_params(check, point)
                except ConfigError as exc:
                    raise ConfigError(str(exc), location=loc) from None
                out.append((spec.id, point))
        return out


def load_config(path_or_name):
    """A config from a JSON file path, or a bundled suite by name."""
    if path_or_name in BUNDLED:
        text = resources.files("detlab").joinpath("suites", BUNDLED[path_or_name]).read_text()
    else:
        try:
            with open(path_or_name) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}", location=str(path_or_name)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}", location=f"line {exc.lineno}") from None
    return SuiteConfig.from_dict(data)


def effective_budget(config_budget=None):
    env = os.environ.get("DETLAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"DETLAB_BUDGET={env!r} is not an integer", location="DETLAB_BUDGET")
    return config_budget


def _run_task(task):
    check_id, params, budget = task
    t0 = time.perf_counter()
    result = run_check(check_id, params, budget)
    elapsed = time.perf_counter() - t0
    record = {"id": check_id, "parameters": to_jsonable(params), "status": result.status}
    if result.code and result.status != PASS:
        record["code"] = result.code
    if result.status != PASS and result.witness is not None:
        record["witness"] = to_jsonable(result.witness)
    record["timing"] = {"seconds": round(elapsed, 6)}
    return record


def run_tasks(tasks, budget=None, jobs=1, progress=None):
    work = [(cid, params, budget) for cid, params in tasks]
    if jobs <= 1 or len(work) <= 1:
        records = []
        for t in work:
            records.append(_run_task(t))
            if progress:
                progress(records[-1])
        return records
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        records = []
        for rec in pool.map(_run_task, work, chunksize=max(1, len(work) // (jobs * 8))):
            records.append(rec)
            if progress:
                progress(rec)
        return records


def build_report(records, config_echo, wall):
    counts = {s: 0 for s in STATUSES}
    by_check = {}
    for r in records:
        counts[r["status"]] += 1
        per = by_check.setdefault(r["id"], {s: 0 for s in STATUSES})
        per[r["status"]] += 1
    return {
        "tool": "detlab",
        "version": __version__,
        "config": config_echo,
        "records": records,
        "counts": counts,
        "by_check": by_check,
        "passed": counts[FAIL] == 0,
        "timing": {"wall_seconds": round(wall, 3)},
    }


def run_suite(config, jobs=None, progress=None):
    """Run every instance of ``config``; returns ``(report, exit_status)``."""
    if not isinstance(config, SuiteConfig):
        config = load_config(config) if isinstance(config, str) else SuiteConfig.from_dict(config)
    t0 = time.perf_counter()
    budget = effective_budget(config.budget)
    records = run_tasks(config.tasks(), budget, jobs or config.jobs, progress)
    report = build_report(records, config.source, time.perf_counter() - t0)
    return report, 0 if report["passed"] else 1


def strip_timing(report):
    """Report content with every timing field removed (for determinism checks)."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k != "timing"}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report


def write_report(report, out=None):
    text = json.dumps(report, indent=2, sort_keys=False)
    if out in (None, "-"):
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")
