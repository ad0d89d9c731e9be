"""Command-line front end.

Every command writes one JSON report to the output directory; data dumps
(projection CSVs, edge lists) go next to it.  Apart from the top-level
``timestamp`` key, identical configurations give byte-identical reports.
The exit status is 0 exactly when every check in the report passed.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable

import yaml

from . import __version__, hplane, projections, quasitree, witness
from .groups import bass_serre as bs
from .groups import gog, words
from .groups.schottky import default_rep

OUT_ENV = "QTLAB_OUT"
PAIRS = 200
QUADRUPLES = 10_000
DEFAULT_RADIUS = {"z2-torus": 1, "seifert-f2xz": 3, "flip-loopless": 4, "flip-with-loop": 3}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    scenario: str = "flip-loopless"
    radius: int | None = None
    k: float | None = None
    spacing: float = 0.25
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.scenario not in witness.SCENARIOS:
            raise ConfigError(f"scenario: unknown scenario {self.scenario!r}")
        for name in ("radius", "k", "spacing"):
            v = getattr(self, name)
            if v is not None and not (isinstance(v, (int, float)) and not isinstance(v, bool) and v > 0):
                raise ConfigError(f"{name}: must be a positive number, got {v!r}")
        if self.radius is not None and int(self.radius) != self.radius:
            raise ConfigError(f"radius: must be an integer, got {self.radius!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            raise ConfigError(f"seed: must be a non-negative integer, got {self.seed!r}")

    @property
    def R(self) -> int:
        return int(self.radius) if self.radius is not None else DEFAULT_RADIUS[self.scenario]

    @property
    def out_dir(self) -> Path:
        return Path(self.out or os.environ.get(OUT_ENV) or "qtlab-out")

    def echo(self) -> dict:
        d = asdict(self)
        d["out"] = str(self.out_dir)
        d["radius"] = self.R
        return d

    @classmethod
    def build(cls, flags: dict, config_path: str | None = None) -> "RunConfig":
        values = {k: v for k, v in flags.items() if v is not None}
        if config_path:
            data = yaml.safe_load(Path(config_path).read_text()) or {}
            if not isinstance(data, dict):
                raise ConfigError("config: top level must be a mapping")
            known = {f.name for f in fields(cls)}
            for key in data:
                if key not in known:
                    raise ConfigError(f"{key}: unknown config key")
            values.update(data)
        return cls(**values)


# --------------------------------------------------------------------------
# projection systems per scenario


def _toy_system() -> projections.ProjectionSystem:
    # the two coordinate axes of R^2, each seeing the other as a point
    return projections.ProjectionSystem(["x", "y"], lambda y, x: hplane.Interval(0.0, 0.0), name="toy")


def systems_for(cfg: RunConfig) -> dict[str, projections.ProjectionSystem]:
    name, R = cfg.scenario, cfg.R
    if name == "z2-torus":
        return {"toy": _toy_system()}
    if name == "seifert-f2xz":
        return {"axes": projections.axes_family(default_rep(), [words.parse("a"), words.parse("b")], R)}
    if name == "flip-loopless":
        graph, _ = gog.flip_preset()
        fam = projections.CKLineFamily(graph, bs.bass_serre_ball(graph, R))
        return {"L1": projections.ck_system(fam, "class", bs.V1), "L2": projections.ck_system(fam, "class", bs.V2)}
    graph, _ = gog.flip_preset({"loop": True})
    fam = projections.CKLineFamily(graph, bs.bass_serre_ball(graph, R))
    return {
        "Q1": projections.ck_system(fam, "class-label", bs.V1, graph.base),
        "Q2": projections.ck_system(fam, "class-label", bs.V2, graph.base),
        "W_omega": projections.ck_system(fam, "label", label="omega"),
    }


def _ceil4(xi: float) -> int:
    return math.ceil(4 * xi)


# --------------------------------------------------------------------------
# commands


def cmd_check_axioms(cfg: RunConfig) -> dict:
    out = {}
    for key, system in systems_for(cfg).items():
        xi = system.estimate_xi()
        rep = system.verify_axioms(xi)
        system.dump_csv(cfg.out_dir / f"projections-{cfg.scenario}-{key}.csv")
        out[key] = {"members": system.n, **rep.as_dict(), "pass": rep.ok}
    return {"systems": out, "pass": all(v["pass"] for v in out.values())}


def cmd_quasitree(cfg: RunConfig) -> dict:
    key, system = next(iter(systems_for(cfg).items()))
    xi = system.estimate_xi()
    if cfg.k is not None:
        Ks = [cfg.k]
    else:
        # the doubled value is skipped when it does not clear 4 xi (xi = 0)
        Ks = sorted({K for K in (quasitree.default_K(xi), 2 * _ceil4(xi)) if K > 4 * xi})
    runs = []
    for K in Ks:
        g = quasitree.build_quasi_tree(system, K, cfg.spacing)
        checks = quasitree.check_pairs(g, quasitree.random_pairs(g, PAIRS, cfg.seed))
        delta = quasitree.delta_four_point(g, QUADRUPLES, cfg.seed) if g.is_connected() else math.inf
        path = cfg.out_dir / f"edges-{cfg.scenario}-{key}-K{K:g}.txt"
        quasitree.write_edge_list(g, path)
        worst = max(checks, key=lambda c: c.lhs / c.rhs)
        runs.append({
            "K": K,
            "vertices": g.num_vertices,
            "edges": len(g.edges),
            "bridges": len(g.bridges),
            "connected": g.is_connected(),
            "pairs": len(checks),
            "pairs_passed": sum(c.passed for c in checks),
            "worst_ratio": worst.lhs / worst.rhs,
            "delta": delta,
            "edge_list": path.name,
            "pass": all(c.passed for c in checks) and math.isfinite(delta),
        })
    return {"system": key, "members": system.n, "xi": xi, "runs": runs, "pass": all(r["pass"] for r in runs)}


def cmd_witness(cfg: RunConfig) -> dict:
    sc = witness.scenario(cfg.scenario, radius=cfg.radius, K=cfg.k, h=cfg.spacing)
    th = witness.thresholds_for([sc.X, sc.Y])
    rep = sc.witness(th)
    out: dict[str, Any] = {"thresholds": th.as_dict(), "witness": rep.as_dict()}
    checks = [rep.verdict == "witness"]
    if cfg.scenario == "flip-loopless":
        out["wwpd_evidence"] = {
            "a_on_X": witness.projection_recurrence(sc.X, sc.a),
            "b_on_Y": witness.projection_recurrence(sc.Y, sc.b),
        }
        imp = witness.lemma_important_check(default_rep())
        out["lemma_important"] = imp.as_dict()
        checks.append(imp.passed)
    if cfg.scenario == "flip-with-loop":
        inp = witness.lemma_inproof_check(K=cfg.k, seed=cfg.seed, h=cfg.spacing)
        out["lemma_inproof"] = inp.as_dict()
        checks.append(inp.passed)
    out["pass"] = all(checks)
    return out


COMMANDS: dict[str, Callable[[RunConfig], dict]] = {
    "check-axioms": cmd_check_axioms,
    "quasitree": cmd_quasitree,
    "witness": cmd_witness,
}


def cmd_all(cfg: RunConfig) -> dict:
    out = {name: fn(cfg) for name, fn in COMMANDS.items()}
    out["pass"] = all(v["pass"] for v in out.values())
    return out


def run(command: str, cfg: RunConfig) -> dict:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    fn = cmd_all if command == "all" else COMMANDS[command]
    body = fn(cfg)
    return {
        "version": __version__,
        "command": command,
        "config": cfg.echo(),
        "result": body,
        "pass": bool(body["pass"]),
    }


def write_report(report: dict, path: Path, timestamp: str | None = None) -> None:
    doc = {"timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(), **report}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(x):
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (set, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtlab", description="Quasi-trees of lines and inaccessibility witnesses.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check-axioms", "quasitree", "witness", "all"):
        s = sub.add_parser(name)
        s.add_argument("--scenario", choices=witness.SCENARIOS)
        s.add_argument("--radius", type=int)
        s.add_argument("--k", type=float)
        s.add_argument("--spacing", type=float)
        s.add_argument("--seed", type=int)
        s.add_argument("--out")
        s.add_argument("--config", help="YAML file whose keys override the flags")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: getattr(args, k) for k in ("scenario", "radius", "k", "spacing", "seed", "out")}
    try:
        cfg = RunConfig.build(flags, args.config)
    except (ConfigError, TypeError, OSError, yaml.YAMLError) as exc:
        print(f"qtlab: config error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(args.command, cfg)
    except quasitree.KTooSmall as exc:
        print(f"qtlab: K = {exc.K:g} is too small; it must exceed {exc.what} = {exc.bound:g}", file=sys.stderr)
        return 2
    path = cfg.out_dir / f"report-{args.command}-{cfg.scenario}.json"
    write_report(report, path)
    status = "pass" if report["pass"] else "FAIL"
    print(f"{args.command} {cfg.scenario}: {status} ({path})")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
