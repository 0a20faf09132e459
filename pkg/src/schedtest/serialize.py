"""JSON forms of instances, families, games and schedules."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .adversary import rebuild_game
from .core import AdaptiveGame, FixedInstance, Job, RandomizedFamily, Schedule


def instance_to_dict(inst: FixedInstance) -> dict:
    return {"m": inst.m, "jobs": [{"u": j.u, "t": j.t, "p": j.p} for j in inst.jobs]}


def instance_from_dict(data: dict) -> FixedInstance:
    jobs = tuple(Job(float(j["u"]), float(j["t"]), float(j.get("p", 0.0))) for j in data["jobs"])
    return FixedInstance(int(data["m"]), jobs)


def game_to_dict(game: AdaptiveGame) -> dict:
    out: dict[str, Any] = {"m": game.m, "n": game.n, "rule": game.rule, "params": game.params}
    if game.static:
        out["observed"] = [list(obs) for obs in game.observed]
    return out


def game_from_dict(data: dict) -> AdaptiveGame:
    return rebuild_game(data["rule"], data.get("params", {}))


def family_to_dict(family: RandomizedFamily) -> dict:
    members = []
    for member, prob in family.members:
        if isinstance(member, FixedInstance):
            members.append({"instance": instance_to_dict(member), "prob": prob})
        else:
            members.append({"game": game_to_dict(member), "prob": prob})
    return {"members": members}


def family_from_dict(data: dict) -> RandomizedFamily:
    members = []
    for entry in data["members"]:
        if "instance" in entry:
            members.append((instance_from_dict(entry["instance"]), entry["prob"]))
        else:
            members.append((game_from_dict(entry["game"]), entry["prob"]))
    return RandomizedFamily(tuple(members))


def to_dict(obj) -> dict:
    if isinstance(obj, FixedInstance):
        return instance_to_dict(obj)
    if isinstance(obj, AdaptiveGame):
        return game_to_dict(obj)
    if isinstance(obj, RandomizedFamily):
        return family_to_dict(obj)
    if isinstance(obj, Schedule):
        return schedule_to_dict(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_dict(data: dict):
    """Dispatch on shape: family, game or fixed instance."""
    if "members" in data:
        return family_from_dict(data)
    if "rule" in data:
        return game_from_dict(data)
    return instance_from_dict(data)


def schedule_to_dict(sched: Schedule) -> dict:
    return {
        "placements": [{"machine": pl.machine, "tested": pl.tested} for pl in sched.placements],
        "makespan": sched.makespan,
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def load(path: str | Path):
    return from_dict(json.loads(Path(path).read_text()))


def save(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(to_dict(obj)) + "\n")
