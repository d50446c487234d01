"""Bundled instances and schedules from the 2018 Bratislava regional round."""
from __future__ import annotations

from importlib import resources

from .model import Instance, Schedule, parse_instance, parse_schedule

NAMES = ("ba2018", "ba2018_used", "ba2018_fair", "ba2018_order_fair", "special_profile")


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("fight_scheduler").joinpath("data", f"{name}.txt").read_text(encoding="utf-8")


def fixture_path(name: str):
    fixture_text(name)
    return resources.files("fight_scheduler").joinpath("data", f"{name}.txt")


def ba2018() -> Instance:
    return parse_instance(fixture_text("ba2018"))


def ba2018_schedule(which: str) -> Schedule:
    """``which`` is "used" (the schedule actually used), "fair" or "order_fair"."""
    return parse_schedule(fixture_text(f"ba2018_{which}"))


def special_profile() -> Instance:
    return parse_instance(fixture_text("special_profile"))
