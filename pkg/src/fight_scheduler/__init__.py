"""Fair schedules for Young Physicists' Tournament regional rounds."""
from .model import (
    FairnessCriteria,
    FormatError,
    Instance,
    RoomPlanError,
    Schedule,
    Slot,
    parse_instance,
    parse_schedule,
    render_instance,
    render_schedule,
    room_plan_for,
)
from .order import assign_order_fair
from .simple import find_fine_quadruple, is_special_profile, simple_schedule
from .solver import build_model, solve
from .validate import ValidationReport, validate

__all__ = [
    "FairnessCriteria", "FormatError", "Instance", "RoomPlanError", "Schedule", "Slot",
    "parse_instance", "parse_schedule", "render_instance", "render_schedule", "room_plan_for",
    "assign_order_fair", "find_fine_quadruple", "is_special_profile", "simple_schedule",
    "build_model", "solve", "ValidationReport", "validate",
]
