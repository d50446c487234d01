"""LP-file export of a ConstraintModel, and a reader for the emitted subset.

Row names use ``_`` for ``-`` and parentheses for brackets
(``feas_2(1,3)`` for ``feas-2[1,3]``) because the LP naming rules do not
allow ``-`` or ``[``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .model import ConstraintModel

_LINE = 78


def lp_row_name(tag: str, index) -> str:
    return f"{tag.replace('-', '_')}({','.join(map(str, index))})"


def _wrap(head: str, pieces: list[str]) -> list[str]:
    lines, cur = [], head
    for piece in pieces:
        if len(cur) + 1 + len(piece) > _LINE and cur.strip():
            lines.append(cur)
            cur = "   " + piece
        else:
            cur = f"{cur} {piece}" if cur else piece
    lines.append(cur)
    return lines


def export_lp(model: ConstraintModel) -> str:
    inst, crit = model.instance, model.criteria
    names = model.var_names
    out = [
        f"\\ fight schedule model: {inst.n} teams, rooms {','.join(map(str, inst.room_plan))}, "
        f"fairness={crit.fairness}, non_cooperative={crit.non_cooperative}",
        "Minimize",
        " obj: 0",
        "Subject To",
    ]
    for c in model.constraints:
        pieces = []
        for v, a in c.terms:
            sign = "+" if a > 0 else "-"
            mag = abs(a)
            term = names[v] if mag == 1 else f"{mag} {names[v]}"
            pieces.append(f"{sign} {term}")
        if pieces and pieces[0].startswith("+ "):
            pieces[0] = pieces[0][2:]
        op = {"=": "=", "<=": "<=", ">=": ">="}[c.sense]
        pieces.append(f"{op} {c.rhs}")
        out += _wrap(f" {lp_row_name(c.tag, c.index)}:", pieces)
    generals = names[model.num_x:]
    if generals:
        out.append("Bounds")
        out += [f" 0 <= {g} <= 1" for g in generals]
    out.append("Binary")
    out += _wrap("", list(names[:model.num_x]))
    if generals:
        out.append("General")
        out += _wrap("", list(generals))
    out.append("End")
    return "\n".join(out) + "\n"


class LPSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class LPFile:
    sense: str
    rows: tuple[tuple[str, tuple[tuple[str, int], ...], str, int], ...]
    bounds: dict
    binaries: tuple[str, ...]
    generals: tuple[str, ...]


_SECTIONS = {
    "minimize": "obj", "maximize": "obj", "subject to": "rows", "st": "rows", "s.t.": "rows",
    "bounds": "bounds", "binary": "binary", "binaries": "binary", "general": "general",
    "generals": "general", "end": "end",
}
_NAME = r"[A-Za-z_][A-Za-z0-9_!\"#$%&()/,.;?@`'{}|~]*"
_TERM = re.compile(rf"([+-])?\s*(\d+)?\s*({_NAME})")


def _parse_expr(expr: str) -> list[tuple[str, int]]:
    terms = []
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m:
            raise LPSyntaxError(f"bad term near {expr[pos:pos + 20]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        terms.append((m.group(3), sign * coef))
        pos = m.end()
        while pos < len(expr) and expr[pos] == " ":
            pos += 1
    return terms


def read_lp(text: str) -> LPFile:
    """Parse the LP subset written by :func:`export_lp` (grammar in docs/formats.md)."""
    section = None
    sense = None
    statements: dict[str, list[str]] = {"obj": [], "rows": [], "bounds": [], "binary": [], "general": []}
    buf: list[str] = []
    ended = False
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].rstrip()
        if not line.strip():
            continue
        key = line.strip().lower()
        if key in _SECTIONS and not raw.startswith(" "):
            if buf:
                statements[section].append(" ".join(buf))
                buf = []
            section = _SECTIONS[key]
            if key in ("minimize", "maximize"):
                sense = key
            if section == "end":
                ended = True
                break
            continue
        if section is None:
            raise LPSyntaxError(f"content before first section: {line!r}")
        if section in ("rows", "obj") and re.match(rf"^ ({_NAME}):", line):
            if buf:
                statements[section].append(" ".join(buf))
            buf = [line.strip()]
        elif section in ("rows", "obj"):
            if not buf:
                raise LPSyntaxError(f"continuation without a statement: {line!r}")
            buf.append(line.strip())
        else:
            statements[section].append(line.strip())
    if not ended:
        raise LPSyntaxError("missing End")
    if sense is None:
        raise LPSyntaxError("missing objective section")

    rows = []
    seen = set()
    for stmt in statements["rows"]:
        m = re.match(rf"^({_NAME}):\s*(.*?)\s*(<=|>=|=)\s*(-?\d+)$", stmt)
        if not m:
            raise LPSyntaxError(f"bad constraint {stmt[:60]!r}")
        name = m.group(1)
        if name in seen:
            raise LPSyntaxError(f"duplicate row name {name}")
        seen.add(name)
        rows.append((name, tuple(_parse_expr(m.group(2))), m.group(3), int(m.group(4))))
    bounds = {}
    for stmt in statements["bounds"]:
        m = re.match(rf"^(-?\d+)\s*<=\s*({_NAME})\s*<=\s*(-?\d+)$", stmt)
        if not m:
            raise LPSyntaxError(f"bad bound {stmt!r}")
        bounds[m.group(2)] = (int(m.group(1)), int(m.group(3)))
    binaries = tuple(v for stmt in statements["binary"] for v in stmt.split())
    generals = tuple(v for stmt in statements["general"] for v in stmt.split())
    declared = set(binaries) | set(generals)
    for name, terms, _, _ in rows:
        for var, _ in terms:
            if var not in declared:
                raise LPSyntaxError(f"row {name} uses undeclared variable {var}")
    return LPFile(sense, tuple(rows), bounds, binaries, generals)
