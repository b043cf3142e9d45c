"""Deterministic JSON/CSV/Markdown rendering.

No floating point ever enters a payload: rationals are rendered as
decimal numerator/denominator strings, and identical inputs serialize to
byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence


def fraction_str(q: Fraction) -> str:
    """Exact decimal rendering: '5' for integers, '-7/3' otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def value_dict(q: Fraction) -> dict[str, str]:
    """The {num, den} pair used in value payloads."""
    return {"num": str(q.numerator), "den": str(q.denominator)}


def to_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _cell_str(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_csv(columns: Sequence[str], rows: Sequence[Mapping]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell_str(row[col]) for col in columns))
    return "\n".join(lines) + "\n"


def to_markdown(columns: Sequence[str], rows: Sequence[Mapping]) -> str:
    lines = [
        "| " + " | ".join(columns) + " |",
        "|" + "|".join(" --- " for _ in columns) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_cell_str(row[col]) for col in columns) + " |")
    return "\n".join(lines) + "\n"
