"""Deterministic report serialization.

All floating-point output is printed with 17 significant digits so values
round-trip exactly and repeated runs produce byte-identical files.  The JSON
writer is hand-rolled for that reason (the stdlib encoder formats floats
with repr); it supports the small vocabulary reports actually use.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

SCHEMA_VERSION = 1


def fmt17(x: float) -> str:
    """A float as 17 significant digits; exact round-trip guaranteed."""
    if not math.isfinite(x):
        raise ValueError(f"reports must not contain non-finite floats, got {x}")
    return format(x, ".17g")


def _encode(obj, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, np.integer):
        obj = int(obj)
    elif isinstance(obj, np.floating):
        obj = float(obj)
    elif isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(_escape(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt17(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            if not isinstance(k, str):
                raise TypeError(f"report keys must be strings, got {k!r}")
            out.append(f"{pad}  {_escape(k)}: ")
            _encode(v, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _encode(v, out, indent + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def _escape(s: str) -> str:
    res = ['"']
    for ch in s:
        if ch == '"':
            res.append('\\"')
        elif ch == "\\":
            res.append("\\\\")
        elif ch == "\n":
            res.append("\\n")
        elif ch == "\t":
            res.append("\\t")
        elif ch == "\r":
            res.append("\\r")
        elif ord(ch) < 0x20:
            res.append(f"\\u{ord(ch):04x}")
        else:
            res.append(ch)
    res.append('"')
    return "".join(res)


def json_dumps(obj) -> str:
    out: list[str] = []
    _encode(obj, out, 0)
    out.append("\n")
    return "".join(out)


def _cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, float):
        return fmt17(value)
    if isinstance(value, int):
        return str(value)
    s = str(value)
    if any(ch in s for ch in ",\"\n"):
        s = '"' + s.replace('"', '""') + '"'
    return s


def csv_dumps(rows: Iterable[dict], fieldnames: list[str]) -> str:
    lines = [",".join(fieldnames)]
    for row in rows:
        lines.append(",".join(_cell(row.get(name)) for name in fieldnames))
    return "\n".join(lines) + "\n"


def write_text(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(content)


def svg_scatter(helix, t_min: float, t_max: float, points, size: int = 480) -> str:
    """SVG scatter of tube points over the xy projection of the helix arc.

    Deterministic output: fixed sampling, fixed formatting.
    """
    import numpy as np

    ts = np.linspace(t_min, t_max, 512)
    hx = helix.a * np.cos(ts)
    hy = helix.a * np.sin(ts)
    px = [pt.point.x for pt in points]
    py = [pt.point.y for pt in points]
    all_x = list(hx) + px
    all_y = list(hy) + py
    lo_x, hi_x = min(all_x), max(all_x)
    lo_y, hi_y = min(all_y), max(all_y)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 0.08 * span

    def sx(x):
        return (x - lo_x + pad) / (span + 2 * pad) * size

    def sy(y):
        return size - (y - lo_y + pad) / (span + 2 * pad) * size

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    path = " ".join(
        f"{'M' if i == 0 else 'L'}{sx(x):.3f},{sy(y):.3f}" for i, (x, y) in enumerate(zip(hx, hy))
    )
    parts.append(f'<path d="{path}" fill="none" stroke="#4477aa" stroke-width="1.2"/>')
    for x, y in zip(px, py):
        parts.append(f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="3.5" fill="#cc3311"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
