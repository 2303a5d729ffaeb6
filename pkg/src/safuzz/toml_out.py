"""Minimal TOML emitter for the subset this project writes
(scalars, strings, homogeneous lists, nested tables). Output is readable
by tomllib/tomli."""

from __future__ import annotations


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace("\"", "\\\"")
        escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{escaped}"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__} to TOML")


def _emit_table(d: dict, prefix: str, lines: list[str]) -> None:
    scalars = {k: v for k, v in d.items() if not isinstance(v, dict)}
    tables = {k: v for k, v in d.items() if isinstance(v, dict)}
    if prefix and (scalars or not tables):
        lines.append(f"[{prefix}]")
    for k, v in scalars.items():
        lines.append(f"{k} = {_format_value(v)}")
    for k, v in tables.items():
        if lines and lines[-1] != "":
            lines.append("")
        key = f"{prefix}.{k}" if prefix else k
        _emit_table(v, key, lines)


def dumps(data: dict) -> str:
    lines: list[str] = []
    _emit_table(data, "", lines)
    return "\n".join(lines) + "\n"
