"""MATLAB script emission for external verification of tensor values.

``emit_tensor`` renders a tensor (or view) as one executable MATLAB
assignment.  The literal is built by reading elements per multi-index, so
tensors holding equal values emit identical text no matter their layout or
offsets (MATLAB has neither, so offsets are dropped).  Order 1 becomes a
column vector, order 2 a row-per-first-index matrix literal, and higher
orders nest via ``cat(p, ...)`` over the last index, which makes
``name(i1, .., ip)`` in MATLAB equal the zero-based element
``(i1-1, .., ip-1)`` here.

Statements are emitted one per line (no ``...`` continuations); integral
values print without a decimal point, all others with the shortest decimal
that round-trips.
"""

from __future__ import annotations

from typing import List

__all__ = ["MatlabScript", "emit_tensor", "format_value", "write_script"]


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return repr(v)


def emit_tensor(t, name: str) -> str:
    """Single MATLAB statement assigning ``t``'s values to ``name``."""
    o = t.offsets
    p = t.order

    def read(zero_idx) -> str:
        return format_value(t[tuple(i + b for i, b in zip(zero_idx, o))])

    def literal(dims: int, suffix) -> str:
        if dims == 1:
            vals = [read((i,) + suffix) for i in range(t.shape[0])]
            return "[ " + " ; ".join(vals) + " ]"
        if dims == 2:
            rows = []
            for i in range(t.shape[0]):
                rows.append(
                    " ".join(read((i, k) + suffix) for k in range(t.shape[1]))
                )
            return "[ " + " ; ".join(rows) + " ]"
        slices = [
            literal(dims - 1, (k,) + suffix) for k in range(t.shape[dims - 1])
        ]
        return f"cat({dims}, " + ", ".join(slices) + ")"

    return f"{name} = {literal(p, ())};"


class MatlabScript:
    """Ordered collection of MATLAB statements, buildable line by line."""

    def __init__(self):
        self.lines: List[str] = []

    def add_tensor(self, t, name: str) -> str:
        """Append (and return) the assignment statement for ``t``."""
        line = emit_tensor(t, name)
        self.lines.append(line)
        return line

    def add_command(self, text: str) -> None:
        """Append a raw MATLAB command verbatim."""
        self.lines.append(text)

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)

    def write(self, path) -> None:
        write_script(self, path)


def write_script(script: MatlabScript, path) -> None:
    """Write all lines, newline-terminated, ASCII-encoded."""
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(script.text())
    except OSError as exc:
        raise OSError(f"cannot write MATLAB script to {path}: {exc}") from exc
