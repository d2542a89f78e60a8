"""Shared test helpers: random instance builders and a minimal MATLAB
literal grammar used to validate emitted scripts."""

from __future__ import annotations

import itertools
import random
from typing import List, Tuple

from tensorlib import DenseTensor, Range, TensorView, zero_indices


def rand_layout(rng: random.Random, p: int) -> Tuple[int, ...]:
    perm = list(range(1, p + 1))
    rng.shuffle(perm)
    return tuple(perm)


def rand_offsets(rng: random.Random, p: int) -> Tuple[int, ...]:
    return tuple(rng.randint(-2, 2) for _ in range(p))


def rand_shape(rng: random.Random, max_order=4, max_extent=5, min_order=1):
    p = rng.randint(min_order, max_order)
    return tuple(rng.randint(1, max_extent) for _ in range(p))


def rand_dense(rng: random.Random, shape, kind="int64") -> DenseTensor:
    p = len(shape)
    t = DenseTensor(shape, rand_offsets(rng, p), rand_layout(rng, p))
    if kind == "int64":
        t.data = [rng.randint(-9, 9) for _ in range(t.size)]
    else:
        t.data = [rng.uniform(0.5, 2.0) for _ in range(t.size)]
    return t


def rand_operand(rng: random.Random, shape, kind="int64"):
    """Tensor of ``shape`` or a stepped view of that shape into a larger
    parent, 50/50."""
    if rng.random() < 0.5:
        return rand_dense(rng, shape, kind)
    p = len(shape)
    steps = [rng.randint(1, 2) for _ in range(p)]
    leads = [rng.randint(0, 1) for _ in range(p)]
    parent_shape = tuple(
        lead + t * (n - 1) + 1 + rng.randint(0, 1)
        for n, t, lead in zip(shape, steps, leads)
    )
    parent = rand_dense(rng, parent_shape, kind)
    ranges = []
    for r in range(p):
        f = parent.offsets[r] + leads[r]
        ranges.append(Range(f, steps[r], f + steps[r] * (shape[r] - 1)))
    return TensorView(parent, ranges)


def read_box(x) -> dict:
    """Zero-based multi-index -> value dictionary."""
    o = x.offsets
    return {
        i: x[tuple(a + b for a, b in zip(i, o))] for i in zero_indices(x.shape)
    }


def all_shapes(p: int, max_extent: int):
    """Every shape of order p with extents in 1..max_extent."""
    return itertools.product(*(range(1, max_extent + 1) for _ in range(p)))


def all_layouts(p: int):
    return itertools.permutations(range(1, p + 1))


# -- minimal MATLAB literal grammar ------------------------------------------
#
# statement := NAME '=' expr ';'
# expr      := matrix | 'cat' '(' INT ',' expr (',' expr)* ')'
# matrix    := '[' row (';' row)* ']'
# row       := NUMBER+


class MatlabParseError(ValueError):
    pass


def parse_matlab_statement(text: str):
    """Parse one emitted statement; returns (name, tree) where a tree is
    either a list of rows (each a list of float values) or
    ('cat', dim, [trees])."""
    text = text.strip()
    if not text.endswith(";"):
        raise MatlabParseError("statement must end with ';'")
    head, _, rest = text[:-1].partition("=")
    name = head.strip()
    if not name.isidentifier():
        raise MatlabParseError(f"bad variable name {name!r}")
    tree, pos = _parse_expr(rest.strip(), 0)
    if rest.strip()[pos:].strip():
        raise MatlabParseError("trailing characters after expression")
    return name, tree


def _parse_expr(s: str, pos: int):
    while pos < len(s) and s[pos] == " ":
        pos += 1
    if s.startswith("cat(", pos):
        pos += 4
        close = s.index(",", pos)
        dim = int(s[pos:close])
        pos = close
        parts: List = []
        while s[pos] == ",":
            pos += 1
            part, pos = _parse_expr(s, pos)
            parts.append(part)
            while pos < len(s) and s[pos] == " ":
                pos += 1
        if pos >= len(s) or s[pos] != ")":
            raise MatlabParseError("unterminated cat(...)")
        return ("cat", dim, parts), pos + 1
    if pos < len(s) and s[pos] == "[":
        end = _matching_bracket(s, pos)
        inner = s[pos + 1 : end]
        rows = []
        for row_text in inner.split(";"):
            cells = row_text.split()
            if not cells:
                raise MatlabParseError("empty matrix row")
            rows.append([float(c) for c in cells])
        if len({len(r) for r in rows}) != 1:
            raise MatlabParseError("ragged matrix rows")
        return rows, end + 1
    raise MatlabParseError(f"cannot parse expression at {s[pos:pos+20]!r}")


def _matching_bracket(s: str, start: int) -> int:
    depth = 0
    for k in range(start, len(s)):
        if s[k] == "[":
            depth += 1
        elif s[k] == "]":
            depth -= 1
            if depth == 0:
                return k
    raise MatlabParseError("unbalanced brackets")


def cat_arity(tree) -> int:
    if isinstance(tree, tuple) and tree[0] == "cat":
        return len(tree[2])
    raise MatlabParseError("not a cat expression")
