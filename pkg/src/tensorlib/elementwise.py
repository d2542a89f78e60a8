"""Elementwise algorithm suite over multidimensional iterators.

Every function here accepts tensors, views, or raw
:class:`~tensorlib.iterators.MultiIterator` cursors, and combines operands
of identical shape but arbitrary (and mutually different) layouts.  The
shared control flow is one recursion: at depth ``r > 0`` loop the r-th
range and recurse with the cursor advanced, at depth 0 run a flat
one-dimensional kernel.  Multi-source operations iterate all cursors in
lockstep, so combined elements always share a zero-based multi-index.

Iteration order (the tie-break for ``find_first``/``extremum_element`` and
the write order of ``generate``/``iota``/``accumulate``) is fixed by the
recursion: dimension p outermost, dimension 1 innermost, by dimension
number, not storage precedence.  Because iteration is by multi-index, a
floating-point ``accumulate`` gives bit-identical results across layouts.

Callables must not depend on call order; ``for_each``'s "mutator" is a
value-returning function whose result is stored back (Python scalars
cannot be mutated through references).
"""

from __future__ import annotations

from typing import Callable, NamedTuple, Optional, Tuple

from .iterators import MultiIterator

__all__ = [
    "CompareResult",
    "accumulate",
    "all_of",
    "any_of",
    "compare_ranges",
    "copy",
    "copy_if",
    "count_matching",
    "extremum_element",
    "fill",
    "find_first",
    "for_each",
    "generate",
    "inner_product_flat",
    "iota",
    "none_of",
    "quantify",
    "transform_binary",
    "transform_unary",
]

_MISSING = object()


class CompareResult(NamedTuple):
    equal: bool
    first_mismatch: Optional[Tuple[int, ...]]


def _mit(source) -> MultiIterator:
    """Normalize to a private MultiIterator cursor."""
    if isinstance(source, MultiIterator):
        return source.clone()
    return source.miter()


def _mits_same_shape(*sources):
    its = [_mit(s) for s in sources]
    first = its[0].extents
    for it in its[1:]:
        if it.extents != first:
            raise ValueError(f"shape mismatch: {it.extents} vs {first}")
    return its


# -- mutating suite ----------------------------------------------------------


def for_each(a, fn: Callable) -> None:
    """Replace every element ``x`` with ``fn(x)``, exactly once per element."""
    it = _mit(a)
    _for_each(it.order - 1, it, fn)


def _for_each(r, it, fn):
    pos = it.pos
    stride = it.strides[r]
    end = pos + it.extents[r] * stride
    if r > 0:
        while pos != end:
            it.pos = pos
            _for_each(r - 1, it, fn)
            pos += stride
    else:
        data = it.data
        while pos != end:
            data[pos] = fn(data[pos])
            pos += stride


def fill(dst, value) -> None:
    """Set every element to ``value``."""
    it = _mit(dst)
    _fill(it.order - 1, it, value)


def _fill(r, it, value):
    pos = it.pos
    stride = it.strides[r]
    end = pos + it.extents[r] * stride
    if r > 0:
        while pos != end:
            it.pos = pos
            _fill(r - 1, it, value)
            pos += stride
    else:
        data = it.data
        while pos != end:
            data[pos] = value
            pos += stride


def generate(dst, gen: Callable) -> None:
    """Fill with successive results of the nullary ``gen``, in iteration
    order.  Index-dependent values are expressible as iota + transform."""
    for_each(dst, lambda _x: gen())


def iota(dst, start=0) -> None:
    """Write ``start, start + 1, ...`` in iteration order."""
    counter = [start]

    def step(_x, counter=counter):
        v = counter[0]
        counter[0] = v + 1
        return v

    for_each(dst, step)


def transform_unary(src, dst, fn: Callable) -> None:
    """``dst[i] = fn(src[i])`` for every zero-based multi-index ``i``."""
    a, c = _mits_same_shape(src, dst)
    _transform1(a.order - 1, a, c, fn)


def _transform1(r, a, c, fn):
    pa, pc = a.pos, c.pos
    sa, sc = a.strides[r], c.strides[r]
    end = pa + a.extents[r] * sa
    if r > 0:
        while pa != end:
            a.pos, c.pos = pa, pc
            _transform1(r - 1, a, c, fn)
            pa += sa
            pc += sc
    else:
        da, dc = a.data, c.data
        while pa != end:
            dc[pc] = fn(da[pa])
            pa += sa
            pc += sc


def transform_binary(a, b, dst, op: Callable) -> None:
    """``dst[i] = op(a[i], b[i])`` with all three iterated in lockstep."""
    ia, ib, ic = _mits_same_shape(a, b, dst)
    _transform2(ia.order - 1, ia, ib, ic, op)


def _transform2(r, a, b, c, op):
    pa, pb, pc = a.pos, b.pos, c.pos
    sa, sb, sc = a.strides[r], b.strides[r], c.strides[r]
    end = pa + a.extents[r] * sa
    if r > 0:
        while pa != end:
            a.pos, b.pos, c.pos = pa, pb, pc
            _transform2(r - 1, a, b, c, op)
            pa += sa
            pb += sb
            pc += sc
    else:
        da, db, dc = a.data, b.data, c.data
        while pa != end:
            dc[pc] = op(da[pa], db[pb])
            pa += sa
            pb += sb
            pc += sc


def copy(src, dst) -> None:
    """``dst[i] = src[i]``; layouts may differ."""
    transform_unary(src, dst, lambda x: x)


def copy_if(src, dst, pred: Callable) -> None:
    """Copy only elements satisfying ``pred``; other destination elements
    stay untouched."""
    a, c = _mits_same_shape(src, dst)
    _copy_if(a.order - 1, a, c, pred)


def _copy_if(r, a, c, pred):
    pa, pc = a.pos, c.pos
    sa, sc = a.strides[r], c.strides[r]
    end = pa + a.extents[r] * sa
    if r > 0:
        while pa != end:
            a.pos, c.pos = pa, pc
            _copy_if(r - 1, a, c, pred)
            pa += sa
            pc += sc
    else:
        da, dc = a.data, c.data
        while pa != end:
            v = da[pa]
            if pred(v):
                dc[pc] = v
            pa += sa
            pc += sc


# -- queries -----------------------------------------------------------------


def _scan(it: MultiIterator, visit: Callable) -> None:
    """Drive ``visit(value, zero_based_index)`` in iteration order; stop
    early when visit returns True."""
    idx = [0] * it.order
    _scan_rec(it.order - 1, it, idx, visit)


def _scan_rec(r, it, idx, visit) -> bool:
    pos = it.pos
    stride = it.strides[r]
    if r > 0:
        for k in range(it.extents[r]):
            idx[r] = k
            it.pos = pos
            if _scan_rec(r - 1, it, idx, visit):
                return True
            pos += stride
        return False
    data = it.data
    for k in range(it.extents[0]):
        idx[0] = k
        if visit(data[pos], idx):
            return True
        pos += stride
    return False


def count_matching(src, value=_MISSING, pred: Optional[Callable] = None) -> int:
    """Number of elements equal to ``value`` (or satisfying ``pred``)."""
    if (value is _MISSING) == (pred is None):
        raise ValueError("provide exactly one of value or pred")
    if pred is None:
        pred = lambda x: x == value
    hits = [0]

    def visit(v, _idx):
        if pred(v):
            hits[0] += 1
        return False

    _scan(_mit(src), visit)
    return hits[0]


def find_first(src, value=_MISSING, pred: Optional[Callable] = None):
    """Zero-based multi-index of the first match in iteration order, or
    None."""
    if (value is _MISSING) == (pred is None):
        raise ValueError("provide exactly one of value or pred")
    if pred is None:
        pred = lambda x: x == value
    found = [None]

    def visit(v, idx):
        if pred(v):
            found[0] = tuple(idx)
            return True
        return False

    _scan(_mit(src), visit)
    return found[0]


def extremum_element(src, kind: str = "min"):
    """``(zero-based multi-index, value)`` of the smallest/largest element;
    ties go to the first occurrence in iteration order."""
    if kind not in ("min", "max"):
        raise ValueError(f"kind must be 'min' or 'max', got {kind!r}")
    best = [None, None]
    better = (lambda v, b: v < b) if kind == "min" else (lambda v, b: v > b)

    def visit(v, idx):
        if best[0] is None or better(v, best[1]):
            best[0] = tuple(idx)
            best[1] = v
        return False

    _scan(_mit(src), visit)
    return best[0], best[1]


def compare_ranges(a, b) -> CompareResult:
    """Elementwise equality with the first differing multi-index (iteration
    order) on mismatch."""
    ia, ib = _mits_same_shape(a, b)
    mismatch = [None]
    idx = [0] * ia.order
    _compare_rec(ia.order - 1, ia, ib, idx, mismatch)
    hit = mismatch[0]
    return CompareResult(hit is None, hit)


def _compare_rec(r, a, b, idx, mismatch) -> bool:
    pa, pb = a.pos, b.pos
    sa, sb = a.strides[r], b.strides[r]
    if r > 0:
        for k in range(a.extents[r]):
            idx[r] = k
            a.pos, b.pos = pa, pb
            if _compare_rec(r - 1, a, b, idx, mismatch):
                return True
            pa += sa
            pb += sb
        return False
    da, db = a.data, b.data
    for k in range(a.extents[0]):
        if da[pa] != db[pb]:
            idx[0] = k
            mismatch[0] = tuple(idx)
            return True
        pa += sa
        pb += sb
    return False


def quantify(src, pred: Callable, mode: str = "all") -> bool:
    """Quantifier over all elements: mode 'all', 'any' or 'none'."""
    if mode not in ("all", "any", "none"):
        raise ValueError(f"mode must be 'all', 'any' or 'none', got {mode!r}")
    hit = [False]

    def visit(v, _idx):
        if pred(v):
            hit[0] = True
            return True
        return False

    def visit_all(v, _idx):
        if not pred(v):
            hit[0] = True
            return True
        return False

    if mode == "all":
        _scan(_mit(src), visit_all)
        return not hit[0]
    _scan(_mit(src), visit)
    return hit[0] if mode == "any" else not hit[0]


def all_of(src, pred) -> bool:
    return quantify(src, pred, "all")


def any_of(src, pred) -> bool:
    return quantify(src, pred, "any")


def none_of(src, pred) -> bool:
    return quantify(src, pred, "none")


# -- reductions -----------------------------------------------------------------


def accumulate(src, init=0, op: Optional[Callable] = None):
    """Left-fold of ``op`` (default ``+``) over elements in iteration order."""
    it = _mit(src)
    if op is None:
        return _accumulate_sum(it.order - 1, it, init)
    acc = [init]

    def visit(v, _idx):
        acc[0] = op(acc[0], v)
        return False

    _scan(it, visit)
    return acc[0]


def _accumulate_sum(r, it, acc):
    pos = it.pos
    stride = it.strides[r]
    end = pos + it.extents[r] * stride
    if r > 0:
        while pos != end:
            it.pos = pos
            acc = _accumulate_sum(r - 1, it, acc)
            pos += stride
        return acc
    data = it.data
    while pos != end:
        acc = acc + data[pos]
        pos += stride
    return acc


def inner_product_flat(a, b, init=0):
    """``init + sum_i a[i] * b[i]`` over all shared multi-indices."""
    ia, ib = _mits_same_shape(a, b)
    return _inner_rec(ia.order - 1, ia, ib, init)


def _inner_rec(r, a, b, acc):
    pa, pb = a.pos, b.pos
    sa, sb = a.strides[r], b.strides[r]
    end = pa + a.extents[r] * sa
    if r > 0:
        while pa != end:
            a.pos, b.pos = pa, pb
            acc = _inner_rec(r - 1, a, b, acc)
            pa += sa
            pb += sb
        return acc
    da, db = a.data, b.data
    while pa != end:
        acc += da[pa] * db[pb]
        pa += sa
        pb += sb
    return acc
