"""Stride-based and multidimensional iterators.

:class:`StrideIterator` walks one dimension of a buffer: advancing by one
shifts the position by the dimension's stride.  :class:`MultiIterator` is a
cursor over a whole multi-index set and acts as a factory: ``begin(r)`` /
``end(r)`` hand out stride iterator pairs for recursion depth ``r``
(zero-based, depth r covers dimension r+1).  Assigning a stride iterator
back to the cursor moves only the current position, which is what lets the
recursive algorithm suites nest loops over all dimensions.

Both types are cheap value objects over a shared buffer; dereferencing
follows the owning container's single-writer contract.
"""

from __future__ import annotations

from typing import List, Sequence

__all__ = [
    "MultiIterator",
    "StrideIterator",
    "fill_range",
    "inner_product_range",
    "walk_positions",
]


class StrideIterator:
    """Random-access cursor stepping through a buffer by a fixed stride.

    Two stride iterators compare equal iff their positions and strides are
    equal.  One-past-the-end positions are valid sentinels; dereferencing
    them is excluded by contract, not checked.
    """

    __slots__ = ("data", "pos", "stride")

    def __init__(self, data: list, pos: int, stride: int):
        self.data = data
        self.pos = pos
        self.stride = stride

    @property
    def value(self):
        return self.data[self.pos]

    @value.setter
    def value(self, v):
        self.data[self.pos] = v

    def advance(self, k: int = 1) -> "StrideIterator":
        """Move by ``k`` steps of the stride (mutating); returns self."""
        self.pos += k * self.stride
        return self

    def clone(self) -> "StrideIterator":
        return StrideIterator(self.data, self.pos, self.stride)

    def __eq__(self, other):
        if not isinstance(other, StrideIterator):
            return NotImplemented
        return self.pos == other.pos and self.stride == other.stride

    def __lt__(self, other):
        return self.pos < other.pos

    def __le__(self, other):
        return self.pos <= other.pos

    def __gt__(self, other):
        return self.pos > other.pos

    def __ge__(self, other):
        return self.pos >= other.pos

    def __repr__(self):
        return f"StrideIterator(pos={self.pos}, stride={self.stride})"


class MultiIterator:
    """Cursor over a multi-index set; factory for per-dimension ranges.

    Carries the buffer, the current position, and per-dimension strides and
    extents, so algorithms written against it never consult the container.
    ``begin(r)``/``end(r)`` use zero-based recursion depths.  Equality
    compares the position and buffer identity only.
    """

    __slots__ = ("data", "pos", "strides", "extents")

    def __init__(
        self,
        data: list,
        pos: int,
        strides: Sequence[int],
        extents: Sequence[int],
    ):
        if len(strides) != len(extents):
            raise ValueError("strides and extents must have equal length")
        self.data = data
        self.pos = pos
        self.strides = tuple(strides)
        self.extents = tuple(extents)

    @property
    def order(self) -> int:
        return len(self.extents)

    def begin(self, r: int) -> StrideIterator:
        if not 0 <= r < self.order:
            raise ValueError(f"depth {r} out of range for order {self.order}")
        return StrideIterator(self.data, self.pos, self.strides[r])

    def end(self, r: int) -> StrideIterator:
        if not 0 <= r < self.order:
            raise ValueError(f"depth {r} out of range for order {self.order}")
        w = self.strides[r]
        return StrideIterator(self.data, self.pos + self.extents[r] * w, w)

    def move_to(self, it) -> "MultiIterator":
        """Adopt a stride iterator's (or raw) position; returns self."""
        self.pos = it.pos if isinstance(it, StrideIterator) else int(it)
        return self

    def clone(self) -> "MultiIterator":
        return MultiIterator(self.data, self.pos, self.strides, self.extents)

    def __eq__(self, other):
        if not isinstance(other, MultiIterator):
            return NotImplemented
        return self.data is other.data and self.pos == other.pos

    def __repr__(self):
        return (
            f"MultiIterator(pos={self.pos}, strides={self.strides}, "
            f"extents={self.extents})"
        )


def fill_range(first: StrideIterator, last: StrideIterator, value) -> None:
    """Set every element of the half-open range ``[first, last)``."""
    data, pos, stride = first.data, first.pos, first.stride
    end = last.pos
    while pos != end:
        data[pos] = value
        pos += stride


def inner_product_range(
    first1: StrideIterator, last1: StrideIterator, first2: StrideIterator, init
):
    """Fold ``init + sum(a_k * b_k)`` over two equally long ranges."""
    d1, p1, s1 = first1.data, first1.pos, first1.stride
    d2, p2, s2 = first2.data, first2.pos, first2.stride
    end = last1.pos
    acc = init
    while p1 != end:
        acc += d1[p1] * d2[p2]
        p1 += s1
        p2 += s2
    return acc


def walk_positions(it: MultiIterator) -> List[int]:
    """Memory positions visited by the baseline recursion, in visit order.

    The recursion loops depth p-1 outermost down to depth 0, which visits
    every addressable element exactly once for any layout.
    """
    out: List[int] = []
    cursor = it.clone()
    _walk(cursor.order - 1, cursor, out)
    return out


def _walk(r: int, it: MultiIterator, out: List[int]) -> None:
    pos = it.pos
    stride = it.strides[r]
    end = pos + it.extents[r] * stride
    if r > 0:
        while pos != end:
            it.pos = pos
            _walk(r - 1, it, out)
            pos += stride
    else:
        while pos != end:
            out.append(pos)
            pos += stride
