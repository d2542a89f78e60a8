"""
Strides and storage layouts
===========================

A DenseTensor's storage order is a runtime parameter: a one-based
permutation listing dimensions by precedence.  (1, 2, ..., p) generalizes
column-major storage, (p, ..., 2, 1) row-major, and any other permutation
is equally valid.  Strides derive from the shape and that permutation.
"""

from tensorlib import (
    DenseTensor,
    compute_strides,
    first_order_layout,
    inverse_memory_index,
    last_order_layout,
    memory_index,
    volume,
)

shape = (4, 2, 3)
print("shape:", shape, "volume:", volume(shape))

# The two canonical layouts and one exotic one.
for layout in (first_order_layout(3), last_order_layout(3), (2, 3, 1)):
    print(f"layout {layout} -> strides {compute_strides(shape, layout)}")

# A multi-index maps to a position in the flat buffer through the strides;
# offsets shift the valid index window per dimension.
a = DenseTensor(shape, offsets=(1, -1, 0), layout=(3, 2, 1))
print("offsets:", a.offsets, "strides:", a.strides)
print("first valid index (1,-1,0) sits at memory index",
      memory_index(a.strides, (1, -1, 0), a.offsets))

# The mapping is a bijection onto 0..volume-1, whatever the layout.
j = 17
i = inverse_memory_index(a.meta, j)
print(f"memory index {j} <- zero-based multi-index {i}")
assert memory_index(a.strides, i, (0, 0, 0)) == j

# Element access is layout-transparent: the same multi-index reads the
# same value no matter how elements are arranged in memory.
b = DenseTensor(shape)                      # default layout
c = DenseTensor(shape, layout=(3, 2, 1))    # row-major style
for k, idx in enumerate((p, q, r) for r in range(3) for q in range(2) for p in range(4)):
    b[idx] = k
    c[idx] = k
print("same values under both layouts:", b == c)
print("but different memory sequences:", b.data != c.data)
