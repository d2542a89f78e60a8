"""
Views, slices and fibers
========================

A view selects a rectangular region of a tensor with one range triplet
(first, step, last) per dimension.  It owns nothing: reads and writes go
straight through to the target, whatever its layout.
"""

from tensorlib import DenseTensor, Range, classify_view

a = DenseTensor((4, 2, 3))
for j in range(a.size):
    a.set_memory(j, j)

# Select rows 1 and 3, both columns, and the last frontal slice.
v = a.view(Range(1, 2, 3), Range(0, 1), 2)
print("view shape:", v.shape)               # (2, 2, 1): scalars keep their dim
print("corner memory offset:", v.gamma)
print("view strides (target strides x steps):", v.strides)

print("view (0,0,0) = target (1,0,2):", v[0, 0, 0], "=", a[1, 0, 2])
print("view (1,1,0) = target (3,1,2):", v[1, 1, 0], "=", a[3, 1, 2])

# Materialize copies the selection into a fresh default-layout tensor.
print("materialized elements:", v.materialize().data)

# Writing through a view writes the target: set the diagonal of one slice.
cube = DenseTensor((4, 4, 4))
slice_one = cube.view(None, None, 1)        # None selects the full dimension
for i in range(4):
    slice_one[i, i, 0] = 1.0
print("target elements touched:", [cube[i, i, 1] for i in range(4)])

# Views classify by how many dimensions stay wide.
print("full-dims + scalar  ->", classify_view(cube.view(None, None, 1)))
print("one wide dimension  ->", classify_view(cube.view(None, 0, 2)))
print("stepped selection   ->", classify_view(v))
