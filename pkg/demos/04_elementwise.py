"""
Elementwise algorithm suite
===========================

The first-level algorithms mirror the familiar sequence algorithms but
run over whole multi-index sets, combining tensors and views of identical
shape and arbitrary, mutually different layouts.
"""

import random

from tensorlib import (
    DenseTensor,
    accumulate,
    all_of,
    compare_ranges,
    count_matching,
    extremum_element,
    fill,
    find_first,
    for_each,
    inner_product_flat,
    iota,
    transform_binary,
    transform_unary,
)

rng = random.Random(0)

# Three tensors of one shape, three different storage orders.
shape = (3, 2, 4)
a = DenseTensor(shape, layout=(1, 2, 3))
b = DenseTensor(shape, layout=(3, 2, 1))
c = DenseTensor(shape, layout=(2, 3, 1))

iota(a, 1)                            # 1, 2, ... in iteration order
for_each(a, lambda x: x * x)          # square in place
transform_unary(a, b, lambda x: -x)   # b[i] = -a[i], layouts differ
transform_binary(a, b, c, lambda x, y: x + y)
print("a + (-a) is the zero tensor:", all_of(c, lambda v: v == 0))

# Queries report zero-based multi-indices in a fixed iteration order
# (dimension 1 fastest), so results are layout-independent.
fill(c, 7)
print("count of 7s:", count_matching(c, value=7), "of", c.size)
print("first element > 50 in a:", find_first(a, pred=lambda v: v > 50))
print("largest of a:", extremum_element(a, "max"))

d = DenseTensor(shape, layout=(2, 1, 3))
transform_unary(a, d, lambda x: x)
result = compare_ranges(a, d)
print("copy compares equal:", result.equal)
o = d.offsets
d[2 + o[0], 1 + o[1], 3 + o[2]] = -1
print("first mismatch after a poke:", compare_ranges(a, d).first_mismatch)

# Reductions fold in iteration order, so floating-point sums are
# bit-identical across layouts.
e = DenseTensor(shape, layout=(3, 1, 2))
for j in range(e.size):
    e.set_memory(j, rng.uniform(0.5, 2.0))
f = DenseTensor(shape)
f.assign(e)
print("sums agree bitwise:", accumulate(e, 0.0) == accumulate(f, 0.0))
print("<a, a> =", inner_product_flat(a, a, 0))
