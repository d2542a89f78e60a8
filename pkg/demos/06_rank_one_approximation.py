"""
Best rank-one approximation
===========================

The higher-order power method alternates over modes: contract the tensor
with every other mode's vector, normalize, repeat.  For an exactly
rank-one input it recovers the scale and the unit vectors in a couple of
sweeps; for general input the residual decreases monotonically.
"""

import random
from math import sqrt

from tensorlib import DenseTensor, hopm, rank_one_compose, residual

rng = random.Random(2)


def unit(n):
    v = [rng.uniform(-1, 1) for _ in range(n)]
    norm = sqrt(sum(x * x for x in v))
    return DenseTensor.from_memory((n,), [x / norm for x in v])


# Build lambda * u1 o u2 o u3 and recover it.
shape = (4, 3, 5)
true_scale = 2.75
a = rank_one_compose(true_scale, [unit(n) for n in shape])

state = hopm(a, max_sweeps=50, track_residuals=True)
print("converged:", state.converged, "after", state.sweeps, "sweeps")
print("recovered scale:", state.scale, "(true:", true_scale, ")")
print("residual:", residual(a, state))

# On a noisy tensor the method still minimizes ||A - lambda u1 o ... o up||.
noisy = DenseTensor(shape)
noisy.data = [a.get_memory(j) + rng.uniform(-0.05, 0.05) for j in range(a.size)]
state = hopm(noisy, max_sweeps=50, track_residuals=True)
print("\nnoisy input, per-sweep scale estimates:")
for k, lam in enumerate(state.lambda_history, start=1):
    print(f"  sweep {k}: lambda = {lam:.9f}  residual = {state.residual_history[k-1]:.9f}")
drops = all(
    b <= prev + 1e-12
    for prev, b in zip(state.residual_history, state.residual_history[1:])
)
print("residual never increased:", drops)
