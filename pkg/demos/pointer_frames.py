"""Gaussian pointer states on a ring and how quickly a frame of them stops adding directions."""

import numpy as np

from pointerlab import GaussianParams, gaussian_state, inner_product, make_grid
from pointerlab.grid_states import analytic_overlap, effective_rank, gram_matrix, make_frame, singular_values

grid = make_grid(512, 40.0)

# %% overlaps fall off as exp(-a^2 d^2 / 2)
print("d      numeric           closed form")
for d in (0.5, 1.0, 2.0, 4.0):
    f = gaussian_state(grid, GaussianParams(10.0, 1.0))
    g = gaussian_state(grid, GaussianParams(10.0 + d, 1.0))
    print(f"{d:<5}  {inner_product(f, g).real:.12f}  {analytic_overlap(10.0, 10.0 + d, 1.0, grid.length):.12f}")

# %% crowd the centres together: the Gram matrix becomes numerically singular
print("\nspacing  k   rank  smallest/largest singular value")
for spacing in (1.0, 0.3, 0.01):
    for k in (3, 10):
        G = gram_matrix(make_frame(grid, 20.0 + spacing * np.arange(k)))
        sv = singular_values(G)
        print(f"{spacing:<7}  {k:<2}  {effective_rank(G, 1e-8):<4}  {sv[-1] / sv[0]:.2e}")
