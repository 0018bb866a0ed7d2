"""Two-well and three-site records: when does diagonalization pick a localized state?"""

import numpy as np

from pointerlab import RecordModel2, RecordModel3, eigh, oracle_3x3, parity_classify

# %% two wells: the dominant eigenvector only localizes once b >> a
a = 0.01
print("b      minor component   a/(2b)")
for b in (0.0, 0.001, 0.01, 0.1, 1.0):
    v = eigh(RecordModel2(a, b).matrix()).vector(0)
    pred = f"{a / (2 * b):.6f}" if b else "-"
    print(f"{b:<5}  {np.abs(v).min():.6f}          {pred}")

# %% three sites, symmetric: exact eigenvectors are even or odd under reflection
exact = oracle_3x3(0.1, 0.0)
print("\nsymmetric chain eigenvalues", np.round(exact.eigenvalues, 6))

print("\nepsilon  parity of the two dominant eigenvectors")
for eps in (0.0, 1e-6, 1e-4, 1e-2, 0.1, 1.0):
    spec = eigh(RecordModel3(0.1, 0.0, eps).matrix())
    print(f"{eps:<7g}  {parity_classify(spec.vector(0)):+.6f}  {parity_classify(spec.vector(1)):+.6f}")
