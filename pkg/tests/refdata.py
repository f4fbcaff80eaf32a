"""Frozen reference data shared across the test suite."""

import numpy as np

_S2, _S3, _S6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)

# Exact mixed Schur transform for (n, m, d) = (2, 1, 2) with the dual leg
# first (column order: dual qubit, qubit, qubit).  Rows are
# ((1,0), p=0, q=0..1), ((1,0), p=1, q=0..1), ((2,-1), p=0, q=0..3).
# Known in closed form; any implementation may differ by a row sign.
W212 = np.array([
    [1 / _S2, 0, 0, 0, 0, 0, 1 / _S2, 0],
    [0, 1 / _S2, 0, 0, 0, 0, 0, 1 / _S2],
    [-1 / _S6, 0, 0, 0, 0, -_S2 / _S3, 1 / _S6, 0],
    [0, 1 / _S6, -_S2 / _S3, 0, 0, 0, 0, -1 / _S6],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [-1 / _S3, 0, 0, 0, 0, 1 / _S3, 1 / _S3, 0],
    [0, -1 / _S3, -1 / _S3, 0, 0, 0, 0, 1 / _S3],
    [0, 0, 0, 1, 0, 0, 0, 0],
])

W212_ORDER = "-++"


def row_sign_vector(actual: np.ndarray, expected: np.ndarray, atol: float = 1e-10):
    """Signs s with diag(s) @ actual == expected, or None if no signs work."""
    signs = []
    for r in range(expected.shape[0]):
        if np.allclose(actual[r], expected[r], atol=atol):
            signs.append(1.0)
        elif np.allclose(actual[r], -expected[r], atol=atol):
            signs.append(-1.0)
        else:
            return None
    return np.array(signs)


# Irrep content of the level-4 mixed tensor square for d = 3: staircase,
# dimension, multiplicity.  Total must be 3^4.
CENSUS_223 = {
    (2, 0, -2): (27, 1),
    (2, -1, -1): (10, 1),
    (1, 0, -1): (8, 4),
    (0, 0, 0): (1, 2),
    (1, 1, -2): (10, 1),
}

# Plain tensor fourth power for d = 3 (no dual legs).
CENSUS_403 = {
    (4, 0, 0): (15, 1),
    (3, 1, 0): (15, 3),
    (2, 2, 0): (6, 2),
    (2, 1, 1): (3, 3),
}

CENSUS_212 = {
    (1, 0): (2, 2),
    (2, -1): (4, 1),
}
