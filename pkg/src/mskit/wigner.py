"""Reduced Wigner coefficients for tensoring with the dual defining irrep.

These scalars drive the recursive construction of the dual Clebsch-Gordan
transform: they express the U(d) transform in terms of the U(d-1) one.  For a
staircase mu of length d, the coefficient T(mu, j, mu', j') couples

    input:  U(d-1) content mu' (a staircase interlacing mu),
    output: the irrep mu - e_j with U(d-1) content mu' - e_{j'},

where j' = 0 means the content is unchanged (the branch where the new tensor
leg carries the U(d-1)-invariant state |d>).

Closed form, in shifted coordinates s_k = mu_k - k and s'_k = mu'_k - k:

    T(mu, j, mu', 0)  = | prod_{k<d}  (s'_k - s_j) / prod_{k != j} (s_k - s_j) |^(1/2)

    T(mu, j, mu', j') = S(j, j') *
        | prod_{k != j'} (s'_k - s_j) / (s'_k - s'_{j'} + 1)
        * prod_{k != j}  (s_k - s'_{j'} + 1) / (s_k - s_j) |^(1/2)

with sign S(j, j') = +1 if j <= j' and -1 otherwise.  The shifted entries of a
staircase are strictly decreasing, so no denominator vanishes.  The numerator
vanishes exactly when the output fails interlacing, which is also enforced by
an explicit mask; a disagreement between mask and formula raises.

Grouped by fixed output content nu, the coefficients form square orthogonal
matrices (see :func:`reduced_wigner_operator`); that orthogonality is what
makes the assembled dual CG transform unitary.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .staircase import Staircase, interlaces, is_valid, validate

MASK_FORMULA_TOL = 1e-14


def _stable_product(factors: list[float]) -> float:
    """Multiply smallest-magnitude first; keeps long products well scaled."""
    out = 1.0
    for f in sorted(factors, key=abs):
        out *= f
    return out


def dual_reduced_wigner(mu: Staircase, j: int, mu_prime: Staircase, j_prime: int) -> float:
    """T(mu, j, mu', j') as defined in the module docstring.

    j is 1-based in [1, d]; j_prime in [0, d-1].  Returns 0.0 whenever the
    implied output (mu - e_j with content mu' - e_{j'}) is invalid.
    """
    mu = validate(mu)
    d = len(mu)
    if not 1 <= j <= d:
        raise ValueError(f"j = {j} out of range for d = {d}")
    if not 0 <= j_prime <= d - 1:
        raise ValueError(f"j' = {j_prime} out of range for d = {d}")
    if len(mu_prime) != d - 1 or not interlaces(mu_prime, mu):
        raise ValueError(f"{mu_prime} does not interlace {mu}")

    target = mu[:j - 1] + (mu[j - 1] - 1,) + mu[j:]
    if j_prime == 0:
        nu = mu_prime
    else:
        nu = mu_prime[:j_prime - 1] + (mu_prime[j_prime - 1] - 1,) + mu_prime[j_prime:]
        if not is_valid(nu):
            # no output register with this content exists; the closed form is
            # undefined here (a shifted-entry collision), not merely zero
            return 0.0
    valid = is_valid(target) and (d == 1 or interlaces(nu, target))

    s = [mu[k] - (k + 1) for k in range(d)]
    sp = [mu_prime[k] - (k + 1) for k in range(d - 1)]
    if j_prime == 0:
        factors = [float(sp[k] - s[j - 1]) for k in range(d - 1)]
        factors += [1.0 / (s[k] - s[j - 1]) for k in range(d) if k != j - 1]
        value = np.sqrt(abs(_stable_product(factors)))
    else:
        factors = [(sp[k] - s[j - 1]) / (sp[k] - sp[j_prime - 1] + 1)
                   for k in range(d - 1) if k != j_prime - 1]
        factors += [(s[k] - sp[j_prime - 1] + 1) / (s[k] - s[j - 1])
                    for k in range(d) if k != j - 1]
        sign = 1.0 if j <= j_prime else -1.0
        value = sign * np.sqrt(abs(_stable_product(factors)))

    if valid:
        return float(value)
    if abs(value) > MASK_FORMULA_TOL:
        warnings.warn(
            f"reduced Wigner formula gave {value} on masked index "
            f"(mu={mu}, j={j}, mu'={mu_prime}, j'={j_prime}); masking to 0",
            RuntimeWarning,
        )
    return 0.0


@dataclass(frozen=True)
class ReducedWignerBlock:
    """Orthogonal block of coefficients for one (mu, output content nu) sector.

    Rows are labeled by valid targets j (mu - e_j weakly decreasing and
    interlaced by nu); columns by the admissible input contents: j' = 0 for
    content nu itself, j' >= 1 for content nu + e_{j'}.  The restricted matrix
    is always square and real orthogonal.
    """

    mu: Staircase
    nu: Staircase
    row_targets: tuple[int, ...]
    col_sources: tuple[int, ...]
    matrix: np.ndarray

    def orthogonality_residual(self) -> float:
        g = self.matrix.T @ self.matrix - np.eye(self.matrix.shape[1])
        return float(np.abs(g).max()) if g.size else 0.0


def reduced_wigner_operator(mu: Staircase, nu: Staircase) -> ReducedWignerBlock:
    """Assemble the coefficient block for output U(d-1) content nu."""
    mu = validate(mu)
    nu = tuple(nu)
    d = len(mu)
    if len(nu) != d - 1:
        raise ValueError(f"nu must have length {d - 1}")
    if nu:
        validate(nu)
    rows = []
    for j in range(1, d + 1):
        target = mu[:j - 1] + (mu[j - 1] - 1,) + mu[j:]
        if is_valid(target) and (d == 1 or interlaces(nu, target)):
            rows.append(j)
    cols = []
    if d == 1 or interlaces(nu, mu):
        cols.append(0)
    for jp in range(1, d):
        src = nu[:jp - 1] + (nu[jp - 1] + 1,) + nu[jp:]
        if is_valid(src) and interlaces(src, mu):
            cols.append(jp)
    mat = np.zeros((len(rows), len(cols)))
    for a, j in enumerate(rows):
        for b, jp in enumerate(cols):
            src = nu if jp == 0 else nu[:jp - 1] + (nu[jp - 1] + 1,) + nu[jp:]
            mat[a, b] = dual_reduced_wigner(mu, j, src, jp)
    return ReducedWignerBlock(mu=mu, nu=nu, row_targets=tuple(rows),
                              col_sources=tuple(cols), matrix=mat)


def output_contents(mu: Staircase) -> list[Staircase]:
    """All U(d-1) contents nu reachable from inputs interlacing mu."""
    from .gelfand import interlacing_set
    from .staircase import remove_box_set

    if len(mu) == 1:
        return [()]
    seen = set()
    for mup in interlacing_set(mu):
        seen.add(mup)
        seen.update(remove_box_set(mup))
    return sorted(seen)
