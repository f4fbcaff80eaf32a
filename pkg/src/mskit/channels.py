"""Unitary-equivariant channel toolkit built on the mixed Schur transform.

A channel N from m qudits to n qudits is stored through its Choi matrix

    J = (id (x) N)(|Omega><Omega|^{(x)m}),   |Omega> the normalized EPR pair,

a PSD matrix on (input-dual registers) (x) (output registers), trace one for
trace-preserving N, with partial trace over the output equal to Id / d^m.
The channel acts by N(rho) = Tr_in[(d^m J) (rho^T (x) Id)].

N is unitary-equivariant iff J commutes with conj(U)^{(x)m} (x) U^{(x)n} for
every unitary U; in the Schur basis of that mixed tensor product (dual legs
first) an equivariant J is block diagonal with blocks Id (x) X_gamma over
(GT, path) indices.  twirl projects any Choi matrix onto that commutant,
preserving complete positivity and the trace-preserving marginal.

teleport_apply simulates the measure-and-correct implementation of an
equivariant channel with one input qudit: a Bell-type POVM built from the d^2
Weyl operators is measured across the input state and the input half of the
Choi state, and the matching inverse Weyl correction is applied on every
output qudit.  Equivariance makes each outcome branch reproduce N(rho)/d^2
exactly, so outcomes are uniform and the average output is exactly N(rho).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rand import haar_unitary, rng_from_seed
from .schur import (SchurTransform, apply_legs, block_layout,
                    build_mixed_schur, mixed_tensor_factors)
from .staircase import Staircase


@dataclass
class ChoiMatrix:
    n_out: int
    m_in: int
    d: int
    matrix: np.ndarray  # dimension d**(m_in + n_out), input-dual legs first

    def __post_init__(self):
        size = self.d ** (self.m_in + self.n_out)
        if self.matrix.shape != (size, size):
            raise ValueError(f"Choi matrix must be {size} x {size}, "
                             f"got {self.matrix.shape}")

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def schur_transform(self, cap: int = 1 << 20) -> SchurTransform:
        """Transform matching the Choi register order: m dual legs, then n defining."""
        return build_mixed_schur(self.n_out, self.m_in, self.d,
                                 "-" * self.m_in + "+" * self.n_out, cap=cap)

    def trace_preserving_residual(self) -> float:
        din, dout = self.d ** self.m_in, self.d ** self.n_out
        marg = np.trace(self.matrix.reshape(din, dout, din, dout),
                        axis1=1, axis2=3)
        return float(np.abs(marg - np.eye(din) / din).max())

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2).min())


def choi_of_map(apply_map, m_in: int, n_out: int, d: int) -> ChoiMatrix:
    """Choi matrix of rho -> apply_map(rho) evaluated on matrix units."""
    din, dout = d ** m_in, d ** n_out
    J = np.zeros((din * dout, din * dout), dtype=complex)
    for i in range(din):
        for j in range(din):
            E = np.zeros((din, din), dtype=complex)
            E[i, j] = 1.0
            out = np.asarray(apply_map(E), dtype=complex)
            J += np.kron(np.outer(_unit(din, i), _unit(din, j).conj()), out)
    return ChoiMatrix(n_out=n_out, m_in=m_in, d=d, matrix=J / din)


def _unit(dim: int, k: int) -> np.ndarray:
    v = np.zeros(dim)
    v[k] = 1.0
    return v


def apply_direct(J: ChoiMatrix, rho: np.ndarray) -> np.ndarray:
    """N(rho) = Tr_in[(d^m J)(rho^T (x) Id)]."""
    din, dout = J.d ** J.m_in, J.d ** J.n_out
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (din, din):
        raise ValueError(f"input state must be {din} x {din}, got {rho.shape}")
    Jt = (din * J.matrix).reshape(din, dout, din, dout)
    return np.einsum("aibj,ab->ij", Jt, rho)


def is_equivariant(J: ChoiMatrix, trials: int = 10, tol: float = 1e-10,
                   seed: int = 11) -> tuple[bool, float]:
    """Max commutator entry of J with the mixed tensor representation."""
    rng = rng_from_seed(seed)
    order = "-" * J.m_in + "+" * J.n_out
    worst = 0.0
    for _ in range(trials):
        U = haar_unitary(J.d, rng)
        factors = mixed_tensor_factors(U, order)
        TJ = apply_legs(J.matrix, factors)
        JT = apply_legs(J.matrix.conj().T, [f.conj().T for f in factors]).conj().T
        worst = max(worst, float(np.abs(TJ - JT).max()))
    return worst < tol, worst


@dataclass
class SchurBlockReport:
    off_block_residual: float
    structure_residual: float
    multiplicity_blocks: dict[Staircase, np.ndarray]


def _check_transform(J: ChoiMatrix, W: SchurTransform) -> None:
    if W.size != J.size or (W.n, W.m, W.d) != (J.n_out, J.m_in, J.d):
        raise ValueError("transform does not match the Choi matrix shape")
    if W.factor_order != "-" * J.m_in + "+" * J.n_out:
        raise ValueError("Choi analysis needs the dual legs first "
                         f"(factor order {'-' * J.m_in + '+' * J.n_out!r})")


def choi_to_schur(J: ChoiMatrix, W: SchurTransform) -> SchurBlockReport:
    """Blocks of W J Wt; small residuals certify equivariance of J.

    For an equivariant Choi matrix the conjugated matrix vanishes between
    staircase sectors and each sector is Id_{dim} (x) X_gamma over (GT, path)
    indices; the X_gamma are returned.
    """
    _check_transform(J, W)
    M = W.matrix @ J.matrix @ W.matrix.conj().T
    blocks: dict[Staircase, np.ndarray] = {}
    off = 0.0
    struct = 0.0
    layout = block_layout(W)
    for g, start, dg, mg in layout:
        sl = slice(start, start + dg * mg)
        blk = M[sl, sl]
        cube = blk.reshape(mg, dg, mg, dg)
        X = np.einsum("pqrq->pr", cube) / dg
        expected = np.einsum("pr,qs->pqrs", X, np.eye(dg)).reshape(blk.shape)
        struct = max(struct, float(np.abs(blk - expected).max()))
        blocks[g] = X
        M[sl, sl] = 0.0
    off = float(np.abs(M).max())
    return SchurBlockReport(off, struct, blocks)


def twirl(J: ChoiMatrix, W: SchurTransform) -> ChoiMatrix:
    """Project onto the equivariant commutant: keep Id (x) X per sector."""
    _check_transform(J, W)
    M = W.matrix @ J.matrix @ W.matrix.conj().T
    out = np.zeros_like(M)
    for g, start, dg, mg in block_layout(W):
        sl = slice(start, start + dg * mg)
        cube = M[sl, sl].reshape(mg, dg, mg, dg)
        X = np.einsum("pqrq->pr", cube) / dg
        out[sl, sl] = np.einsum("pr,qs->pqrs", X, np.eye(dg)).reshape(dg * mg, dg * mg)
    return ChoiMatrix(n_out=J.n_out, m_in=J.m_in, d=J.d,
                      matrix=W.matrix.conj().T @ out @ W.matrix)


def random_cptp_choi(m_in: int, n_out: int, d: int, rng: np.random.Generator,
                     kraus_rank: int | None = None) -> ChoiMatrix:
    """Choi matrix of a Haar-random isometry channel (Stinespring picture)."""
    din, dout = d ** m_in, d ** n_out
    rank = din * dout if kraus_rank is None else kraus_rank
    g = rng.standard_normal((dout * rank, din)) + 1j * rng.standard_normal((dout * rank, din))
    V, _ = np.linalg.qr(g)  # isometry: columns orthonormal

    def channel(rho):
        big = V @ rho @ V.conj().T
        return np.trace(big.reshape(dout, rank, dout, rank), axis1=1, axis2=3)

    return choi_of_map(channel, m_in, n_out, d)


def random_equivariant_choi(m_in: int, n_out: int, d: int,
                            rng: np.random.Generator,
                            W: SchurTransform | None = None) -> ChoiMatrix:
    """Twirled random CPTP Choi matrix; passes is_equivariant by construction."""
    if W is None:
        W = build_mixed_schur(n_out, m_in, d, "-" * m_in + "+" * n_out)
    return twirl(random_cptp_choi(m_in, n_out, d, rng), W)


# -- the 1 -> 2 qubit equivariant family ---------------------------------------

_I2 = np.eye(2)
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def _reference_basis_212() -> np.ndarray:
    """Closed-form Schur basis for (n, m, d) = (2, 1, 2), dual leg first.

    Equals build_mixed_schur(2, 1, 2, "-++").matrix up to a diagonal of signs;
    frozen here in the sign convention under which the closed-form block
    entries of :func:`example_channel` hold literally.
    """
    s2, s3, s6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
    return np.array([
        [1 / s2, 0, 0, 0, 0, 0, 1 / s2, 0],
        [0, 1 / s2, 0, 0, 0, 0, 0, 1 / s2],
        [-1 / s6, 0, 0, 0, 0, -s2 / s3, 1 / s6, 0],
        [0, 1 / s6, -s2 / s3, 0, 0, 0, 0, -1 / s6],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [-1 / s3, 0, 0, 0, 0, 1 / s3, 1 / s3, 0],
        [0, -1 / s3, -1 / s3, 0, 0, 0, 0, 1 / s3],
        [0, 0, 0, 1, 0, 0, 0, 0],
    ])


def example_channel_blocks(t: float, u: float, v: float, w: float,
                           tol: float = 1e-10) -> dict[str, complex]:
    """The five distinct Schur-block entries of the family's Choi matrix.

    Returns {"A", "B", "C", "D", "E"} computed numerically in the reference
    sign convention, after checking the conjugated matrix really has the
    two-block shape to the given tolerance.
    """
    J = example_channel(t, u, v, w)
    ref = _reference_basis_212()
    M = 8.0 * (ref @ J.matrix @ ref.T)
    X = np.array([[M[0, 0], M[0, 2]], [M[2, 0], M[2, 2]]])
    expected = np.zeros((8, 8), dtype=complex)
    expected[:4, :4] = np.kron(X, np.eye(2))
    expected[4:, 4:] = M[4, 4] * np.eye(4)
    if np.abs(M - expected).max() > 8 * tol:
        raise AssertionError("conjugated Choi matrix lost its block shape")
    return {"A": complex(M[0, 0]), "B": complex(M[0, 2]),
            "C": complex(M[2, 0]), "D": complex(M[2, 2]),
            "E": complex(M[4, 4])}


def example_channel(t: float, u: float, v: float, w: float) -> ChoiMatrix:
    """Four-parameter family of 1 -> 2 qubit equivariant, trace-preserving maps.

    The output for a qubit state rho is
        Id (x) Id / 4
        + (t/2) (XX + YY + ZZ)
        + sum_P tr(P rho) [ (u/2) P (x) Id + (v/2) Id (x) P ]
        + w [ (YZ - ZY) tr(X rho) + (ZX - XZ) tr(Y rho) + (XY - YX) tr(Z rho) ],
    extended linearly in rho (the constant block carries tr(rho)).  The
    parameters are normalized so that in the Schur basis of the Choi matrix
    (dual leg first) the multiplicity blocks are
        (1/8) [[A, B], [C, D]]  and  (1/8) E
    with A = 1 + 6u, B = -2 sqrt(3) (t + v + 4iw), C = conj(B),
    D = 1 - 4t - 2u + 4v, E = 1 + 2t - 2u - 2v.  Complete positivity depends
    on the parameters and is reported, not enforced.
    """
    paulis = (_X, _Y, _Z)

    def channel(rho):
        out = np.trace(rho) * (np.kron(_I2, _I2) / 4
                               + (t / 2) * sum(np.kron(P, P) for P in paulis))
        for P in paulis:
            tp = np.trace(P @ rho)
            out = out + tp * ((u / 2) * np.kron(P, _I2) + (v / 2) * np.kron(_I2, P))
        comms = [np.kron(_Y, _Z) - np.kron(_Z, _Y),
                 np.kron(_Z, _X) - np.kron(_X, _Z),
                 np.kron(_X, _Y) - np.kron(_Y, _X)]
        for P, c in zip(paulis, comms):
            out = out + w * np.trace(P @ rho) * c
        return out

    return choi_of_map(channel, 1, 2, 2)


# -- Weyl operators and teleportation ------------------------------------------

def weyl_operator(a: int, b: int, d: int) -> np.ndarray:
    """W_{a,b} = T^a P^b with T the cyclic shift and P the clock phase."""
    shift = np.roll(np.eye(d), a, axis=0)  # T^a |j> = |j + a mod d>
    clock = np.exp(2j * np.pi * b * np.arange(d) / d)
    return shift * clock[None, :]


def teleport_apply(J: ChoiMatrix, rho: np.ndarray, rng_seed: int | None = None,
                   sample: bool = False,
                   equivariance_tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Implement an equivariant single-input channel by Bell measurement.

    Returns (output state, outcome distribution over the d^2 Weyl labels).
    All measurement branches are evaluated exactly; rng_seed only matters with
    sample=True, which instead returns one sampled branch's corrected state
    (normalized) and the same exact distribution.
    """
    if J.m_in != 1:
        raise ValueError("teleportation implementation needs m_in = 1")
    ok, resid = is_equivariant(J, trials=5, tol=equivariance_tol)
    if not ok:
        raise ValueError(f"Choi matrix is not equivariant (residual {resid:.2e})")
    d, n = J.d, J.n_out
    dout = d ** n
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise ValueError(f"input state must be {d} x {d}")
    phi = np.eye(d).reshape(-1) / np.sqrt(d)  # |Omega> on (A, A')
    probs = np.zeros(d * d)
    branches = []
    total = np.zeros((dout, dout), dtype=complex)
    # joint state on A (x) A' (x) B with A the input, A' the Choi input leg
    joint = np.kron(rho, J.matrix).reshape(d, d, dout, d, d, dout)
    for a in range(d):
        for b in range(d):
            Wab = weyl_operator(a, b, d)
            povm_vec = (np.kron(np.eye(d), Wab.conj()) @ phi).reshape(d, d)
            # sigma_B = <v| (rho (x) J) |v> contracted over A, A'
            sigma = np.einsum("ac,acibdj,bd->ij", povm_vec.conj(), joint, povm_vec)
            corr = Wab.conj().T
            for _ in range(n - 1):
                corr = np.kron(corr, Wab.conj().T)
            corrected = corr @ sigma @ corr.conj().T
            probs[a * d + b] = np.trace(sigma).real
            branches.append(corrected)
            total += corrected
    if sample:
        rng = rng_from_seed(0 if rng_seed is None else rng_seed)
        k = rng.choice(d * d, p=probs / probs.sum())
        return branches[k] / probs[k], probs
    return total, probs


def m2_success_probability(d: int, verify: bool | None = None) -> Fraction:
    """Success probability (d-1)/(2d) of the two-input probabilistic POVM.

    Unless verify is False (default: verify for d <= 8), also builds the POVM
    element
        M = C/(d^2 (d^2-1)) (Id + S(x)S - (S(x)Id + Id(x)S)/d),  C = d^3(d-1)/2,
    with S the swap on each register pair, and verifies ||M|| <= 1 and that
    the acceptance probability on any input equals C/d^4.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if verify is None:
        verify = d <= 8
    if not verify:
        return Fraction(d - 1, 2 * d)
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    eye2 = np.eye(d * d)
    C = Fraction(d ** 3 * (d - 1), 2)
    scale = float(C) / (d ** 2 * (d ** 2 - 1))
    M = scale * (np.kron(eye2, eye2) + np.kron(swap, swap)
                 - (np.kron(swap, eye2) + np.kron(eye2, swap)) / d)
    norm = float(np.linalg.eigvalsh(M).max())
    if norm > 1 + 1e-12:
        raise AssertionError(f"||M|| = {norm} exceeds 1")
    rng = rng_from_seed(17)
    from .rand import random_density

    rho = random_density(d * d, rng)
    prob = float(np.real(np.trace(M @ np.kron(rho, np.eye(d * d) / d ** 2))))
    expected = float(C) / d ** 4
    if abs(prob - expected) > 1e-10:
        raise AssertionError(f"acceptance probability {prob} != C/d^4 = {expected}")
    return Fraction(d - 1, 2 * d)
