"""Independent numerical ground truth for the Gaussian-averaged channel.

Nothing in here reuses the closed forms: the state is propagated with the
exact per-field unitary U(B) = exp(-i kappa mu t B sigma.n) and averaged
over B ~ N(0, vartheta**2) either by Gauss-Hermite quadrature (spectrally
exact for these Gaussian-times-trigonometric integrands) or by seeded
Monte Carlo. The quadrature covers one and two qubits (common bath:
U(B) (x) U(B)).

Determinism contracts: node/weight generation is the Golub-Welsch
eigen-solve of the symmetric tridiagonal Jacobi matrix; Monte Carlo draws
come from counter-based Philox streams keyed by (seed, chunk_index) with
a Box-Muller transform, accumulated in fixed chunk order, so identical
(seed, samples) produce bit-identical results whether chunks are
evaluated serially or in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .channel import Scenario
from .spinalg import DensityMatrix, pauli_rotation, tensor_product

_MC_CHUNK = 1 << 16


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Hermite quadrature order for the Gaussian field average."""

    nodes: int = 201
    method: str = "gauss-hermite"

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError(f"need at least 2 quadrature nodes, got {self.nodes!r}")
        if self.method != "gauss-hermite":
            raise ValueError(f"unsupported quadrature method {self.method!r}")


@dataclass(frozen=True)
class McSpec:
    """Monte Carlo sample count and 64-bit seed."""

    samples: int = 100_000
    seed: int = 42

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


@lru_cache(maxsize=16)
def gauss_hermite_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights (z, w) for expectations under the standard normal.

    E[f(Z)] ~= sum_i w_i f(z_i). Built from the physicists' Hermite
    three-term recurrence: eigenvalues of the symmetric tridiagonal
    Jacobi matrix are the nodes, squared first eigenvector components
    the weights (Golub-Welsch). Nodes are symmetrised exactly about 0
    and the weights normalised to sum to 1.
    """
    if n < 2:
        raise ValueError(f"need at least 2 quadrature nodes, got {n!r}")
    off_diag = np.sqrt(np.arange(1, n) / 2.0)
    try:
        x, vecs = eigh_tridiagonal(np.zeros(n), off_diag)
    except Exception as exc:  # pragma: no cover - eigensolver failure
        raise RuntimeError(f"quadrature node generation failed for {n} nodes: {exc}") from exc
    w = vecs[0] ** 2
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    z = math.sqrt(2.0) * x
    w = w / w.sum()
    z.setflags(write=False)
    w.setflags(write=False)
    return z, w


def unitary_at_field(b: float, s: Scenario, t: float) -> np.ndarray:
    """Exact spin rotation for one field realisation B = b.

    exp(-i mu t b sigma.d) = rotation by the signed angle
    2 kappa mu t b about the geometric axis n.
    """
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    angle = 2.0 * s.field.kappa * s.noise.mu * t * b
    return pauli_rotation(s.field.n, angle)


def _unitary_stack(b_values: np.ndarray, s: Scenario, t: float) -> np.ndarray:
    """Vectorised stack of unitaries, one per field value."""
    nx, ny, nz = s.field.n
    half = s.field.kappa * s.noise.mu * t * b_values
    c, si = np.cos(half), np.sin(half)
    u = np.empty((len(b_values), 2, 2), dtype=complex)
    u[:, 0, 0] = c - 1j * si * nz
    u[:, 0, 1] = -1j * si * (nx - 1j * ny)
    u[:, 1, 0] = -1j * si * (nx + 1j * ny)
    u[:, 1, 1] = c + 1j * si * nz
    return u


def _hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def average_quadrature(
    rho: DensityMatrix, s: Scenario, t: float, q: QuadratureSpec = QuadratureSpec()
) -> DensityMatrix:
    """Gaussian average of U(B) rho U(B)^dag by Gauss-Hermite quadrature."""
    if rho.dim != 2:
        raise ValueError(f"average_quadrature needs a 2x2 state, got dim {rho.dim}")
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    z, w = gauss_hermite_nodes(q.nodes)
    u = _unitary_stack(s.noise.vartheta * z, s, t)
    terms = (u @ rho.matrix) @ u.conj().transpose(0, 2, 1)
    out = np.tensordot(w, terms, axes=(0, 0))
    return DensityMatrix(_hermitize(out))


def two_qubit_average(
    rho4: DensityMatrix, s: Scenario, t: float, q: QuadratureSpec = QuadratureSpec()
) -> DensityMatrix:
    """Common-bath average of [U(B) (x) U(B)] rho4 [..]^dag (same B, same boost)."""
    if rho4.dim != 4:
        raise ValueError(f"two_qubit_average needs a 4x4 state, got dim {rho4.dim}")
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    z, w = gauss_hermite_nodes(q.nodes)
    u = _unitary_stack(s.noise.vartheta * z, s, t)
    out = np.zeros((4, 4), dtype=complex)
    for wi, ui in zip(w, u):
        u2 = tensor_product(ui, ui)
        out += wi * (u2 @ rho4.matrix @ u2.conj().T)
    return DensityMatrix(_hermitize(out))


def _box_muller_normals(seed: int, chunk_index: int, count: int) -> np.ndarray:
    """Standard normals from a Philox stream keyed by (seed, chunk_index)."""
    key = np.array([seed, chunk_index], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    half = (count + 1) // 2
    u1 = gen.random(half)
    u2 = gen.random(half)
    r = np.sqrt(-2.0 * np.log1p(-u1))  # 1-u1 in (0,1], no log(0)
    angle = (2.0 * np.pi) * u2
    return np.concatenate([r * np.cos(angle), r * np.sin(angle)])[:count]


def average_montecarlo(
    rho: DensityMatrix, s: Scenario, t: float, mc: McSpec = McSpec()
) -> tuple[DensityMatrix, float]:
    """Seeded Monte Carlo estimate of the Gaussian average.

    Returns the sample mean of U(B) rho U(B)^dag over
    B ~ N(0, vartheta**2) and a standard-error estimate: per-entry
    sample variances of the mean, aggregated in Frobenius norm.
    """
    if rho.dim != 2:
        raise ValueError(f"average_montecarlo needs a 2x2 state, got dim {rho.dim}")
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    nx, ny, nz = s.field.n
    scale = s.field.kappa * s.noise.mu * t * s.noise.vartheta
    m = rho.matrix
    r00, r01, r10, r11 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    acc = np.zeros(4, dtype=complex)
    acc_sq = np.zeros(4, dtype=float)
    done = 0
    chunk_index = 0
    while done < mc.samples:
        count = min(_MC_CHUNK, mc.samples - done)
        half = scale * _box_muller_normals(mc.seed, chunk_index, count)
        c, si = np.cos(half), np.sin(half)
        a = c - 1j * si * nz
        b = -1j * si * (nx - 1j * ny)
        g = -1j * si * (nx + 1j * ny)
        d = c + 1j * si * nz
        top0 = a * r00 + b * r10
        top1 = a * r01 + b * r11
        bot0 = g * r00 + d * r10
        bot1 = g * r01 + d * r11
        t00 = top0 * a.conj() + top1 * b.conj()
        t01 = top0 * g.conj() + top1 * d.conj()
        t10 = bot0 * a.conj() + bot1 * b.conj()
        t11 = bot0 * g.conj() + bot1 * d.conj()
        for k, entry in enumerate((t00, t01, t10, t11)):
            acc[k] += entry.sum()
            acc_sq[k] += (entry.real**2 + entry.imag**2).sum()
        done += count
        chunk_index += 1
    mean = acc / mc.samples
    if mc.samples > 1:
        var_mean = (acc_sq / mc.samples - (mean.real**2 + mean.imag**2)) / (mc.samples - 1)
        stderr = float(np.sqrt(np.clip(var_mean, 0.0, None).sum()))
    else:
        stderr = float("inf")
    out = mean.reshape(2, 2)
    return DensityMatrix(_hermitize(out)), stderr
