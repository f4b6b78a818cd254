"""Dense Hermitian helpers shared by the simulation modules."""

from dataclasses import dataclass
from functools import reduce
from typing import Any, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

HERMITICITY_RTOL = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense Hermitian matrix tagged with the basis it acts on and its energy unit."""

    matrix: np.ndarray
    basis: Optional[Any] = None
    unit: str = "rad/s"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator must be square, got shape {m.shape}")
        if self.basis is not None and len(self.basis) != m.shape[0]:
            raise ValueError(
                f"dimension mismatch: matrix {m.shape[0]} vs basis {len(self.basis)}"
            )
        scale = np.max(np.abs(m)) if m.size else 0.0
        if scale > 0 and np.max(np.abs(m - m.conj().T)) > HERMITICITY_RTOL * scale:
            raise ValueError("operator is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def eigh(self):
        return np.linalg.eigh(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def expm_hermitian(h, dt):
    """exp(-i h dt) for a single (d, d) or stacked (n, d, d) Hermitian array.

    Works through the eigendecomposition, so the result is unitary to
    round-off regardless of dt.
    """
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * w * dt)
    return (v * phases[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def kron_all(*ops):
    return reduce(np.kron, ops)


def site_operator(op, site, n_sites, local_dim=2):
    """Embed a single-site operator; site 0 is the leftmost tensor factor."""
    eye = np.eye(local_dim, dtype=complex)
    return kron_all(*[op if k == site else eye for k in range(n_sites)])


def connected_blocks(matrix, atol=0.0):
    """Index sets of the connected components of a matrix's sparsity graph."""
    pattern = csr_matrix(np.abs(matrix) > atol)
    n_comp, labels = connected_components(pattern, directed=False)
    return [np.flatnonzero(labels == k) for k in range(n_comp)]


def fix_phase(vec, index):
    """Rotate ``vec`` so that ``vec[index]`` is real and positive."""
    amp = vec[index]
    if amp == 0:
        return vec
    return vec * (abs(amp) / amp)
