"""Dense complex-matrix substrate.

Constrained constructors (Hermitian / skew-Hermitian / unitary), Schatten
norms from singular values, principal logarithms of unitaries, exponentials
of skew-Hermitian matrices, polar factors, clustered spectral projections,
and the JSON interchange format shared by every other module.

All matrices are plain ``numpy.ndarray`` of complex128; the constructors
return the exactly constrained representative (symmetrized or
re-orthonormalized) after validating a construction tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

# Construction tolerances.  Downstream identities are tested to tighter
# tolerances than input noise, hence inputs are re-constrained exactly.
ETA_HERM = 1e-8
ETA_UNIT = 1e-8
ETA_SING = 1e-12


def as_square(m) -> np.ndarray:
    """Coerce to a complex square matrix of dimension >= 1."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_hermitian(m, tol: float = ETA_HERM) -> np.ndarray:
    """Validate ||m - m*||_F <= tol and return the exact symmetrization."""
    m = as_square(m)
    dev = np.linalg.norm(m - m.conj().T)
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: ||m - m*||_F = {dev:.3e} > {tol:.1e}")
    return (m + m.conj().T) / 2


def as_skew_hermitian(m, tol: float = ETA_HERM) -> np.ndarray:
    """Validate ||m + m*||_F <= tol and return the exact antisymmetrization."""
    m = as_square(m)
    dev = np.linalg.norm(m + m.conj().T)
    if dev > tol:
        raise ValueError(f"matrix is not skew-Hermitian: ||m + m*||_F = {dev:.3e} > {tol:.1e}")
    return (m - m.conj().T) / 2


def as_unitary(u, tol: float = ETA_UNIT) -> np.ndarray:
    """Validate ||u*u - 1||_F <= tol and return the re-orthonormalized factor."""
    u = as_square(u)
    dev = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if dev > tol:
        raise ValueError(f"matrix is not unitary: ||u*u - 1||_F = {dev:.3e} > {tol:.1e}")
    w, _, vh = np.linalg.svd(u)
    return w @ vh


def _validate_p(p):
    """Normalize the norm index: an even integer >= 2, or infinity."""
    if p == np.inf:
        return np.inf
    if isinstance(p, float):
        if not p.is_integer():
            raise ValueError(f"norm index must be an even integer >= 2 or inf, got {p}")
        p = int(p)
    if not isinstance(p, (int, np.integer)):
        raise ValueError(f"norm index must be an even integer >= 2 or inf, got {p!r}")
    if p < 2 or p % 2 != 0:
        raise ValueError(f"norm index must be an even integer >= 2 or inf, got {p}")
    return int(p)


def singular_values(m) -> np.ndarray:
    """Singular values, descending, via a Hermitian eigensolve of m*m.

    Never powers ``m`` directly; the Gram matrix route is used for all
    Schatten norms for numerical stability.
    """
    m = as_square(m)
    gram = m.conj().T @ m
    ev = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    return np.sqrt(np.clip(ev, 0.0, None))[::-1]


def schatten_norm(m, p) -> float:
    """Schatten p-norm (sum of p-th powers of singular values, p-th root).

    Parameters
    ----------
    m : array_like
        Square complex matrix.
    p : even int >= 2, or ``inf``
        ``inf`` gives the operator norm (largest singular value).
    """
    p = _validate_p(p)
    s = singular_values(m)
    if p == np.inf:
        return float(s[0])
    return float(np.sum(s**p) ** (1.0 / p))


def unitary_eigenphases(u) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigenphases in (-pi, pi], eigenvalues and an orthonormal frame of u.

    Uses the complex Schur form, so the frame is orthonormal even for
    degenerate eigenvalue clusters.  The eigenvalue -1 maps to phase +pi.
    """
    u = as_square(u)
    t, q = scipy.linalg.schur(u, output="complex")
    lam = np.diag(t).copy()
    phases = np.angle(lam)
    # atan2(-0.0, x<0) yields -pi; pin the branch at +pi.
    phases[phases <= -np.pi + 1e-14] = np.pi
    return phases, lam, q


def unitary_log(u) -> np.ndarray:
    """Principal logarithm of a unitary: skew-Hermitian z with exp(z) = u.

    Eigenphases lie in (-pi, pi], so ||z|| <= pi; the result is exactly
    antisymmetrized.
    """
    phases, _, q = unitary_eigenphases(u)
    z = (q * (1j * phases)) @ q.conj().T
    return (z - z.conj().T) / 2


def exp_skew(z) -> np.ndarray:
    """Unitary exponential of a skew-Hermitian matrix, via eigendecomposition."""
    z = as_square(z)
    h = -1j * z
    theta, v = np.linalg.eigh((h + h.conj().T) / 2)
    return (v * np.exp(1j * theta)) @ v.conj().T


def polar_unitary_part(g, eta_sing: float = ETA_SING) -> np.ndarray:
    """Unitary factor of the polar decomposition g = Omega(g) (g*g)^(1/2).

    Raises
    ------
    ValueError
        If the smallest singular value is below ``eta_sing`` times the
        largest: g is numerically singular, which signals that an upstream
        caller violated the cross-section precondition ||b - A||_2 < C_A.
    """
    g = as_square(g)
    w, s, vh = np.linalg.svd(g)
    if s[-1] <= eta_sing * max(s[0], 1.0):
        raise ValueError(
            "polar factor undefined: matrix is numerically singular "
            f"(smallest singular value {s[-1]:.3e}); an upstream precondition "
            "of the form ||b - A||_2 < C_A was likely violated"
        )
    return w @ vh


@dataclass
class SpectralDecomposition:
    """Clustered spectral resolution A = sum_i lambda_i p_i of a Hermitian matrix.

    ``eigenvalues`` holds one representative (cluster mean) per cluster,
    ``projections`` the corresponding orthogonal idempotents, ``frame`` the
    orthonormal eigenvector matrix and ``slices`` the per-cluster column
    ranges into it.
    """

    eigenvalues: np.ndarray
    projections: list[np.ndarray]
    multiplicities: list[int]
    frame: np.ndarray
    slices: list[slice] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    @property
    def n_clusters(self) -> int:
        return len(self.multiplicities)

    def reconstruct(self) -> np.ndarray:
        return sum(lam * p for lam, p in zip(self.eigenvalues, self.projections))

    def index_values(self) -> np.ndarray:
        """Cluster representative for each eigenvector column, length dim."""
        out = np.empty(self.dim)
        for lam, sl in zip(self.eigenvalues, self.slices):
            out[sl] = lam
        return out


def spectral_projections(a, tau_cluster: float | None = None) -> SpectralDecomposition:
    """Cluster the spectrum of a Hermitian matrix and build its projections.

    Eigenvalues whose consecutive gaps are <= ``tau_cluster`` are merged
    into one cluster (chained); distinct clusters are separated by more
    than ``tau_cluster``.  Default tolerance is 1e-8 times the operator
    norm of ``a``.
    """
    a = as_hermitian(a)
    w, v = np.linalg.eigh(a)
    if tau_cluster is None:
        tau_cluster = 1e-8 * float(np.max(np.abs(w), initial=0.0))
    elif tau_cluster <= 0:
        raise ValueError("tau_cluster must be positive")
    starts = [0]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > tau_cluster:
            starts.append(i)
    starts.append(len(w))
    slices = [slice(starts[i], starts[i + 1]) for i in range(len(starts) - 1)]
    eigenvalues = np.array([w[sl].mean() for sl in slices])
    projections = [v[:, sl] @ v[:, sl].conj().T for sl in slices]
    multiplicities = [sl.stop - sl.start for sl in slices]
    return SpectralDecomposition(eigenvalues, projections, multiplicities, v, slices)


# --- JSON interchange format -------------------------------------------------
#
# {"dim": n, "entries": [[[re, im], ...], ...]} row-major; floats round-trip
# exactly (shortest repr carries full double precision).


def matrix_to_json(m) -> dict:
    m = as_square(m)
    return {
        "dim": m.shape[0],
        "entries": [[[float(x.real), float(x.imag)] for x in row] for row in m],
    }


def matrix_from_json(obj) -> np.ndarray:
    dim = int(obj["dim"])
    entries = obj["entries"]
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise ValueError(f"entries are not {dim}x{dim}")
    m = np.array([[complex(re, im) for re, im in row] for row in entries])
    return as_square(m)


def save_matrix(path, m) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(m), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
