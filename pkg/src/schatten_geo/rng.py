"""Deterministic randomness: Philox counter-based substreams and matrix draws.

Every experiment derives an independent generator from
(seed, stream-label, trial-index), so trial results are reproducible no
matter how trials are scheduled.
"""

from __future__ import annotations

import numpy as np

from .linalg import exp_skew, schatten_norm


def _fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode():
        h ^= byte
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def substream(seed: int, label: str, trial: int = 0) -> np.random.Generator:
    """Counter-based 64-bit generator keyed by (seed, label, trial)."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
                    np.uint64(_fnv1a64(f"{label}/{trial}"))], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def complex_gaussian(rng: np.random.Generator, n: int) -> np.ndarray:
    """n x n matrix of i.i.d. standard complex Gaussians."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_skew(rng: np.random.Generator, n: int, norm: float | None = None, p=2) -> np.ndarray:
    """Rotation-invariant random skew-Hermitian matrix.

    m = (g - g*)/2 for a standard complex Gaussian g, optionally rescaled
    to the target p-norm ``norm``.
    """
    g = complex_gaussian(rng, n)
    m = (g - g.conj().T) / 2
    if norm is not None:
        current = schatten_norm(m, p)
        if current == 0.0:
            raise ValueError("cannot rescale the zero matrix")
        m = m * (norm / current)
    return m


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    g = complex_gaussian(rng, n)
    return scale * (g + g.conj().T) / 2


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian with phase fix."""
    q, r = np.linalg.qr(complex_gaussian(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def unitary_in_ball(rng: np.random.Generator, center: np.ndarray, radius: float, p) -> np.ndarray:
    """Unitary at geodesic p-distance < radius from ``center`` (uniform radius)."""
    n = center.shape[0]
    r = radius * rng.uniform(0.05, 0.999)
    return center @ exp_skew(random_skew(rng, n, norm=r, p=p))
