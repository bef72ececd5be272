"""Differential calculus of the matrix exponential on skew-Hermitian matrices.

Centred on the entire function F(z) = (e^z - 1)/z: the differential of exp at
a is dexp_a = e^a F(ad a) with ad a x = xa - ax, diagonalized by the
eigenbasis of a.  Also provides the inverse, the monotone bound
g(r) = r/sin(r) controlling ||F(ad w)^{-1}||, and the Hessian bilinear form
of the p-norm with its quadratic form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import as_square, schatten_norm

# Eigenphase-gap guard for inverting F(ad a): F(i d) vanishes iff d = 2k*pi.
GAP_GUARD = 1e-8


def _skew_eigenbasis(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases theta and frame U with a = U diag(i theta) U*."""
    a = as_square(a)
    h = -1j * a
    return np.linalg.eigh((h + h.conj().T) / 2)


def _f_scalar(delta: np.ndarray) -> np.ndarray:
    """F(i delta) = (e^{i delta} - 1)/(i delta) = e^{i delta/2} sinc(delta/2).

    The product form is exact for all delta (np.sinc handles 0), so no
    small-argument series branch is needed.
    """
    return np.exp(0.5j * delta) * np.sinc(delta / (2 * np.pi))


@dataclass
class AdOperator:
    """The operator ad a: x -> xa - ax, carried in the eigenbasis of a."""

    base: np.ndarray
    eigenphases: np.ndarray = field(init=False)
    frame: np.ndarray = field(init=False)

    def __post_init__(self):
        self.base = as_square(self.base)
        self.eigenphases, self.frame = _skew_eigenbasis(self.base)

    @property
    def phase_gaps(self) -> np.ndarray:
        """Matrix of gaps theta_k - theta_j, entry (j, k)."""
        t = self.eigenphases
        return t[None, :] - t[:, None]

    def apply(self, x) -> np.ndarray:
        u = self.frame
        xt = u.conj().T @ as_square(x) @ u
        return u @ (1j * self.phase_gaps * xt) @ u.conj().T

    def apply_entire(self, multipliers: np.ndarray, x) -> np.ndarray:
        """Apply an entire function of ad a given its values on i * gaps."""
        u = self.frame
        xt = u.conj().T @ as_square(x) @ u
        return u @ (multipliers * xt) @ u.conj().T


def f_ad_apply(a, b) -> np.ndarray:
    """Apply F(ad a) to b: entrywise F(i(theta_k - theta_j)) in a's eigenbasis."""
    ad = AdOperator(a)
    return ad.apply_entire(_f_scalar(ad.phase_gaps), b)


def f_ad_inverse_apply(a, w) -> np.ndarray:
    """Apply F(ad a)^{-1} to w; requires all eigenphase gaps below 2*pi.

    Raises
    ------
    ValueError
        If some gap reaches 2*pi (within the guard): the spectrum of ad a
        meets {2k*pi*i, k != 0} and F(ad a) is not invertible.  Guaranteed
        not to happen when ||a|| < pi.
    """
    ad = AdOperator(a)
    gaps = ad.phase_gaps
    if np.max(np.abs(gaps)) >= 2 * np.pi - GAP_GUARD:
        raise ValueError(
            "F(ad a) is not invertible: an eigenphase gap reaches 2*pi, so "
            "sigma(ad a) meets {2k*pi*i}; this cannot happen for ||a|| < pi"
        )
    return ad.apply_entire(1.0 / _f_scalar(gaps), w)


def dexp(a, b) -> np.ndarray:
    """Differential of exp at skew-Hermitian a applied to b: e^a F(ad a) b."""
    from .linalg import exp_skew

    return exp_skew(a) @ f_ad_apply(a, b)


def dexp_inv(a, w) -> np.ndarray:
    """Inverse differential: e^{-a} F(ad a)^{-1} w."""
    from .linalg import exp_skew

    return exp_skew(-np.asarray(a)) @ f_ad_inverse_apply(a, w)


def g_bound(r):
    """g(r) = r / sin(r) on [0, pi), with g(0) = 1; positive and increasing.

    Dominates the operator norm of F(ad w)^{-1} whenever ||w|| <= r.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r >= np.pi):
        raise ValueError("g(r) = r/sin(r) requires 0 <= r < pi")
    out = 1.0 / np.sinc(r / np.pi)
    return float(out) if out.ndim == 0 else out


def hessian_H(a, b, c, p: int) -> float:
    """Hessian bilinear form of the p-norm at skew-Hermitian a.

    H_a(b, c) = (-1)^(p/2) * p * sum_{k=0}^{p-2} Tr(a^{p-2-k} b a^k c);
    symmetric in (b, c) and positive semidefinite as a quadratic form.
    """
    p = _validate_even_p(p)
    a, b, c = as_square(a), as_square(b), as_square(c)
    powers = _matrix_powers(a, p - 2)
    acc = 0.0 + 0.0j
    for k in range(p - 1):
        acc += np.trace(powers[p - 2 - k] @ b @ powers[k] @ c)
    value = (-1) ** (p // 2) * p * acc
    return float(value.real)


def hessian_Q(a, b, p: int) -> float:
    """Quadratic form Q_a(b) = H_a(b, b) >= 0."""
    return hessian_H(a, b, b, p)


def q_commutator_bound_check(a, b, p: int) -> tuple[float, float]:
    """Both sides of Q_a([b, a]) <= 4 ||a||_inf^2 Q_a(b), as (lhs, rhs)."""
    a, b = as_square(a), as_square(b)
    comm = b @ a - a @ b
    lhs = hessian_Q(a, comm, p)
    rhs = 4.0 * schatten_norm(a, np.inf) ** 2 * hessian_Q(a, b, p)
    return lhs, rhs


def _matrix_powers(a: np.ndarray, kmax: int) -> list[np.ndarray]:
    powers = [np.eye(a.shape[0], dtype=complex)]
    for _ in range(kmax):
        powers.append(powers[-1] @ a)
    return powers


def _validate_even_p(p) -> int:
    if not isinstance(p, (int, np.integer)) or p < 2 or p % 2 != 0:
        raise ValueError(f"expected an even integer p >= 2, got {p!r}")
    return int(p)
