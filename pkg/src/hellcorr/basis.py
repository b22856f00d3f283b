"""Orthonormal shifted Legendre polynomials on [0, 1].

The series machinery expands the square root of the copula density in the
tensor products b_k(u1) b_l(u2), where b_k is the Legendre polynomial of
degree k shifted to [0, 1] and normalized so that its L2 norm is one:
b_k(u) = sqrt(2k+1) P_k(2u - 1). b_0 is identically 1.
"""

import numpy as np

from .errors import CapabilityError, DomainError

MAX_DEGREE = 20


def _check_unit(u):
    u = np.asarray(u, dtype=float)
    if np.any(u < 0.0) or np.any(u > 1.0):
        raise DomainError("basis arguments must lie in [0, 1]")
    return u


def design_matrix(u, max_degree):
    """Evaluate b_0..b_max_degree at each u, as an (n, max_degree+1) array.

    Uses the three-term recurrence for P_k, which is stable for every degree
    this module supports; the scaling to orthonormal form is applied once at
    the end.
    """
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    if max_degree > MAX_DEGREE:
        raise CapabilityError(f"basis degree {max_degree} exceeds the supported maximum {MAX_DEGREE}")
    u = _check_unit(np.atleast_1d(u))
    x = 2.0 * u - 1.0
    out = np.empty((u.size, max_degree + 1))
    out[:, 0] = 1.0
    if max_degree >= 1:
        out[:, 1] = x
    for k in range(1, max_degree):
        out[:, k + 1] = ((2 * k + 1) * x * out[:, k] - k * out[:, k - 1]) / (k + 1)
    return out * np.sqrt(2.0 * np.arange(max_degree + 1) + 1.0)


def basis_eval(k, u):
    """Value of the degree-k orthonormal shifted Legendre polynomial at u."""
    if k < 0:
        raise DomainError("degree must be >= 0")
    scalar = np.isscalar(u)
    vals = design_matrix(u, k)[:, k]
    return float(vals[0]) if scalar else vals


def basis_row(u1, u2, K, L):
    """Tensor-product values b_k(u1) * b_l(u2) as a (K+1, L+1) matrix."""
    p = design_matrix(u1, K)[0]
    q = design_matrix(u2, L)[0]
    return np.outer(p, q)
