"""
Chebyshev polynomials, Gauss-Chebyshev rules and the Cauchy-transform relation.
"""
from functools import lru_cache
from typing import Optional

import numpy as np

from stripcrack.models.quadrature import ChebKind, ChebRule


def _check_domain(x: np.ndarray) -> None:
    if np.any(np.abs(x) > 1.0):
        raise ValueError("Chebyshev argument must lie in [-1, 1]")


def cheb_t_table(m_max: int, x) -> np.ndarray:
    """
    T_0..T_{m_max} at every x by forward recurrence.

    Args:
        m_max: highest degree
        x: evaluation points in [-1, 1]

    Returns:
        Array of shape (m_max + 1,) + shape(x)
    """
    if m_max < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    table = np.empty((m_max + 1,) + x.shape)
    table[0] = 1.0
    if m_max >= 1:
        table[1] = x
    for m in range(2, m_max + 1):
        table[m] = 2.0 * x * table[m - 1] - table[m - 2]
    return table


def cheb_u_table(m_max: int, x) -> np.ndarray:
    """U_0..U_{m_max} at every x by forward recurrence."""
    if m_max < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    _check_domain(x)
    table = np.empty((m_max + 1,) + x.shape)
    table[0] = 1.0
    if m_max >= 1:
        table[1] = 2.0 * x
    for m in range(2, m_max + 1):
        table[m] = 2.0 * x * table[m - 1] - table[m - 2]
    return table


def cheb_t(m: int, x: float) -> float:
    """First-kind Chebyshev polynomial T_m(x)."""
    return float(cheb_t_table(m, x)[m])


def cheb_u(m: int, x: float) -> float:
    """Second-kind Chebyshev polynomial U_m(x)."""
    return float(cheb_u_table(m, x)[m])


@lru_cache(maxsize=256)
def _rule_arrays(kind: ChebKind, n: int):
    j = np.arange(1, n + 1)
    if kind is ChebKind.FIRST:
        nodes = np.cos((2 * j - 1) * np.pi / (2 * n))
        weights = np.full(n, np.pi / n)
    else:
        theta = j * np.pi / (n + 1)
        nodes = np.cos(theta)
        weights = (np.pi / (n + 1)) * np.sin(theta) ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def cheb_rule(kind: ChebKind, n: int) -> ChebRule:
    """
    Gauss-Chebyshev rule of the given kind.

    Kind 1 integrates against 1/sqrt(1-x^2), kind 2 against sqrt(1-x^2); both are
    exact for polynomials of degree <= 2n - 1.
    """
    if n < 1:
        raise ValueError("rule size must be at least 1")
    kind = ChebKind(kind)
    nodes, weights = _rule_arrays(kind, n)
    return ChebRule(kind=kind, n=n, nodes=nodes, weights=weights)


def cauchy_transform_t(m: int, y: float) -> float:
    """(1/pi) PV int T_m(eta) / ((eta - y) sqrt(1 - eta^2)) d eta = U_{m-1}(y)."""
    if m < 1:
        raise ValueError("transform defined for m >= 1")
    if abs(y) >= 1.0:
        raise ValueError("y must lie strictly inside (-1, 1)")
    return cheb_u(m - 1, y)


def chebyshev_coefficients(values, m_max: Optional[int] = None) -> np.ndarray:
    """
    Discrete Chebyshev transform of samples at the kind-1 nodes.

    Args:
        values: samples at cos((2j-1) pi / 2n), j = 1..n, real or complex
        m_max: highest degree returned (default n - 1)

    Returns:
        c_0..c_{m_max} with c_0 = mean and c_m = (2/n) sum values * T_m
    """
    values = np.asarray(values)
    n = values.shape[0]
    if m_max is None:
        m_max = n - 1
    nodes, _ = _rule_arrays(ChebKind.FIRST, n)
    t = cheb_t_table(m_max, nodes)
    coeffs = (2.0 / n) * (t @ values)
    coeffs[0] /= 2.0
    return coeffs


def sin_product_integral(n: int, m: int) -> float:
    """int_0^pi sin(n t) sin(m t) sin(t) dt in closed form."""

    def cos_sin_integral(k: int) -> float:
        # int_0^pi cos(k t) sin(t) dt
        return 2.0 / (1.0 - k * k) if k % 2 == 0 else 0.0

    return 0.5 * (cos_sin_integral(n - m) - cos_sin_integral(n + m))
