"""Gauss-Hermite expectations under a normal law."""

from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.hermite import hermgauss

from ..config import get_quadrature_nodes
from ..models.errors import InvalidInput, NonFinite

MIN_NODES = 8


@lru_cache(maxsize=32)
def _hermite_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = hermgauss(nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def normal_rule(mu: float, sigma: float, nodes: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights such that sum(w * f(u)) approximates E f(U), U ~ N(mu, sigma^2).

    Uses the change of variables u = mu + sqrt(2) * sigma * x with weights w / sqrt(pi).
    """
    nodes = get_quadrature_nodes() if nodes is None else int(nodes)
    if nodes < MIN_NODES:
        raise InvalidInput(f"quadrature needs at least {MIN_NODES} nodes, got {nodes}")
    if not sigma > 0:
        raise InvalidInput(f"sigma must be positive, got {sigma}")
    x, w = _hermite_rule(nodes)
    return mu + np.sqrt(2.0) * sigma * x, w / np.sqrt(np.pi)


def normal_expectation(
    f: Callable[[np.ndarray], np.ndarray],
    mu: float,
    sigma: float,
    nodes: Optional[int] = None,
) -> float:
    """E f(U) for U ~ N(mu, sigma^2) by Gauss-Hermite quadrature.

    Args:
        f: Integrand; called once on the node array, or per node when it does
            not return one value per node.
        mu: Mean of U.
        sigma: Standard deviation of U.
        nodes: Number of nodes (>= 8); defaults to CWMED_QUADRATURE_NODES.

    Returns:
        The quadrature value of the integral of f against the normal density.

    Raises:
        NonFinite: f returned a non-finite value at some node.
    """
    u, w = normal_rule(mu, sigma, nodes)
    try:
        values = np.asarray(f(u), dtype=float)
    except TypeError:
        values = np.empty(0)
    if values.shape != u.shape:
        values = np.array([float(f(float(x))) for x in u])
    if not np.all(np.isfinite(values)):
        raise NonFinite("integrand is not finite at every quadrature node")
    return float((values * w).sum())
