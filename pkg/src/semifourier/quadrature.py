"""Deterministic composite Gauss-Legendre integration on [a, b].

A fixed rule (panel count and nodes per panel) is used for every integral;
there is no adaptivity, so repeated runs are bit-identical.  The rule with q
nodes per panel integrates polynomials of degree <= 2q - 1 exactly on each
panel.  The default budget (64 panels x 10 nodes) is sized for products of
basis functions up to mode index around 40 together with smooth factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import (
    InvalidConfigError,
    NonFiniteIntegrandError,
    SemiFourierError,
)
from .spectral import SpectralConfig, TrigPolynomial, derivative_evaluator

__all__ = [
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    "integrate",
    "l2_inner",
    "composite_rule",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule: panel count, nodes per panel, tolerance."""

    panels: int = 64
    nodes_per_panel: int = 10
    abs_tol: float = 1e-10

    def __post_init__(self) -> None:
        if isinstance(self.panels, bool) or not isinstance(self.panels, (int, np.integer)) or self.panels < 1:
            raise InvalidConfigError(f"panels must be a positive integer, got {self.panels!r}")
        if (
            isinstance(self.nodes_per_panel, bool)
            or not isinstance(self.nodes_per_panel, (int, np.integer))
            or self.nodes_per_panel < 2
        ):
            raise InvalidConfigError(f"nodes_per_panel must be an integer >= 2, got {self.nodes_per_panel!r}")
        if not (isinstance(self.abs_tol, (int, float)) and math.isfinite(self.abs_tol) and self.abs_tol > 0):
            raise InvalidConfigError(f"abs_tol must be positive and finite, got {self.abs_tol!r}")
        object.__setattr__(self, "panels", int(self.panels))
        object.__setattr__(self, "nodes_per_panel", int(self.nodes_per_panel))
        object.__setattr__(self, "abs_tol", float(self.abs_tol))


DEFAULT_QUADRATURE = QuadratureSpec()


@lru_cache(maxsize=None)
def _reference_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@lru_cache(maxsize=None)
def _composite_rule(a: float, b: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _reference_rule(order)
    h = (b - a) / panels
    starts = a + h * np.arange(panels)
    nodes = (starts[:, None] + (x[None, :] + 1.0) * (h / 2.0)).ravel()
    weights = np.tile(w * (h / 2.0), panels)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def composite_rule(cfg: SpectralConfig, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Nodes and weights of the composite rule on [a, b] (read-only arrays)."""
    return _composite_rule(cfg.a, cfg.b, spec.panels, spec.nodes_per_panel)


def _values_on(g: Callable, nodes: np.ndarray) -> np.ndarray:
    """Evaluate g on all nodes, falling back to a scalar loop when needed."""
    try:
        values = np.asarray(g(nodes))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SemiFourierError):
            raise
        values = None
    if values is not None and values.shape == ():
        values = np.full(nodes.shape, values[()])
    if values is None or values.shape != nodes.shape:
        values = np.asarray([g(float(t)) for t in nodes])
    return values


def integrate(g: Callable, cfg: SpectralConfig, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Composite Gauss-Legendre approximation of the integral of g over [a, b].

    Parameters
    ----------
    g : callable
        Real- or complex-valued integrand; should accept numpy arrays.
    cfg : SpectralConfig
        Supplies the interval.
    spec : QuadratureSpec, optional
        Rule parameters.

    Returns
    -------
    float or complex
        Weighted node sum in a fixed order (numpy pairwise summation), so
        the result is deterministic for a given spec.

    Raises
    ------
    NonFiniteIntegrandError
        If g produces NaN or infinity at any node.
    """
    nodes, weights = composite_rule(cfg, spec)
    values = _values_on(g, nodes)
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)]
        raise NonFiniteIntegrandError(
            f"integrand not finite at node x={float(np.ravel(bad)[0])!r}"
        )
    total = np.sum(weights * values)
    if np.iscomplexobj(values):
        return complex(total)
    return float(total)


def l2_inner(f, g, cfg: SpectralConfig, spec: QuadratureSpec = DEFAULT_QUADRATURE, *,
             force_quadrature: bool = False) -> complex:
    """L2 inner product (f, g) = integral of f * conj(g) over [a, b].

    For a pair of trig polynomials the value is computed exactly from the
    coefficients (the basis is orthonormal); every other combination goes
    through quadrature.  ``force_quadrature=True`` takes the quadrature
    route unconditionally, which verification code uses as an independent
    cross-check of the coefficient path.
    """
    if isinstance(f, TrigPolynomial) and isinstance(g, TrigPolynomial) and not force_quadrature:
        _check_config(f, cfg)
        _check_config(g, cfg)
        total = 0j
        for mode, coeff in f.items():
            other = g.coefficient(mode)
            if other != 0:
                total += coeff * other.conjugate()
        return total
    fe = derivative_evaluator(f, 0)
    ge = derivative_evaluator(g, 0)

    def integrand(x):
        return np.asarray(fe(x)) * np.conjugate(np.asarray(ge(x)))

    return complex(integrate(integrand, cfg, spec))


def _check_config(p: TrigPolynomial, cfg: SpectralConfig) -> None:
    if p.config != cfg:
        raise InvalidConfigError(
            f"trig polynomial config {p.config} does not match requested config {cfg}"
        )
