"""Confining potentials and composite quadrature for the weight exp(-N V(x)).

The rule absorbs the weight into its weights, so ``integrate(rule, f)``
approximates ``int f(x) exp(-N V(x)) dx`` over the real line.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConfigurationError, NumericError

__all__ = [
    "Potential",
    "QuadratureRule",
    "build_quadrature",
    "refine_near",
    "integrate",
    "truncation_radius",
]

_GAUSSIAN_COEFFS = (0.0, 0.0, 0.5)
_MAX_PANELS = 1 << 14


@dataclass(frozen=True)
class Potential:
    """Confining potential V and matrix size N.

    ``coefficients[j]`` multiplies ``x**j``. The gaussian kind is exactly
    ``V(x) = x**2 / 2``.
    """

    kind: str
    coefficients: tuple
    matrix_size: int

    def __post_init__(self):
        if self.kind not in ("gaussian", "polynomial"):
            raise ConfigurationError(f"kind: unknown potential kind {self.kind!r}")
        if isinstance(self.matrix_size, bool) or not isinstance(
            self.matrix_size, (int, np.integer)
        ):
            raise ConfigurationError("matrix_size: must be an integer")
        if self.matrix_size < 1:
            raise ConfigurationError("matrix_size: must be a positive integer")
        coeffs = tuple(float(c) for c in self.coefficients)
        if self.kind == "gaussian":
            if coeffs not in ((), _GAUSSIAN_COEFFS):
                raise ConfigurationError(
                    "coefficients: gaussian kind fixes V(x)=x^2/2; "
                    "give [] or [0, 0, 0.5]"
                )
            coeffs = _GAUSSIAN_COEFFS
        else:
            if not all(math.isfinite(c) for c in coeffs):
                raise ConfigurationError("coefficients: must be finite")
            while coeffs and coeffs[-1] == 0.0:
                coeffs = coeffs[:-1]
            degree = len(coeffs) - 1
            if degree < 2 or degree % 2 or coeffs[-1] <= 0:
                raise ConfigurationError(
                    "coefficients: weight exp(-N V) is not integrable; V needs "
                    "even degree >= 2 and a positive leading coefficient"
                )
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "matrix_size", int(self.matrix_size))

    @classmethod
    def gaussian(cls, matrix_size: int) -> "Potential":
        return cls("gaussian", _GAUSSIAN_COEFFS, matrix_size)

    @classmethod
    def polynomial(cls, coefficients: Sequence[float], matrix_size: int) -> "Potential":
        return cls("polynomial", tuple(coefficients), matrix_size)

    @property
    def is_even(self) -> bool:
        return all(c == 0.0 for c in self.coefficients[1::2])

    def V(self, x):
        """Potential at real or complex ``x``."""
        return P.polyval(x, self.coefficients)

    def weight(self, x):
        """``exp(-N V(x))``, analytic in ``x``."""
        return np.exp(-self.matrix_size * self.V(x))

    def minimum(self) -> float:
        """Global minimum of V on the real line."""
        crit = P.polyroots(P.polyder(self.coefficients))
        real = crit[np.abs(crit.imag) < 1e-9].real
        return float(np.min(self.V(real)))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "coefficients": list(self.coefficients),
            "matrix_size": self.matrix_size,
        }

    @classmethod
    def from_json(cls, doc) -> "Potential":
        """Parse ``{"kind", "coefficients", "matrix_size"}``; unknown keys rejected."""
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict):
            raise ConfigurationError("potential: expected a JSON object")
        allowed = {"kind", "coefficients", "matrix_size"}
        extra = set(doc) - allowed
        if extra:
            raise ConfigurationError(f"potential: unknown field(s) {sorted(extra)}")
        for key in ("kind", "matrix_size"):
            if key not in doc:
                raise ConfigurationError(f"potential.{key}: missing")
        coeffs = doc.get("coefficients", [])
        if not isinstance(coeffs, list) or not all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs
        ):
            raise ConfigurationError("potential.coefficients: expected a list of numbers")
        return cls(doc["kind"], tuple(coeffs), doc["matrix_size"])


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Composite Gauss-Legendre rule with the weight folded into ``weights``.

    ``gl_weights`` are the plain Gauss-Legendre weights, needed when an
    integrand must be handled without the weight (singularity subtraction).
    """

    nodes: np.ndarray
    weights: np.ndarray
    gl_weights: np.ndarray
    edges: np.ndarray
    truncation_radius: float
    points_per_panel: int
    potential: Potential
    target_tol: float
    degree: int = 0
    estimated_error: float = field(default=0.0)

    def __post_init__(self):
        for name in ("nodes", "weights", "gl_weights", "edges"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def panel_count(self) -> int:
        return len(self.edges) - 1

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def density(self) -> np.ndarray:
        """``exp(-N V)`` at the nodes."""
        return self.weights / self.gl_weights

    def total_mass(self) -> float:
        return float(np.sum(self.weights))


def truncation_radius(potential: Potential, cutoff: float, degree: int = 0) -> float:
    """Radius R beyond which ``|x|**degree * exp(-N V(x))`` stays below
    ``cutoff`` times its maximum over the real line.

    ``degree=0`` reduces to ``exp(-N (V(R) - min V)) = cutoff``.
    """
    n = potential.matrix_size
    coeffs = np.asarray(potential.coefficients)
    log_cut = -math.log(cutoff)

    if degree == 0:
        stationary = P.polyroots(P.polyder(coeffs))
    else:
        # stationary points of degree*log|x| - N V(x): degree - N x V'(x) = 0
        poly = -n * P.polymulx(P.polyder(coeffs))
        poly = P.polyadd(poly, [degree])
        stationary = P.polyroots(poly)
    stationary = stationary[np.abs(stationary.imag) < 1e-9].real
    if degree == 0 and stationary.size == 0:
        stationary = np.array([0.0])

    def g(x):
        out = -n * P.polyval(x, coeffs)
        if degree:
            out = out + degree * np.log(np.abs(x))
        return out

    peak = float(np.max(g(stationary)))
    level = peak - log_cut
    lo_anchor = float(np.min(stationary))
    hi_anchor = float(np.max(stationary))

    def solve(anchor, direction):
        step = 1.0
        inner = anchor
        outer = anchor + direction * step
        while g(outer) > level:
            inner = outer
            step *= 2.0
            outer = anchor + direction * step
            if step > 1e8:
                raise ConfigurationError("could not bracket the truncation radius")
        for _ in range(200):
            mid = 0.5 * (inner + outer)
            if g(mid) > level:
                inner = mid
            else:
                outer = mid
            if abs(outer - inner) < 1e-12 * max(1.0, abs(outer)):
                break
        return abs(outer)

    return max(solve(hi_anchor, 1.0), solve(lo_anchor, -1.0))


def _assemble(edges: np.ndarray, ppp: int, potential: Potential):
    t, w = np.polynomial.legendre.leggauss(ppp)
    a = edges[:-1, None]
    b = edges[1:, None]
    half = 0.5 * (b - a)
    nodes = (0.5 * (a + b) + half * t).ravel()
    gl = (half * w).ravel()
    dens = potential.weight(nodes)
    return nodes, gl * dens, gl


def _moment_error(nodes_a, w_a, nodes_b, w_b, degree, scale):
    """Worst relative moment mismatch up to ``degree`` between two rules."""
    worst = 0.0
    ya = nodes_a / scale
    yb = nodes_b / scale
    pa = np.ones_like(ya)
    pb = np.ones_like(yb)
    for _ in range(degree + 1):
        ma = np.dot(w_a, pa)
        mb = np.dot(w_b, pb)
        ref = np.dot(w_b, np.abs(pb))
        worst = max(worst, abs(ma - mb) / ref)
        pa = pa * ya
        pb = pb * yb
    return worst


def build_quadrature(
    potential: Potential,
    points_per_panel: int = 20,
    target_tol: float = 1e-13,
    max_degree: int = 0,
    sensitive: Iterable[complex] = (),
) -> QuadratureRule:
    """Composite Gauss-Legendre rule for ``exp(-N V(x)) dx``.

    Parameters
    ----------
    potential : Potential
    points_per_panel : int
        Gauss-Legendre points on each panel, at least 8.
    target_tol : float
        Relative accuracy target in ``(0, 1e-4]``.
    max_degree : int
        Largest polynomial index the rule must support. Monomials up to
        ``4 * max_degree`` are checked against a rule with doubled points
        per panel, and the truncation radius accounts for their growth.
    sensitive : iterable of complex
        Points ``eps`` near the real axis; panels within ``10 |Im eps|`` of
        ``Re eps`` are subdivided four times. Points further from the axis
        than half a panel width are ignored.
    """
    if not (0.0 < target_tol <= 1e-4):
        raise ConfigurationError("target_tol must lie in (0, 1e-4]")
    if points_per_panel < 8:
        raise ConfigurationError("points_per_panel must be at least 8")
    if max_degree < 0:
        raise ConfigurationError("max_degree must be non-negative")

    cutoff = target_tol * 1e-4
    degree = 4 * max_degree
    radius = truncation_radius(potential, cutoff, 0)
    if degree:
        radius = max(radius, truncation_radius(potential, cutoff, degree))

    panels = max(4, 2 * math.ceil(radius))
    panels += panels % 2
    while True:
        edges = np.linspace(-radius, radius, panels + 1)
        nodes, weights, gl = _assemble(edges, points_per_panel, potential)
        nodes2, weights2, _ = _assemble(edges, 2 * points_per_panel, potential)
        err = _moment_error(nodes, weights, nodes2, weights2, degree, radius)
        if err <= target_tol:
            break
        panels *= 2
        if panels > _MAX_PANELS:
            raise ConfigurationError(
                f"quadrature did not reach tolerance {target_tol:g} (last error {err:.3g})"
            )

    rule = QuadratureRule(
        nodes=nodes,
        weights=weights,
        gl_weights=gl,
        edges=edges,
        truncation_radius=radius,
        points_per_panel=points_per_panel,
        potential=potential,
        target_tol=target_tol,
        degree=degree,
        estimated_error=err,
    )
    width = 2.0 * radius / panels
    near = [e for e in map(complex, sensitive) if abs(e.imag) < 0.5 * width]
    if near:
        rule = refine_near(rule, near)
    return rule


def refine_near(rule: QuadratureRule, eps, factor: int = 4) -> QuadratureRule:
    """Subdivide every panel lying within ``10 |Im e|`` of ``Re e`` for any
    of the points ``eps`` (a complex number or an iterable of them) into
    ``factor`` equal parts. A single pass; refinements do not compound.
    """
    points = [complex(eps)] if np.isscalar(eps) else [complex(e) for e in eps]
    edges = rule.edges
    a, b = edges[:-1], edges[1:]
    hit = np.zeros(a.size, dtype=bool)
    for e in points:
        dist = np.maximum(0.0, np.maximum(a - e.real, e.real - b))
        hit |= dist <= 10.0 * abs(e.imag)
    if not hit.any():
        return rule
    new_edges = [edges[:1]]
    for lo, hi, flag in zip(a, b, hit):
        if flag:
            new_edges.append(np.linspace(lo, hi, factor + 1)[1:])
        else:
            new_edges.append(np.array([hi]))
    edges = np.concatenate(new_edges)
    nodes, weights, gl = _assemble(edges, rule.points_per_panel, rule.potential)
    return QuadratureRule(
        nodes=nodes,
        weights=weights,
        gl_weights=gl,
        edges=edges,
        truncation_radius=rule.truncation_radius,
        points_per_panel=rule.points_per_panel,
        potential=rule.potential,
        target_tol=rule.target_tol,
        degree=rule.degree,
        estimated_error=rule.estimated_error,
    )


def integrate(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> complex:
    """``sum(weights * f(nodes))``; ``f`` must be vectorised over the nodes."""
    values = np.asarray(f(rule.nodes))
    if values.shape == ():
        values = np.full(rule.size, values)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NumericError(f"integrand is not finite at node {i} (x={rule.nodes[i]!r})")
    return complex(np.dot(rule.weights, values))
