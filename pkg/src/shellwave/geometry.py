"""Parametrized closed planar curves, tubular neighborhoods, and their grids.

Curves are given by global C^2 parametrizations on [0, 2*pi).  Boundary
integrals use the spectrally accurate trapezoidal rule in the curve
parameter; tube integrals add a Gauss-Legendre transverse rule whose panels
respect the transverse profile's breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_panels, periodic_nodes

__all__ = [
    "PlanarCurve",
    "TubeGrid",
    "make_curve",
    "tube_point",
    "tube_jacobian",
    "injectivity_bound",
    "make_tube_grid",
]


@dataclass(frozen=True)
class PlanarCurve:
    """Sampled closed curve with analytic evaluators.

    ``weights`` are the trapezoidal arclength weights (2*pi/n)*|gamma'(s_i)|,
    so sums against them are boundary integrals.  Curvature follows the
    convex-positive convention (unit circle: kappa = 1); the tube Jacobian
    is the literal factor 1 - t*kappa.
    """

    kind: str
    params: tuple
    n: int
    s: np.ndarray
    points: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    curvature: np.ndarray
    speed: np.ndarray
    weights: np.ndarray
    _gamma: callable
    _dgamma: callable
    _ddgamma: callable

    def point(self, s):
        return self._gamma(np.asarray(s, dtype=float))

    def normal(self, s):
        d = self._dgamma(np.asarray(s, dtype=float))
        sp = np.linalg.norm(d, axis=-1, keepdims=True)
        return np.stack([d[..., 1], -d[..., 0]], axis=-1) / sp

    def speed_at(self, s):
        return np.linalg.norm(self._dgamma(np.asarray(s, dtype=float)), axis=-1)

    def curvature_at(self, s):
        d = self._dgamma(np.asarray(s, dtype=float))
        dd = self._ddgamma(np.asarray(s, dtype=float))
        sp = np.linalg.norm(d, axis=-1)
        return (d[..., 0] * dd[..., 1] - d[..., 1] * dd[..., 0]) / sp ** 3

    @property
    def centroid(self):
        return np.sum(self.points * self.weights[:, None], axis=0) / np.sum(self.weights)

    @property
    def arclength(self):
        return float(np.sum(self.weights))


def _curve_maps(kind: str, p: dict):
    if kind == "circle":
        R = p.get("radius", 1.0)
        if R <= 0:
            raise ValueError("circle radius must be positive")

        def g(s):
            return np.stack([R * np.cos(s), R * np.sin(s)], axis=-1)

        def dg(s):
            return np.stack([-R * np.sin(s), R * np.cos(s)], axis=-1)

        def ddg(s):
            return np.stack([-R * np.cos(s), -R * np.sin(s)], axis=-1)

        return g, dg, ddg, (("radius", R),)

    if kind == "ellipse":
        a, b = p.get("a", 2.0), p.get("b", 1.0)
        if a <= 0 or b <= 0:
            raise ValueError("ellipse semi-axes must be positive")

        def g(s):
            return np.stack([a * np.cos(s), b * np.sin(s)], axis=-1)

        def dg(s):
            return np.stack([-a * np.sin(s), b * np.cos(s)], axis=-1)

        def ddg(s):
            return np.stack([-a * np.cos(s), -b * np.sin(s)], axis=-1)

        return g, dg, ddg, (("a", a), ("b", b))

    if kind == "star":
        r0 = p.get("r0", 1.0)
        amp = p.get("amp", 0.15)
        freq = int(p.get("freq", 5))
        if r0 <= 0 or amp < 0:
            raise ValueError("star needs r0 > 0 and amp >= 0")

        def rho(s):
            return r0 + amp * np.cos(freq * s)

        def drho(s):
            return -amp * freq * np.sin(freq * s)

        def ddrho(s):
            return -amp * freq * freq * np.cos(freq * s)

        def g(s):
            return rho(s)[..., None] * np.stack([np.cos(s), np.sin(s)], axis=-1)

        def dg(s):
            c, sn = np.cos(s), np.sin(s)
            return np.stack([drho(s) * c - rho(s) * sn,
                             drho(s) * sn + rho(s) * c], axis=-1)

        def ddg(s):
            c, sn = np.cos(s), np.sin(s)
            rx = ddrho(s) - rho(s)
            return np.stack([rx * c - 2.0 * drho(s) * sn,
                             rx * sn + 2.0 * drho(s) * c], axis=-1)

        return g, dg, ddg, (("r0", r0), ("amp", amp), ("freq", freq))

    raise ValueError(f"unknown curve kind {kind!r}")


def make_curve(kind: str, n: int, **params) -> PlanarCurve:
    """Build one of the model curves: circle, ellipse, or star.

    The star uses the polar radius r0 + amp*cos(freq*s); parameter
    combinations whose fine sampling shows a self-intersection or a
    nonpositive radius are rejected.
    """
    if n < 16 or n % 2:
        raise ValueError(f"node count must be even and >= 16, got {n}")
    g, dg, ddg, ptuple = _curve_maps(kind, params)

    s_fine = np.linspace(0.0, 2.0 * np.pi, 512, endpoint=False)
    pts_fine = g(s_fine)
    radii = np.linalg.norm(pts_fine - pts_fine.mean(axis=0), axis=-1)
    if np.min(radii) < 1e-9:
        raise ValueError("curve passes through its centroid; not a valid shell")
    gaps = np.linalg.norm(pts_fine[:, None, :] - pts_fine[None, :, :], axis=-1)
    idx = np.arange(512)
    sep = np.minimum((idx[:, None] - idx[None, :]) % 512, (idx[None, :] - idx[:, None]) % 512)
    far = sep > 24
    local_scale = np.max(np.linalg.norm(np.diff(pts_fine, axis=0), axis=-1))
    if np.min(gaps[far]) < 2.0 * local_scale:
        raise ValueError("self-intersecting (or nearly touching) curve parameters rejected")

    s, h = periodic_nodes(n)
    d = dg(s)
    speed = np.linalg.norm(d, axis=-1)
    tangents = d / speed[:, None]
    normals = np.stack([tangents[:, 1], -tangents[:, 0]], axis=-1)
    dd = ddg(s)
    curvature = (d[:, 0] * dd[:, 1] - d[:, 1] * dd[:, 0]) / speed ** 3
    curve = PlanarCurve(kind=kind, params=ptuple, n=n, s=s, points=g(s),
                        tangents=tangents, normals=normals, curvature=curvature,
                        speed=speed, weights=h * speed,
                        _gamma=g, _dgamma=dg, _ddgamma=ddg)

    centroid = curve.centroid
    if np.any(np.einsum("ij,ij->i", normals, curve.points - centroid) <= 0.0):
        raise ValueError("normals are not outward; parametrization must be counterclockwise")
    if np.linalg.norm(g(np.array(0.0)) - g(np.array(2.0 * np.pi))) > 1e-10:
        raise ValueError("curve is not closed")
    return curve


def tube_point(curve: PlanarCurve, s, t):
    """The tubular map iota(gamma(s), t) = gamma(s) + t*nu(s)."""
    t = np.asarray(t, dtype=float)
    bound = injectivity_bound(curve)
    if np.any(np.abs(t) >= bound):
        raise ValueError(f"|t| must stay below the injectivity bound {bound:.6g}")
    return curve.point(s) + t[..., None] * curve.normal(s)


def tube_jacobian(curve: PlanarCurve, s, t):
    """Transverse volume factor 1 - t*kappa(s) of the tube coordinates."""
    return 1.0 - np.asarray(t, dtype=float) * curve.curvature_at(s)


def injectivity_bound(curve: PlanarCurve) -> float:
    """Safe half-width of the tubular neighborhood.

    0.9 * min(1/max|kappa|, half the minimal gap between non-adjacent arcs);
    distinctness of tube points just inside the bound is spot-checked.
    """
    kmax = float(np.max(np.abs(curve.curvature)))
    reach = np.inf if kmax == 0.0 else 1.0 / kmax
    n = curve.n
    idx = np.arange(n)
    sep = np.minimum((idx[:, None] - idx[None, :]) % n, (idx[None, :] - idx[:, None]) % n)
    far = sep > max(2, n // 8)
    gaps = np.linalg.norm(curve.points[:, None, :] - curve.points[None, :, :], axis=-1)
    chord = 0.5 * float(np.min(gaps[far]))
    bound = 0.9 * min(reach, chord)

    for t in (-0.95 * bound, 0.95 * bound):
        pts = curve.points + t * curve.normals
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        np.fill_diagonal(d, np.inf)
        if np.min(d) <= 0.0:
            raise ValueError("tube points collide inside the estimated bound")
    return bound


@dataclass(frozen=True)
class TubeGrid:
    """Product grid on Sigma x (-1, 1) for the eps-tube operators.

    ``t_nodes``/``t_weights`` form the transverse Gauss-Legendre rule split
    at the profile breakpoints; ``points[i, j]`` = iota(gamma(s_i), eps*t_j);
    ``jacobian[i, j]`` = 1 - eps*t_j*kappa(s_i) > 0.  Physical cell measures
    are eps * w_i * u_j * jacobian; reference B^0 measures are w_i * u_j.
    """

    curve: PlanarCurve
    eps: float
    t_nodes: np.ndarray
    t_weights: np.ndarray
    t_owner: np.ndarray
    t_breakpoints: tuple
    points: np.ndarray
    jacobian: np.ndarray

    @property
    def k(self) -> int:
        return len(self.t_nodes)

    @property
    def b0_weights(self) -> np.ndarray:
        return np.multiply.outer(self.curve.weights, self.t_weights)

    @property
    def physical_weights(self) -> np.ndarray:
        return self.eps * self.b0_weights * self.jacobian


def make_tube_grid(curve: PlanarCurve, eps: float, k: int = 16,
                   breakpoints=(-1.0, 1.0)) -> TubeGrid:
    bound = injectivity_bound(curve)
    if not 0.0 < eps < bound:
        raise ValueError(f"eps must lie in (0, {bound:.6g}), got {eps}")
    t, u, owner = gauss_panels(breakpoints, k)
    pts = (curve.points[:, None, :]
           + eps * t[None, :, None] * curve.normals[:, None, :])
    jac = 1.0 - eps * np.multiply.outer(curve.curvature, t)
    if np.any(jac <= 0.0):
        raise ValueError("tube Jacobian not positive; eps too large for this curve")
    return TubeGrid(curve=curve, eps=eps, t_nodes=t, t_weights=u, t_owner=owner,
                    t_breakpoints=tuple(float(b) for b in breakpoints),
                    points=pts, jacobian=jac)
