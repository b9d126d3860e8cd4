"""Quadrature machinery shared by the boundary and tube operator assemblies.

Periodic trapezoidal rules and their two singular companions on the uniform
grid (the Kress-style log rule and the alternating-point rule for
principal-value kernels), Gauss-Legendre panel rules, graded radial rules
for weakly singular patch integrals, exact sign-kernel moments on panel
grids, and trigonometric interpolation on the periodic grid.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "periodic_nodes",
    "gauss_panels",
    "graded_radial_rule",
    "kress_log_weights",
    "alternating_mask",
    "sign_kernel_matrix",
    "trig_interp_matrix",
    "lagrange_eval_matrix",
    "neville_extrapolate",
]


def periodic_nodes(n: int):
    """Uniform nodes s_j = 2*pi*j/n and the trapezoidal step 2*pi/n."""
    if n < 4 or n % 2:
        raise ValueError(f"need an even node count >= 4, got {n}")
    return 2.0 * np.pi * np.arange(n) / n, 2.0 * np.pi / n


def gauss_panels(breakpoints, k: int):
    """Gauss-Legendre rule with k nodes total, split over the given panels.

    Nodes are distributed proportionally to panel length (at least 2 per
    panel), so grids never straddle a breakpoint of a piecewise integrand.
    Returns (nodes, weights, panel_of_node).
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or len(bp) < 2 or np.any(np.diff(bp) <= 0):
        raise ValueError("breakpoints must be strictly increasing")
    npan = len(bp) - 1
    lengths = np.diff(bp)
    counts = np.maximum(2, np.round(k * lengths / lengths.sum()).astype(int))
    while counts.sum() > k and np.any(counts > 2):
        counts[np.argmax(counts)] -= 1
    while counts.sum() < k:
        counts[np.argmin(counts)] += 1
    nodes, weights, owner = [], [], []
    for p in range(npan):
        x, w = np.polynomial.legendre.leggauss(int(counts[p]))
        mid, half = 0.5 * (bp[p] + bp[p + 1]), 0.5 * (bp[p + 1] - bp[p])
        nodes.append(mid + half * x)
        weights.append(half * w)
        owner.append(np.full(int(counts[p]), p))
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(owner)


def graded_radial_rule(r_max: float, n_panels: int = 20, nodes_per_panel: int = 12,
                       r_min_factor: float = 1e-14):
    """Dyadically graded Gauss-Legendre rule on (0, r_max] for log-singular radials."""
    if r_max <= 0.0:
        raise ValueError("r_max must be positive")
    edges = [r_max]
    for _ in range(n_panels - 1):
        edges.append(edges[-1] * 0.5)
    edges.append(r_max * r_min_factor)
    edges = np.array(edges[::-1])
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * (edges[1:] - edges[:-1])
    r = (mids[:, None] + halves[:, None] * x[None, :]).ravel()
    wr = (halves[:, None] * w[None, :]).ravel()
    return r, wr


def kress_log_weights(n: int) -> np.ndarray:
    """Circulant weights R[k] for the periodic log-kernel rule.

    With s_j = 2*pi*j/n and smooth f, the rule

        int_0^{2pi} f(t) log(4 sin^2((s_i - t)/2)) dt ~ sum_j R[(i-j) mod n] f(s_j)

    is exact for trigonometric polynomials of degree < n/2; it follows from
    projecting the kernel's Fourier series -2 sum_{m>=1} cos(m theta)/m onto
    the grid modes (half weight at |m| = n/2).
    """
    if n < 4 or n % 2:
        raise ValueError(f"need an even node count >= 4, got {n}")
    k = np.arange(n)
    m = np.arange(1, n // 2)
    theta = 2.0 * np.pi * k / n
    acc = -2.0 * np.sum(np.cos(np.outer(theta, m)) / m, axis=1)
    acc -= (2.0 / n) * np.cos(np.pi * k)
    return (2.0 * np.pi / n) * acc


def alternating_mask(n: int) -> np.ndarray:
    """Boolean (n, n) mask selecting sources of opposite parity to the target.

    The alternating-point trapezoidal rule integrates principal-value
    kernels with odd 1/(s-t) singularities spectrally: use only nodes of
    the opposite parity with doubled step 2*(2*pi/n).
    """
    i = np.arange(n)
    return ((i[:, None] - i[None, :]) % 2).astype(bool)


def _legendre_table(m_max: int, x: np.ndarray) -> np.ndarray:
    """P_0..P_m_max at x, stacked along the first axis."""
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = 1.0
    if m_max >= 1:
        out[1] = x
    for m in range(1, m_max):
        out[m + 1] = ((2 * m + 1) * x * out[m] - m * out[m - 1]) / (m + 1)
    return out


def sign_kernel_matrix(nodes, weights, owner, breakpoints) -> np.ndarray:
    """Matrix S with (S f)_i ~ int_{-1}^1 sign(t_i - s) f(s) ds, exact on the grid.

    Exact for the panel-wise polynomial interpolant of f: per panel the
    Lagrange cardinal functions are integrated in closed form through their
    Legendre expansions, so a density constant in t yields exactly 2*t_i.
    """
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    owner = np.asarray(owner)
    bp = np.asarray(breakpoints, dtype=float)
    K = len(nodes)
    S = np.zeros((K, K))
    for p in range(len(bp) - 1):
        sel = np.where(owner == p)[0]
        lo, hi = bp[p], bp[p + 1]
        half = 0.5 * (hi - lo)
        xi = (nodes[sel] - 0.5 * (lo + hi)) / half
        v = weights[sel] / half
        kp = len(sel)
        P = _legendre_table(kp, xi)
        for i in range(K):
            ti = nodes[i]
            if ti >= hi:
                S[i, sel] += weights[sel]
            elif ti <= lo:
                S[i, sel] -= weights[sel]
            else:
                xt = (ti - 0.5 * (lo + hi)) / half
                Pt = _legendre_table(kp + 1, np.array([xt]))[:, 0]
                cum = 0.5 * (xt + 1.0) * np.ones(kp)
                for m in range(1, kp):
                    cum += 0.5 * P[m, :] * (Pt[m + 1] - Pt[m - 1])
                part = half * v * cum
                S[i, sel] += 2.0 * part - weights[sel]
    return S


def trig_interp_matrix(n: int, targets) -> np.ndarray:
    """Evaluation matrix of the degree-n/2 trigonometric interpolant.

    E[t, j] applied to grid values reproduces the interpolant at arbitrary
    parameters; E[t, j] = sin(M*d)*cot(d/2)/n with M = n/2, d = t - s_j.
    """
    s, _ = periodic_nodes(n)
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    d = t[:, None] - s[None, :]
    M = n // 2
    small = np.abs(np.remainder(d + np.pi, 2.0 * np.pi) - np.pi) < 1e-12
    d_safe = np.where(small, 1.0, d)
    E = np.sin(M * d_safe) / np.tan(0.5 * d_safe) / n
    return np.where(small, 1.0, E)


def lagrange_eval_matrix(nodes, targets) -> np.ndarray:
    """Barycentric Lagrange evaluation matrix from ``nodes`` to ``targets``."""
    x = np.asarray(nodes, dtype=float)
    t = np.atleast_1d(np.asarray(targets, dtype=float))
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    bw = 1.0 / np.prod(diff, axis=1)
    D = t[:, None] - x[None, :]
    exact = np.isclose(D, 0.0, atol=1e-14)
    D = np.where(exact, 1.0, D)
    terms = bw[None, :] / D
    E = terms / np.sum(terms, axis=1, keepdims=True)
    hit = exact.any(axis=1)
    E[hit] = exact[hit].astype(float)
    return E


def neville_extrapolate(h, y):
    """Polynomial extrapolation of samples y(h) to h = 0 (Neville tableau).

    ``y`` may have trailing dimensions; the first axis matches ``h``.
    """
    h = np.asarray(h, dtype=float)
    tab = [np.asarray(v, dtype=complex) for v in y]
    m = len(tab)
    if m != len(h):
        raise ValueError("h and y must have matching leading length")
    for level in range(1, m):
        nxt = []
        for i in range(m - level):
            num = h[i] * tab[i + 1] - h[i + level] * tab[i]
            nxt.append(num / (h[i] - h[i + level]))
        tab = nxt
    return tab[0]
