"""Dirac matrix algebra, coupling rescaling calculus, and transverse profiles.

Everything here is exact finite-dimensional linear algebra: the Dirac
matrices in dimensions 2 and 3, electrostatic/Lorentz-scalar interaction
matrices V = eta*I + tau*beta, the tanc rescaling map between approximating
and limiting coupling strengths, and the closed-form transverse layer
matrix that the squeezed-potential limit produces.
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DiracRep",
    "Coupling",
    "ScalingLaw",
    "ProfileQ",
    "make_dirac_rep",
    "alpha_dot",
    "tanc",
    "interaction_matrix",
    "rescaled_coupling",
    "confining_limit",
    "eps_coupling",
    "eps_coupling_at",
    "coupling_gap_bound",
    "d_matrix",
    "layer_matrix",
    "layer_matrix_series",
    "uniform_profile",
    "bump_profile",
    "two_step_profile",
]

PAULI_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
PAULI_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
PAULI_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)


@dataclass(frozen=True)
class DiracRep:
    """Dirac matrices for space dimension theta in {2, 3}.

    Attributes
    ----------
    theta : int
        Space dimension.
    n : int
        Matrix size N = 2*ceil(theta/2).
    alphas : tuple of np.ndarray
        The theta anticommuting alpha matrices, each N x N.
    beta : np.ndarray
        The beta matrix, N x N.
    """

    theta: int
    n: int
    alphas: tuple
    beta: np.ndarray


def make_dirac_rep(theta: int) -> DiracRep:
    """Standard representation: Pauli matrices for theta=2, block form for theta=3."""
    if theta == 2:
        return DiracRep(theta=2, n=2, alphas=(PAULI_1.copy(), PAULI_2.copy()),
                        beta=PAULI_3.copy())
    if theta == 3:
        zeros = np.zeros((2, 2), dtype=np.complex128)
        eye = np.eye(2, dtype=np.complex128)
        alphas = tuple(np.block([[zeros, s], [s, zeros]]) for s in (PAULI_1, PAULI_2, PAULI_3))
        beta = np.block([[eye, zeros], [zeros, -eye]])
        return DiracRep(theta=3, n=4, alphas=alphas, beta=beta)
    raise ValueError(f"unsupported space dimension theta={theta}; must be 2 or 3")


def alpha_dot(rep: DiracRep, x) -> np.ndarray:
    """alpha . x = sum_j alpha_j x_j for a real theta-vector x.

    The result is Hermitian and squares to |x|^2 * I.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (rep.theta,):
        raise ValueError(f"expected a {rep.theta}-vector, got shape {x.shape}")
    out = np.zeros((rep.n, rep.n), dtype=np.complex128)
    for a, xj in zip(rep.alphas, x):
        out += xj * a
    return out


_TANC_COEFFS = (1.0, 1.0 / 3.0, 2.0 / 15.0, 17.0 / 315.0, 62.0 / 2835.0)


def tanc(w) -> complex:
    """tan(w)/w extended continuously by tanc(0) = 1.

    Uses the Maclaurin series for small |w|; raises on tan poles.
    For real x, tanc(i*x) = tanh(x)/x.
    """
    w = complex(w)
    if abs(w) < 1e-3:
        w2 = w * w
        acc = 0.0 + 0.0j
        for c in reversed(_TANC_COEFFS):
            acc = acc * w2 + c
        return acc
    if abs(cmath.cos(w)) < 1e-12:
        raise ValueError(f"tanc evaluated at a pole of tan: w={w}")
    return cmath.tan(w) / w


def _sqrt_upper(w) -> complex:
    """Square root with the branch Im(sqrt) > 0 off [0, inf)."""
    w = complex(w)
    r = cmath.sqrt(w)
    if r.imag < 0.0:
        r = -r
    return r


@dataclass(frozen=True)
class Coupling:
    """Electrostatic strength eta and Lorentz-scalar strength tau."""

    eta: float
    tau: float

    @property
    def d(self) -> float:
        """The discriminant eta^2 - tau^2 that governs the operator's character."""
        return self.eta * self.eta - self.tau * self.tau


def interaction_matrix(rep: DiracRep, c: Coupling) -> np.ndarray:
    """V = eta*I_N + tau*beta."""
    return c.eta * np.eye(rep.n, dtype=np.complex128) + c.tau * rep.beta


def rescaled_coupling(c: Coupling) -> Coupling:
    """The limit strengths (eta~, tau~) = tanc(sqrt(d)/2) * (eta, tau).

    The rescaled discriminant satisfies d~ = 4*tan(sqrt(d)/2)^2, which for
    d < 0 equals -4*tanh(sqrt(|d|)/2)^2 and in particular stays above -4.
    """
    s = _sqrt_upper(c.d) / 2.0
    t = tanc(s)
    if abs(t.imag) > 1e-13 * max(1.0, abs(t.real)):
        raise ValueError(f"rescaling produced a non-real factor {t} for d={c.d}")
    return Coupling(eta=t.real * c.eta, tau=t.real * c.tau)


def confining_limit(c: Coupling) -> Coupling:
    """(eta~, tau~) = (2/sqrt(|d|)) * (eta, tau); requires d < 0; yields d~ = -4."""
    d = c.d
    if d >= 0.0:
        raise ValueError(f"confining limit requires d < 0, got d={d}")
    s = 2.0 / math.sqrt(-d)
    return Coupling(eta=s * c.eta, tau=s * c.tau)


def eps_coupling_at(c: Coupling, fval: float) -> Coupling:
    """Coupling tanc(sqrt(d_f)/2) * f * (eta, tau) with d_f = f^2 d, for a given f > 0.

    For d < 0 this reduces to tanh(f*sqrt(|d|)/2) times the confining limit.
    """
    d = c.d
    if d >= 0.0:
        raise ValueError(f"eps-dependent coupling requires d < 0, got d={d}")
    if fval <= 0.0:
        raise ValueError(f"scaling value must be positive, got {fval}")
    s = math.tanh(fval * math.sqrt(-d) / 2.0)
    lim = confining_limit(c)
    return Coupling(eta=s * lim.eta, tau=s * lim.tau)


def eps_coupling(c: Coupling, f: "ScalingLaw", eps: float) -> Coupling:
    """Coupling of the eps-dependent shell operator at scale f(eps)."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return eps_coupling_at(c, f(eps))


def coupling_gap_bound(c: Coupling, fval: float) -> float:
    """Upper bound 2(|eta~| + |tau~|) exp(-f*sqrt(|d|)) for the gap to the limit."""
    lim = confining_limit(c)
    return 2.0 * (abs(lim.eta) + abs(lim.tau)) * math.exp(-fval * math.sqrt(-c.d))


@dataclass(frozen=True)
class ScalingLaw:
    """Divergent scaling f with f(eps) -> inf and f(eps)^{3/2} eps^gamma -> 0.

    Two families: ``log`` gives f(eps) = a*log(1/eps), ``power`` gives
    f(eps) = a*eps^{-rho} with rho < 2*gamma/3.  The decay of the envelope
    f^{3/2} eps^gamma is validated on a sample in the asymptotic regime
    eps < exp(-3/(2*gamma)); for the log family the envelope is not yet
    monotone at moderate eps.
    """

    family: str
    a: float
    gamma: float
    rho: float = 0.0

    def __post_init__(self):
        if self.family not in ("log", "power"):
            raise ValueError(f"unknown scaling family {self.family!r}")
        if self.a <= 0.0:
            raise ValueError("amplitude a must be positive")
        if not 0.0 < self.gamma < 0.5:
            raise ValueError(f"gamma must lie in (0, 1/2), got {self.gamma}")
        if self.family == "power" and not 0.0 < self.rho < 2.0 * self.gamma / 3.0:
            raise ValueError(
                f"power family needs 0 < rho < 2*gamma/3 = {2*self.gamma/3:.6g}, got {self.rho}")
        eps = math.exp(-1.5 / self.gamma) * 2.0 ** (-np.arange(9.0))
        f = np.array([self(e) for e in eps])
        env = f ** 1.5 * eps ** self.gamma
        if not (np.all(np.diff(f) > 0.0) and np.all(f > 0.0)):
            raise ValueError("f must be positive and increase as eps decreases")
        if not np.all(np.diff(env) < 0.0):
            raise ValueError("f^{3/2} eps^gamma must decrease on the asymptotic sample")

    def __call__(self, eps: float) -> float:
        if not 0.0 < eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        if self.family == "log":
            return self.a * math.log(1.0 / eps)
        return self.a * eps ** (-self.rho)

    def envelope(self, eps: float) -> float:
        """The tube-stage envelope f(eps)^{3/2} eps^gamma."""
        return self(eps) ** 1.5 * eps ** self.gamma


class ProfileQ:
    """Transverse profile q >= 0 on (-1, 1) with unit integral.

    Carries the breakpoints between smooth pieces (quadrature grids must not
    straddle a jump) and the antiderivative Q(t) = -1/2 + int_{-1}^t q,
    which runs from -1/2 to +1/2.
    """

    def __init__(self, kind, evaluator, breakpoints, label):
        self.kind = kind
        self._q = evaluator
        self.breakpoints = tuple(float(b) for b in breakpoints)
        self.label = label
        if self.breakpoints[0] != -1.0 or self.breakpoints[-1] != 1.0:
            raise ValueError("breakpoints must start at -1 and end at 1")

    def __repr__(self):
        return f"ProfileQ({self.label})"

    def q(self, t):
        t = np.asarray(t, dtype=float)
        return self._q(t)

    def Q(self, t):
        """Antiderivative -1/2 + int_{-1}^t q, evaluated by per-piece quadrature."""
        scalar = np.isscalar(t)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        x, w = np.polynomial.legendre.leggauss(80)
        out = np.empty_like(t)
        for i, ti in enumerate(t):
            acc = -0.5
            for lo, hi in zip(self.breakpoints[:-1], self.breakpoints[1:]):
                if ti <= lo:
                    break
                b = min(ti, hi)
                mid, half = 0.5 * (lo + b), 0.5 * (b - lo)
                acc += half * np.sum(w * self._q(mid + half * x))
            out[i] = acc
        return out[0] if scalar else out


def uniform_profile() -> ProfileQ:
    return ProfileQ("uniform", lambda t: np.full_like(t, 0.5),
                    (-1.0, 1.0), "uniform q=1/2")


def bump_profile() -> ProfileQ:
    """Smooth symmetric bump exp(-1/(1-t^2)) normalized to unit integral."""

    def raw(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        inside = np.abs(t) < 1.0
        u = t[inside]
        out[inside] = np.exp(-1.0 / (1.0 - u * u))
        return out

    x, w = np.polynomial.legendre.leggauss(200)
    mass = float(np.sum(w * raw(x)))
    return ProfileQ("bump", lambda t: raw(t) / mass, (-1.0, 1.0),
                    "smooth bump, normalized")


def two_step_profile(step_at: float = 0.0, left: float = 0.3) -> ProfileQ:
    """Piecewise-constant profile: value c1 on (-1, step_at), c2 on (step_at, 1).

    ``left`` is the mass carried by the left piece; the right piece carries
    the rest, so the total integral is 1.
    """
    if not -1.0 < step_at < 1.0:
        raise ValueError("step must lie strictly inside (-1, 1)")
    if not 0.0 < left < 1.0:
        raise ValueError("left mass fraction must lie in (0, 1)")
    c1 = left / (step_at + 1.0)
    c2 = (1.0 - left) / (1.0 - step_at)

    def ev(t):
        t = np.asarray(t, dtype=float)
        return np.where(t < step_at, c1, c2)

    return ProfileQ("two_step", ev, (-1.0, step_at, 1.0),
                    f"two-step at t={step_at}, left mass {left}")


def d_matrix(rep: DiracRep, c: Coupling, qval) -> np.ndarray:
    """D = sqrt(q) diag(sqrt(|eta+tau|) I_{N/2}, sqrt(|eta-tau|) I_{N/2}).

    For d = eta^2 - tau^2 <= 0 it factorizes the interaction:
    V q = sign(tau) D beta D exactly.
    """
    half = rep.n // 2
    diag = np.concatenate([
        np.full(half, math.sqrt(abs(c.eta + c.tau))),
        np.full(half, math.sqrt(abs(c.eta - c.tau))),
    ])
    return math.sqrt(float(qval)) * np.diag(diag).astype(np.complex128)


def layer_matrix(rep: DiracRep, nu, c: Coupling, fval: float, Qval: float) -> np.ndarray:
    """Closed-form transverse layer cos((a.nu) f V / 2)^{-1} exp(-i (a.nu) f V Q).

    Because ((a.nu) V)^2 = d I with d < 0, both matrix functions collapse to
    scalar hyperbolics:

        [cosh(f s Q) + (a.nu)(V/sqrt(d)) sinh(f s Q)] / cosh(f s / 2),

    with s = sqrt(|d|) and sqrt(d) = i s on the upper branch.
    """
    d = c.d
    if d >= 0.0:
        raise ValueError(f"layer matrix requires d < 0, got d={d}")
    nu = np.asarray(nu, dtype=float)
    if abs(np.linalg.norm(nu) - 1.0) > 1e-10:
        raise ValueError("nu must be a unit vector")
    s = math.sqrt(-d)
    an = alpha_dot(rep, nu)
    V = interaction_matrix(rep, c)
    core = (math.cosh(fval * s * Qval) * np.eye(rep.n)
            + (an @ V) / (1j * s) * math.sinh(fval * s * Qval))
    return core / math.cosh(fval * s / 2.0)


def _matrix_series(coeff_fn, A: np.ndarray, terms: int) -> np.ndarray:
    out = np.zeros_like(A)
    P = np.eye(A.shape[0], dtype=np.complex128)
    for k in range(terms):
        out = out + coeff_fn(k) * P
        P = P @ A
    return out


def layer_matrix_series(rep: DiracRep, nu, c: Coupling, fval: float, Qval: float,
                        terms: int = 40) -> np.ndarray:
    """Series oracle for :func:`layer_matrix`: cos and exp by raw power series."""
    an = alpha_dot(rep, np.asarray(nu, dtype=float))
    V = interaction_matrix(rep, c)
    A_cos = an @ V * (fval / 2.0)
    A_exp = -1j * fval * Qval * (an @ V)

    def cos_coeff(k):
        return (-1.0) ** (k // 2) / math.factorial(k) if k % 2 == 0 else 0.0

    def exp_coeff(k):
        return 1.0 / math.factorial(k)

    cosM = _matrix_series(cos_coeff, A_cos, terms)
    expM = _matrix_series(exp_coeff, A_exp, terms)
    return np.linalg.solve(cosM, expM)
