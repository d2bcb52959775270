"""Velocity boosts along the x-axis and the algebra of affine conformal
isometries x -> alpha * L x + a.

``boost_x`` builds the standard matrix

    [  gamma     0  0  -v*gamma      ]
    [  0         1  0   0            ]
    [  0         0  1   0            ]
    [ -v*gamma/c^2  0  0   gamma     ]

with gamma = 1/sqrt(1 - v^2/c^2), acting on (x, y, z, t).  It is an exact
isometry of diag(1, 1, 1, -c^2) for every invariant speed c.

``decompose_conformal`` undoes the scaling: a matrix M with
M^T eta M = lam * eta (lam > 0) splits uniquely into alpha = sqrt(lam) > 0
and the isometry L = M / alpha, any sign being folded into L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .minkowski import Metric

#: Velocities with |v| >= c * (1 - VELOCITY_MARGIN) are rejected: gamma diverges.
VELOCITY_MARGIN = 1e-12


class NotConformalError(ValueError):
    """M^T eta M is not proportional to eta within tolerance."""


class SignatureError(NotConformalError):
    """M^T eta M is proportional to eta but with a non-positive factor."""


@dataclass(frozen=True)
class BoostParams:
    """Relative frame velocity v along the x-axis, |v| strictly below c."""

    v: float
    c: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ValueError(f"invariant speed must be positive and finite, got {self.c}")
        if not np.isfinite(self.v) or abs(self.v) >= self.c * (1.0 - VELOCITY_MARGIN):
            raise ValueError(
                f"degenerate velocity: |v|={abs(self.v)} must be < c={self.c}"
            )


@dataclass
class AffineLorentzMap:
    """The map x -> alpha * L x + a.

    alpha is canonicalized to be positive (a negative sign is folded into
    L), which makes the (alpha, L) pair unique and round-trippable through
    ``decompose_conformal``.
    """

    alpha: float
    L: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        self.L = np.asarray(self.L, dtype=float)
        self.a = np.asarray(self.a, dtype=float)
        if self.L.ndim != 2 or self.L.shape[0] != self.L.shape[1]:
            raise ValueError(f"L must be square, got shape {self.L.shape}")
        if self.a.shape != (self.L.shape[0],):
            raise ValueError(
                f"translation has shape {self.a.shape}, expected ({self.L.shape[0]},)"
            )
        if not np.isfinite(self.alpha) or self.alpha == 0:
            raise ValueError(f"alpha must be nonzero and finite, got {self.alpha}")
        if self.alpha < 0:
            self.alpha = -self.alpha
            self.L = -self.L

    @property
    def n(self) -> int:
        return self.L.shape[0]


def identity_map(n: int = 4) -> AffineLorentzMap:
    return AffineLorentzMap(1.0, np.eye(n), np.zeros(n))


def gamma(v: float, c: float = 1.0) -> float:
    """Lorentz factor 1/sqrt(1 - v^2/c^2)."""
    return 1.0 / math.sqrt(1.0 - (v / c) ** 2)


def scale_factor(v: float, c: float = 1.0) -> float:
    """The normalized conformal factor alpha(v) = sqrt(1 - v^2/c^2).

    This is the unique positive solution of
    alpha(v) * alpha(-v) = 1 - v^2/c^2 that depends on |v| only.
    """
    return math.sqrt(1.0 - (v / c) ** 2)


def boost_x(p: BoostParams) -> AffineLorentzMap:
    """Normalized boost along the x-axis for n = 4, as an affine map with
    alpha = 1 and zero translation."""
    g = gamma(p.v, p.c)
    L = np.eye(4)
    L[0, 0] = g
    L[0, 3] = -p.v * g
    L[3, 0] = -p.v * g / p.c ** 2
    L[3, 3] = g
    return AffineLorentzMap(1.0, L, np.zeros(4))


def general_boost(p: BoostParams, alpha: float) -> np.ndarray:
    """Boost matrix before the scale factor is pinned down:
    alpha * gamma * (boost core).  ``alpha = scale_factor(v, c)`` recovers
    the normalized boost."""
    if alpha == 0 or not np.isfinite(alpha):
        raise ValueError(f"alpha must be nonzero and finite, got {alpha}")
    g = gamma(p.v, p.c)
    core = np.eye(4)
    core[0, 0] = g
    core[0, 3] = -p.v * g
    core[3, 0] = -p.v * g / p.c ** 2
    core[3, 3] = g
    return alpha * g * core


def scale_constraint_check(
    alpha_of_v: float, alpha_of_minus_v: float, p: BoostParams, tol: float = 1e-12
) -> bool:
    """True iff alpha(v) * alpha(-v) = 1 - v^2/c^2 within tol.

    The constraint is what forcing boost(v) followed by boost(-v) to be the
    identity imposes on the free scale factor.
    """
    return abs(alpha_of_v * alpha_of_minus_v - (1.0 - (p.v / p.c) ** 2)) <= tol


def apply(m: AffineLorentzMap, e) -> np.ndarray:
    """Evaluate alpha * L @ e + a."""
    e = np.asarray(e, dtype=float)
    if e.shape != (m.n,):
        raise ValueError(f"event has shape {e.shape}, expected ({m.n},)")
    return m.alpha * (m.L @ e) + m.a


def compose(m1: AffineLorentzMap, m2: AffineLorentzMap) -> AffineLorentzMap:
    """The map applying m2 first, then m1."""
    if m1.n != m2.n:
        raise ValueError(f"dimension mismatch: {m1.n} vs {m2.n}")
    return AffineLorentzMap(
        m1.alpha * m2.alpha,
        m1.L @ m2.L,
        m1.alpha * (m1.L @ m2.a) + m1.a,
    )


def inverse(m: AffineLorentzMap) -> AffineLorentzMap:
    """The inverse map; raises on singular L."""
    try:
        Linv = np.linalg.inv(m.L)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular linear part; map is not invertible") from exc
    alpha_inv = 1.0 / m.alpha
    return AffineLorentzMap(alpha_inv, Linv, -alpha_inv * (Linv @ m.a))


def _balanced_gram(M: np.ndarray, m: Metric):
    # Conjugating by D = diag(1, ..., 1, c) turns the metric into the unit
    # signature diag(1, ..., 1, -1) and keeps boost entries O(gamma); the
    # proportionality M^T eta M = lam * eta is exactly equivalent to
    # (D M D^-1)^T eta1 (D M D^-1) = lam * eta1 but without the c^2
    # amplification of floating-point noise in near-zero entries.
    d = np.ones(m.n)
    d[-1] = m.c
    Mb = (d[:, None] * M) / d[None, :]
    eta1 = np.eye(m.n)
    eta1[-1, -1] = -1.0
    G = Mb.T @ eta1 @ Mb
    S = np.abs(Mb).T @ np.abs(Mb)  # |eta1| is the identity pattern
    return G, S, eta1


def is_isometry(L, m: Metric, tol: float = 1e-9) -> bool:
    """True iff L^T eta L = eta entrywise, relative to the magnitude of the
    products forming each entry (evaluated in the metric-balanced frame)."""
    L = np.asarray(L, dtype=float)
    if L.shape != (m.n, m.n):
        raise ValueError(f"matrix has shape {L.shape}, expected ({m.n}, {m.n})")
    G, S, eta1 = _balanced_gram(L, m)
    scale = np.maximum(1.0, S)
    return bool(np.all(np.abs(G - eta1) <= tol * scale))


def decompose_conformal(M, m: Metric, tol: float = 1e-9) -> tuple[float, np.ndarray]:
    """Split M = alpha * L with alpha > 0 and L an isometry of the metric.

    The factor is estimated as the median of the diagonal ratios of
    M^T eta M against eta, which is robust to entrywise floating-point
    noise.  Raises NotConformalError when the Gram matrix is not
    proportional to eta, SignatureError when the factor is non-positive.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (m.n, m.n):
        raise ValueError(f"matrix has shape {M.shape}, expected ({m.n}, {m.n})")
    G, S, eta1 = _balanced_gram(M, m)
    lam = float(np.median(np.diag(G) / np.diag(eta1)))
    scale = np.maximum(1.0, np.maximum(S, abs(lam)))
    if not np.all(np.abs(G - lam * eta1) <= tol * scale):
        worst = float(np.max(np.abs(G - lam * eta1) / scale))
        raise NotConformalError(
            f"M^T eta M is not proportional to eta (worst relative deviation {worst:.3e})"
        )
    if lam <= 0:
        raise SignatureError(f"conformal factor is non-positive ({lam:.6g})")
    alpha = math.sqrt(lam)
    return alpha, M / alpha
