"""Closed-form survival amplitude C1(t) and the quantities built on it.

C1 is a three-term exponential sum whose exponents are the roots of the cubic
characteristic polynomial and whose weights are the partial-fraction residues
of its Laplace transform ``(s - eps0)(s - eps1) / cubic(s)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import AmplitudeZero, NearDegenerateRoots, ValidationError
from .model import DerivedQuantities, ModelParams, derive

AMPLITUDE_ZERO_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class AmplitudeSolution:
    roots: np.ndarray
    residues: np.ndarray
    min_root_gap: float  # among poles with nonzero weight
    derived: DerivedQuantities

    def permuted(self, order):
        order = list(order)
        return AmplitudeSolution(self.roots[order], self.residues[order], self.min_root_gap, self.derived)


def _polish_quadratic(b, c, roots, iterations=3):
    roots = roots.astype(complex)
    for _ in range(iterations):
        p = roots * roots + b * roots + c
        dp = 2 * roots + b
        candidate = roots - np.where(dp != 0, p / np.where(dp != 0, dp, 1), 0)
        better = np.abs(candidate * candidate + b * candidate + c) < np.abs(p)
        roots = np.where(better, candidate, roots)
    return roots


def _refine(d: DerivedQuantities, root, iterations=4):
    """Newton-polish one root of the cubic, written as an offset from its nearest
    anchor in {eps0, eps1, 0}, and return ``(s, s - eps0, s - eps1)``.

    The cubic is evaluated in its factored form
    ``s (s - eps0)(s - eps1) + (gamma*lambda/8) ((s - eps0) + (s - eps1))``;
    carrying the offsets keeps the residue numerators accurate when a root
    sits close to eps0 or eps1.
    """
    e0, e1 = d.eps0, d.eps1
    w = d.gamma * d.lam / 8
    anchors = ((e0, 0j, e0 - e1), (e1, e1 - e0, 0j), (0j, -e0, -e1))
    anchor, off0, off1 = min(anchors, key=lambda a: abs(root - a[0]))
    x = complex(root - anchor)

    def parts(x):
        u0, u1 = x + off0, x + off1
        s = anchor + x
        return s, u0, u1, s * u0 * u1 + w * (u0 + u1), u0 * u1 + s * (u0 + u1) + 2 * w

    s, u0, u1, p, dp = parts(x)
    for _ in range(iterations):
        if dp == 0 or p == 0:
            break
        cand = parts(x - p / dp)
        if abs(cand[3]) >= abs(p):
            break
        x = x - p / dp
        s, u0, u1, p, dp = cand
    return s, u0, u1, dp


def solve_cubic(d: DerivedQuantities) -> AmplitudeSolution:
    """Roots and partial-fraction weights of the amplitude's Laplace transform.

    Weights are ``(s_k - eps0)(s_k - eps1) / prod_{j != k}(s_k - s_j)``, with the
    product evaluated as the cubic's derivative at ``s_k``.
    """
    if d.gamma == 0:
        # decoupled: only the s = 0 pole survives, with unit weight
        roots = np.array([d.eps0, d.eps1, 0j])
        residues = np.array([0j, 0j, 1 + 0j])
        gap = min(abs(a - b) for a, b in combinations(roots, 2))
        return AmplitudeSolution(roots, residues, gap, d)

    if d.eps0 == d.eps1:
        return _solve_cancelled(d)

    refined = [_refine(d, r) for r in np.roots(np.array(d.cubic, dtype=complex))]
    roots = np.array([r[0] for r in refined])
    gap = min(abs(a - b) for a, b in combinations(roots, 2))
    scale = max(1.0, float(np.max(np.abs(roots))))
    if gap < 1e-6 * scale:
        raise NearDegenerateRoots(gap, scale)
    residues = np.array([u0 * u1 / dp for _, u0, u1, dp in refined])
    return AmplitudeSolution(roots, residues, gap, d)


def _solve_cancelled(d: DerivedQuantities) -> AmplitudeSolution:
    # eps0 == eps1 == eps (no motion): the cubic is (s - eps)(s^2 - eps*s + gamma*lambda/4)
    # and the numerator (s - eps)^2 cancels the pole at eps, whose weight is exactly 0.
    eps = d.eps0
    b, c = -eps, d.gamma * d.lam / 4
    disc = np.sqrt(complex(b * b - 4 * c))
    if (b.conjugate() * disc).real < 0:
        disc = -disc
    q = -0.5 * (b + disc)
    s1, s2 = _polish_quadratic(b, c, np.array([q, c / q]))
    gap = abs(s1 - s2)
    scale = max(1.0, abs(s1), abs(s2), abs(eps))
    if gap < 1e-6 * scale:
        raise NearDegenerateRoots(gap, scale)
    # s1 + s2 = eps, so s1 - eps = -s2 and s2 - eps = -s1 without cancellation
    residues = np.array([0j, -s2 / (s1 - s2), s1 / (s1 - s2)])
    return AmplitudeSolution(np.array([eps, s1, s2]), residues, gap, d)


def solve(params: ModelParams) -> AmplitudeSolution:
    return solve_cubic(derive(params))


def _exp_sum(sol, t, weights):
    t = np.asarray(t, dtype=float)
    out = np.exp(np.multiply.outer(t, sol.roots)) @ weights
    return out[()] if out.ndim == 0 else out


def c1_at(sol: AmplitudeSolution, t):
    return _exp_sum(sol, t, sol.residues)


def c1_dot_at(sol: AmplitudeSolution, t):
    return _exp_sum(sol, t, sol.residues * sol.roots)


def population_at(sol: AmplitudeSolution, t):
    return np.abs(c1_at(sol, t)) ** 2


def population_deficit_at(sol: AmplitudeSolution, t):
    """1 - |C1(t)|^2 without cancelling against 1 when C1 stays close to 1."""
    t = np.asarray(t, dtype=float)
    delta = (sol.residues.sum() - 1) + np.expm1(np.multiply.outer(t, sol.roots)) @ sol.residues
    out = -2 * delta.real - np.abs(delta) ** 2
    return out[()] if out.ndim == 0 else out


def population_rate_at(sol: AmplitudeSolution, t):
    """d|C1|^2/dt = 2 Re(conj(C1) * dC1/dt), evaluated exactly."""
    return 2 * np.real(np.conj(c1_at(sol, t)) * c1_dot_at(sol, t))


def rates_at(sol: AmplitudeSolution, t: float):
    """Return ``(Gamma, S)``: the decoherence rate and Lamb shift at time ``t``."""
    c = complex(c1_at(sol, t))
    if abs(c) < AMPLITUDE_ZERO_TOL:
        raise AmplitudeZero(f"|C1({t})| = {abs(c):.3e}; rates diverge at amplitude zeros")
    ratio = complex(c1_dot_at(sol, t)) / c
    return -2 * ratio.real, -2 * ratio.imag


@dataclass(frozen=True)
class QubitState:
    """Density matrix in the dressed basis {|E>, |G>}."""

    rho_EE: complex
    rho_EG: complex
    rho_GE: complex
    rho_GG: complex

    def validate(self, atol=1e-12):
        if abs(complex(self.rho_EE).imag) > atol or not -atol <= complex(self.rho_EE).real <= 1 + atol:
            raise ValidationError("rho_EE", f"must be real in [0, 1], got {self.rho_EE}")
        if abs(self.rho_EE + self.rho_GG - 1) > atol:
            raise ValidationError("rho_GG", "trace must equal 1")
        if abs(self.rho_GE - np.conj(self.rho_EG)) > atol:
            raise ValidationError("rho_GE", "must be the conjugate of rho_EG")
        p = complex(self.rho_EE).real
        if abs(self.rho_EG) ** 2 > p * (1 - p) + atol:
            raise ValidationError("rho_EG", "coherence too large for a positive state")

    @classmethod
    def excited(cls):
        return cls(1, 0, 0, 0)

    @classmethod
    def ground(cls):
        return cls(0, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def matrix(self):
        return np.array([[self.rho_EE, self.rho_EG], [self.rho_GE, self.rho_GG]], dtype=complex)


def density_matrix_at(rho0: QubitState, sol: AmplitudeSolution, t: float) -> QubitState:
    rho0.validate()
    c = complex(c1_at(sol, t))
    ee = rho0.rho_EE * abs(c) ** 2
    return QubitState(ee, rho0.rho_EG * c, rho0.rho_GE * c.conjugate(), 1 - ee)
