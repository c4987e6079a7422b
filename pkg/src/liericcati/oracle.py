"""Independent 2x2 matrix realizations of the three algebras.

Used to check the closed-form factorizations and group law without going
through them: exponentiate in the defining 2x2 representation, multiply
matrices, and read coefficients back off the product.

Generators are ``T+ = a E12``, ``T- = a' E21`` and ``Tc = b diag(1/2, -1/2)``:

========  ==========  ==========  ===
algebra   a           a'          b
========  ==========  ==========  ===
su(1,1)   1           -1          1
su(2)     1           1           1
so(2,1)   1/sqrt(2)   1/sqrt(2)   i
========  ==========  ==========  ===

The so(2,1) choice has ``T+ = T-^dagger`` so evolutions under hermitian
Hamiltonians give unitary matrices, like su(2) but unlike su(1,1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraKind, CoefficientTriple

_SCALES = {
    AlgebraKind.SU11: (1.0, -1.0, 1.0),
    AlgebraKind.SU2: (1.0, 1.0, 1.0),
    AlgebraKind.SO21: (1 / np.sqrt(2), 1 / np.sqrt(2), 1j),
}


@dataclass(frozen=True)
class MatrixRep:
    t_plus: np.ndarray
    t_center: np.ndarray
    t_minus: np.ndarray


def representation(kind: AlgebraKind) -> MatrixRep:
    a, a_bar, b = _SCALES[AlgebraKind.parse(kind)]
    return MatrixRep(
        np.array([[0, a], [0, 0]], dtype=complex),
        np.array([[b / 2, 0], [0, -b / 2]], dtype=complex),
        np.array([[0, 0], [a_bar, 0]], dtype=complex),
    )


def bracket_residual(kind: AlgebraKind) -> float:
    """Max deviation of the representation from the defining commutators."""
    kind = AlgebraKind.parse(kind)
    rep = representation(kind)
    eps, delta = kind.epsilon, kind.delta

    def comm(x, y):
        return x @ y - y @ x

    return float(max(
        np.max(np.abs(comm(rep.t_minus, rep.t_plus) - 2 * eps * rep.t_center)),
        np.max(np.abs(comm(rep.t_center, rep.t_plus) - delta * rep.t_plus)),
        np.max(np.abs(comm(rep.t_center, rep.t_minus) + delta * rep.t_minus)),
    ))


def _linear_matrix(plus, center, minus, kind):
    rep = representation(kind)
    plus, center, minus = (np.asarray(x, dtype=complex)[..., None, None] for x in (plus, center, minus))
    return plus * rep.t_plus + center * rep.t_center + minus * rep.t_minus


def _expm_traceless(m):
    # exp(M) = cosh(s) I + sinh(s)/s M with s**2 = -det(M) for traceless 2x2 M
    s_sq = -(m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0])
    s = np.sqrt(s_sq)
    small = np.abs(s) < 1e-6
    safe = np.where(small, 1.0, s)
    ch = np.where(small, 1 + s_sq / 2 + s_sq**2 / 24, np.cosh(safe))
    shc = np.where(small, 1 + s_sq / 6 + s_sq**2 / 120, np.sinh(safe) / safe)
    return ch[..., None, None] * np.eye(2) + shc[..., None, None] * m


def exp_linear(lam: CoefficientTriple, kind: AlgebraKind) -> np.ndarray:
    """``exp(l+ T+ + lc Tc + l- T-)`` as a ``(..., 2, 2)`` array."""
    kind = AlgebraKind.parse(kind)
    return _expm_traceless(_linear_matrix(lam.plus, lam.center, lam.minus, kind))


def exp_factored(g) -> np.ndarray:
    """``exp(alpha T+) exp(log_beta Tc) exp(gamma T-)`` for a GroupElement ``g``."""
    kind = g.kind
    zero = np.zeros_like(np.asarray(g.alpha, dtype=complex))
    left = _expm_traceless(_linear_matrix(g.alpha, zero, zero, kind))
    mid = _expm_traceless(_linear_matrix(zero, g.log_beta, zero, kind))
    right = _expm_traceless(_linear_matrix(zero, zero, g.gamma, kind))
    return left @ mid @ right


def exp_antinormal(sigma_minus, log_center, sigma_plus, kind: AlgebraKind) -> np.ndarray:
    """``exp(S- T-) exp(log_center Tc) exp(S+ T+)``."""
    kind = AlgebraKind.parse(kind)
    zero = np.zeros_like(np.asarray(sigma_plus, dtype=complex))
    left = _expm_traceless(_linear_matrix(zero, zero, sigma_minus, kind))
    mid = _expm_traceless(_linear_matrix(zero, log_center, zero, kind))
    right = _expm_traceless(_linear_matrix(sigma_plus, zero, zero, kind))
    return left @ mid @ right


def center_half_power(log_center, kind: AlgebraKind):
    """``exp(delta * log_center / 2)``: the upper-left entry of ``exp(log_center Tc)``.

    This is what the matrix determines; ``log_center`` itself is only fixed
    modulo ``4 pi i / delta``.
    """
    kind = AlgebraKind.parse(kind)
    return np.exp(kind.delta * np.asarray(log_center) / 2)


def refactor_normal(m: np.ndarray, kind: AlgebraKind):
    """Read ``(alpha, exp(delta*log_beta/2), gamma)`` off a normal-ordered product."""
    a, a_bar, _ = _SCALES[AlgebraKind.parse(kind)]
    q = 1 / m[..., 1, 1]
    return m[..., 0, 1] * q / a, q, m[..., 1, 0] * q / a_bar


def refactor_antinormal(m: np.ndarray, kind: AlgebraKind):
    """Read ``(sigma_plus, exp(delta*log_center/2), sigma_minus)`` off an anti-normal product."""
    a, a_bar, _ = _SCALES[AlgebraKind.parse(kind)]
    q = m[..., 0, 0]
    return m[..., 0, 1] / (q * a), q, m[..., 1, 0] / (q * a_bar)


def unitarity_defect(m: np.ndarray) -> float:
    """``max |U^dagger U - I|`` over all entries (and batch)."""
    prod = np.conj(np.swapaxes(m, -1, -2)) @ m
    return float(np.max(np.abs(prod - np.eye(2))))
