"""Closed-form BCH-like factorizations of ``exp(l+ T+ + lc Tc + l- T-)``.

Two orderings are provided:

* normal:      ``exp(L+ T+) exp(ln(Lc) Tc) exp(L- T-)``
* anti-normal: ``exp(S- T-) exp(ln(Sc) Tc) exp(S+ T+)``

Both are written in terms of ``S = sinh(nu)/nu`` and ``C = cosh(nu)``, which
are even in ``nu`` so the square-root branch never matters, and the center
coefficient is carried as its logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraKind, CoefficientTriple
from .errors import SingularFactorization

SMALL_NU = 1e-6
SINGULAR_TOL = 1e-30


@dataclass(frozen=True)
class FactorResult:
    """Factorized coefficients of a single exponential.

    ``coeffs.plus`` / ``coeffs.minus`` hold the ladder coefficients and
    ``coeffs.center`` holds ``exp(log_center)``.
    """

    coeffs: CoefficientTriple
    log_center: complex
    nu: complex
    kind: AlgebraKind
    ordering: str = "normal"

    @property
    def plus(self):
        return self.coeffs.plus

    @property
    def minus(self):
        return self.coeffs.minus

    def to_group_element(self):
        """The normal-ordered result as a :class:`~liericcati.group.GroupElement`."""
        from .group import GroupElement

        if self.ordering != "normal":
            raise ValueError("only normal-ordered results map onto GroupElement")
        return GroupElement(self.coeffs.plus, self.log_center, self.coeffs.minus, self.kind)


def nu(lam: CoefficientTriple, kind: AlgebraKind):
    """Principal root of ``(delta lc / 2)**2 - delta eps l+ l-``."""
    kind = AlgebraKind.parse(kind)
    eps, delta = kind.epsilon, kind.delta
    lp, lc, lm = (np.asarray(x, dtype=complex) for x in (lam.plus, lam.center, lam.minus))
    nu_sq = (delta * lc / 2) ** 2 - delta * eps * lp * lm
    return _scalarize(np.sqrt(nu_sq))


def log1p_complex(z):
    """Principal ``log(1 + z)``, accurate both near ``z = 0`` and near ``z = -1``.

    ``np.log1p`` loses the real part for complex input near zero.  Away from
    zero ``1 + x`` is formed exactly enough that ``log|1 + z|`` is taken
    directly; the expanded form would cancel to ``log(0)`` near ``z = -1``.
    """
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    with np.errstate(divide="ignore"):
        near_zero = 0.5 * np.log1p(2 * x + x * x + y * y)
        far = np.log(np.hypot(1 + x, y))
    modulus = np.where(np.abs(z) < 0.5, near_zero, far)
    return modulus + 1j * np.arctan2(y, 1 + x)


def _coshm1_and_sinhc(nu_sq, nu_val):
    """Return ``(cosh(nu) - 1, sinh(nu)/nu)`` with a Taylor seam near ``nu = 0``."""
    small = np.abs(nu_val) < SMALL_NU
    with np.errstate(invalid="ignore", divide="ignore"):
        safe = np.where(small, 1.0, nu_val)
        coshm1 = np.where(small, nu_sq / 2 + nu_sq**2 / 24, 2 * np.sinh(safe / 2) ** 2)
        sinhc = np.where(small, 1 + nu_sq / 6 + nu_sq**2 / 120, np.sinh(safe) / safe)
    return coshm1, sinhc


def _factor(lam: CoefficientTriple, kind: AlgebraKind, sign: int, ordering: str) -> FactorResult:
    kind = AlgebraKind.parse(kind)
    eps, delta = kind.epsilon, kind.delta
    lp, lc, lm = (np.asarray(x, dtype=complex) for x in (lam.plus, lam.center, lam.minus))
    nu_sq = (delta * lc / 2) ** 2 - delta * eps * lp * lm
    nu_val = np.sqrt(nu_sq)
    coshm1, sinhc = _coshm1_and_sinhc(nu_sq, nu_val)

    # D / nu and (power base - 1); both even in nu
    denom = 2 + 2 * coshm1 + sign * delta * lc * sinhc
    base_m1 = coshm1 + sign * (delta * lc / 2) * sinhc
    if np.any(np.abs(denom) <= SINGULAR_TOL) or np.any(np.abs(1 + base_m1) <= SINGULAR_TOL):
        raise SingularFactorization(f"{ordering} factorization is singular for this exponent")

    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ladder = 2 * sinhc / denom
        log_center = (sign * 2 / delta) * log1p_complex(base_m1)
    # rounding can leave a vanishing base just above the threshold; the log then overflows
    if not (np.all(np.isfinite(lp * ladder)) and np.all(np.isfinite(lm * ladder))
            and np.all(np.isfinite(np.exp(log_center)))):
        raise SingularFactorization(f"{ordering} factorization is singular for this exponent")
    coeffs = CoefficientTriple(
        _scalarize(lp * ladder), _scalarize(np.exp(log_center)), _scalarize(lm * ladder)
    )
    return FactorResult(coeffs, _scalarize(log_center), _scalarize(nu_val), kind, ordering)


def factor_normal(lam: CoefficientTriple, kind: AlgebraKind) -> FactorResult:
    """Normal-ordered factorization ``exp(L+ T+) exp(ln Lc Tc) exp(L- T-)``.

    Parameters
    ----------
    lam : CoefficientTriple
        Exponent coefficients; scalars or broadcastable arrays.
    kind : AlgebraKind

    Returns
    -------
    FactorResult
        ``L+- = 2 l+- sinh(nu) / (2 nu cosh(nu) - delta lc sinh(nu))`` and
        ``ln Lc = -(2/delta) Log(cosh(nu) - delta lc sinh(nu) / (2 nu))``.

    Raises
    ------
    SingularFactorization
        If the denominator or the power base is numerically zero, or the
        coefficients overflow.
    """
    return _factor(lam, kind, -1, "normal")


def factor_antinormal(lam: CoefficientTriple, kind: AlgebraKind) -> FactorResult:
    """Anti-normal factorization ``exp(S- T-) exp(ln Sc Tc) exp(S+ T+)``.

    Same closed forms as :func:`factor_normal` with the sign of the
    ``delta lc`` terms flipped and exponent ``+2/delta`` on the center.
    """
    return _factor(lam, kind, +1, "antinormal")


def _scalarize(x):
    x = np.asarray(x)
    return complex(x) if x.ndim == 0 else x
