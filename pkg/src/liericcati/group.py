"""Normal-ordered group elements: composition, inversion and unitarity checks.

An element is ``exp(alpha T+) exp(log_beta Tc) exp(gamma T-)``.  Storing
``log_beta`` rather than ``beta`` keeps products of many elements free of
branch jumps; powers are always formed as ``exp(delta * log_beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraKind
from .errors import SingularComposition, SingularInverse
from .factorization import SINGULAR_TOL, _scalarize, log1p_complex

PHASE_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class GroupElement:
    """Coefficients ``(alpha, log_beta, gamma)`` of a factorized group element.

    Fields may be arrays, in which case the object represents a batch of
    elements and every function here acts elementwise.
    """

    alpha: complex
    log_beta: complex
    gamma: complex
    kind: AlgebraKind

    def __post_init__(self):
        for name in ("alpha", "log_beta", "gamma"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"GroupElement.{name} is not finite")

    @property
    def beta(self):
        return np.exp(self.log_beta)

    def beta_power(self):
        """``beta ** delta`` evaluated as ``exp(delta * log_beta)``."""
        return np.exp(self.kind.delta * np.asarray(self.log_beta))

    def __getitem__(self, index) -> "GroupElement":
        return GroupElement(
            _scalarize(np.asarray(self.alpha)[index]),
            _scalarize(np.asarray(self.log_beta)[index]),
            _scalarize(np.asarray(self.gamma)[index]),
            self.kind,
        )

    def distance(self, other: "GroupElement") -> float:
        """Largest componentwise difference, ``log_beta`` taken modulo its period."""
        _check_kinds(self, other)
        period = self.kind.log_beta_period
        d_log = np.asarray(self.log_beta) - np.asarray(other.log_beta)
        d_log = d_log - period * np.round((d_log / period).real)
        return float(
            max(
                np.max(np.abs(np.asarray(self.alpha) - other.alpha)),
                np.max(np.abs(d_log)),
                np.max(np.abs(np.asarray(self.gamma) - other.gamma)),
            )
        )


@dataclass(frozen=True)
class UnitarityReport:
    """Residuals of the three unitarity constraints.

    ``r_modulus`` is ``||alpha| - |gamma||``; ``r_center`` checks the modulus
    relation between ``beta`` and ``alpha``; ``r_phase`` is the distance of the
    phase combination to the nearest multiple of pi (zero when the phases of
    ``alpha`` and ``gamma`` are undefined, see ``phase_defined``).
    """

    r_modulus: float
    r_center: float
    r_phase: float
    phase_defined: bool

    def worst(self) -> float:
        return float(max(np.max(self.r_modulus), np.max(self.r_center), np.max(self.r_phase)))


def identity(kind: AlgebraKind) -> GroupElement:
    return GroupElement(0j, 0j, 0j, AlgebraKind.parse(kind))


def _check_kinds(a: GroupElement, b: GroupElement):
    if a.kind is not b.kind:
        raise ValueError(f"cannot combine {a.kind.value} and {b.kind.value} elements")


def compose(outer: GroupElement, inner: GroupElement, step=None) -> GroupElement:
    """Product ``outer @ inner`` in normal-ordered coordinates.

    With ``(a, b, g)`` from ``outer`` and ``(a~, b~, g~)`` from ``inner`` and
    ``den = 1 - eps*delta*a~*g``::

        zeta_+ = a + a~ b**delta / den
        log zeta_c = log b~ + log b - (2/delta) Log(den)
        zeta_- = g~ + g b~**delta / den
    """
    _check_kinds(outer, inner)
    inc = compose_increments(
        outer.alpha, outer.log_beta, outer.gamma, inner.alpha, inner.log_beta, inner.gamma, outer.kind
    )
    if inc is None:
        raise SingularComposition("1 - eps*delta*alpha_inner*gamma_outer vanished", step)
    base = (inner.alpha, inner.log_beta, inner.gamma)
    return GroupElement(*(_scalarize(b + d) for b, d in zip(base, inc)), outer.kind)


def compose_increments(alpha, log_beta, gamma, alpha_in, log_beta_in, gamma_in, kind):
    """Kernel of :func:`compose` as increments over the inner element.

    Returns ``(d_alpha, d_log_beta, d_gamma)`` with ``product = inner + d``, or
    ``None`` when singular.  Writing ``den = 1 + w`` and carrying it through
    ``log1p``/``expm1`` keeps near-identity factors at full precision.
    """
    eps, delta = kind.epsilon, kind.delta
    alpha_in = np.asarray(alpha_in, dtype=complex)
    gamma = np.asarray(gamma, dtype=complex)
    log_beta = np.asarray(log_beta, dtype=complex)
    log_beta_in = np.asarray(log_beta_in, dtype=complex)
    w = -eps * delta * alpha_in * gamma
    if np.any(np.abs(1 + w) <= SINGULAR_TOL):
        return None
    log_den = log1p_complex(w)
    return (
        alpha + alpha_in * np.expm1(delta * log_beta - log_den),
        log_beta - (2 / delta) * log_den,
        gamma * np.exp(delta * log_beta_in - log_den),
    )


def inverse(g: GroupElement) -> GroupElement:
    """Inverse element via ``l = beta**delta - eps*delta*alpha*gamma``."""
    kind = g.kind
    eps, delta = kind.epsilon, kind.delta
    alpha = np.asarray(g.alpha, dtype=complex)
    gamma = np.asarray(g.gamma, dtype=complex)
    ell = np.exp(delta * np.asarray(g.log_beta)) - eps * delta * alpha * gamma
    if np.any(np.abs(ell) <= SINGULAR_TOL):
        raise SingularInverse("beta**delta - eps*delta*alpha*gamma vanished")
    return GroupElement(
        _scalarize(-alpha / ell),
        _scalarize(np.asarray(g.log_beta) - (2 / delta) * np.log(ell)),
        _scalarize(-gamma / ell),
        kind,
    )


def _distance_to_pi_multiple(angle):
    return np.abs(angle - np.pi * np.round(angle / np.pi))


def unitarity(g: GroupElement) -> UnitarityReport:
    """Residuals of the unitarity constraints for ``g``.

    For su(1,1)/su(2): ``|beta| + eps |alpha|**2 = 1`` and
    ``x = theta + phi (mod pi)`` where ``x = arg(beta)``.  For so(2,1):
    ``exp(-x) = 1 + |alpha|**2 / 2`` and ``ln|beta| = theta + phi (mod pi)``.
    Batched elements give array-valued residuals.
    """
    alpha = np.asarray(g.alpha, dtype=complex)
    gamma = np.asarray(g.gamma, dtype=complex)
    log_beta = np.asarray(g.log_beta, dtype=complex)
    mod_alpha = np.abs(alpha)
    r_modulus = np.abs(mod_alpha - np.abs(gamma))
    if g.kind is AlgebraKind.SO21:
        r_center = np.abs(np.exp(-log_beta.imag) - 1 - mod_alpha**2 / 2)
        phase_target = log_beta.real
    else:
        r_center = np.abs(np.exp(log_beta.real) + g.kind.epsilon.real * mod_alpha**2 - 1)
        phase_target = log_beta.imag
    # angle of exp(i*target) / (alpha*gamma) is target - theta - phi (mod 2 pi)
    combined = np.angle(np.conj(alpha * gamma) * np.exp(1j * phase_target))
    defined = mod_alpha > PHASE_MODULUS_TOL
    r_phase = np.where(defined, _distance_to_pi_multiple(combined), 0.0)
    return UnitarityReport(
        _real_scalar(r_modulus), _real_scalar(r_center), _real_scalar(r_phase),
        bool(defined) if defined.ndim == 0 else defined,
    )


def _real_scalar(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x
