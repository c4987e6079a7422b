"""Generic complex Riccati equations ``a' + b0 a**2 + b1 a + b2 = 0``.

An equation belongs to one of the three families solved by the propagator
when ``b1`` is purely imaginary and ``b0`` is tied to ``b2``:

=========  ======================
algebra    relation
=========  ======================
so(2,1)    ``b0 = conj(b2) / 2``
su(1,1)    ``b0 = -conj(b2)``
su(2)      ``b0 = conj(b2)``
=========  ======================

The matching Hamiltonian has ``eta_+ = -i b2`` and ``eta_c = b1 / (i delta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

import numpy as np

from .algebra import AlgebraKind
from .errors import AmbiguousMatch, InsufficientCoefficientDerivatives, NoAlgebraMatch, NotPureImaginaryB1

DEFAULT_TOL = 1e-10
DEFAULT_PROBES = 64


@dataclass(frozen=True)
class GenericCRE:
    b0: Callable[[np.ndarray], np.ndarray]
    b1: Callable[[np.ndarray], np.ndarray]
    b2: Callable[[np.ndarray], np.ndarray]

    @classmethod
    def from_drive(cls, drive) -> "GenericCRE":
        """The Riccati equation obeyed by ``alpha`` under ``drive``."""
        eps, delta = drive.kind.epsilon, drive.kind.delta
        return cls(
            b0=lambda t: eps * delta * 1j * np.conj(drive.sample(t).plus),
            b1=lambda t: delta * 1j * drive.eta_center(t),
            b2=lambda t: 1j * drive.sample(t).plus,
        )

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return tuple(np.broadcast_to(np.asarray(b(t), dtype=complex), t.shape) for b in (self.b0, self.b1, self.b2))


_RELATION = {
    AlgebraKind.SO21: 0.5,
    AlgebraKind.SU11: -1.0,
    AlgebraKind.SU2: 1.0,
}


def _drive_for(cre: GenericCRE, kind: AlgebraKind):
    from .propagator import Drive

    if kind is AlgebraKind.SO21:
        # eta_c = b1 / (i*i) = -b1 = i * (-Im b1)
        def center(t):
            return -np.imag(np.asarray(cre.b1(np.asarray(t, dtype=float)), dtype=complex))
    else:
        def center(t):
            return np.imag(np.asarray(cre.b1(np.asarray(t, dtype=float)), dtype=complex))

    def plus(t):
        return -1j * np.asarray(cre.b2(np.asarray(t, dtype=float)), dtype=complex)

    return Drive(plus, center, kind)


def classify(cre: GenericCRE, probe_times: Sequence[float], tol: float = DEFAULT_TOL, kind=None):
    """Map ``cre`` onto an algebra and the Hamiltonian drive that generates it.

    Parameters
    ----------
    cre : GenericCRE
    probe_times : sequence of float
        Times at which the coefficient relations are checked.
    tol : float
        Absolute tolerance for every relation.
    kind : AlgebraKind, optional
        Required when ``b2`` vanishes on every probe; then only the chosen
        relation is checked.

    Returns
    -------
    (AlgebraKind, Drive)

    Raises
    ------
    NotPureImaginaryB1, NoAlgebraMatch, AmbiguousMatch
    """
    t = np.atleast_1d(np.asarray(probe_times, dtype=float))
    if t.size == 0:
        raise ValueError("probe_times must not be empty")
    b0, b1, b2 = cre.evaluate(t)
    re_b1 = float(np.max(np.abs(b1.real)))
    if re_b1 > tol:
        raise NotPureImaginaryB1(f"max |Re b1| = {re_b1:.3g} exceeds tol {tol:.3g}")
    deviations = {k: float(np.max(np.abs(b0 - c * np.conj(b2)))) for k, c in _RELATION.items()}
    if kind is not None:
        kind = AlgebraKind.parse(kind)
        if deviations[kind] > tol:
            raise NoAlgebraMatch(
                f"b0 relation for {kind.value} violated by {deviations[kind]:.3g}", deviations
            )
        return kind, _drive_for(cre, kind)
    matches = [k for k, d in deviations.items() if d <= tol]
    if len(matches) > 1:
        raise AmbiguousMatch("b2 vanishes on all probes; the algebra must be given explicitly")
    if not matches:
        summary = ", ".join(f"{k.value}: {d:.3g}" for k, d in deviations.items())
        raise NoAlgebraMatch(f"no b0 relation holds within {tol:.3g} ({summary})", deviations)
    return matches[0], _drive_for(cre, matches[0])


def solve(cre: GenericCRE, t_final: float, n_steps: int, kind=None, probe_times=None,
          tol: float = DEFAULT_TOL, sampling: str = "midpoint") -> np.ndarray:
    """Solve ``cre`` with ``alpha(0) = 0`` on the grid ``j * t_final / n_steps``.

    Classifies the equation, evolves the associated Hamiltonian and returns
    the cumulative ``alpha`` samples (``n_steps + 1`` values).
    """
    from .propagator import evolve

    if probe_times is None:
        probe_times = np.linspace(0.0, t_final, DEFAULT_PROBES)
    _, drive = classify(cre, probe_times, tol, kind=kind)
    return evolve(drive, t_final, n_steps, sampling).alpha


def nth_derivative(cre: GenericCRE, t: float, alpha_at_t: complex, n: int,
                   coeff_derivatives: Sequence[Sequence[complex]] | None = None) -> complex:
    """Exact ``n``-th time derivative of a Riccati solution from the equation itself.

    ``alpha' = -(b0 alpha**2 + b1 alpha + b2)``; higher derivatives follow by
    differentiating this repeatedly with the Leibniz rule.

    Parameters
    ----------
    cre : GenericCRE
        Supplies the order-0 coefficients when ``coeff_derivatives`` is omitted.
    t : float
    alpha_at_t : complex
    n : int
        Derivative order, at least 1.
    coeff_derivatives : sequence of (b0, b1, b2), optional
        Entry ``k`` holds the ``k``-th derivatives of the coefficients at ``t``;
        orders ``0 .. n-1`` are needed.

    Raises
    ------
    InsufficientCoefficientDerivatives
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if coeff_derivatives is None:
        coeff_derivatives = [tuple(complex(v) for v in cre.evaluate(t))]
    if len(coeff_derivatives) < n:
        raise InsufficientCoefficientDerivatives(
            f"order {n} needs coefficient derivatives up to order {n - 1}, got {len(coeff_derivatives) - 1}"
        )
    c = np.array([[complex(v) for v in row] for row in coeff_derivatives[:n]])
    a = [complex(alpha_at_t)]
    # a[m+1] = -d^m/dt^m (b0 a^2 + b1 a + b2), using only a[0..m]
    for m in range(n):
        quad = sum(comb(m, k) * c[k, 0] * _square_derivative(a, m - k) for k in range(m + 1))
        lin = sum(comb(m, k) * c[k, 1] * a[m - k] for k in range(m + 1))
        a.append(-(quad + lin + c[m, 2]))
    return a[n]


def _square_derivative(a, m):
    return sum(comb(m, i) * a[i] * a[m - i] for i in range(m + 1))
