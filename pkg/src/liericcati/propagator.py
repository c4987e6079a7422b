"""Time-splitting solution of the time evolution operator.

The interval ``[0, t_final]`` is cut into ``n_steps`` pieces of length ``tau``
on which the Hamiltonian is frozen.  Each piece is an exact group element
obtained from :func:`~liericcati.factorization.factor_normal`, and the total
evolution is the ordered product of the pieces, accumulated with the group
law in :mod:`liericcati.group`.

Drives may be batched: if ``center_scalar`` (or ``eta_plus``) returns an
array of shape ``(len(t), *batch)``, every trajectory array carries the same
trailing batch axes and the batch is evolved in lock step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .algebra import AlgebraKind, CoefficientTriple
from .errors import SingularComposition
from .factorization import SINGULAR_TOL, FactorResult, factor_normal
from .group import GroupElement, compose_increments, unitarity

SAMPLING_MODES = ("midpoint", "endpoint")


def _evaluate(fn, t, dtype):
    t = np.asarray(t, dtype=float)
    value = np.asarray(fn(t), dtype=dtype)
    if value.shape[: t.ndim] != t.shape:
        value = np.broadcast_to(value, t.shape + value.shape)
    return value


def _match_batch(*arrays):
    ndim = max(a.ndim for a in arrays)
    arrays = [a.reshape(a.shape + (1,) * (ndim - a.ndim)) for a in arrays]
    return np.broadcast_arrays(*arrays)


@dataclass(frozen=True)
class Drive:
    """Hermitian Hamiltonian coefficients ``(eta_+, eta_c, conj(eta_+))``.

    ``center_scalar`` is real; ``eta_c`` equals it for su(1,1)/su(2) and
    ``1j * center_scalar`` for so(2,1), so the Hamiltonian is hermitian by
    construction.  Both callables must accept numpy arrays of times.
    """

    eta_plus: Callable[[np.ndarray], np.ndarray]
    center_scalar: Callable[[np.ndarray], np.ndarray]
    kind: AlgebraKind

    @classmethod
    def constant(cls, eta_plus: complex, center_scalar: float, kind) -> "Drive":
        eta_plus, center_scalar = complex(eta_plus), float(center_scalar)
        return cls(
            lambda t: np.full(np.shape(t), eta_plus, dtype=complex),
            lambda t: np.full(np.shape(t), center_scalar),
            AlgebraKind.parse(kind),
        )

    def eta_center(self, t):
        c = _evaluate(self.center_scalar, t, float)
        return 1j * c if self.kind is AlgebraKind.SO21 else c.astype(complex)

    def sample(self, t) -> CoefficientTriple:
        """Coefficient triple at times ``t``, batch axes aligned."""
        plus = _evaluate(self.eta_plus, t, complex)
        center = self.eta_center(t)
        plus, center = _match_batch(plus, center)
        return CoefficientTriple(plus, center, np.conj(plus))


@dataclass(frozen=True)
class Trajectory:
    """Per-step and cumulative elements of a time-split evolution.

    ``times`` has ``n_steps + 1`` entries ``t_j = j * tau``.  ``cumulative`` is
    indexed like ``times`` (``cumulative[0]`` is the identity, ``cumulative[j]``
    the evolution up to ``t_j``); ``steps[j - 1]`` is the frozen-Hamiltonian
    element for ``(t_{j-1}, t_j]``.
    """

    tau: float
    times: np.ndarray
    steps: GroupElement
    cumulative: GroupElement
    kind: AlgebraKind
    sampling: str = "midpoint"

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    @property
    def alpha(self) -> np.ndarray:
        return np.asarray(self.cumulative.alpha)

    @property
    def log_beta(self) -> np.ndarray:
        return np.asarray(self.cumulative.log_beta)

    @property
    def gamma(self) -> np.ndarray:
        return np.asarray(self.cumulative.gamma)

    def final(self) -> GroupElement:
        return self.cumulative[-1]

    def max_unitarity_residual(self):
        """Worst unitarity residual over every step and cumulative element.

        Reduces over the time axis only, so a batched trajectory yields one
        value per batch entry.
        """
        worst = None
        for element in (self.steps, self.cumulative):
            report = unitarity(element)
            r = np.maximum(np.maximum(report.r_modulus, report.r_center), report.r_phase)
            r = np.max(r, axis=0)
            worst = r if worst is None else np.maximum(worst, r)
        return float(worst) if np.ndim(worst) == 0 else worst


def _neumaier_add(total, comp, inc):
    """Compensated ``total + inc``, applied to real and imaginary parts separately."""
    new = total + inc
    err = np.empty_like(new)
    for part in ("real", "imag"):
        t, i, n = getattr(total, part), getattr(inc, part), getattr(new, part)
        setattr(err, part, np.where(np.abs(t) >= np.abs(i), (t - n) + i, (i - n) + t))
    return new, comp + err


def accumulate(steps: GroupElement) -> GroupElement:
    """Ordered product ``steps[N-1] ... steps[0]`` with every partial product.

    Returns the cumulative elements with a leading identity, i.e. an array one
    longer than ``steps`` along axis 0.  Each partial product is the group
    law applied to the previous one; the running sums use compensated
    addition so rounding does not build up coherently over many steps.
    """
    kind = steps.kind
    sa, sl, sg = (np.asarray(x, dtype=complex) for x in (steps.alpha, steps.log_beta, steps.gamma))
    n = sa.shape[0]
    out = [np.zeros((n + 1,) + sa.shape[1:], dtype=complex) for _ in range(3)]
    totals = [np.zeros(sa.shape[1:], dtype=complex) for _ in range(3)]
    comps = [np.zeros(sa.shape[1:], dtype=complex) for _ in range(3)]
    for j in range(n):
        current = [t + c for t, c in zip(totals, comps)]
        with np.errstate(over="ignore", invalid="ignore"):
            inc = compose_increments(sa[j], sl[j], sg[j], *current, kind)
        if inc is None or not all(np.all(np.isfinite(x)) for x in inc):
            raise SingularComposition("cumulative product left the normal-order chart", step=j + 1)
        for k in range(3):
            totals[k], comps[k] = _neumaier_add(totals[k], comps[k], inc[k])
            out[k][j + 1] = totals[k] + comps[k]
    return GroupElement(*out, kind)


def sample_times(t_final: float, n_steps: int, sampling: str = "midpoint") -> np.ndarray:
    tau = t_final / n_steps
    j = np.arange(1, n_steps + 1)
    if sampling == "midpoint":
        return (j - 0.5) * tau
    if sampling == "endpoint":
        return j * tau
    raise ValueError(f"sampling must be one of {SAMPLING_MODES}, got {sampling!r}")


def evolve(drive: Drive, t_final: float, n_steps: int, sampling: str = "midpoint") -> Trajectory:
    """Evolve from the identity at ``t = 0`` to ``t_final`` in ``n_steps`` frozen steps.

    Parameters
    ----------
    drive : Drive
    t_final : float
        Must be positive.
    n_steps : int
        Must be at least 1.
    sampling : {"midpoint", "endpoint"}
        Where each step samples the drive: ``(j - 1/2) tau`` (second order)
        or ``j tau``.

    Raises
    ------
    SingularFactorization, SingularComposition
        With the offending step index attached.
    """
    if int(n_steps) != n_steps or n_steps < 1:
        raise ValueError(f"n_steps must be a positive integer, got {n_steps!r}")
    if not t_final > 0:
        raise ValueError(f"t_final must be positive, got {t_final!r}")
    n_steps = int(n_steps)
    tau = t_final / n_steps
    eta = drive.sample(sample_times(t_final, n_steps, sampling))
    steps = factor_steps(eta.scaled(-1j * tau), drive.kind)
    return Trajectory(
        tau=tau,
        times=np.arange(n_steps + 1) * tau,
        steps=steps,
        cumulative=accumulate(steps),
        kind=drive.kind,
        sampling=sampling,
    )


def factor_steps(lam: CoefficientTriple, kind: AlgebraKind) -> GroupElement:
    """Factor a stack of per-step exponents, reporting the first singular step."""
    from .errors import SingularFactorization

    try:
        return factor_normal(lam, kind).to_group_element()
    except SingularFactorization:
        pass
    plus = np.atleast_1d(lam.plus)
    for j in range(plus.shape[0]):
        try:
            factor_normal(
                CoefficientTriple(plus[j], np.atleast_1d(lam.center)[j], np.atleast_1d(lam.minus)[j]), kind
            )
        except SingularFactorization as exc:
            raise SingularFactorization("per-step factorization is singular", step=j + 1) from exc
    raise AssertionError("unreachable")


def single_jump(eta: CoefficientTriple, t: float, kind: AlgebraKind) -> GroupElement:
    """Exact evolution for Hamiltonian coefficients switched on at ``t = 0`` and held."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return factor_normal(eta.scaled(-1j * t), kind).to_group_element()


def gcf_alpha(step_elements: Sequence[FactorResult] | FactorResult, kind: AlgebraKind) -> complex:
    """Evaluate the continued-fraction solution for the final ``alpha``.

    The nested fraction is unwound from the innermost level ``alpha_1 = L_1+``
    outwards with ``alpha <- L_j+ + alpha L_jc**delta / (1 - eps delta alpha L_j-)``,
    which equals the displayed fraction but stays finite when an intermediate
    ``alpha`` vanishes.
    """
    kind = AlgebraKind.parse(kind)
    eps, delta = kind.epsilon, kind.delta
    if isinstance(step_elements, FactorResult):
        plus = np.atleast_1d(step_elements.plus)
        log_c = np.atleast_1d(step_elements.log_center)
        minus = np.atleast_1d(step_elements.minus)
    else:
        if len(step_elements) == 0:
            raise ValueError("need at least one step element")
        plus = np.array([s.plus for s in step_elements], dtype=complex)
        log_c = np.array([s.log_center for s in step_elements], dtype=complex)
        minus = np.array([s.minus for s in step_elements], dtype=complex)
    alpha = plus[0]
    for j in range(1, len(plus)):
        den = 1 - eps * delta * alpha * minus[j]
        if np.any(np.abs(den) <= SINGULAR_TOL):
            raise SingularComposition("continued fraction hit a zero denominator", step=j + 1)
        alpha = plus[j] + alpha * np.exp(delta * log_c[j]) / den
    return complex(alpha) if np.ndim(alpha) == 0 else alpha


def beta_gamma_quadrature(trajectory: Trajectory, drive: Drive):
    """Recover ``log beta`` and ``gamma`` from ``alpha`` by trapezoidal quadrature.

    ``log beta(t) = -2 i eps int eta_+^* alpha - i int eta_c`` and
    ``gamma(t) = -i int eta_+^* beta**delta``, both from 0 on the trajectory
    grid.
    """
    kind = trajectory.kind
    eps, delta = kind.epsilon, kind.delta
    t = trajectory.times
    eta = drive.sample(t)
    alpha = trajectory.alpha
    eta_minus, eta_c, alpha = _match_batch(eta.minus, eta.center, alpha)
    log_beta = -2j * eps * cumulative_trapezoid(eta_minus * alpha, t, axis=0, initial=0)
    log_beta = log_beta - 1j * cumulative_trapezoid(eta_c, t, axis=0, initial=0)
    gamma = -1j * cumulative_trapezoid(eta_minus * np.exp(delta * log_beta), t, axis=0, initial=0)
    return log_beta, gamma


def riccati_residual(trajectory: Trajectory, drive: Drive):
    """Max residual of the Riccati equation for ``alpha`` at interior grid points.

    The derivative is the central difference ``(alpha_{j+1} - alpha_{j-1}) / 2 tau``
    and the drive is evaluated on the grid.  Batched trajectories give one
    value per batch entry.
    """
    if trajectory.n_steps < 2:
        raise ValueError("need at least 3 grid points")
    kind = trajectory.kind
    eps, delta = kind.epsilon, kind.delta
    alpha = trajectory.alpha
    eta = drive.sample(trajectory.times[1:-1])
    a_mid = alpha[1:-1]
    eta_plus, eta_c, eta_minus, a_mid = _match_batch(eta.plus, eta.center, eta.minus, a_mid)
    deriv = (alpha[2:] - alpha[:-2]) / (2 * trajectory.tau)
    deriv = deriv.reshape(deriv.shape + (1,) * (a_mid.ndim - deriv.ndim))
    res = deriv + eps * delta * 1j * eta_minus * a_mid**2 + delta * 1j * eta_c * a_mid + 1j * eta_plus
    worst = np.max(np.abs(res), axis=0)
    return float(worst) if np.ndim(worst) == 0 else worst
