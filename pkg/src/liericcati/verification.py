"""Seeded randomized property suites behind ``liericcati verify``.

Each suite returns the largest residual it observed; the caller compares it
with a tolerance.  Random exponents have ``|lambda| <= 1`` so they stay well
inside both factorization charts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .algebra import AlgebraKind, CoefficientTriple
from .factorization import factor_antinormal, factor_normal
from .group import GroupElement, compose, identity, inverse, unitarity
from .propagator import accumulate, gcf_alpha

DEFAULT_TOLERANCES = {
    "factor_normal_vs_oracle": 1e-10,
    "factor_antinormal_vs_oracle": 1e-10,
    "antinormal_inverse_consistency": 1e-10,
    "compose_vs_oracle": 1e-10,
    "inverse_vs_oracle": 1e-10,
    "group_axioms": 1e-12,
    "associativity": 1e-10,
    "unitarity_closure": 1e-9,
    "gcf_vs_recursion": 1e-12,
}


def random_disk(rng, n, radius=1.0):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def random_lambda(rng, n) -> CoefficientTriple:
    """``n`` exponents with Euclidean norm at most 1."""
    r = 1 / np.sqrt(3)
    return CoefficientTriple(random_disk(rng, n, r), random_disk(rng, n, r), random_disk(rng, n, r))


def hermitian_eta(rng, n, kind: AlgebraKind, scale=1.0) -> CoefficientTriple:
    """Random coefficients of hermitian Hamiltonians."""
    plus = random_disk(rng, n, scale)
    c = rng.uniform(-scale, scale, n)
    center = 1j * c if kind is AlgebraKind.SO21 else c + 0j
    return CoefficientTriple(plus, center, np.conj(plus))


def random_unitary(rng, n, kind: AlgebraKind, tau=0.5) -> GroupElement:
    return factor_normal(hermitian_eta(rng, n, kind).scaled(-1j * tau), kind).to_group_element()


def _normal_vs_matrix(alpha, log_beta, gamma, m, kind):
    a, q, g = oracle.refactor_normal(m, kind)
    return max(
        np.max(np.abs(a - alpha)),
        np.max(np.abs(q - oracle.center_half_power(log_beta, kind))),
        np.max(np.abs(g - gamma)),
    )


def suite_factor_normal(kind, rng, n):
    lam = random_lambda(rng, n)
    f = factor_normal(lam, kind)
    return float(_normal_vs_matrix(f.plus, f.log_center, f.minus, oracle.exp_linear(lam, kind), kind))


def suite_factor_antinormal(kind, rng, n):
    lam = random_lambda(rng, n)
    s = factor_antinormal(lam, kind)
    sp, q, sm = oracle.refactor_antinormal(oracle.exp_linear(lam, kind), kind)
    return float(max(
        np.max(np.abs(sp - s.plus)),
        np.max(np.abs(q - oracle.center_half_power(s.log_center, kind))),
        np.max(np.abs(sm - s.minus)),
    ))


def suite_antinormal_inverse(kind, rng, n):
    lam = random_lambda(rng, n)
    f = factor_normal(lam, kind)
    s = factor_antinormal(-lam, kind)
    return float(max(
        np.max(np.abs(s.plus + f.plus)),
        np.max(np.abs(s.minus + f.minus)),
        np.max(np.abs(s.log_center + f.log_center)),
    ))


def suite_compose(kind, rng, n):
    a = factor_normal(random_lambda(rng, n), kind).to_group_element()
    b = factor_normal(random_lambda(rng, n), kind).to_group_element()
    c = compose(a, b)
    m = oracle.exp_factored(a) @ oracle.exp_factored(b)
    return float(_normal_vs_matrix(c.alpha, c.log_beta, c.gamma, m, kind))


def suite_inverse(kind, rng, n):
    g = factor_normal(random_lambda(rng, n), kind).to_group_element()
    inv = inverse(g)
    m = np.linalg.inv(oracle.exp_factored(g))
    return float(_normal_vs_matrix(inv.alpha, inv.log_beta, inv.gamma, m, kind))


def suite_group_axioms(kind, rng, n):
    g = random_unitary(rng, n, kind)
    e = identity(kind)
    return max(
        compose(g, e).distance(g),
        compose(e, g).distance(g),
        compose(inverse(g), g).distance(e),
        compose(g, inverse(g)).distance(e),
    )


def suite_associativity(kind, rng, n):
    a, b, c = (random_unitary(rng, n, kind) for _ in range(3))
    return compose(compose(a, b), c).distance(compose(a, compose(b, c)))


def suite_unitarity_closure(kind, rng, n):
    a, b = random_unitary(rng, n, kind), random_unitary(rng, n, kind)
    return unitarity(compose(a, b)).worst()


def random_step_sequences(rng, n, kind, depth=100, tau=0.05):
    """``n`` independent sequences of ``depth`` unitary steps, stacked as ``(depth, n)``."""
    eta = hermitian_eta(rng, depth * n, kind)
    eta = CoefficientTriple(*(np.reshape(x, (depth, n)) for x in (eta.plus, eta.center, eta.minus)))
    return factor_normal(eta.scaled(-1j * tau), kind)


def suite_gcf(kind, rng, n):
    f = random_step_sequences(rng, n, kind)
    alpha = accumulate(f.to_group_element()).alpha[-1]
    return float(np.max(np.abs(gcf_alpha(f, kind) - alpha)))


SUITES = {
    "factor_normal_vs_oracle": suite_factor_normal,
    "factor_antinormal_vs_oracle": suite_factor_antinormal,
    "antinormal_inverse_consistency": suite_antinormal_inverse,
    "compose_vs_oracle": suite_compose,
    "inverse_vs_oracle": suite_inverse,
    "group_axioms": suite_group_axioms,
    "associativity": suite_associativity,
    "unitarity_closure": suite_unitarity_closure,
    "gcf_vs_recursion": suite_gcf,
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def run_suites(kind, n: int, seed: int, tolerances=None) -> list[SuiteResult]:
    """Run every suite with its own generator derived from ``seed``."""
    kind = AlgebraKind.parse(kind)
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    results = []
    for index, (name, suite) in enumerate(SUITES.items()):
        rng = np.random.default_rng([seed, index])
        results.append(SuiteResult(name, suite(kind, rng, n), tol[name]))
    return results
