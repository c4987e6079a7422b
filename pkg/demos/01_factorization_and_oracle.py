"""Factorizing a single exponential and checking it against 2x2 matrices.

A Hamiltonian built from the three generators T+, Tc, T- evolves states by
exp(lambda+ T+ + lambda_c Tc + lambda- T-).  The library rewrites that single
exponential as an ordered product of three one-generator exponentials, in
either order, and we confirm the rewrite by multiplying small matrices.
"""

import numpy as np

from liericcati import AlgebraKind, CoefficientTriple, factor_antinormal, factor_normal, nu
from liericcati import oracle

lam = CoefficientTriple(0.1 + 0.2j, -0.3j, 0.2 - 0.1j)

for kind in AlgebraKind:
    print(f"--- {kind.value}  (eps, delta) = ({kind.epsilon}, {kind.delta})")
    print(f"nu = {nu(lam, kind):.6f}")

    normal = factor_normal(lam, kind)
    print(f"normal order:      L+ = {normal.plus:.6f}  ln Lc = {normal.log_center:.6f}  L- = {normal.minus:.6f}")

    # the same element in the opposite ordering
    anti = factor_antinormal(lam, kind)
    print(f"anti-normal order: S+ = {anti.plus:.6f}  ln Sc = {anti.log_center:.6f}  S- = {anti.minus:.6f}")

    target = oracle.exp_linear(lam, kind)
    err_n = np.max(np.abs(oracle.exp_factored(normal.to_group_element()) - target))
    err_a = np.max(np.abs(oracle.exp_antinormal(anti.minus, anti.log_center, anti.plus, kind) - target))
    print(f"matrix check: normal {err_n:.1e}, anti-normal {err_a:.1e}")

# Flipping the sign of the exponent swaps the two orderings up to signs.
n, a = factor_normal(lam, AlgebraKind.SU2), factor_antinormal(-lam, AlgebraKind.SU2)
print("\nanti-normal(-lambda) vs normal(lambda):",
      abs(a.plus + n.plus), abs(a.log_center + n.log_center), abs(a.minus + n.minus))
