"""Multiplying group elements without ever forming a matrix.

Each element is stored as (alpha, log beta, gamma).  Composition, inversion
and the unitarity relations all act on those three numbers.  A long product
of small steps is how the propagator builds a time evolution.
"""

import numpy as np

from liericcati import AlgebraKind, CoefficientTriple, Drive, compose, evolve, identity, inverse, single_jump, unitarity
from liericcati import oracle

kind = AlgebraKind.SU11
a = single_jump(CoefficientTriple(0.4 + 0.1j, 0.7, 0.4 - 0.1j), 0.8, kind)
b = single_jump(CoefficientTriple(-0.2j, -0.3, 0.2j), 1.1, kind)

ab = compose(a, b)
print("a*b =", ab)
print("matrix check:", np.max(np.abs(oracle.exp_factored(ab) - oracle.exp_factored(a) @ oracle.exp_factored(b))))
print("a^-1 * a vs identity:", compose(inverse(a), a).distance(identity(kind)))

rep = unitarity(ab)
print(f"unitarity residuals: modulus {rep.r_modulus:.1e}, center {rep.r_center:.1e}, phase {rep.r_phase:.1e}")

# A constant Hamiltonian split into many steps reproduces the one-shot answer.
for kind in AlgebraKind:
    drive = Drive.constant(0.7 - 0.4j, 0.9, kind)
    exact = single_jump(drive.sample(0.0), 2.0, kind)
    print(f"{kind.value}: 10^4 steps vs single jump: {evolve(drive, 2.0, 10_000).final().distance(exact):.1e}")

# A smooth so(2,1) drive keeps its unitarity relations along the way.
drive = Drive(lambda t: 0.8 * np.exp(1j * t) * np.sin(t), lambda t: 0.5 + np.cos(2 * t), AlgebraKind.SO21)
print(f"so(2,1) 1000 steps, worst residual: {evolve(drive, 10.0, 1000).max_unitarity_residual():.1e}")
