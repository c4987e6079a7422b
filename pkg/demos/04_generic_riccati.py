"""Solving a Riccati equation given only its coefficients.

An equation a' + b0 a^2 + b1 a + b2 = 0 is matched to one of the three
algebras, solved by the group product, and checked: the discrete solution
satisfies the equation to second order in the step, and its higher
derivatives follow from the equation itself.
"""

import numpy as np

from liericcati import GenericCRE, classify, nth_derivative, solve

# su(1,1) family: b0 = -conj(b2) and b1 purely imaginary
cre = GenericCRE(
    b0=lambda t: -np.conj(0.3j * np.exp(-0.2j * t)) * np.ones_like(t),
    b1=lambda t: 1j * (0.5 + 0.1 * t),
    b2=lambda t: 0.3j * np.exp(-0.2j * t),
)
kind, drive = classify(cre, np.linspace(0, 5, 21))
print("matched algebra:", kind.value)

for n in (250, 500, 1000):
    alpha = solve(cre, 5.0, n)
    tau = 5.0 / n
    deriv = (alpha[2:] - alpha[:-2]) / (2 * tau)
    t = np.arange(1, n) * tau
    b0, b1, b2 = cre.evaluate(t)
    resid = np.max(np.abs(deriv + b0 * alpha[1:-1] ** 2 + b1 * alpha[1:-1] + b2))
    print(f"N={n:5d}: alpha(5) = {alpha[-1]:.10f}, max ODE residual {resid:.2e}")

# first derivative straight from the equation, against a central difference
alpha = solve(cre, 5.0, 4000)
j, tau = 2000, 5.0 / 4000
print("alpha'(2.5) from the equation:", nth_derivative(cre, j * tau, alpha[j], 1))
print("alpha'(2.5) central difference:", (alpha[j + 1] - alpha[j - 1]) / (2 * tau))
