"""Structure constants of su(1,1), su(2), so(2,1) and coefficient triples.

All three algebras share the commutation relations

    [T_-, T_+] = 2 eps T_c,    [T_c, T_+-] = +- delta T_+-

and differ only in the pair ``(eps, delta)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class AlgebraKind(enum.Enum):
    """Which of the three algebras a Hamiltonian or group element belongs to."""

    SU11 = "su11"
    SU2 = "su2"
    SO21 = "so21"

    @classmethod
    def parse(cls, value: "str | AlgebraKind") -> "AlgebraKind":
        """Accept an enum member or one of the strings ``su11``, ``su2``, ``so21``."""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown algebra {value!r}; expected one of {valid}") from None

    @property
    def epsilon(self) -> complex:
        return _CONSTANTS[self][0]

    @property
    def delta(self) -> complex:
        return _CONSTANTS[self][1]

    @property
    def log_beta_period(self) -> complex:
        """Shift of ``log beta`` that leaves every closed form unchanged (``4 pi i / delta``)."""
        return 4j * np.pi / self.delta


_CONSTANTS = {
    AlgebraKind.SU11: (1 + 0j, 1 + 0j),
    AlgebraKind.SU2: (-1 + 0j, 1 + 0j),
    AlgebraKind.SO21: (0.5j, 1j),
}


def structure_constants(kind: AlgebraKind) -> tuple[complex, complex]:
    """Return ``(epsilon, delta)`` for ``kind``."""
    return _CONSTANTS[AlgebraKind.parse(kind)]


@dataclass(frozen=True)
class CoefficientTriple:
    """Ordered coefficients ``(plus, center, minus)`` of ``T_+``, ``T_c``, ``T_-``.

    Entries may be complex scalars or broadcast-compatible complex arrays; in
    the latter case every operation in the package acts elementwise.
    """

    plus: complex
    center: complex
    minus: complex

    def __post_init__(self):
        for name in ("plus", "center", "minus"):
            value = getattr(self, name)
            if not np.all(np.isfinite(value)):
                raise ValueError(f"CoefficientTriple.{name} is not finite")

    def __neg__(self) -> "CoefficientTriple":
        return CoefficientTriple(-self.plus, -self.center, -self.minus)

    def scaled(self, factor: complex) -> "CoefficientTriple":
        return CoefficientTriple(factor * self.plus, factor * self.center, factor * self.minus)

    def as_array(self) -> np.ndarray:
        return np.array([self.plus, self.center, self.minus], dtype=complex)


def hermiticity_residual(triple: CoefficientTriple, kind: AlgebraKind) -> float:
    """How far a Hamiltonian coefficient sample is from being hermitian.

    A hermitian Hamiltonian needs ``eta_- = conj(eta_+)`` and a center
    coefficient that is real (su(1,1), su(2)) or purely imaginary (so(2,1)).

    Returns
    -------
    float
        ``max(|plus - conj(minus)|, wrong part of center)``; zero iff hermitian.
        Array-valued triples reduce to the maximum over all samples.
    """
    kind = AlgebraKind.parse(kind)
    plus = np.asarray(triple.plus, dtype=complex)
    minus = np.asarray(triple.minus, dtype=complex)
    center = np.asarray(triple.center, dtype=complex)
    pair = np.abs(plus - np.conj(minus))
    wrong = np.abs(center.real) if kind is AlgebraKind.SO21 else np.abs(center.imag)
    return float(max(np.max(pair), np.max(wrong)))
