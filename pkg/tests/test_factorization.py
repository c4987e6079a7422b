import numpy as np
import pytest
from hypothesis import given, strategies as st

from liericcati import AlgebraKind, CoefficientTriple, factor_antinormal, factor_normal, nu
from liericcati import oracle
from liericcati.factorization import SMALL_NU, log1p_complex

from .strategies import complex_in_disk, kinds, lambdas

SU2, SU11, SO21 = AlgebraKind.SU2, AlgebraKind.SU11, AlgebraKind.SO21


def test_nu_examples():
    assert nu(CoefficientTriple(0, 0.7, 0), SU2) == pytest.approx(0.35)
    assert nu(CoefficientTriple(1.5j, 0, 1.5j), SU2) == pytest.approx(1.5j)
    assert nu(CoefficientTriple(1, 0, 1), SU11) == pytest.approx(1j)


def test_zero_exponent_is_identity(kind):
    for fn in (factor_normal, factor_antinormal):
        f = fn(CoefficientTriple(0, 0, 0), kind)
        assert (f.plus, f.log_center, f.minus) == (0, 0, 0)


@pytest.mark.parametrize("c", [0.3, -1.2 + 0.4j, 2j])
def test_diagonal_exponent(kind, c):
    for fn in (factor_normal, factor_antinormal):
        f = fn(CoefficientTriple(0, c, 0), kind)
        assert f.plus == 0 and f.minus == 0
        assert abs(f.log_center - c) <= 1e-14


def test_su2_random_against_oracle():
    lam = CoefficientTriple(0.1 + 0.2j, -0.3j, 0.2 - 0.1j)
    f = factor_normal(lam, SU2)
    assert np.max(np.abs(oracle.exp_factored(f.to_group_element()) - oracle.exp_linear(lam, SU2))) <= 1e-10


def test_su11_antinormal_against_oracle(rng):
    for _ in range(50):
        p, c, m = rng.uniform(-0.5, 0.5, 3) + 1j * rng.uniform(-0.5, 0.5, 3)
        lam = CoefficientTriple(p, c, m)
        s = factor_antinormal(lam, SU11)
        got = oracle.exp_antinormal(s.minus, s.log_center, s.plus, SU11)
        assert np.max(np.abs(got - oracle.exp_linear(lam, SU11))) <= 1e-10


def test_antinormal_of_negated_exponent():
    lam = CoefficientTriple(0.4 - 0.1j, 0.2 + 0.3j, -0.25j)
    for kind in AlgebraKind:
        n = factor_normal(lam, kind)
        a = factor_antinormal(-lam, kind)
        assert abs(a.log_center + n.log_center) <= 1e-14
        assert abs(a.plus + n.plus) <= 1e-14 and abs(a.minus + n.minus) <= 1e-14


@given(kinds, lambdas())
def test_normal_matches_oracle(kind, lam):
    f = factor_normal(lam, kind)
    assert np.max(np.abs(oracle.exp_factored(f.to_group_element()) - oracle.exp_linear(lam, kind))) <= 1e-10


@given(kinds, lambdas())
def test_antinormal_matches_oracle(kind, lam):
    s = factor_antinormal(lam, kind)
    got = oracle.exp_antinormal(s.minus, s.log_center, s.plus, kind)
    assert np.max(np.abs(got - oracle.exp_linear(lam, kind))) <= 1e-10


@given(kinds, lambdas())
def test_branch_independence(kind, lam):
    # the closed forms only depend on nu**2, so flipping nu cannot matter
    from liericcati import factorization as fz
    base = factor_normal(lam, kind)
    s_plus = fz._coshm1_and_sinhc(base.nu**2, base.nu)
    s_minus = fz._coshm1_and_sinhc(base.nu**2, -base.nu)
    assert np.allclose(s_plus, s_minus, rtol=1e-14, atol=1e-16)


@pytest.mark.parametrize("offset", [-1e-9, 0.0, 1e-9])
def test_small_nu_seam_is_continuous(kind, offset):
    # choose a diagonal-free exponent with |nu| at the Taylor seam
    target = SMALL_NU + offset
    eps, delta = kind.epsilon, kind.delta
    # nu**2 = -delta*eps*l+*l- with l+ = l- = x
    x = np.sqrt(target**2 / abs(delta * eps))
    lam = CoefficientTriple(x, 0, x)
    f = factor_normal(lam, kind)
    ref = oracle.refactor_normal(oracle.exp_linear(lam, kind), kind)
    assert abs(abs(f.nu) - target) <= 1e-15
    assert abs(f.plus - ref[0]) <= 1e-15 and abs(f.minus - ref[2]) <= 1e-15


def test_unitary_step_gives_finite_result():
    # large hermitian step: su(2) never singular for physical exponents
    lam = CoefficientTriple(3 - 2j, 0.5, 3 + 2j).scaled(-1j)
    f = factor_normal(lam, SU2)
    assert np.isfinite(f.plus) and np.isfinite(f.log_center)


def test_batched_matches_scalar(rng):
    p, c, m = (rng.normal(size=(3, 8)) + 1j * rng.normal(size=(3, 8))) * 0.3
    batch = factor_normal(CoefficientTriple(p, c, m), SU11)
    for j in range(8):
        one = factor_normal(CoefficientTriple(p[j], c[j], m[j]), SU11)
        assert abs(batch.plus[j] - one.plus) <= 1e-15
        assert abs(batch.log_center[j] - one.log_center) <= 1e-15


@given(complex_in_disk(1e-3))
def test_log1p_complex_accuracy(z):
    ref = np.log1p(np.float64(z.real)) if z.imag == 0 else None
    got = log1p_complex(z)
    # exp(log1p(z)) - 1 == z to relative precision
    assert abs(np.expm1(got) - z) <= 2e-15 * max(abs(z), 1e-300) + 1e-300
    if ref is not None:
        assert abs(got.real - ref) <= 4e-16 * abs(ref) + 1e-300


def test_frozen_su2_values():
    f = factor_normal(CoefficientTriple(0.1 + 0.2j, -0.3j, 0.2 - 0.1j), SU2)
    assert abs(f.plus - (0.12781015450806624 + 0.17850971114286932j)) <= 1e-15
    assert abs(f.log_center - (-0.04247997350768935 - 0.3254397885708409j)) <= 1e-15
    assert abs(f.minus - (0.17850971114286932 - 0.12781015450806626j)) <= 1e-15


@pytest.mark.parametrize("e", [1e-9, 1e-12, 1e-15 + 1e-15j])
def test_log1p_complex_near_minus_one(e):
    z = -1 + e
    # 1 + z is exact here, so log of it is the reference
    ref = np.log(complex(1 + z.real, z.imag))
    got = log1p_complex(z)
    assert abs(got - ref) <= 1e-15 * abs(ref)
