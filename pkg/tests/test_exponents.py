"""Unit tests for the cumulant-generating-rate families."""

import math

import numpy as np
import pytest

import glevy as g
from conftest import (
    DEFAULT_MODELS,
    FAMILY_NAMES,
    assert_close,
    central_diff,
    interior_points,
)


def test_psi_at_zero_is_zero(family_case):
    model, _, _ = family_case
    assert model.psi(0.0) == pytest.approx(0.0, abs=1e-15)


def test_closed_form_values():
    assert g.Brownian().psi(0.5) == pytest.approx(0.125, rel=1e-15)
    assert g.Poisson(m=2.0).psi(1.0) == pytest.approx(2.0 * (math.e - 1.0), rel=1e-15)
    assert g.Gamma(m=1.0).psi(0.5) == pytest.approx(-math.log(0.5), rel=1e-15)
    assert g.ScaledGamma(m=1.0, kappa=2.0).psi(0.25) == pytest.approx(
        -math.log(0.5), rel=1e-15
    )
    assert g.VarianceGamma(m=2.0).psi(1.0) == pytest.approx(
        -2.0 * math.log(0.75), rel=1e-15
    )
    assert g.NegativeBinomial(m=1.0, q=0.5).psi(math.log(1.5)) == pytest.approx(
        math.log(0.5 / 0.25), rel=1e-15
    )
    cpn = g.CompoundPoissonNormal(m=2.0, s=0.5)
    assert cpn.psi(1.0) == pytest.approx(2.0 * (math.exp(0.125) - 1.0), rel=1e-15)
    avg = g.AsymmetricVG(m=1.5, mu=0.2, s=0.8)
    a = 0.4
    inner = 1.0 - (0.2 / 1.5) * a - (0.64 / 3.0) * a * a
    assert avg.psi(a) == pytest.approx(-1.5 * math.log(inner), rel=1e-14)


def test_domain_endpoints():
    assert g.Gamma(m=1.0).domain.upper == 1.0
    assert g.Gamma(m=1.0).domain.lower == -math.inf
    assert g.ScaledGamma(m=1.0, kappa=0.5).domain.upper == pytest.approx(2.0)
    vg = g.VarianceGamma(m=2.0)
    assert vg.domain.upper == pytest.approx(2.0)
    assert vg.domain.lower == pytest.approx(-2.0)
    nb = g.NegativeBinomial(m=1.0, q=0.5)
    assert nb.domain.upper == pytest.approx(math.log(2.0))
    assert nb.domain.lower == -math.inf
    assert g.Brownian().domain.upper == math.inf

    avg = g.AsymmetricVG(m=1.5, mu=0.2, s=0.8)
    m, mu, s2 = 1.5, 0.2, 0.64
    root = math.sqrt(mu * mu + 2.0 * m * s2)
    k1 = (mu + root) / (2.0 * m)
    k2 = (-mu + root) / (2.0 * m)
    assert avg.domain.upper == pytest.approx(1.0 / k1, rel=1e-14)
    assert avg.domain.lower == pytest.approx(-1.0 / k2, rel=1e-14)
    # Interior values finite, endpoint rejected.
    assert math.isfinite(avg.psi(1.0 / k1 - 1e-6))
    with pytest.raises(g.DomainViolation):
        avg.psi(1.0 / k1)


def test_param_validation():
    with pytest.raises(g.ParamOutOfRange):
        g.Poisson(m=-1.0)
    with pytest.raises(g.ParamOutOfRange):
        g.Gamma(m=0.0)
    with pytest.raises(g.ParamOutOfRange):
        g.ScaledGamma(m=1.0, kappa=-0.5)
    with pytest.raises(g.ParamOutOfRange):
        g.NegativeBinomial(m=1.0, q=1.0)
    with pytest.raises(g.ParamOutOfRange):
        g.NegativeBinomial(m=1.0, q=0.0)
    with pytest.raises(g.ParamOutOfRange):
        g.CompoundPoissonNormal(m=1.0, s=0.0)
    with pytest.raises(g.ParamOutOfRange):
        g.AsymmetricVG(m=1.0, mu=0.2, s=-0.1)


def test_domain_violation(family_case):
    model, _, _ = family_case
    up = model.domain.upper
    if math.isfinite(up):
        with pytest.raises(g.DomainViolation):
            model.psi(up + 0.1)
        with pytest.raises(g.DomainViolation):
            model.psi(up)


def test_make_model_and_unsupported():
    m = g.make_model("Gamma", {"m": 2.0})
    assert isinstance(m, g.Gamma) and m.m == 2.0
    with pytest.raises(g.Unsupported):
        g.make_model("JumpDiffusion", {})
    with pytest.raises(g.Unsupported):
        g.make_model("NoSuchFamily", {})


def test_derivatives_match_finite_differences(family_case, np_rng):
    model, _, _ = family_case
    pts = interior_points(model, 20, np_rng)
    for a in pts:
        h = 1e-6 * max(1.0, abs(a))
        fd1 = central_diff(model.psi, a, h)
        fd2 = (model.psi(a + h) - 2.0 * model.psi(a) + model.psi(a - h)) / (h * h)
        assert_close(model.psi_prime(a), fd1, 1e-6, f"psi' at {a}")
        assert abs(model.psi_second(a) - fd2) < 1e-3 * max(1.0, abs(fd2)), (
            f"psi'' at {a}: {model.psi_second(a)} vs {fd2}"
        )


def test_convexity(family_case, np_rng):
    model, _, _ = family_case
    for a in interior_points(model, 50, np_rng):
        assert model.psi_second(a) > 0.0


def test_four_point_exponent_inequality(family_case, np_rng):
    # For a < b <= c < d with a + d = b + c:
    # psi(a) + psi(d) >= psi(b) + psi(c), by convexity of psi.
    model, _, _ = family_case
    for _ in range(200):
        pts = np.sort(interior_points(model, 3, np_rng))
        a, b, c = pts
        d = b + c - a
        if not model.domain.admissible(d) or d <= c:
            continue
        lhs = model.psi(a) + model.psi(d)
        rhs = model.psi(b) + model.psi(c)
        assert lhs >= rhs - 1e-12 * max(1.0, abs(lhs))


def test_variance_gamma_gaussian_limit():
    # As the activity rate grows, the VG exponent approaches alpha^2 / 2.
    a = 0.5
    target = g.Brownian().psi(a)
    err_1e3 = abs(g.VarianceGamma(m=1e3).psi(a) - target)
    err_1e6 = abs(g.VarianceGamma(m=1e6).psi(a) - target)
    assert err_1e6 < err_1e3
    assert err_1e6 < 1e-2


def test_mirror_reflection(family_case, np_rng):
    model, _, _ = family_case
    mm = g.mirror(model)
    for a in interior_points(model, 20, np_rng):
        if not mm.domain.admissible(a):
            continue
        assert mm.psi(a) == pytest.approx(model.psi(-a), rel=1e-14, abs=1e-14)
        assert mm.psi_prime(a) == pytest.approx(
            -model.psi_prime(-a), rel=1e-14, abs=1e-14
        )
        assert mm.psi_second(a) == pytest.approx(
            model.psi_second(-a), rel=1e-14, abs=1e-14
        )


def test_mirror_symmetric_families_fixed():
    for name in ("Brownian", "CompoundPoissonNormal", "VarianceGamma"):
        model, _, _ = DEFAULT_MODELS[name]
        assert g.mirror(model) is model


def test_mirror_involution():
    base = g.Gamma(m=1.0)
    mm = g.mirror(g.mirror(base))
    for a in (-0.5, 0.3, 0.9):
        assert mm.psi(a) == pytest.approx(base.psi(a), rel=1e-15)
    assert mm.domain.lower == base.domain.lower
    assert mm.domain.upper == base.domain.upper
