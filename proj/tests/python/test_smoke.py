"""Python smoke tests for the extension module.

Run with the build tree on PYTHONPATH (ctest does this) or with the package
installed.
"""

import math
import sys

import divball as db


def approx(got, want, tol):
    assert abs(got - want) <= tol, f"got {got}, want {want} +- {tol}"


def two_point_space():
    return db.ScenarioSpace.build_discrete(
        [db.Atom("a", 0.0, 0.5, 0.0, 1.0), db.Atom("b", 1.0, 0.5, 1.0, 1.0)]
    )


def test_discrete_worst_case():
    space = two_point_space()
    spec = db.IntegrandSpec.f_divergence(db.Generator.KL)
    rep = db.value_at_k(spec, space, 0.2)
    oracle = db.brute_force_worst_case(spec, space, 0.2, 20000)
    approx(rep.v, oracle, 1e-4)
    assert rep.is_wcd
    approx(db.k_max_estimate(spec, space), math.log(2.0), 1e-6)


def test_quadrature_closed_form():
    space = db.ScenarioSpace.build_quadrature(
        0.0, 1.0, 200, lambda r: 2.0 * r, lambda r: r, lambda r: 1.0
    )
    spec = db.IntegrandSpec.f_divergence(db.Generator.BURG)
    rep = db.value_at_k(spec, space, 1.0)
    approx(rep.v, math.exp(-1.5), 1e-5)
    approx(rep.theta2_star, -math.exp(1.5), 1e-4)
    approx(rep.localiser_mass, 2.0 * math.exp(-1.5), 1e-5)
    assert not rep.is_density

    cls = db.classify(spec, space)
    assert cls.regime == db.Regime.CRITICAL
    approx(cls.k_critical, math.log(2.0) - 0.5, 1e-5)


def test_bregman_nonexistence():
    space = db.ScenarioSpace.build_quadrature(
        0.0,
        1.0,
        200,
        lambda r: 2.0 * r,
        lambda r: r,
        lambda r: 1.0 / (2.0 * r) if r > 0 else float("inf"),
    )
    spec = db.IntegrandSpec.bregman(db.Generator.BURG, space)
    cls = db.classify(spec, space)
    assert cls.regime == db.Regime.NEVER_WCD_OBSERVED
    rep = db.value_at_k(spec, space, 1.0)
    assert rep.localiser_mass < 1.0 - 1e-3


def test_certification():
    space = db.ScenarioSpace.build_quadrature(
        0.0, 1.0, 200, lambda r: 2.0 * r, lambda r: r, lambda r: 1.0
    )
    spec = db.IntegrandSpec.f_divergence(db.Generator.BURG)
    p0 = [1.0] * space.size
    cert = db.certify_awcd(spec, space, p0, 1.0, 0.45, 0.0)
    assert cert.is_awcd and cert.bound_holds
    approx(cert.bregman_to_localiser, 0.987793, 1e-4)


def test_errors_are_typed():
    try:
        db.ScenarioSpace.build_discrete([db.Atom("a", 0.0, 1.0, 0.0, 1.0)])
    except db.ValidationError:
        pass
    else:
        raise AssertionError("expected ValidationError")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
