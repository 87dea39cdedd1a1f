import cmath

import numpy as np

from addresses import RotationNumber, SatelliteAddress, enumerate_addresses
from dynamics import (
    Center,
    ContinuationError,
    OrbitOverflowError,
    PathFollowConfig,
    cardioid_boundary_point,
    center_to_json,
    critical_poly,
    cycle_point_and_multiplier,
    follow_to_root,
    locate_center,
    multiplier_gradient,
    primitive_period,
)

CFG = PathFollowConfig()
AIRPLANE_ROOT = -1.25
RABBIT = complex(-0.122561166876654, 0.744861766619744)
AIRPLANE_SATELLITE = -1.3107026413368328


def raises(exc, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except exc:
        return True
    return False


def A(*pairs):
    return SatelliteAddress(tuple(RotationNumber(p, q) for p, q in pairs))


def test_critical_poly_examples():
    assert critical_poly(1, 0.3) == (0.3, 1)
    q, dq = critical_poly(2, -1)
    assert q == 0 and dq == -1
    q, _ = critical_poly(3, 1j)
    assert abs(q - (-1j)) < 1e-15
    assert raises(OrbitOverflowError, critical_poly, 20, 3)
    assert raises(ValueError, critical_poly, 0, 0.1)


def test_critical_poly_derivative():
    rng = np.random.default_rng(0)
    h = 1e-6
    for n in (2, 5, 8):
        radius = 2 * np.sqrt(rng.random(100))
        angle = 2 * np.pi * rng.random(100)
        for r, t in zip(radius, angle):
            c = complex(r * np.cos(t), r * np.sin(t))
            _, dq = critical_poly(n, c)
            fd = (critical_poly(n, c + h)[0] - critical_poly(n, c - h)[0]) / (2 * h)
            assert abs(fd - dq) <= 1e-5 * max(1.0, abs(dq)), (n, c)


def test_cardioid_boundary_points():
    assert abs(cardioid_boundary_point(RotationNumber(1, 2)) - (-0.75)) < 1e-15
    assert abs(cardioid_boundary_point(RotationNumber(1, 4)) - complex(0.25, 0.5)) < 1e-15
    assert abs(cardioid_boundary_point(RotationNumber(1, 3)) - complex(-0.125, 0.649519052838329)) < 1e-12
    for q in range(2, 9):
        r = RotationNumber(1, q)
        c = cardioid_boundary_point(r)
        lam = cmath.exp(2j * cmath.pi / q)
        z = lam / 2
        assert abs(z * z + c - z) < 1e-14
        assert abs(2 * z - lam) < 1e-14


def test_cycle_point_and_multiplier():
    z, mult = cycle_point_and_multiplier(0, 1, 0)
    assert z == 0 and mult == 0
    z, mult = cycle_point_and_multiplier(-1, 2, 0.1)
    assert min(abs(z), abs(z + 1)) < 1e-12
    assert abs(mult) < 1e-12
    z, mult = cycle_point_and_multiplier(complex(-0.75, 0.01), 1, -0.4)
    assert abs(mult + 1) < 0.1
    assert abs(z * z + complex(-0.75, 0.01) - z) < 1e-12
    # parabolic fixed point, Newton has no step to take
    assert raises(ContinuationError, cycle_point_and_multiplier, 0.25, 1, 0.5)


def test_multiplier_gradient_on_cardioid():
    z, c = 0.5j, complex(0.25, 0.5)
    assert abs(multiplier_gradient(z, c, 1) - complex(1, 1)) < 1e-14


def test_follow_to_root():
    cardioid = Center(0j, 1, SatelliteAddress(), 0.0)
    assert abs(follow_to_root(cardioid, RotationNumber(1, 2), CFG) - (-0.75)) < 1e-10
    for p, q in [(1, 3), (2, 5), (3, 7)]:
        r = RotationNumber(p, q)
        assert abs(follow_to_root(cardioid, r, CFG) - cardioid_boundary_point(r)) < 1e-10
    basilica = Center(-1 + 0j, 2, A((1, 2)), 0.0)
    assert abs(follow_to_root(basilica, RotationNumber(1, 2), CFG) - AIRPLANE_ROOT) < 1e-10


def test_locate_known_centers():
    cardioid = locate_center(SatelliteAddress(), CFG)
    assert cardioid.c == 0 and cardioid.period == 1
    basilica = locate_center(A((1, 2)), CFG)
    assert abs(basilica.c + 1) < 1e-10 and basilica.period == 2
    rabbit = locate_center(A((1, 3)), CFG)
    assert abs(rabbit.c - RABBIT) < 1e-9 and rabbit.period == 3
    satellite = locate_center(A((1, 2), (1, 2)), CFG)
    assert abs(satellite.c - AIRPLANE_SATELLITE) < 1e-9 and satellite.period == 4


def test_conjugate_addresses_give_conjugate_centers():
    for a, b in [(A((1, 3)), A((2, 3))), (A((1, 2), (2, 5)), A((1, 2), (3, 5)))]:
        ca, cb = locate_center(a, CFG).c, locate_center(b, CFG).c
        assert abs(ca - cb.conjugate()) < 1e-9


def test_located_residuals():
    for n in range(1, 9):
        for a in enumerate_addresses(n):
            center = locate_center(a, CFG)
            q, _ = critical_poly(n, center.c)
            assert abs(q) <= CFG.newton_tol
            assert center.residual <= CFG.newton_tol
            assert center.period == n and center.address == a


def test_primitive_period():
    assert primitive_period(0, 6, 1e-8) == 1
    assert primitive_period(-1, 4, 1e-8) == 2
    assert primitive_period(RABBIT, 3, 1e-8) == 3
    assert primitive_period(RABBIT, 6, 1e-8) == 3
    assert raises(ValueError, primitive_period, 0.1, 3, 1e-8)


def test_path_follow_config_validation():
    assert raises(ValueError, PathFollowConfig, newton_tol=1e-2)
    assert raises(ValueError, PathFollowConfig, distinct_tol=1e-8)
    assert raises(ValueError, PathFollowConfig, multiplier_steps=0)
    assert raises(ValueError, PathFollowConfig, entry_offset=2.0)
    PathFollowConfig(newton_tol=1e-10, entry_offset=1e-2)


def test_center_json():
    data = center_to_json(locate_center(A((1, 2)), CFG))
    assert set(data) == {"re", "im", "period", "address", "residual"}
    assert data["period"] == 2 and data["address"] == [[1, 2]]


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"{name} passed")
