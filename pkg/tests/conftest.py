import pytest

from logchern import (Arrangement, build_lattice, defining_data,
                      derivation_module_d0, log_forms, relative_log_forms,
                      verify_main_theorem)

OCTIC_NORMALS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                 (1, 0, 0, -1), (0, 1, 0, -1), (1, 1, 1, 0), (1, -1, 1, 0)]

GENERIC4 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
GENERIC5 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (1, 1, 1, 1)]
BRAID_TRIPLE = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]


def boolean(l):
    return Arrangement(l, [[1 if j == i else 0 for j in range(l)]
                           for i in range(l)])


@pytest.fixture(scope="session")
def octic_arrangement():
    return Arrangement(4, OCTIC_NORMALS)


@pytest.fixture(scope="session")
def octic_lattice(octic_arrangement):
    return build_lattice(octic_arrangement)


@pytest.fixture(scope="session")
def octic_modules(octic_arrangement):
    """(defining data, D0, Omega1, Omega1_0) for the octic arrangement."""
    dd = defining_data(octic_arrangement)
    d0 = derivation_module_d0(dd)
    om1 = log_forms(dd)
    om0 = relative_log_forms(om1)
    return dd, d0, om1, om0


@pytest.fixture(scope="session")
def octic_verification(octic_arrangement):
    return verify_main_theorem(octic_arrangement, per_flat_check=True)
