import math
import time

import numpy as np
import pytest

from dhlab import dhrep, model


def grid_directions(n_theta: int, n_phi: int) -> list[model.SpinDirection]:
    """(theta, phi) product grid; even n_theta avoids theta = pi/2."""
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    return [model.SpinDirection(float(t), float(p)) for t in thetas for p in phis]


@pytest.fixture(scope="session")
def suite_start() -> float:
    return time.perf_counter()


@pytest.fixture(scope="session", autouse=True)
def _start_clock(suite_start):
    return suite_start


@pytest.fixture(scope="session")
def cfg0() -> model.SystemConfig:
    return model.standard_config()


@pytest.fixture(scope="session")
def cfg05() -> model.SystemConfig:
    return model.standard_config(kappa=0.05)


@pytest.fixture(scope="session")
def cfg_probe() -> model.SystemConfig:
    return model.standard_config(kappa=0.05, probe_points=(32.0,))


@pytest.fixture(scope="session")
def t_un0(cfg0) -> dhrep.DhTransform:
    return dhrep.build_unentangled_transform(cfg0)


@pytest.fixture(scope="session")
def t_un05(cfg05) -> dhrep.DhTransform:
    return dhrep.build_unentangled_transform(cfg05)


@pytest.fixture(scope="session")
def t_en05(cfg05, t_un05) -> dhrep.DhTransform:
    return dhrep.build_entangled_transform(cfg05, t_un05)


@pytest.fixture(scope="session")
def t_un_probe(cfg_probe) -> dhrep.DhTransform:
    return dhrep.build_unentangled_transform(cfg_probe)


@pytest.fixture(scope="session")
def t_en_probe(cfg_probe, t_un_probe) -> dhrep.DhTransform:
    return dhrep.build_entangled_transform(cfg_probe, t_un_probe)
