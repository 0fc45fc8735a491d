"""Session-scoped study fixtures shared by the acceptance tests.

The expensive pieces are the fine Strang references; each study driver
builds its own (the drivers are exercised end-to-end), so these fixtures
are session-scoped to run them exactly once.
"""

import pytest

from nlsplit import StudyConfig, run_convergence_study, run_decay_study, run_scattering_study, run_uniformity_study

ACCEPT_TAUS = tuple(2.0**-k for k in range(4, 10))


def acceptance_config(**overrides) -> StudyConfig:
    base = dict(
        dimension=1,
        points=4096,
        half_width=64.0,
        sigma=2.0,
        tau_list=ACCEPT_TAUS,
        t_final=10.0,
        datum="gaussian",
        reference_refinement=16,
    )
    base.update(overrides)
    return StudyConfig(**base)


def horizon40_config(**overrides) -> StudyConfig:
    base = dict(
        dimension=1,
        points=8192,
        half_width=128.0,
        sigma=2.0,
        tau_list=(2.0**-6,),
        t_final=40.0,
        datum="gaussian",
        reference_refinement=16,
    )
    base.update(overrides)
    return StudyConfig(**base)


@pytest.fixture(scope="session")
def convergence_study():
    return run_convergence_study(acceptance_config())


@pytest.fixture(scope="session")
def uniformity_study():
    return run_uniformity_study(horizon40_config())


@pytest.fixture(scope="session")
def decay_study():
    return run_decay_study(horizon40_config())


@pytest.fixture(scope="session")
def scattering_study():
    return run_scattering_study(horizon40_config())
