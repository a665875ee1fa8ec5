import numpy as np
import pytest

from crookslab.model import build_ladder_setup
from crookslab.protocol import DesignatedSwap, EvolutionSpec, energy_conserving_unitary


@pytest.fixture(scope="session")
def ladder():
    """6-rung spacing-1 ladder, system gap 1 -> 2. Shared, never mutated."""
    return build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=1.0, eps_f=2.0)


@pytest.fixture(scope="session")
def matched_ladder():
    """Same machine but with equal gaps, so the joint Gibbs state factorizes."""
    return build_ladder_setup(n_rungs=6, spacing=1.0, eps_i=1.0, eps_f=1.0)


@pytest.fixture(scope="session")
def swap_v(ladder):
    spec = EvolutionSpec(kind="external", block_seed=DesignatedSwap())
    return energy_conserving_unitary(ladder, spec)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
