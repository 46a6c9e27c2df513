import pytest

from skipcomp.model import NetworkParams
from skipcomp.montecarlo import SimulationSpec, simulate

ACCEPT_SEED = 20240817


@pytest.fixture(scope="session")
def default_net():
    return NetworkParams(lambda_bs=70.0, eta=4.0, tx_power=1.0,
                         noise_power=0.0, bandwidth=1e7)


@pytest.fixture(scope="session")
def big_mc(default_net):
    """One shared 2e5-trial simulation; slices of it stand in for smaller runs
    (the first k batches of a run are bit-identical to a k-batch run)."""
    spec = SimulationSpec(trials=200_000, seed=ACCEPT_SEED, batch_size=2000)
    return simulate(default_net, spec)
