from pathlib import Path

import pytest

from slabfringe import enumerate_paths, load_config

REPO_ROOT = Path(__file__).resolve().parents[1]
PAPER_CFG = REPO_ROOT / "paper.cfg"


@pytest.fixture(scope="session")
def paper_config():
    return load_config(PAPER_CFG)


@pytest.fixture(scope="session")
def paper_channels(paper_config):
    cfg = paper_config
    return enumerate_paths(
        cfg.geometry,
        cfg.beam,
        cfg.lattice,
        cfg.reflection.probabilities,
        cfg.order_range,
    )
