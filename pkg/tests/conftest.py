import time
from pathlib import Path

import pytest

from honeysim import CampaignSettings, PopulationSpec, evaluate_campaign, load_figure2_matrix, run_campaign

FIXTURES = Path(__file__).parent / "fixtures"
CALIBRATION_SEEDS = tuple(range(10))

# criterion lines collected by test_acceptance and echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def default_campaigns():
    """The default figure2 campaign on ten seeds, with total wall time.

    Shared by the calibration and rank criteria so the ten runs happen once.
    """
    configs = load_figure2_matrix()
    t0 = time.perf_counter()
    runs = {}
    for seed in CALIBRATION_SEEDS:
        result = run_campaign(configs, PopulationSpec(), seed, CampaignSettings())
        runs[seed] = (result, evaluate_campaign(result))
    return runs, time.perf_counter() - t0


@pytest.fixture(scope="session")
def small_campaign():
    """A short, cheap campaign for structural tests."""
    configs = load_figure2_matrix()
    settings = CampaignSettings(ticks=48, warmup_ticks=72)
    result = run_campaign(configs, PopulationSpec(total=300), 7, settings)
    return result, evaluate_campaign(result)
