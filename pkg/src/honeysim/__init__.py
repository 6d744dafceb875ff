"""Simulated social-honeypot campaigns on a synthetic microblogging platform."""

from .campaign import CampaignResult, CampaignSettings, run_campaign
from .config import CampaignConfig, ConfigError, load_config, parse_config
from .evaluation import NoiseSpec, classify, evaluate_campaign, evaluate_log, technique_report
from .honeypot import HoneypotConfig, load_figure2_matrix
from .platform import Platform, RateLimitPolicy
from .population import PopulationSpec
from .techniques import CATALOGUE, get_technique

__version__ = "0.1.0"

__all__ = [
    "CATALOGUE",
    "CampaignConfig",
    "CampaignResult",
    "CampaignSettings",
    "ConfigError",
    "HoneypotConfig",
    "NoiseSpec",
    "Platform",
    "PopulationSpec",
    "RateLimitPolicy",
    "classify",
    "evaluate_campaign",
    "evaluate_log",
    "get_technique",
    "load_config",
    "load_figure2_matrix",
    "parse_config",
    "run_campaign",
    "technique_report",
]
