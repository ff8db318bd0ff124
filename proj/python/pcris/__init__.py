"""Mod-p reductions of two-dimensional crystalline representations, large-valuation regime."""

import json

from . import _pcris
from ._pcris import PcrisError, gain_step, budget

__all__ = ["run", "run_file", "preflight", "oracle_suite", "characterize", "gain_step", "budget", "PcrisError"]


def _text(config):
    if isinstance(config, str):
        return config, not config.lstrip().startswith("{")
    return json.dumps(config), False


def run(config):
    """Run the pipeline on a dict, JSON text or TOML text; returns the report as a dict."""
    text, toml = _text(config)
    return json.loads(_pcris.run_text(text, toml))


def run_file(path):
    return json.loads(_pcris.run_file(str(path)))


def preflight(config):
    text, toml = _text(config)
    return _pcris.preflight(text, toml)


def oracle_suite(seed=1, trials=100):
    return json.loads(_pcris.oracle_suite(seed, trials))


def characterize(v, w, p, odd):
    return json.loads(_pcris.characterize(list(v), list(w), p, odd))
