"""Command-line experiment driver."""
from .config import ConfigError, ExperimentConfig, load_config, parse_config
from .main import ContractViolation, main, wilson_interval
from .wordio import InputError, format_words, parse_words, read_words, write_words

__all__ = [
    "ConfigError",
    "ContractViolation",
    "ExperimentConfig",
    "InputError",
    "format_words",
    "load_config",
    "main",
    "parse_config",
    "parse_words",
    "read_words",
    "wilson_interval",
    "write_words",
]
