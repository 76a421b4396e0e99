"""Configuration files and deterministic CSV / key=value outputs."""

from polysymplectic_spe.io.config_file import SimConfig, load_config, parse_config
from polysymplectic_spe.io.writers import fmt, read_snapshot, read_table, write_report, write_snapshot


__all__ = [
    "SimConfig",
    "fmt",
    "load_config",
    "parse_config",
    "read_snapshot",
    "read_table",
    "write_report",
    "write_snapshot",
]
