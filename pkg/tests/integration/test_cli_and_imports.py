"""
Integration tests for CLI smoke, module imports, and settings validation.

Covers:
- CLI entry point (run.py main) executes every subcommand end to end.
- Exit codes follow the error categories.
- Repeated runs write byte-identical data files.
- Every module in the package can be imported (catches circular imports).
- Settings validation flags unusable numerical overrides.
"""

from __future__ import annotations

import importlib
import subprocess
import sys
from pathlib import Path
from typing import Any

import pytest


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


ZERO_RUN = """
# zero initial data: every snapshot must stay zero
scheme = polysymplectic
x_max = 2
n_x = 20
dt = 0.1
t_final = 1
initial = zero
snapshot_times = 0, 1
"""

SOLITON_RUN = """
scheme = polysymplectic
x_max = 40
n_x = 100
dt = 0.1
t_final = 1
soliton_m = 0.2
x_center = 20
boundary_tol = 0.1
snapshot_times = 0.5, 1
"""


@pytest.fixture()
def write_config(tmp_path: Path) -> Any:
    """Write a config file and return its path."""

    def _write(text: str, name: str = "run.cfg") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


# ===================================================================
# CLI Smoke Tests
# ===================================================================


class TestCLISmoke:
    """Verify the CLI entry point loads, validates, and runs."""

    @staticmethod
    def _run_cli(*args: str, env_overrides: dict[str, str] | None = None) -> tuple[int, str, str]:
        """Run the CLI as a subprocess and return (returncode, stdout, stderr).

        Uses bytes mode + manual decode to avoid platform encoding issues.
        """
        import os

        env = {**os.environ, "PYTHONIOENCODING": "utf-8", "PYTHONUNBUFFERED": "1"}
        if env_overrides:
            env.update(env_overrides)

        result = subprocess.run(
            [sys.executable, "-m", "polysymplectic_spe.run", *args],
            capture_output=True,
            timeout=300,
            env=env,
        )
        stdout = result.stdout.decode("utf-8", errors="replace")
        stderr = result.stderr.decode("utf-8", errors="replace")
        return result.returncode, stdout, stderr

    def test_verify_succeeds(self) -> None:
        """spe-run verify should exit 0 and print one line per check."""
        rc, stdout, stderr = self._run_cli("verify", "--cells", "100")
        assert rc == 0, f"CLI exited {rc}:\nSTDOUT: {stdout}\nSTDERR: {stderr}"
        assert "oracle_equivalence: pass" in stdout
        assert "conservation_law: pass" in stdout

    def test_unknown_subcommand_is_usage_error(self) -> None:
        rc, _, _ = self._run_cli("bogus")
        assert rc == 2

    def test_missing_config_flag_is_usage_error(self) -> None:
        rc, _, _ = self._run_cli("simulate")
        assert rc == 2

    def test_invalid_settings_exit_config(self) -> None:
        rc, _, stderr = self._run_cli("verify", "--cells", "10", env_overrides={"BENCH_TIMING_REPEATS": "0"})
        assert rc == 3
        assert "BENCH_TIMING_REPEATS" in stderr

    def test_simulate_zero_data(self, write_config: Any, tmp_path: Path) -> None:
        from polysymplectic_spe.run import main

        out = tmp_path / "out"
        assert main(["simulate", "--config", str(write_config(ZERO_RUN)), "--output-dir", str(out)]) == 0
        for name in ("snapshot_j0.csv", "snapshot_j10.csv"):
            rows = (out / name).read_text().splitlines()
            assert rows[0] == "x,u"
            assert len(rows) == 22
            assert all(float(r.split(",")[1]) == pytest.approx(0.0, abs=1e-14) for r in rows[1:])
        report = (out / "report.txt").read_text()
        assert "scheme=polysymplectic" in report
        assert "wall_seconds=@timing.txt" in report
        assert (out / "timing.txt").read_text().startswith("wall_seconds=")

    def test_missing_key_exit_config(self, write_config: Any, capsys: pytest.CaptureFixture[str]) -> None:
        from polysymplectic_spe.run import main

        path = write_config(ZERO_RUN.replace("dt = 0.1\n", ""))
        assert main(["simulate", "--config", str(path)]) == 3
        assert "missing required key 'dt'" in capsys.readouterr().err

    def test_missing_config_file_exit_io(self, tmp_path: Path) -> None:
        from polysymplectic_spe.run import main

        assert main(["simulate", "--config", str(tmp_path / "absent.cfg")]) == 5

    def test_soliton_profiles(self, write_config: Any, tmp_path: Path) -> None:
        from polysymplectic_spe.run import main

        out = tmp_path / "sol"
        assert main(["soliton", "-c", str(write_config(SOLITON_RUN)), "-o", str(out)]) == 0
        assert sorted(p.name for p in out.iterdir()) == ["soliton_j10.csv", "soliton_j5.csv"]

    def test_convergence_zero_data(self, write_config: Any, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        from polysymplectic_spe.run import main

        monkeypatch.setenv("BENCH_TIMING_REPEATS", "1")
        out = tmp_path / "conv"
        assert main(["convergence", "-c", str(write_config(ZERO_RUN + "levels = 2\n")), "-o", str(out)]) == 0
        lines = (out / "convergence.csv").read_text().splitlines()
        assert lines[0] == "level,dx,dt,sigma_final,measured_order,error"
        assert len(lines) == 3
        assert (out / "convergence_timing.csv").exists()

    def test_compare_zero_data(self, write_config: Any, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        from polysymplectic_spe.run import main

        monkeypatch.setenv("BENCH_TIMING_REPEATS", "1")
        out = tmp_path / "cmp"
        config = write_config(ZERO_RUN.replace("x_max = 2", "x_max = 3.2").replace("n_x = 20", "n_x = 32"))
        assert main(["compare", "-c", str(config), "-o", str(out)]) == 0
        rows = (out / "comparison.csv").read_text().splitlines()
        assert [r.split(",")[0] for r in rows[1:]] == ["polysymplectic", "pseudospectral"]


# ===================================================================
# Determinism
# ===================================================================


class TestDeterminism:
    """Identical configs give byte-identical data files."""

    def test_simulate_twice(self, write_config: Any, tmp_path: Path) -> None:
        from polysymplectic_spe.run import main

        config = str(write_config(SOLITON_RUN))
        assert main(["simulate", "-c", config, "-o", str(tmp_path / "a")]) == 0
        assert main(["simulate", "-c", config, "-o", str(tmp_path / "b")]) == 0
        names = sorted(p.name for p in (tmp_path / "a").iterdir() if p.name != "timing.txt")
        assert names == ["report.txt", "snapshot_j10.csv", "snapshot_j5.csv"]
        for name in names:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


# ===================================================================
# Module Import Tests
# ===================================================================

# Every .py module in the package. If a new module is added and has a
# circular import, it will fail here before it breaks production.
ALL_MODULES = [
    "polysymplectic_spe",
    "polysymplectic_spe.config",
    "polysymplectic_spe.errors",
    "polysymplectic_spe.metrics",
    "polysymplectic_spe.reports",
    "polysymplectic_spe.run",
    "polysymplectic_spe.model",
    "polysymplectic_spe.model.data",
    "polysymplectic_spe.model.dw",
    "polysymplectic_spe.model.grid",
    "polysymplectic_spe.scheme",
    "polysymplectic_spe.scheme.cell",
    "polysymplectic_spe.scheme.marching",
    "polysymplectic_spe.scheme.oracle",
    "polysymplectic_spe.scheme.tangent",
    "polysymplectic_spe.solutions",
    "polysymplectic_spe.solutions.residual",
    "polysymplectic_spe.solutions.sakovich",
    "polysymplectic_spe.spectral",
    "polysymplectic_spe.spectral.solver",
    "polysymplectic_spe.flows",
    "polysymplectic_spe.flows.comparison",
    "polysymplectic_spe.flows.convergence",
    "polysymplectic_spe.flows.reference",
    "polysymplectic_spe.flows.verification",
    "polysymplectic_spe.io",
    "polysymplectic_spe.io.config_file",
    "polysymplectic_spe.io.writers",
]


class TestModuleImports:
    """Ensure every package module imports without error."""

    @pytest.mark.parametrize("module_name", ALL_MODULES)
    def test_module_imports_cleanly(self, module_name: str) -> None:
        """Import the module; any ImportError or circular import will surface here."""
        try:
            mod = importlib.import_module(module_name)
            assert mod is not None
        except Exception as exc:
            pytest.fail(f"Failed to import {module_name}: {exc}")

    def test_package_version_is_defined(self) -> None:
        """polysymplectic_spe.__version__ should be a non-empty string."""
        import polysymplectic_spe

        assert isinstance(polysymplectic_spe.__version__, str)
        assert len(polysymplectic_spe.__version__) > 0

    def test_package_exports(self) -> None:
        """Top-level package should re-export the integrators and core types."""
        import polysymplectic_spe

        for name in polysymplectic_spe.__all__:
            assert hasattr(polysymplectic_spe, name), name


# ===================================================================
# Settings Validation Tests
# ===================================================================


class TestSettingsValidation:
    """Numerical settings loaded from the environment."""

    def test_defaults_are_valid(self) -> None:
        from polysymplectic_spe.config import validate_settings

        assert validate_settings() == []

    def test_defaults(self) -> None:
        from polysymplectic_spe.config import settings

        assert settings.scheme.residual_tol == 1e-12
        assert settings.scheme.oracle_agreement_tol == 1e-10
        assert settings.spectral.zero_mean_tol == 1e-10
        assert settings.bench.timing_repeats == 3
        assert settings.bench.max_workers == 1

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("SCHEME_NEWTON_TOL", "1e-14")
        from polysymplectic_spe.config import settings

        assert settings.scheme.newton_tol == 1e-14

    @pytest.mark.parametrize(
        ("var", "value", "topic"),
        [
            ("SCHEME_NEWTON_MAX_ITER", "0", "SCHEME_NEWTON_MAX_ITER"),
            ("SCHEME_RESIDUAL_TOL", "-1", "SCHEME_RESIDUAL_TOL"),
            ("SPECTRAL_BLOWUP_FACTOR", "0.5", "SPECTRAL_BLOWUP_FACTOR"),
            ("BENCH_MAX_WORKERS", "0", "BENCH_MAX_WORKERS"),
        ],
    )
    def test_unusable_values_flagged(self, monkeypatch: pytest.MonkeyPatch, var: str, value: str, topic: str) -> None:
        monkeypatch.setenv(var, value)
        from polysymplectic_spe.config import validate_settings

        errors = validate_settings()
        assert any(topic in e for e in errors)
