import os
import shutil
import subprocess
from pathlib import Path

import pytest

from plotkit import FIGURE_IDS

GRID = "5x4"


def _cli() -> Path | None:
    env = os.environ.get("WGCASIMIR_CLI")
    if env:
        return Path(env)
    built = Path(__file__).resolve().parents[2] / "build" / "tools" / "wgcasimir"
    if built.is_file():
        return built
    found = shutil.which("wgcasimir")
    return Path(found) if found else None


@pytest.fixture(scope="session")
def cli() -> Path:
    path = _cli()
    if path is None or not path.is_file():
        pytest.skip("wgcasimir CLI not built; set WGCASIMIR_CLI")
    return path


@pytest.fixture(scope="session")
def preset_files(cli, tmp_path_factory) -> dict[str, dict[str, Path]]:
    """Every figure preset on a small grid, written once as CSV and as JSON."""
    root = tmp_path_factory.mktemp("presets")
    files = {}
    for fig in FIGURE_IDS:
        files[fig] = {}
        for suffix in ("csv", "json"):
            out = root / f"{fig}.{suffix}"
            subprocess.run([str(cli), "figure", fig, "--grid", GRID, "--engine", "all", "--out", str(out)],
                           check=True, capture_output=True)
            files[fig][suffix] = out
    return files
