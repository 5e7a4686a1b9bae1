import sys
from pathlib import Path

import pytest

# Make `import pspex` work without installing the package.
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from pspex import config  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep the user's saved settings and PSPEX_THREADS out of every test."""
    path = tmp_path / 'pspex-config.json'
    monkeypatch.setattr(config, 'CONFIG_FILE', path)
    monkeypatch.delenv(config.THREADS_ENV, raising=False)
    return path
