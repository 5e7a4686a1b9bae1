from __future__ import annotations
import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path

APP_ID = 'pspex'
APP_NAME = 'Planar spectral extremal workbench'
APP_VERSION = '1.0.0'

CONFIG_DIR = Path.home() / '.config' / APP_ID
CONFIG_FILE = CONFIG_DIR / 'config.json'

THREADS_ENV = 'PSPEX_THREADS'

MAX_VERTICES = 64                  # bitset rows are single Python ints
DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 10 ** 6
DEFAULT_N_CAP = 9
OVERRIDE_N_CAP = 10
DEFAULT_EPSILON = 1e-4
DEFAULT_PI_HORIZON = 64
PI_CLEAN_PERIODS = 3
CHROMATIC_LIMIT = 16
INTERVAL_WIDTH_BITS = 40           # closed-form enclosures are narrower than 2**-40
REFINEMENT_LIMIT = 400


def write_private_file(path, text: str) -> None:
    """Write ``text`` to ``path`` atomically with 0600 permissions."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + '.tmp')
    fd = os.open(tmp, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
    try:
        os.fchmod(fd, 0o600)
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp, path)
    finally:
        try:
            if tmp.exists():
                tmp.unlink()
        except OSError:
            pass


def load_config() -> dict:
    if not CONFIG_FILE.exists():
        return {}
    try:
        cfg = json.loads(CONFIG_FILE.read_text())
    except (json.JSONDecodeError, OSError):
        return {}
    return cfg if isinstance(cfg, dict) else {}


def save_config(cfg: dict) -> None:
    write_private_file(CONFIG_FILE, json.dumps(cfg, indent=2))


@dataclass
class Settings:
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    n_cap: int = DEFAULT_N_CAP
    epsilon: float = DEFAULT_EPSILON
    pi_horizon: int = DEFAULT_PI_HORIZON
    threads: int = 1


def _positive(cast, raw, default):
    try:
        value = cast(raw)
    except (TypeError, ValueError):
        return default
    return value if value > 0 else default


def _env_threads(default: int) -> int:
    return _positive(int, os.environ.get(THREADS_ENV), default)


def load_settings() -> Settings:
    """Settings from the config file, then ``PSPEX_THREADS``.

    Unknown keys and unusable values fall back to the defaults. CLI flags
    are applied on top of this by the caller.
    """
    cfg = load_config()
    n_cap = _positive(int, cfg.get('n_cap'), DEFAULT_N_CAP)
    epsilon = _positive(float, cfg.get('epsilon'), DEFAULT_EPSILON)
    return Settings(
        tolerance=_positive(float, cfg.get('tolerance'), DEFAULT_TOLERANCE),
        max_iterations=_positive(int, cfg.get('max_iterations'),
                                 DEFAULT_MAX_ITERATIONS),
        n_cap=min(n_cap, OVERRIDE_N_CAP),
        epsilon=min(epsilon, DEFAULT_EPSILON),
        pi_horizon=_positive(int, cfg.get('pi_horizon'), DEFAULT_PI_HORIZON),
        threads=_env_threads(_positive(int, cfg.get('threads'), 1)),
    )


def save_settings(s: Settings) -> None:
    cfg = load_config()
    cfg.update(asdict(s))
    save_config(cfg)


def setting_names() -> list:
    return [f.name for f in fields(Settings)]
