"""pspex: spectral extremal planar graphs without K2+H, checked at desk scale."""
from .config import APP_ID, APP_NAME, APP_VERSION

__all__ = ['APP_ID', 'APP_NAME', 'APP_VERSION']
