"""Orbits of integer polynomials, nilpotency and local nilpotency at base points."""

import logging
import os

logger = logging.getLogger(__name__)
if os.getenv("NILORBIT_DEBUG") and not logging.getLogger().handlers:
    logging.basicConfig(level=logging.DEBUG)  # pragma: no cover - config
logger.debug("nilorbit package initialised")

__version__ = "0.1.0"

__all__ = [
    "classify",
    "modp",
    "numtheory",
    "orbits",
    "polynomial",
    "verify",
]
