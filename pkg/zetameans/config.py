import os
from typing import Dict, Optional

from dotenv import dotenv_values

API_KEY = os.getenv("API_KEY", "dev-secret-key")

PRECISION_BITS = int(os.getenv("ZETAMEANS_PRECISION_BITS", "106"))
TOL = float(os.getenv("ZETAMEANS_TOL", "1e-10"))
MAX_SUBDIVISIONS = int(os.getenv("ZETAMEANS_MAX_SUBDIVISIONS", "4096"))
SERIES_SAFETY = float(os.getenv("ZETAMEANS_SERIES_SAFETY", "2.0"))

ETA = float(os.getenv("ZETAMEANS_ETA", "0.25"))
N_ORDER = int(os.getenv("ZETAMEANS_N_ORDER", "2"))
M_ORDER = int(os.getenv("ZETAMEANS_M_ORDER", "2"))
CORRECTION_FACTOR = float(os.getenv("ZETAMEANS_CORRECTION_FACTOR", "0.25"))
ENVELOPE = float(os.getenv("ZETAMEANS_ENVELOPE", "20"))
WORKERS = int(os.getenv("ZETAMEANS_WORKERS", "1"))

LOG_LEVEL = os.getenv("ZETAMEANS_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def load_config_file(path: Optional[str]) -> Dict[str, str]:
    """
    Read a flat `key = value` file. Keys are normalised to the CLI flag
    spelling with underscores (``n-order`` and ``n_order`` are the same key).
    """
    if not path:
        return {}
    raw = dotenv_values(path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in raw.items()
        if value is not None
    }


def default_policy():
    from .numerics import NumericPolicy

    return NumericPolicy(
        precision_bits=PRECISION_BITS,
        abs_tol=TOL,
        rel_tol=TOL,
        max_subdivisions=MAX_SUBDIVISIONS,
        series_safety_factor=SERIES_SAFETY,
    )
