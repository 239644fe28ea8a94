"""
Settings for the fskyrme workbench.

Environment variables are read once at import; a ``.env`` file at the
repository root is loaded first so local overrides do not need exporting.
Numerical tolerances and the calibrated topological constants live here too,
so every module reads the same frozen values.
"""

import math
import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from project root
load_dotenv(BASE_DIR.parent / ".env")

DEBUG = os.environ.get("DEBUG", "False") == "True"

# Worker count handed to scipy.fft; the CLI --threads flag overrides it.
THREADS = int(os.environ.get("FSKYRME_THREADS", "1"))

LOG_LEVEL = os.environ.get("FSKYRME_LOG_LEVEL", "DEBUG" if DEBUG else "INFO")

OUTPUT_DIR = Path(os.environ.get("FSKYRME_OUTPUT_DIR", "runs_out"))


# Tolerances

UNIT_NORM_TOL = 1e-12
MEMBERSHIP_TOL = 1e-9
ALGEBRAIC_TOL = 1e-12
ANTIPODE_LOG_TOL = 1e-12
ANTIPODE_CAP = 1e-3
# Largest quaternion step allowed between neighbouring Hopf lift values.
LIFT_JUMP_TOL = 1.0
FLUX_TOL = 0.1
SECTOR_JUMP_THRESHOLD = 0.5
DRIFT_TRUST_THRESHOLD = 0.5
MIN_CONVERGENCE_RATIO = 1.8
STEP_UNDERFLOW = 1e-14


# Calibrated constants (Euclidean metric on Im H, Hilbert-Schmidt norms).
# degree = CARTAN_NORMALIZATION * integral of tr(a^a^a), tr = 2 Re;
# hopf = HOPF_NORMALIZATION * integral of A^F. Both give +1 on the
# degree-one hedgehog and its Hopf projection; topology.calibration
# recomputes them on a grid.

CARTAN_NORMALIZATION = 1.0 / (24.0 * math.pi**2)
HOPF_NORMALIZATION = 1.0 / (16.0 * math.pi**2)


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": LOG_LEVEL,
    },
    "loggers": {
        "flow": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
