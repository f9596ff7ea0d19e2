from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Project settings
PROJECT_ROOT = Path(__file__).parent.parent.parent.parent
OUTPUT_DIR = Path(os.getenv("AW_RASCLE_OUTPUT_DIR", str(PROJECT_ROOT / "output")))

# Grid and scheme defaults (domain [-1, 1], jump at x = 0)
DEFAULT_X_MIN = float(os.getenv("AW_RASCLE_X_MIN", "-1.0"))
DEFAULT_X_MAX = float(os.getenv("AW_RASCLE_X_MAX", "1.0"))
DEFAULT_N_CELLS = int(os.getenv("AW_RASCLE_N_CELLS", "800"))
DEFAULT_CFL = float(os.getenv("AW_RASCLE_CFL", "0.5"))
DEFAULT_T_END = float(os.getenv("AW_RASCLE_T_END", "0.1"))
DEFAULT_MAX_STEPS = int(os.getenv("AW_RASCLE_MAX_STEPS", "100000"))

# Root finding
DENSITY_GUARD = 1e-12  # relative, at both ends of (0, 1/a)
BISECTION_MAX_ITER = 200
UNBOUNDED_DENSITY_CAP = 1e12  # bracket expansion limit when a = 0

# Output
CSV_FLOAT_FORMAT = "%.17g"
LOG_LEVEL = os.getenv("AW_RASCLE_LOG_LEVEL", "WARNING")
