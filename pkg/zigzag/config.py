import os
from dotenv import load_dotenv

load_dotenv()

# --- Limits (overridable from .env) ---
MAX_N = int(os.getenv("ZIGZAG_MAX_N", "8"))
MAX_ARITY = int(os.getenv("ZIGZAG_MAX_ARITY", "6"))
ARITY_CAP = 8
QUASI_ISO_MAX_N = int(os.getenv("ZIGZAG_QUASI_ISO_MAX_N", "5"))
DELTA_SAMPLES = int(os.getenv("ZIGZAG_DELTA_SAMPLES", "100"))
DEFAULT_SEED = int(os.getenv("ZIGZAG_SEED", "0"))
REPORT_SCHEMA_VERSION = "1"


def length_ceiling(vertices):
    """Longest path length tried before a quotient is declared infinite."""
    override = os.getenv("ZIGZAG_CEILING")
    if override:
        return int(override)
    return 4 * vertices
