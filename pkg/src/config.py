"""
Configuration for the profinite quandle workbench
All bounds, paths and switches centralized here
"""
import logging
import os

from dotenv import load_dotenv

load_dotenv()

# ============================================================================
# PATHS
# ============================================================================
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(BASE_DIR, "data")
RESULTS_DIR = os.getenv("QUANDLE_RESULTS_DIR", os.path.join(BASE_DIR, "results"))
LOGS_DIR = os.getenv("QUANDLE_LOGS_DIR", os.path.join(BASE_DIR, "logs"))
CACHE_DIR = os.getenv("QUANDLE_CACHE_DIR", os.path.join(BASE_DIR, "cache"))

# ============================================================================
# ENUMERATION BOUNDS
# ============================================================================
GROUP_ORDER_BOUND = int(os.getenv("QUANDLE_GROUP_ORDER_BOUND", "200000"))
SUBQUANDLE_ENUM_BOUND = int(os.getenv("QUANDLE_SUBQUANDLE_BOUND", "8"))
AUT_BRUTE_FORCE_BOUND = int(os.getenv("QUANDLE_AUT_BOUND", "8"))  # 8! candidate bijections
ENUMERATE_ORDER_BOUND = int(os.getenv("QUANDLE_ENUMERATE_BOUND", "6"))
COUNTEREXAMPLE_DEPTH_BOUND = 7
PROBE_CARRIER_BOUND = int(os.getenv("QUANDLE_PROBE_CARRIER_BOUND", "20"))

# ============================================================================
# CACHING SETTINGS
# ============================================================================
ENABLE_CACHING = os.getenv("QUANDLE_ENABLE_CACHING", "1") not in ("0", "false", "False")
CACHE_DB_PATH = os.path.join(CACHE_DIR, "enumeration_cache.db")

# ============================================================================
# REPORTING
# ============================================================================
DEFAULT_SEED = int(os.getenv("QUANDLE_SEED", "0"))
OUTPUT_FORMAT = os.getenv("QUANDLE_FORMAT", "human")  # human | structured
SUITE_RESULTS_PATH = os.path.join(RESULTS_DIR, "suite_results.csv")

# ============================================================================
# LOGGING
# ============================================================================
LOG_LEVEL = os.getenv("QUANDLE_LOG_LEVEL", "WARNING")  # DEBUG, INFO, WARNING, ERROR


def configure_logging(level: str = LOG_LEVEL):
    """Route module loggers to stderr as `[module] message` lines"""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="[%(name)s] %(message)s",
    )
