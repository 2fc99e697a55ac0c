"""
Configuration settings for seqentropy
Finite-scale sequence entropy for Z^d actions along Følner boxes

Organized into logical sections:
1. Core Settings (paths, directories)
2. Enumeration / Capacity Budgets
3. Numerics
4. Searches
5. Output
6. Logging
"""
import os
from pathlib import Path

# ============================================
# CORE SETTINGS
# ============================================

# Base directory
BASE_DIR = Path(__file__).parent

# Directory structure
DATA_DIR = BASE_DIR / "data"
CONFIGS_DIR = DATA_DIR / "configs"
LOGS_DIR = BASE_DIR / "logs"

# Run config files must declare this version
CONFIG_SCHEMA_VERSION = 1

# ============================================
# ENUMERATION / CAPACITY BUDGETS
# ============================================

# Maximum alphabet^|D| configurations enumerated for one symbolic join
ENUMERATION_BUDGET = int(os.getenv("SEQENT_ENUMERATION_BUDGET", str(2 ** 24)))

# Configurations processed per numpy block
ENUMERATION_BLOCK_SIZE = int(os.getenv("SEQENT_ENUMERATION_BLOCK_SIZE", str(2 ** 16)))

# Maximum (atom, join element) incidences materialised for one cover join
JOIN_ELEMENT_BUDGET = int(os.getenv("SEQENT_JOIN_ELEMENT_BUDGET", str(2 ** 18)))

# Exact set cover: maximum elements left in the branching core after reductions
EXACT_COVER_MAX_ELEMENTS = int(os.getenv("SEQENT_EXACT_COVER_MAX_ELEMENTS", "30"))

# Largest Følner box materialised (n^d lattice points)
MAX_FOLNER_SET_SIZE = int(os.getenv("SEQENT_MAX_FOLNER_SET_SIZE", str(10 ** 7)))

# IP initial segments enumerate 2^k - 1 subset sums
MAX_IP_GENERATORS = int(os.getenv("SEQENT_MAX_IP_GENERATORS", "20"))

# Row-level worker threads
DEFAULT_JOBS = int(os.getenv("SEQENT_JOBS", "1"))

# ============================================
# NUMERICS
# ============================================

# Float circle points closer than this are merged / snapped to 0
SNAP_TOLERANCE = 1e-12

# Letter weights must sum to 1 within this
WEIGHT_SUM_TOLERANCE = 1e-12

# Cell distributions and entropy weight vectors must sum to 1 within this
DISTRIBUTION_TOLERANCE = 1e-9

# limsup surrogate: max over this trailing fraction of computed rows
TAIL_WINDOW_FRACTION = 0.5

# nats | bits
DEFAULT_UNIT = os.getenv("SEQENT_UNIT", "nats")

# ============================================
# SEARCHES
# ============================================

# Candidate pools default to the first elements of the generator
DEFAULT_POOL_SIZE = int(os.getenv("SEQENT_POOL_SIZE", "64"))

# Greedy entropy sequence: unused pool elements examined per step
DEFAULT_CANDIDATE_WINDOW = int(os.getenv("SEQENT_CANDIDATE_WINDOW", "16"))

# Sequence entropy pair localisation: witness length and profile threshold per level
SE_EVIDENCE_LENGTH = int(os.getenv("SEQENT_SE_EVIDENCE_LENGTH", "3"))
SE_PROFILE_THRESHOLD = float(os.getenv("SEQENT_SE_PROFILE_THRESHOLD", "0.1"))

# ============================================
# OUTPUT
# ============================================

OUTPUT_SIGNIFICANT_DIGITS = 12
CSV_DELIMITER = ","

# Reproduction rows must match the closed-form values within this
REPRODUCTION_TOLERANCE = 1e-9

# ============================================
# LOGGING
# ============================================

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()  # DEBUG, INFO, WARNING, ERROR
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE_ENABLED = os.getenv("LOG_FILE_ENABLED", "false").lower() == "true"

# ============================================
# INITIALIZATION
# ============================================

if LOG_FILE_ENABLED:
    LOGS_DIR.mkdir(parents=True, exist_ok=True)

# Setup logging (stderr only; CSV/JSON output goes to stdout or --out)
import logging
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.WARNING),
    format=LOG_FORMAT,
    handlers=[
        logging.StreamHandler(),
        *([logging.FileHandler(LOGS_DIR / "seqentropy.log")] if LOG_FILE_ENABLED else [])
    ]
)
