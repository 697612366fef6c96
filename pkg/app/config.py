import os
from pathlib import Path

# Configuration
WORK_PRIME = int(os.getenv("WORKBENCH_WORK_PRIME", "101"))
ENUM_PRIME = int(os.getenv("WORKBENCH_ENUM_PRIME", "2"))
NILPOTENCY_BOUND = int(os.getenv("WORKBENCH_NILPOTENCY_BOUND", "12"))
LATTICE_DIM_CAP = int(os.getenv("WORKBENCH_LATTICE_DIM_CAP", "10"))
LATTICE_POINT_BUDGET = int(os.getenv("WORKBENCH_LATTICE_POINT_BUDGET", "65536"))
ENUMERATION_BUDGET = int(os.getenv("WORKBENCH_ENUMERATION_BUDGET", str(1 << 20)))
ISO_GRID_BUDGET = int(os.getenv("WORKBENCH_ISO_GRID_BUDGET", "20000"))
PATH_SPACE_BUDGET = int(os.getenv("WORKBENCH_PATH_SPACE_BUDGET", "200000"))
MHO_MAX_STEPS = int(os.getenv("WORKBENCH_MHO_MAX_STEPS", "6"))
LOG_LEVEL = os.getenv("WORKBENCH_LOG_LEVEL", "INFO").upper()

DATA_DIR = Path(__file__).parent / "data"
FACTS_PATH = Path(os.getenv("WORKBENCH_FACTS_PATH", str(DATA_DIR / "facts.json")))
PRESENTATIONS_DIR = DATA_DIR / "presentations"

SCHEMA_VERSION = 1
