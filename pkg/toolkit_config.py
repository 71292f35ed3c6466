from dotenv import load_dotenv
import os

load_dotenv()

# Absolute tolerance of the equivalence / Born checks.
default_tol = float(os.environ.get("SECTOR_TOOLKIT_TOL", "1e-9"))

# Relative tolerance for every rank decision (nullspace, Gram rank, closure).
rank_tol = float(os.environ.get("SECTOR_TOOLKIT_RANK_TOL", "1e-9"))

default_seed = int(os.environ.get("SECTOR_TOOLKIT_SEED", "20240611"))
log_level = os.environ.get("SECTOR_TOOLKIT_LOG_LEVEL", "INFO")
workers = int(os.environ.get("SECTOR_TOOLKIT_WORKERS", "1"))

# Jacobi eigensolver
jacobi_max_sweeps = 100
jacobi_rel_tol = 1e-13

TOOLKIT_VERSION = "0.3.0"
REPORT_SCHEMA = 1
