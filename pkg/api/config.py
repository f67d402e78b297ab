# Configuration module
import os
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables from .env file (service settings only)
load_dotenv()

# Base directory
BASE_DIR = Path(__file__).resolve().parent.parent

# API Configuration
API_CONFIG: Dict[str, Any] = {
    "title": "FLOsc Transform API",
    "description": "Evaluation, asymptotic expansion and verification of the Fourier-Laplace "
                   "transforms F_{alpha,beta}(z) of t^beta exp(i t^alpha)",
    "version": "1.0.0",
    "docs_url": "/docs",
    "redoc_url": "/redoc"
}

# HTTP service configuration
SERVICE_CONFIG: Dict[str, Any] = {
    "host": os.getenv("FLOSC_HOST", "127.0.0.1"),
    "port": int(os.getenv("FLOSC_PORT", "8383")),
    "reload": os.getenv("FLOSC_RELOAD", "false").lower() == "true"
}

# Numerical configuration. Never read from the environment so that results
# only depend on the inputs.
NUMERICS_CONFIG: Dict[str, Any] = {
    "abs_tol": 1e-12,
    "rel_tol": 1e-10,
    "quad_limit": 200,
    "max_pieces": 20000,
    "eps_resonance": 1e-12,
    "envelope_cap": 1e250,
    "tail_cutoff": 1e-18,
    "near_boundary": 1e-3,
    "series_zero_tol": 1e-14,
    "saddle_tol": 1e-13,
    "split_margin": 0.5,
    # log-envelope advantage (nats) needed to leave the default contour
    "envelope_tie": 2.3,
    "oracle_dps": 20,
    "oracle_max_passes": 24,
}

# Cache Configuration (HTTP surface only)
CACHE_CONFIG: Dict[str, Any] = {
    "enabled": os.getenv("CACHE_ENABLED", "true").lower() == "true",
    "max_entries": int(os.getenv("CACHE_MAX_ENTRIES", "1024"))
}

# Logging Configuration
LOGGING_CONFIG: Dict[str, Any] = {
    "level": os.getenv("LOG_LEVEL", "INFO"),
    "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
}

# Output records
OUTPUT_CONFIG: Dict[str, Any] = {
    "schema_version": "1",
    "generator": f"flosc-transform {API_CONFIG['version']}"
}
