"""Runtime settings for the crossworld mediation toolkit."""

import os

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _int_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(value, minimum)


# Gauss-Hermite nodes used by the quadrature oracle
QUADRATURE_NODES = _int_env("CWMED_QUADRATURE_NODES", 64, minimum=8)

# Units per Monte Carlo block; blocks are reduced in index order
MC_BLOCK_SIZE = _int_env("CWMED_MC_BLOCK_SIZE", 65536)

# Settings per quadrature chunk in grid runs
GRID_CHUNK_SIZE = _int_env("CWMED_GRID_CHUNK_SIZE", 4096)

# Grids above this size need allow_large
GRID_MAX_SETTINGS = _int_env("CWMED_GRID_MAX_SETTINGS", 500_000)

# monte_carlo grids above this many settings need allow_full_mc
MC_GRID_GATE = _int_env("CWMED_MC_GRID_GATE", 1000)

# Default worker count
JOBS = _int_env("CWMED_JOBS", 1)


def get_quadrature_nodes() -> int:
    return QUADRATURE_NODES


def get_mc_block_size() -> int:
    return MC_BLOCK_SIZE


def get_grid_chunk_size() -> int:
    return GRID_CHUNK_SIZE
