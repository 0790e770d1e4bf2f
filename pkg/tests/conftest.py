from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ABSTRCT_DIR = Path(os.environ.get("ARGPROJ_ABSTRCT_DIR", Path(__file__).parent / "data" / "abstrct"))
PROJECTIONS_DIR = Path(os.environ.get("ARGPROJ_PROJECTIONS_DIR", Path(__file__).parent / "data" / "projections"))


def require_data(path: Path) -> Path:
    if not path.exists():
        pytest.skip(f"data file not present: {path}")
    return path
