#!/usr/bin/env python3
"""
CLI runner for the USV autonomy stack
Lets the package run from a source checkout without installing it
"""

import sys
from pathlib import Path

# Add the project root to Python path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from usv_agent.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
