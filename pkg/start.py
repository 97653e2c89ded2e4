#!/usr/bin/env python3
"""
Convenience launcher for vopkit
Runs the command line from the project root, e.g.

    python start.py check all --a 1 --nmax 10
"""

import sys
from pathlib import Path

project_root = Path(__file__).parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
