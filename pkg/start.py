#!/usr/bin/env python3
"""
StripCrack launcher.
Runs the CLI from a source checkout without installing the package.
"""
import sys
from pathlib import Path

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from stripcrack.main import main


if __name__ == "__main__":
    sys.exit(main())
