"""Run the acceptance criteria and print one PASS/FAIL line each."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", "-m", "acceptance",
                          str(root / "tests" / "test_acceptance.py")], cwd=root))
