import sys
from pathlib import Path

# tests import oracles.py directly
sys.path.insert(0, str(Path(__file__).parent))
