"""Put ``src`` on ``sys.path`` so ``llycurv`` imports without an install."""

from pathlib import Path
import sys

_SRC = Path(__file__).resolve().parent / "src"

if _SRC.is_dir() and str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))
