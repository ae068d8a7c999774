import os
import sys

# allow running the suite from a fresh checkout without installation
_SRC = os.path.join(os.path.dirname(__file__), "src")
if _SRC not in sys.path:
    try:
        import kummeru  # noqa: F401
    except ImportError:
        sys.path.insert(0, _SRC)
