import os
import sys

# The compiled _facroc module lands in the CMake build tree; the pure-Python
# package lives under python/. Both paths arrive via environment variables set
# by the test harness (falling back to an in-tree build layout).
_here = os.path.dirname(os.path.abspath(__file__))
_root = os.path.dirname(os.path.dirname(_here))

_module_dir = os.environ.get("FACROC_MODULE_DIR", os.path.join(_root, "build"))
_package_dir = os.path.join(_root, "python")

for path in (_module_dir, _package_dir):
    if path not in sys.path:
        sys.path.insert(0, path)

os.environ.setdefault("FACROC_SCHEMA_DIR", os.path.join(_root, "schemas"))
