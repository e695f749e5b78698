# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html


PROG_NAME = "kyfan"
SETTINGS_FILE_NAME = f"{PROG_NAME}.toml"
DEFAULT_GRID_ENV = "KYFAN_DEFAULT_GRID"

DIAGONAL_THRESHOLD = 1e-8  # below this |x-y|/(x+y) a mean is replaced by (x+y)/2
POWER_ZERO_THRESHOLD = 1e-12  # |r| below this is the geometric mean
CHECK_TOLERANCE = 1e-12  # absolute slack on every inequality margin
ROUNDTRIP_TOLERANCE = 1e-12  # relative
SANDWICH_SLACK = 1e-12  # relative slack before a generated mean counts as leaving [min, max]

KYFAN_LOWER = 1e-3
KYFAN_UPPER = 0.5
KYFAN_POINTS = 400
INTERVAL_MARGIN = 1e-4
INTERVAL_POINTS = 4000
S_MAX = 100.0

DERIVATIVE_STEP = 1e-6
DERIVATIVE_THRESHOLD = 1e-9

CHUNK_SIZE = 1 << 14  # grid points per parallel work item

__all__ = [name for name in globals() if name.isupper()]
