# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

from kyfan_means.grid import GridSpec, IntervalGrid
from kyfan_means.means import eval_mean, get_mean, heronian, list_means, power_mean
from kyfan_means.report import CheckReport, Verdict
from kyfan_means.seiffert import get_seiffert, mean_to_seiffert, seiffert_to_mean, validate_seiffert
