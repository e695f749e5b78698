# Copyright: Ajatt-Tools and contributors; https://github.com/Ajatt-Tools
# License: GNU AGPL, version 3 or later; http://www.gnu.org/licenses/agpl.html

"""
Vectorized elementary functions on (0, 1) that appear as Seiffert functions.
Arguments are not validated here.
"""

import numpy as np

from kyfan_means.common import FloatArray


def identity(z: FloatArray) -> FloatArray:
    return np.asarray(z, dtype=np.float64) * 1.0


def artanh(z: FloatArray) -> FloatArray:
    # log1p form keeps full relative accuracy near 0.
    return 0.5 * np.log1p(2.0 * z / (1.0 - z))


def quadratic(z: FloatArray) -> FloatArray:
    """
    Seiffert function of the root mean square.
    """
    return z / np.sqrt(1.0 + z * z)


def geometric(z: FloatArray) -> FloatArray:
    """
    Seiffert function of the geometric mean.
    """
    return z / np.sqrt((1.0 - z) * (1.0 + z))


sin = np.sin
sinh = np.sinh
tan = np.tan
tanh = np.tanh
arcsin = np.arcsin
arctan = np.arctan
arsinh = np.arcsinh
