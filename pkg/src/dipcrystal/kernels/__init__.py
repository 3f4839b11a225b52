"""Lattice-sum kernels with a compiled core and a pure-numpy fallback.

The compiled extension is preferred when the build produced it; otherwise the
numpy implementation is used transparently.  `BACKEND` records which one won.
"""

import numpy as np

try:  # pragma: no cover - exercised implicitly by the chosen install
    from . import _lattice_c as _impl
    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from . import _lattice_np as _impl
    BACKEND = "numpy"

from . import _lattice_np as reference_impl


def _as_qpts(q):
    q = np.ascontiguousarray(q, dtype=float)
    if q.ndim == 1:
        q = q[None, :]
    return q


def triangular_sites(cutoff):
    """All triangular-lattice vectors with 0 < |r| <= cutoff.

    Primitive vectors a1 = (1, 0), a2 = (1/2, sqrt(3)/2); lattice constant 1.
    """
    m = int(np.ceil(cutoff * 2.0 / np.sqrt(3.0))) + 1
    i, j = np.meshgrid(np.arange(-m, m + 1), np.arange(-m, m + 1), indexing="ij")
    x = i + 0.5 * j
    y = (np.sqrt(3.0) / 2.0) * j
    r = np.hypot(x, y)
    keep = (r > 0) & (r <= cutoff)
    return np.column_stack([x[keep], y[keep]])


def chain_sites(cutoff):
    """1D chain embedded on the x axis, |j| <= cutoff (for cross-checks)."""
    j = np.arange(-int(cutoff), int(cutoff) + 1, dtype=float)
    j = j[j != 0]
    return np.column_stack([j, np.zeros_like(j)])


def cos_sum(q, sites, power=3.0):
    return _impl.cos_sum(_as_qpts(q), np.ascontiguousarray(sites, dtype=float),
                         float(power))


def dyn_mat(q, sites):
    return _impl.dyn_mat(_as_qpts(q), np.ascontiguousarray(sites, dtype=float))


def sin_vec(q, sites):
    return _impl.sin_vec(_as_qpts(q), np.ascontiguousarray(sites, dtype=float))
