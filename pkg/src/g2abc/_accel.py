"""Hot kernels of the exterior algebra: numba-jitted with a numpy fallback.

The jitted path is the default.  Set ``G2ABC_NO_NUMBA=1`` (or install
without numba) to run on the pure-numpy implementations instead; both
paths are exercised by the test suite and compared by
``benchmarks/bench_kernels.py``.
"""

import os

import numpy as np


def _numba_disabled_by_env():
    return os.environ.get("G2ABC_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


# -- pure numpy implementations ----------------------------------------------

def wedge_accum_numpy(ia, ja, ka, sa, a, b, out):
    np.add.at(out, ka, sa * a[ia] * b[ja])


def contract_accum_numpy(ms, ins, outs, sgns, x, a, out):
    np.add.at(out, outs, sgns * x[ms] * a[ins])


def star_apply_numpy(comp, sgn, a, out):
    out[comp] = sgn * a


# -- numba implementations ----------------------------------------------------

try:
    if _numba_disabled_by_env():
        raise ImportError("numba disabled via G2ABC_NO_NUMBA")
    from numba import njit

    @njit(cache=True)
    def wedge_accum_numba(ia, ja, ka, sa, a, b, out):  # pragma: no cover - jitted
        for t in range(ia.size):
            out[ka[t]] += sa[t] * a[ia[t]] * b[ja[t]]

    @njit(cache=True)
    def contract_accum_numba(ms, ins, outs, sgns, x, a, out):  # pragma: no cover - jitted
        for t in range(ms.size):
            out[outs[t]] += sgns[t] * x[ms[t]] * a[ins[t]]

    @njit(cache=True)
    def star_apply_numba(comp, sgn, a, out):  # pragma: no cover - jitted
        for r in range(comp.size):
            out[comp[r]] = sgn[r] * a[r]

    BACKEND = "numba"
    wedge_accum = wedge_accum_numba
    contract_accum = contract_accum_numba
    star_apply = star_apply_numba
except ImportError:
    BACKEND = "numpy"
    wedge_accum_numba = None
    contract_accum_numba = None
    star_apply_numba = None
    wedge_accum = wedge_accum_numpy
    contract_accum = contract_accum_numpy
    star_apply = star_apply_numpy
