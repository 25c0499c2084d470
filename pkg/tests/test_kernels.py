import os
import subprocess
import sys

import numpy as np
import pytest

from g2abc import _accel
from g2abc._tables import CONTRACT_TABLES, DIM, DIMS, STAR_TABLES, WEDGE_TABLES

HAVE_NUMBA = _accel.wedge_accum_numba is not None


def test_wedge_tables_are_signed_and_complete():
    for (k1, k2), (ia, ja, ka, sa) in WEDGE_TABLES.items():
        assert set(np.unique(sa)) <= {-1.0, 1.0}
        # one entry per pair of disjoint monomials
        from math import comb
        assert ia.size == comb(7, k1) * comb(7 - k1, k2)


def test_star_tables_are_involutive_permutations():
    for k in range(DIM + 1):
        comp, sgn = STAR_TABLES[k]
        comp2, sgn2 = STAR_TABLES[DIM - k]
        assert np.array_equal(np.sort(comp), np.arange(DIMS[DIM - k]))
        # star(star(e^I)) = +e^I in this signature
        assert np.all(sgn * sgn2[comp] == 1.0)
        assert np.array_equal(comp2[comp], np.arange(DIMS[k]))


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")
def test_numba_and_numpy_wedge_kernels_agree(rng):
    for (k1, k2), (ia, ja, ka, sa) in WEDGE_TABLES.items():
        a = rng.standard_normal(DIMS[k1])
        b = rng.standard_normal(DIMS[k2])
        out_np = np.zeros(DIMS[k1 + k2])
        out_nb = np.zeros(DIMS[k1 + k2])
        _accel.wedge_accum_numpy(ia, ja, ka, sa, a, b, out_np)
        _accel.wedge_accum_numba(ia, ja, ka, sa, a, b, out_nb)
        assert np.allclose(out_np, out_nb, atol=1e-14)


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")
def test_numba_and_numpy_contract_kernels_agree(rng):
    for k, (ms, ins, outs, sgns) in CONTRACT_TABLES.items():
        a = rng.standard_normal(DIMS[k])
        x = rng.standard_normal(DIM)
        out_np = np.zeros(DIMS[k - 1])
        out_nb = np.zeros(DIMS[k - 1])
        _accel.contract_accum_numpy(ms, ins, outs, sgns, x, a, out_np)
        _accel.contract_accum_numba(ms, ins, outs, sgns, x, a, out_nb)
        assert np.allclose(out_np, out_nb, atol=1e-14)


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba backend unavailable")
def test_numba_and_numpy_star_kernels_agree(rng):
    for k in range(DIM + 1):
        comp, sgn = STAR_TABLES[k]
        a = rng.standard_normal(DIMS[k])
        out_np = np.zeros(DIMS[DIM - k])
        out_nb = np.zeros(DIMS[DIM - k])
        _accel.star_apply_numpy(comp, sgn, a, out_np)
        _accel.star_apply_numba(comp, sgn, a, out_nb)
        assert np.array_equal(out_np, out_nb)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, G2ABC_NO_NUMBA="1")
    code = ("import g2abc, g2abc._accel as acc; "
            "print(acc.BACKEND); print(acc.wedge_accum is acc.wedge_accum_numpy)")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]


def test_numpy_fallback_reproduces_a_full_analysis():
    # the whole pipeline must give identical answers on the fallback path
    env = dict(os.environ, G2ABC_NO_NUMBA="1")
    code = (
        "from g2abc.gabc import generate, FamilyKind, cross_validate;"
        "rep = cross_validate(generate(FamilyKind.GENERAL, 42));"
        "print(rep.passed, max(rep.deviations.values()) <= 1e-12)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["True", "True"]
